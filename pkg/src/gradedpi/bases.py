"""Generator families for graded identities and central polynomials.

Builds the known finite generating families for the supported gradings, with
every instance verifiable through the generic-matrix procedure:

* identities of cyclic residue gradings: families (1)-(2);
* identities of general finite-group gradings: (1)-(4), where (4) collects
  the support-closed multilinear monomial identities up to a cutoff;
* identities of the canonical integer grading: (1)-(3);
* identities of the positional grading: (5)-(7);
* central polynomials over a prime residue grading: (8)-(11);
* central polynomials over the canonical integer grading: (12)-(15).

The numeric family ids are the stable tokens used in machine-readable
reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .grading import (
    ElementaryGrading,
    FINITE_GROUP,
    Grade,
    INTEGERS,
    MATRIX_UNITS,
    MU_ZERO,
    _is_prime,
    enumerate_complete_sequences,
    is_complete_sequence,
)
from .freealg import Monomial, Polynomial, Var, classify, format_polynomial, twin_block_threshold
from .genericmodel import is_central, is_identity

EXPECT_IDENTITY = "identity"
EXPECT_CENTRAL_IDENTITY = "central-identity"
EXPECT_PROPER_CENTRAL = "proper-central"

_EXPECTATIONS = {
    "(1)": EXPECT_IDENTITY,
    "(2)": EXPECT_IDENTITY,
    "(3)": EXPECT_IDENTITY,
    "(4)": EXPECT_IDENTITY,
    "(5)": EXPECT_IDENTITY,
    "(6)": EXPECT_IDENTITY,
    "(7)": EXPECT_IDENTITY,
    "(8)": EXPECT_CENTRAL_IDENTITY,
    "(9)": EXPECT_CENTRAL_IDENTITY,
    "(10)": EXPECT_PROPER_CENTRAL,
    "(11)": EXPECT_PROPER_CENTRAL,
    "(12)": EXPECT_CENTRAL_IDENTITY,
    "(13)": EXPECT_CENTRAL_IDENTITY,
    "(14)": EXPECT_CENTRAL_IDENTITY,
    "(15)": EXPECT_PROPER_CENTRAL,
}


class BasesError(ValueError):
    """Unsupported grading/kind combination or violated precondition."""


@dataclass
class GeneratorInstance:
    family: str
    poly: Polynomial
    params: dict

    @property
    def expect(self) -> str:
        return _EXPECTATIONS[self.family]


@dataclass
class BasisInstances:
    instances: List[GeneratorInstance]
    truncated: bool


def _mono(*vars: Var) -> Monomial:
    return Monomial(vars)


def _commutator(a: Var, b: Var) -> Polynomial:
    return Polynomial({_mono(a, b): 1, _mono(b, a): -1})


def _reversal(a: Var, b: Var, c: Var) -> Polynomial:
    return Polynomial({_mono(a, b, c): 1, _mono(c, b, a): -1})


def _flanked(inner: Polynomial, z1: Optional[Var], z2: Optional[Var]) -> Polynomial:
    left = Polynomial.from_var(z1) if z1 else Polynomial.one()
    right = Polynomial.from_var(z2) if z2 else Polynomial.one()
    return left * inner * right


def canonical_monomial(hs: Sequence[Grade]) -> Monomial:
    """Multilinear monomial for a degree tuple, indexed per grade by first
    occurrence, so identity-hood depends only on the tuple."""
    counts: Dict[Grade, int] = {}
    vars = []
    for h in hs:
        counts[h] = counts.get(h, 0) + 1
        vars.append(Var(h, counts[h]))
    return Monomial(vars)


def enumerate_monomial_identities(
    grading: ElementaryGrading, max_degree: int, *, degree_limit: int = 8
) -> List[Monomial]:
    """All multilinear monomial identities up to a degree bound.

    One canonical representative is produced per degree tuple over the
    support; a tuple with a grade outside the support is an identity for the
    trivial reason and is not enumerated.
    """
    if max_degree > degree_limit:
        raise BasesError(
            f"degree bound {max_degree} exceeds the enumeration limit {degree_limit}"
        )
    supp = sorted(grading.support())
    out = []
    for d in range(1, max_degree + 1):
        for hs in itertools.product(supp, repeat=d):
            if not grading.row_walk(hs).rows:
                out.append(canonical_monomial(hs))
    return out


def _residue(grading: ElementaryGrading, grade: Grade) -> int:
    if grading.structure.kind == FINITE_GROUP and grading.structure.is_cyclic:
        return grade
    if grading.structure.kind == INTEGERS:
        return grade % grading.n
    raise BasesError("residues are only defined for cyclic and integer gradings")


def cyclic_symmetrization(vars: Sequence[Var], grading: ElementaryGrading) -> Polynomial:
    """Sum of the n cyclic rotations of the product of n variables.

    The degree sequence of the variables, reduced to residues, must be a
    complete sequence; under that hypothesis the sum is central.
    """
    vars = tuple(vars)
    n = len(vars)
    if n != grading.n:
        raise BasesError(f"need exactly {grading.n} variables, got {n}")
    residues = [_residue(grading, v.grade) for v in vars]
    if not is_complete_sequence(n, residues):
        raise BasesError("the degree sequence is not complete")
    terms: Dict[Monomial, int] = {}
    for shift in range(n):
        mono = Monomial(vars[shift:] + vars[:shift])
        terms[mono] = terms.get(mono, 0) + 1
    return Polynomial(terms)


def factor_complete(m: Monomial, grading: ElementaryGrading) -> Optional[List[Monomial]]:
    """Cut a neutral monomial into n factors whose degrees form a complete
    sequence, following a diagonal row walk that visits every row.

    Only defined for the canonical cyclic grading.  Requires a neutral degree
    and a nonzero generic evaluation; returns None when no diagonal walk
    visits all rows.
    """
    st = grading.structure
    if st.kind != FINITE_GROUP or not st.is_cyclic:
        raise BasesError("complete factorization needs the canonical cyclic grading")
    n = grading.n
    if m.degree(grading) != 0:
        raise BasesError("complete factorization needs a neutral-degree monomial")
    walk = grading.row_walk(m.h)
    if not walk.rows:
        raise BasesError("complete factorization needs a nonzero evaluation")
    q = len(m)
    for k in walk.rows:
        path = walk.paths[k]  # length q+1, starts and ends at k
        cuts = []
        seen = set()
        for c in range(q):
            if path[c] not in seen:
                seen.add(path[c])
                cuts.append(c + 1)  # 1-based position
        if len(seen) != n:
            continue
        factors = []
        for t in range(n):
            lo = cuts[t]
            hi = cuts[t + 1] - 1 if t + 1 < n else q
            factors.append(m.window(lo, hi))
        return factors
    return None


def reduce_central_monomial(m: Monomial, grading: ElementaryGrading) -> Polynomial:
    """Collect a central monomial into its canonical power form.

    Over a prime residue grading every central non-identity monomial is
    congruent, modulo the graded identities, to a product of full powers:
    either x1^k1 ... xq^kq when no variable has neutral degree, or
    (w z1^(k1/p) ... zs^(ks/p))^p w^(kw-p) * rest when the zi are the neutral
    variables and w is the first non-neutral one.  The returned monomial is
    checked to differ from the input by an identity.
    """
    st = grading.structure
    if st.kind != FINITE_GROUP or not st.is_cyclic or not _is_prime(st.order):
        raise BasesError("central reduction needs a prime residue grading")
    if st.order != grading.n:
        raise BasesError("central reduction needs the canonical residue grading")
    p = grading.n
    poly = Polynomial.from_monomial(m)
    if is_identity(poly, grading):
        raise BasesError("central reduction expects a non-identity monomial")
    if not is_central(poly, grading):
        raise BasesError("central reduction expects a central monomial")
    order: List[Var] = []
    counts: Dict[Var, int] = {}
    for v in m.vars:
        if v not in counts:
            order.append(v)
        counts[v] = counts.get(v, 0) + 1
    for v, k in counts.items():
        if k % p:
            raise BasesError("central monomial with a variable degree not divisible by the modulus")
    neutral = [v for v in order if v.grade == 0]
    if not neutral:
        vars: List[Var] = []
        for v in order:
            vars.extend([v] * counts[v])
        collected = Monomial(vars)
    else:
        moving = [v for v in order if v.grade != 0]
        if not moving:
            raise BasesError("a central non-identity monomial must use a non-neutral variable")
        w = moving[0]
        block: List[Var] = [w]
        for z in neutral:
            block.extend([z] * (counts[z] // p))
        vars = list(block) * p
        vars.extend([w] * (counts[w] - p))
        for v in moving[1:]:
            vars.extend([v] * counts[v])
        collected = Monomial(vars)
    reduced = Polynomial.from_monomial(collected)
    if not is_identity(poly - reduced, grading):
        raise BasesError("power collection failed to stay congruent")
    return reduced


# -- family builders -------------------------------------------------------------


def _neutral_commutator(grading: ElementaryGrading) -> GeneratorInstance:
    e = grading.structure.identity
    return GeneratorInstance("(1)", _commutator(Var(e, 1), Var(e, 2)), {})


def _reversal_instances(grading: ElementaryGrading, grades: Iterable[Grade]) -> List[GeneratorInstance]:
    st = grading.structure
    out = []
    for g in grades:
        inv = st.inverse(g)
        poly = _reversal(Var(g, 1), Var(inv, 2), Var(g, 3))
        out.append(GeneratorInstance("(2)", poly, {"g": st.format_grade(g)}))
    return out


def _kill_instances(grading: ElementaryGrading, grades: Iterable[Grade]) -> List[GeneratorInstance]:
    st = grading.structure
    return [
        GeneratorInstance(
            "(3)", Polynomial.from_var(Var(h, 1)), {"h": st.format_grade(h)}
        )
        for h in grades
    ]


def _support_closed_monomial_identities(
    grading: ElementaryGrading, cutoff: int
) -> Tuple[List[GeneratorInstance], bool]:
    supp = sorted(grading.support())
    threshold = twin_block_threshold(len(supp))
    effective = min(cutoff, threshold)
    out = []
    for d in range(1, effective + 1):
        for hs in itertools.product(supp, repeat=d):
            mono = canonical_monomial(hs)
            if grading.row_walk(hs).rows:
                continue
            if not classify(mono, grading).support_closed:
                continue
            out.append(
                GeneratorInstance(
                    "(4)",
                    Polynomial.from_monomial(mono),
                    {"h": [grading.structure.format_grade(h) for h in hs]},
                )
            )
    return out, effective < threshold


def _flank_family(
    family: str,
    grading: ElementaryGrading,
    inner_list: List[Tuple[Polynomial, dict]],
    flank_grades: Sequence[Grade],
    flank_base_index: int,
) -> List[GeneratorInstance]:
    st = grading.structure
    out = []
    for inner, params in inner_list:
        out.append(GeneratorInstance(family, inner, dict(params, flanked=False)))
        for a in flank_grades:
            for b in flank_grades:
                z1 = Var(a, flank_base_index)
                z2 = Var(b, flank_base_index + 1)
                out.append(
                    GeneratorInstance(
                        family,
                        _flanked(inner, z1, z2),
                        dict(
                            params,
                            flanked=True,
                            z1=st.format_grade(a),
                            z2=st.format_grade(b),
                        ),
                    )
                )
    return out


def _central_power_family(grading: ElementaryGrading) -> List[GeneratorInstance]:
    """Family (10): the central power monomials over a prime residue grading."""
    p = grading.n
    st = grading.structure
    out = []
    if p == 2:
        z1, z2 = Var(1, 1), Var(1, 2)
        out.append(
            GeneratorInstance("(10)", Polynomial.from_monomial(_mono(z1, z1)), {"shape": "z1^2"})
        )
        out.append(
            GeneratorInstance(
                "(10)",
                Polynomial.from_monomial(_mono(z1, z1, z2, z2)),
                {"shape": "z1^2*z2^2"},
            )
        )
        return out
    nonzero = [g for g in range(p) if g != 0]
    for l in range(1, p):
        for grades in itertools.permutations(nonzero, l):
            vars = []
            for t, g in enumerate(grades, start=1):
                vars.extend([Var(g, t)] * p)
            out.append(
                GeneratorInstance(
                    "(10)",
                    Polynomial.from_monomial(Monomial(vars)),
                    {"grades": [st.format_grade(g) for g in grades]},
                )
            )
    return out


def _symmetrization_family(
    family: str, grading: ElementaryGrading, sequences: Iterable[Sequence[Grade]]
) -> List[GeneratorInstance]:
    st = grading.structure
    out = []
    for seq in sequences:
        vars = [Var(g, l + 1) for l, g in enumerate(seq)]
        out.append(
            GeneratorInstance(
                family,
                cyclic_symmetrization(vars, grading),
                {"degrees": [st.format_grade(g) for g in seq]},
            )
        )
    return out


def build_basis(
    grading: ElementaryGrading, kind: str, cutoff: Optional[int] = None
) -> BasisInstances:
    """Instantiate the generating family for a grading and kind.

    ``kind`` is "identities" or "central".  ``cutoff`` caps the enumeration
    degree of family (4); the result is flagged truncated when the cap is
    below the full enumeration threshold.  Families with infinitely many
    instances over the integer grading ((2), (3), (14)) are emitted for a
    finite representative set of grades.
    """
    st = grading.structure
    n = grading.n
    if kind == "identities":
        if st.kind == FINITE_GROUP:
            instances = [_neutral_commutator(grading)]
            instances += _reversal_instances(
                grading, [g for g in st.elements() if g != st.identity]
            )
            if st.order == n:
                # the support is the whole group: the kill family is empty and
                # no monomial identities exist, so (1)-(2) already generate
                return BasisInstances(instances, False)
            instances += _kill_instances(
                grading, [h for h in st.elements() if h not in grading.support()]
            )
            fam4, truncated = _support_closed_monomial_identities(
                grading, cutoff if cutoff is not None else 4
            )
            return BasisInstances(instances + fam4, truncated)
        if st.kind == INTEGERS:
            instances = [_neutral_commutator(grading)]
            grades = [g for g in range(-(n - 1), n) if g != 0] + [n, -n]
            instances += _reversal_instances(grading, grades)
            instances += _kill_instances(grading, [n, -n, n + 1, -(n + 1)])
            return BasisInstances(instances, False)
        if st.kind == MATRIX_UNITS:
            instances = []
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    poly = _commutator(Var((i, i), 1), Var((j, j), 2))
                    instances.append(GeneratorInstance("(5)", poly, {"i": i, "j": j}))
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    poly = _reversal(Var((i, j), 1), Var((j, i), 2), Var((i, j), 3))
                    instances.append(GeneratorInstance("(6)", poly, {"i": i, "j": j}))
            instances.append(
                GeneratorInstance("(7)", Polynomial.from_var(Var(MU_ZERO, 1)), {})
            )
            return BasisInstances(instances, False)
        raise BasesError(f"unsupported grading kind for identities: {st.kind}")
    if kind == "central":
        if st.kind == FINITE_GROUP and st.is_cyclic and st.order == n and _is_prime(n):
            all_grades = list(range(n))
            inner8 = [(_commutator(Var(0, 1), Var(0, 2)), {})]
            inner9 = [
                (
                    _reversal(Var(g, 1), Var(st.inverse(g), 2), Var(g, 3)),
                    {"g": st.format_grade(g)},
                )
                for g in all_grades
                if g != 0
            ]
            instances = _flank_family("(8)", grading, inner8, all_grades, 4)
            instances += _flank_family("(9)", grading, inner9, all_grades, 4)
            instances += _central_power_family(grading)
            instances += _symmetrization_family(
                "(11)", grading, enumerate_complete_sequences(n)
            )
            return BasisInstances(instances, False)
        if st.kind == INTEGERS:
            supp = sorted(grading.support())
            inner12 = [(_commutator(Var(0, 1), Var(0, 2)), {})]
            inner13 = [
                (_reversal(Var(g, 1), Var(-g, 2), Var(g, 3)), {"g": str(g)})
                for g in supp
                if g != 0
            ]
            inner14 = [
                (Polynomial.from_var(Var(h, 1)), {"h": str(h)})
                for h in (n, -n, n + 1, -(n + 1))
            ]
            instances = _flank_family("(12)", grading, inner12, supp, 4)
            instances += _flank_family("(13)", grading, inner13, supp, 4)
            instances += _flank_family("(14)", grading, inner14, supp, 4)
            # residue-complete lifts with a nonzero integer sum end every row
            # walk off its start by a multiple of n, so they are identities;
            # the family keeps the sum-zero lifts, which are properly central
            window = range(-(n - 1), n)
            sequences = [
                seq
                for seq in itertools.product(window, repeat=n)
                if sum(seq) == 0 and is_complete_sequence(n, [g % n for g in seq])
            ]
            instances += _symmetrization_family("(15)", grading, sequences)
            return BasisInstances(instances, False)
        raise BasesError(
            "central families are available for prime residue gradings and the "
            "canonical integer grading only"
        )
    raise BasesError(f"unknown basis kind {kind!r}")


def verify_instance(inst: GeneratorInstance, grading: ElementaryGrading) -> bool:
    """Check an instance against its family's defining property."""
    if inst.expect == EXPECT_IDENTITY:
        return is_identity(inst.poly, grading)
    if inst.expect == EXPECT_CENTRAL_IDENTITY:
        return is_identity(inst.poly, grading) and is_central(inst.poly, grading)
    return is_central(inst.poly, grading) and not is_identity(inst.poly, grading)


def basis_report(
    grading: ElementaryGrading, kind: str, cutoff: Optional[int] = None
) -> dict:
    """Machine-readable verification report over a generating family."""
    basis = build_basis(grading, kind, cutoff)
    families: Dict[str, dict] = {}
    for inst in basis.instances:
        bucket = families.setdefault(
            inst.family, {"id": inst.family, "instances": 0, "verified": 0, "failures": []}
        )
        bucket["instances"] += 1
        if verify_instance(inst, grading):
            bucket["verified"] += 1
        else:
            bucket["failures"].append(
                {
                    "params": inst.params,
                    "poly": format_polynomial(inst.poly, grading),
                }
            )
    ordered = sorted(families.values(), key=lambda fam: int(fam["id"].strip("()")))
    return {
        "grading": grading.describe(),
        "kind": kind,
        "families": ordered,
        "truncated": basis.truncated,
    }
