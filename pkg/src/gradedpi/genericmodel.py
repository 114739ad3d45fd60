"""Exact generic-matrix model: the decision procedure for graded identities.

Each graded variable x[h,i] is assigned a generic matrix with one fresh
commuting variable per admissible row.  A graded polynomial is an identity of
the matrix algebra over any infinite integral domain iff its generic
evaluation is the zero matrix, and central iff the evaluation is scalar; both
checks are exact integer polynomial comparisons.

Monomial evaluations are computed in closed form from the row walks of the
degree sequence rather than by iterated matrix multiplication; the naive
product is kept as an independent cross-check.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .grading import ElementaryGrading, Grade, GradingError
from .freealg import Monomial, Polynomial, Var

#: commuting variable key: (grade, generic matrix index, row)
YVar = Tuple[Grade, int, int]


class SparsePoly:
    """Commutative polynomial with exact integer coefficients.

    Terms map a canonical exponent key to a nonzero coefficient; a key is the
    sorted tuple of (variable, exponent) pairs.  Equality is structural, which
    is what the centrality check relies on.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[tuple, int]] = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def zero() -> "SparsePoly":
        return SparsePoly()

    @staticmethod
    def one() -> "SparsePoly":
        return SparsePoly({(): 1})

    @staticmethod
    def variable(yvar: YVar) -> "SparsePoly":
        return SparsePoly({((yvar, 1),): 1})

    @staticmethod
    def monomial(powers: Counter, coeff: int = 1) -> "SparsePoly":
        key = tuple(sorted((v, e) for v, e in powers.items() if e))
        return SparsePoly({key: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        merged = dict(self.terms)
        for k, c in other.terms.items():
            nc = merged.get(k, 0) + c
            if nc:
                merged[k] = nc
            else:
                merged.pop(k, None)
        return SparsePoly(merged)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def scaled(self, c: int) -> "SparsePoly":
        if c == 0:
            return SparsePoly()
        return SparsePoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        out: Dict[tuple, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                powers = dict(k1)
                for v, e in k2:
                    powers[v] = powers.get(v, 0) + e
                key = tuple(sorted(powers.items()))
                nc = out.get(key, 0) + c1 * c2
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
        return SparsePoly(out)

    def text(self, grading: ElementaryGrading) -> str:
        """Deterministic text form, used in witness reports."""
        if self.is_zero:
            return "0"
        fmt = grading.structure.format_grade
        parts = []
        for key, coeff in sorted(self.terms.items()):
            factors = []
            for (grade, idx, row), exp in key:
                name = f"y[{fmt(grade)},{idx},{row}]"
                factors.append(name if exp == 1 else f"{name}^{exp}")
            mag = abs(coeff)
            body = "*".join(factors) if factors else str(mag)
            if factors and mag != 1:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"SparsePoly({len(self.terms)} terms)"


class PolyMatrix:
    """Square matrix of sparse polynomials with exact arithmetic."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[Sequence[SparsePoly]]):
        self.n = n
        self.rows = tuple(tuple(row) for row in rows)

    @staticmethod
    def zero(n: int) -> "PolyMatrix":
        z = SparsePoly.zero()
        return PolyMatrix(n, [[z] * n for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        rows = [
            [SparsePoly.one() if i == j else SparsePoly.zero() for j in range(n)]
            for i in range(n)
        ]
        return PolyMatrix(n, rows)

    def entry(self, i: int, j: int) -> SparsePoly:
        """Entry at row i, column j (1-based)."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            self.n,
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ],
        )

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.n
        out = [[SparsePoly.zero()] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                left = self.rows[i][k]
                if left.is_zero:
                    continue
                for j in range(n):
                    right = other.rows[k][j]
                    if right.is_zero:
                        continue
                    out[i][j] = out[i][j] + left * right
        return PolyMatrix(n, out)

    def scaled(self, c: int) -> "PolyMatrix":
        return PolyMatrix(self.n, [[p.scaled(c) for p in row] for row in self.rows])

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.rows for p in row)

    @property
    def is_scalar(self) -> bool:
        """Zero off the diagonal with all diagonal entries equal."""
        for i in range(self.n):
            for j in range(self.n):
                if i != j and not self.rows[i][j].is_zero:
                    return False
        first = self.rows[0][0]
        return all(self.rows[k][k] == first for k in range(1, self.n))

    def nonzero_positions(self):
        """Nonzero entry positions, 1-based, in row-major order."""
        for i in range(self.n):
            for j in range(self.n):
                if not self.rows[i][j].is_zero:
                    yield (i + 1, j + 1)

    def __repr__(self):
        return f"PolyMatrix({self.n}x{self.n})"


@dataclass(frozen=True)
class GenericMatrix:
    """A generic matrix of a fixed degree: entry (k, target_k) is y[h,i,k]."""

    grade: Grade
    index: int
    entries: PolyMatrix


def make_generic(grading: ElementaryGrading, h: Grade, i: int) -> GenericMatrix:
    """The canonical degree-h generic matrix with generic index i.

    One fresh commuting variable sits in each row that admits a unit of
    degree h; the matrix is zero when no row does.
    """
    step = grading.degree_rows(h)
    n = grading.n
    rows = [[SparsePoly.zero()] * n for _ in range(n)]
    for k in step.rows:
        rows[k - 1][step.target[k] - 1] = SparsePoly.variable((h, i, k))
    return GenericMatrix(h, i, PolyMatrix(n, rows))


def _as_pairs(vars: Union[Monomial, Iterable]) -> List[Tuple[Grade, int]]:
    if isinstance(vars, Monomial):
        return [(v.grade, v.index) for v in vars.vars]
    out = []
    for item in vars:
        if isinstance(item, Var):
            out.append((item.grade, item.index))
        else:
            grade, index = item
            out.append((grade, index))
    return out


def monomial_product(grading: ElementaryGrading, vars: Union[Monomial, Iterable]) -> PolyMatrix:
    """Closed-form product of generic matrices along a variable sequence.

    For each surviving row walk k the product carries a single term
    y[h_1,i_1,row_1] * ... * y[h_q,i_q,row_q] at position (k, final row).
    The empty sequence gives the identity matrix.
    """
    pairs = _as_pairs(vars)
    n = grading.n
    if not pairs:
        return PolyMatrix.identity(n)
    walk = grading.row_walk([h for h, _ in pairs])
    rows = [[SparsePoly.zero()] * n for _ in range(n)]
    for k in walk.rows:
        path = walk.paths[k]
        powers = Counter(
            (pairs[c][0], pairs[c][1], path[c]) for c in range(len(pairs))
        )
        rows[k - 1][path[-1] - 1] = SparsePoly.monomial(powers)
    return PolyMatrix(n, rows)


def naive_monomial_product(grading: ElementaryGrading, vars: Union[Monomial, Iterable]) -> PolyMatrix:
    """Iterated matrix multiplication; the independent cross-check for the
    closed form."""
    pairs = _as_pairs(vars)
    acc = PolyMatrix.identity(grading.n)
    for h, i in pairs:
        acc = acc * make_generic(grading, h, i).entries
    return acc


def evaluate(f: Polynomial, grading: ElementaryGrading) -> PolyMatrix:
    """Generic evaluation of a polynomial under the canonical assignment.

    Each term is evaluated independently via the closed-form product and the
    results are merged; term order cannot affect the outcome.
    """
    n = grading.n
    acc: List[List[Dict[tuple, int]]] = [[{} for _ in range(n)] for _ in range(n)]
    for mono, coeff in f.terms.items():
        pm = monomial_product(grading, mono)
        for (i, j) in pm.nonzero_positions():
            cell = acc[i - 1][j - 1]
            for key, c in pm.entry(i, j).terms.items():
                nc = cell.get(key, 0) + c * coeff
                if nc:
                    cell[key] = nc
                else:
                    del cell[key]
    return PolyMatrix(n, [[SparsePoly(cell) for cell in row] for row in acc])


def is_identity(f: Polynomial, grading: ElementaryGrading) -> bool:
    """Whether f vanishes under every grade-respecting substitution."""
    return evaluate(f, grading).is_zero


def is_central(f: Polynomial, grading: ElementaryGrading) -> bool:
    """Whether every grade-respecting evaluation of f is a scalar matrix.

    Requires a zero constant term so that f vanishes on the zero assignment.
    """
    if f.constant_term != 0:
        raise GradingError("centrality requires a zero constant term")
    return evaluate(f, grading).is_scalar


def units_of_degree(grading: ElementaryGrading, h: Grade) -> List[Tuple[int, int]]:
    """All matrix unit positions carrying the degree h."""
    step = grading.degree_rows(h)
    return [(k, step.target[k]) for k in step.rows]


def _multilinear_variables(f: Polynomial) -> List[Var]:
    if f.is_zero:
        return []
    common = None
    for m in f.terms:
        seen = set()
        for v in m.vars:
            if v in seen:
                raise GradingError("not multilinear: repeated variable in a term")
            seen.add(v)
        if common is None:
            common = seen
        elif seen != common:
            raise GradingError("not multilinear: terms use different variable sets")
    if not common:
        raise GradingError("not multilinear: constant polynomial")
    return sorted(common)


def matrix_unit_oracle(f: Polynomial, grading: ElementaryGrading) -> bool:
    """Brute-force identity check for multilinear polynomials.

    Substitutes every tuple of matrix units of the correct degrees and checks
    that each resulting integer matrix vanishes.  Multilinearity makes this
    exhaustive check equivalent to vanishing on all homogeneous elements, so
    it serves as an independent oracle for the generic-matrix procedure.
    """
    if f.is_zero:
        return True
    vars_ = _multilinear_variables(f)
    choices = [units_of_degree(grading, v.grade) for v in vars_]
    n = grading.n
    for combo in itertools.product(*choices):
        env = dict(zip(vars_, combo))
        total: Dict[Tuple[int, int], int] = {}
        for mono, coeff in f.terms.items():
            pos = None
            dead = False
            for v in mono.vars:
                u = env[v]
                if pos is None:
                    pos = u
                elif pos[1] == u[0]:
                    pos = (pos[0], u[1])
                else:
                    dead = True
                    break
            if dead or pos is None:
                continue
            nc = total.get(pos, 0) + coeff
            if nc:
                total[pos] = nc
            else:
                del total[pos]
        if total:
            return False
    return True


def entry_match(m1: Monomial, m2: Monomial, grading: ElementaryGrading) -> Optional[Tuple[int, int]]:
    """First position (row-major, 1-based) where both generic evaluations
    carry the identical nonzero entry, or None."""
    e1 = monomial_product(grading, m1)
    e2 = monomial_product(grading, m2)
    for i in range(1, grading.n + 1):
        for j in range(1, grading.n + 1):
            p = e1.entry(i, j)
            if not p.is_zero and p == e2.entry(i, j):
                return (i, j)
    return None


def identity_witness(f: Polynomial, grading: ElementaryGrading) -> dict:
    """Verdict report for the identity check: verified, or a nonzero entry."""
    value = evaluate(f, grading)
    for (i, j) in value.nonzero_positions():
        return {
            "kind": "nonzero_entry",
            "position": [i, j],
            "entry": value.entry(i, j).text(grading),
        }
    return {"kind": "verified"}


def centrality_witness(f: Polynomial, grading: ElementaryGrading) -> dict:
    """Verdict report for the centrality check.

    Reports the first offending off-diagonal entry, or the first diagonal
    entry differing from the (1,1) entry, or a verified verdict.
    """
    if f.constant_term != 0:
        raise GradingError("centrality requires a zero constant term")
    value = evaluate(f, grading)
    for i in range(1, value.n + 1):
        for j in range(1, value.n + 1):
            if i != j and not value.entry(i, j).is_zero:
                return {
                    "kind": "offdiag",
                    "position": [i, j],
                    "entry": value.entry(i, j).text(grading),
                }
    reference = value.entry(1, 1)
    for k in range(2, value.n + 1):
        if value.entry(k, k) != reference:
            return {
                "kind": "diag_mismatch",
                "position": [k, k],
                "entry": value.entry(k, k).text(grading),
                "reference_position": [1, 1],
                "reference_entry": reference.text(grading),
            }
    return {"kind": "verified"}
