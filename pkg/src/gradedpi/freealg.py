"""The graded free algebra: variables, monomials, integer polynomials.

Monomials are ordered tuples of graded variables; polynomials are finite
integer combinations of monomials with the free (noncommutative) product.
The module also houses the structural analysis used by the rewriting and
basis machinery: windows, multihomogeneous splitting, neutral-variable
stripping, graded substitution, the text grammar, and the classification of
monomials by their subword degrees.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple

from .grading import (
    ElementaryGrading,
    Grade,
    GradingError,
    MATRIX_UNITS,
    MU_ZERO,
)


class Var(NamedTuple):
    """A free graded variable, uniquely keyed by (grade, index)."""

    grade: Grade
    index: int


class Monomial:
    """An ordered word of graded variables; the empty word is the unit."""

    __slots__ = ("vars",)

    def __init__(self, vars: Iterable[Var] = ()):
        object.__setattr__(self, "vars", tuple(vars))

    def __len__(self):
        return len(self.vars)

    def __iter__(self):
        return iter(self.vars)

    def __getitem__(self, i):
        return self.vars[i]

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.vars + other.vars)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        if not self.vars:
            return "Monomial(1)"
        body = "*".join(f"x[{v.grade},{v.index}]" for v in self.vars)
        return f"Monomial({body})"

    @property
    def h(self) -> Tuple[Grade, ...]:
        """The degree tuple: grades of the variables in order."""
        return tuple(v.grade for v in self.vars)

    def degree(self, grading: ElementaryGrading) -> Grade:
        """Ordered product of the variable grades; absorbing-zero aware."""
        return grading.structure.product(self.h)

    def window(self, k: int, l: int) -> "Monomial":
        """Variables k..l of the word, 1-based and inclusive."""
        if not (1 <= k <= l <= len(self.vars)):
            raise ValueError(f"window [{k},{l}] out of range for length {len(self.vars)}")
        return Monomial(self.vars[k - 1 : l])

    def sort_key(self):
        return (len(self.vars), self.vars)


ONE = Monomial(())


class Polynomial:
    """Integer combination of monomials with the free product.

    The term map never stores zero coefficients; the zero polynomial is the
    empty map.  Instances are treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial({ONE: 1})

    @staticmethod
    def from_monomial(m: Monomial, coeff: int = 1) -> "Polynomial":
        return Polynomial({m: coeff})

    @staticmethod
    def from_var(v: Var) -> "Polynomial":
        return Polynomial({Monomial((v,)): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> int:
        return self.terms.get(ONE, 0)

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(m, 0)

    def monomials(self):
        return sorted(self.terms, key=Monomial.sort_key)

    def items_sorted(self):
        return [(m, self.terms[m]) for m in self.monomials()]

    def variables(self):
        out = set()
        for m in self.terms:
            out.update(m.vars)
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self.terms)
        for m, c in other.terms.items():
            nc = merged.get(m, 0) + c
            if nc:
                merged[m] = nc
            else:
                merged.pop(m, None)
        return Polynomial(merged)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self.terms.items()})
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return Polynomial(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __repr__(self):
        if self.is_zero:
            return "Polynomial(0)"
        return f"Polynomial({len(self.terms)} terms)"

    def is_multilinear(self) -> bool:
        """True when all terms use the same variable set, each exactly once."""
        if self.is_zero:
            return True
        common = None
        for m in self.terms:
            seen = set()
            for v in m.vars:
                if v in seen:
                    return False
                seen.add(v)
            if common is None:
                common = seen
            elif seen != common:
                return False
        return True

    def homogeneous_degree(self, grading: ElementaryGrading) -> Optional[Grade]:
        """Common degree of all terms, or None for the zero polynomial.

        Raises when the terms carry different degrees.
        """
        degree = None
        for m in self.terms:
            d = m.degree(grading)
            if degree is None:
                degree = d
            elif d != degree:
                raise GradingError("polynomial is not homogeneous")
        return degree


def multihomogeneous_components(f: Polynomial):
    """Split a polynomial by the variable multiset of its terms.

    The components sum back to the input; each one is multihomogeneous.
    Components are independent of each other, so identity and centrality
    checks distribute over this partition.
    """
    buckets: Dict[frozenset, Dict[Monomial, int]] = {}
    for m, c in f.terms.items():
        key = frozenset(Counter(m.vars).items())
        buckets.setdefault(key, {})[m] = c
    comps = [Polynomial(t) for t in buckets.values()]
    comps.sort(key=lambda p: p.monomials()[0].sort_key())
    return comps


def strip_neutral(m: Monomial, grading: ElementaryGrading) -> Monomial:
    """Remove every variable of neutral degree; no-op without an identity."""
    e = grading.neutral
    if e is None:
        return m
    return Monomial(v for v in m.vars if v.grade != e)


def apply_substitution(
    f: Polynomial,
    mapping: Mapping[Var, Polynomial],
    grading: ElementaryGrading,
) -> Polynomial:
    """Image of f under the graded endomorphism sending each variable to its image.

    Every image must be homogeneous of the same grade as its variable (the
    zero polynomial is allowed for any grade).  Unmapped variables are fixed.
    """
    for v, image in mapping.items():
        if image.is_zero:
            continue
        d = image.homogeneous_degree(grading)
        if d != v.grade:
            raise GradingError(
                f"substitution image for x[{grading.structure.format_grade(v.grade)},{v.index}] "
                "has the wrong grade"
            )
    out = Polynomial.zero()
    for m, c in f.terms.items():
        acc = Polynomial({ONE: c})
        for v in m.vars:
            image = mapping.get(v)
            if image is None:
                image = Polynomial.from_var(v)
            acc = acc * image
            if acc.is_zero:
                break
        out = out + acc
    return out


# -- classification by subword degrees ----------------------------------------


@dataclass(frozen=True)
class TwinBlocks:
    """Witness of two equal neutral blocks separated by a neutral gap.

    Blocks are variables p1..p1+a and p2..p2+a (1-based, inclusive); both have
    neutral degree and identical degree tuples, and the gap between them is
    neutral too (possibly empty when p2 = p1 + a + 1).
    """

    a: int
    p1: int
    p2: int


@dataclass(frozen=True)
class MonomialClass:
    support_closed: bool
    twin_blocks: Optional[TwinBlocks]
    has_proper_neutral_subword: bool

    @property
    def has_twin_neutral_blocks(self) -> bool:
        return self.twin_blocks is not None

    @property
    def neutral_subword_free(self) -> bool:
        return not self.has_proper_neutral_subword


def twin_block_threshold(support_size: int) -> int:
    """Length above which neutral-free, support-closed multilinear words
    are forced to contain twin neutral blocks."""
    if support_size < 1:
        raise ValueError("support size must be at least 1")
    s = support_size
    total = sum((s - 1) ** i for i in range(1, s + 1))
    return (s + 1) * ((s + 1) * total + 1)


def _mu_support_closed(m: Monomial, grading: ElementaryGrading) -> bool:
    # Every position pair lies in the support, so only the absorbing zero
    # can push a subword degree outside it.
    st = grading.structure
    grades = m.h
    l = len(grades)
    for a in range(l):
        acc = grades[a]
        if acc == MU_ZERO:
            return False
        for b in range(a + 1, l):
            acc = st.mul(acc, grades[b])
            if acc == MU_ZERO:
                return False
    return True


def _twin_blocks(pref, h, l) -> Optional[TwinBlocks]:
    # Bucket block starts by (prefix value, degree tuple); within a bucket the
    # neutral-gap condition is automatic because all four boundary prefixes
    # coincide.  Scanning a ascending then p ascending keeps the witness
    # deterministic: minimal block width, then minimal second block.
    for a in range(1, l):
        if 2 * (a + 1) > l:
            break
        first: Dict[tuple, int] = {}
        for p in range(1, l - a + 1):
            if pref[p - 1] != pref[p + a]:
                continue
            key = (pref[p - 1], h[p - 1 : p + a])
            prev = first.get(key)
            if prev is not None and prev <= p - a - 1:
                return TwinBlocks(a, prev, p)
            if prev is None:
                first[key] = p
    return None


def classify(m: Monomial, grading: ElementaryGrading) -> MonomialClass:
    """Subword-degree classification of a monomial.

    ``support_closed``: every nonempty contiguous subword has degree inside
    the support.  ``has_proper_neutral_subword``: some proper nonempty subword
    has neutral degree.  ``twin_blocks``: a witness of two disjoint equal
    neutral blocks with a neutral gap, when one exists.
    """
    l = len(m)
    if grading.structure.kind == MATRIX_UNITS:
        return MonomialClass(_mu_support_closed(m, grading), None, False)
    st = grading.structure
    supp = grading.support()
    h = m.h
    pref = [st.identity]
    for g in h:
        pref.append(st.mul(pref[-1], g))
    inv = [st.inverse(p) for p in pref]

    support_closed = True
    for a in range(l + 1):
        for b in range(a + 1, l + 1):
            if st.mul(inv[a], pref[b]) not in supp:
                support_closed = False
                break
        if not support_closed:
            break

    positions: Dict[Grade, int] = {}
    dup_pairs = 0
    for p in pref:
        seen = positions.get(p, 0)
        dup_pairs += seen
        positions[p] = seen + 1
    if l >= 1 and pref[0] == pref[l]:
        dup_pairs -= 1  # the full word is not a proper subword
    has_proper = dup_pairs > 0

    return MonomialClass(support_closed, _twin_blocks(pref, h, l), has_proper)


# -- text grammar ---------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    """Syntax error in polynomial text, with the 0-based offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str, grading: ElementaryGrading):
        self.text = text
        self.pos = 0
        self.structure = grading.structure

    def error(self, message: str, pos: Optional[int] = None):
        raise PolynomialSyntaxError(message, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def read_nat(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start : self.pos])

    def read_int(self) -> int:
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        return sign * self.read_nat()

    def parse_grade(self) -> Grade:
        start = self.pos
        if self.peek() == "(":
            if self.structure.kind != MATRIX_UNITS:
                self.error("pair grades are only valid under a matrix-position grading")
            self.pos += 1
            self.skip_ws()
            i = self.read_nat()
            self.skip_ws()
            self.expect(",")
            self.skip_ws()
            j = self.read_nat()
            self.skip_ws()
            self.expect(")")
            g = (i, j)
            if not self.structure.contains(g):
                self.error(f"position pair ({i},{j}) out of range", start)
            return g
        value = self.read_int()
        try:
            return self.structure.grade_from_int(value)
        except GradingError as exc:
            self.error(str(exc), start)

    def parse_factor(self):
        self.expect("x")
        self.expect("[")
        self.skip_ws()
        grade = self.parse_grade()
        self.skip_ws()
        self.expect(",")
        self.skip_ws()
        start = self.pos
        index = self.read_nat()
        if index < 1:
            self.error("variable index must be at least 1", start)
        self.skip_ws()
        self.expect("]")
        exp = 1
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            exp = self.read_nat()
        return Var(grade, index), exp

    def parse_term(self):
        coeff = 1
        factors = []
        self.skip_ws()
        if self.peek().isdigit():
            coeff = self.read_nat()
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
            else:
                return coeff, Monomial(())  # bare integer constant
        while True:
            if self.peek() != "x":
                self.error("expected a variable factor")
            var, exp = self.parse_factor()
            factors.extend([var] * exp)
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
                continue
            break
        return coeff, Monomial(factors)

    def parse(self) -> Polynomial:
        self.skip_ws()
        if not self.peek():
            self.error("empty input")
        terms: Dict[Monomial, int] = {}
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        while True:
            coeff, mono = self.parse_term()
            coeff *= sign
            nc = terms.get(mono, 0) + coeff
            if nc:
                terms[mono] = nc
            else:
                terms.pop(mono, None)
            self.skip_ws()
            ch = self.peek()
            if ch == "+":
                sign = 1
                self.pos += 1
            elif ch == "-":
                sign = -1
                self.pos += 1
            elif not ch:
                break
            else:
                self.error("expected '+', '-', or end of input")
        return Polynomial(terms)


def parse_polynomial(text: str, grading: ElementaryGrading) -> Polynomial:
    """Parse polynomial text.

    Grammar: ``poly := ['-'] term (('+'|'-') term)*`` with
    ``term := int | [int '*'] factor ('*' factor)*``,
    ``factor := var ['^' nat]``, ``var := 'x[' grade ',' nat ']'`` and
    ``grade := int | '(' nat ',' nat ')' | '0'``.  Pair and 0 grades are only
    valid under matrix-position gradings; integer grades reduce modulo n under
    a cyclic grading.
    """
    return _Parser(text, grading).parse()


def parse_monomial(text: str, grading: ElementaryGrading) -> Monomial:
    """Parse text that must denote a single monomial with coefficient 1."""
    poly = parse_polynomial(text, grading)
    items = poly.items_sorted()
    if len(items) != 1 or items[0][1] != 1:
        raise PolynomialSyntaxError("expected a single monomial with coefficient 1", 0)
    return items[0][0]


def _format_word(m: Monomial, grading: ElementaryGrading) -> str:
    parts = []
    for var, run in itertools.groupby(m.vars):
        count = len(list(run))
        text = f"x[{grading.structure.format_grade(var.grade)},{var.index}]"
        parts.append(text if count == 1 else f"{text}^{count}")
    return "*".join(parts)


def format_monomial(m: Monomial, grading: ElementaryGrading) -> str:
    if not len(m):
        return "1"
    return _format_word(m, grading)


def format_polynomial(f: Polynomial, grading: ElementaryGrading) -> str:
    """Canonical text form; ``parse_polynomial`` round-trips it."""
    if f.is_zero:
        return "0"
    parts = []
    for m, c in f.items_sorted():
        mag = abs(c)
        if not len(m):
            body = str(mag)
        elif mag == 1:
            body = _format_word(m, grading)
        else:
            body = f"{mag}*{_format_word(m, grading)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
