"""Grading structures and elementary gradings of square matrix algebras.

An elementary grading assigns a degree to every matrix unit e_ij.  Degrees
come from one of three structures: a finite group given by its Cayley table,
the additive integers, or the semigroup of matrix positions with an absorbing
zero.  For group kinds the degree of e_ij is g_i^{-1} g_j where (g_1, ..., g_n)
is a tuple of pairwise distinct grades; for the positional kind it is the pair
(i, j) itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

Grade = Union[int, Tuple[int, int]]

FINITE_GROUP = "finite-group"
INTEGERS = "integers"
MATRIX_UNITS = "matrix-unit-semigroup"

#: absorbing zero of the matrix-position semigroup
MU_ZERO: Grade = (0, 0)


class GradingError(ValueError):
    """Invalid grading structure, grade value, or grading spec string."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GradingStructure:
    """The degree structure: a finite group, the integers, or matrix positions.

    Finite-group grades are 0-based indices into the carrier, so they stay
    cheap and hashable; names are kept for parsing and printing only.  Integer
    grades are plain ints under addition.  Matrix-position grades are 1-based
    (row, column) pairs, with ``MU_ZERO`` as the absorbing zero; this kind has
    neither an identity element nor inverses and refuses to provide them.
    """

    def __init__(self, kind: str, *, names=None, table=None, size=None, cyclic=False):
        self.kind = kind
        self.is_cyclic = cyclic
        if kind == FINITE_GROUP:
            if not names:
                raise GradingError("a finite group needs a non-empty carrier")
            self.names = tuple(str(x) for x in names)
            self.table = tuple(tuple(row) for row in table)
            self.order = len(self.names)
            self._identity, self._inverse = self._check_group()
        elif kind == INTEGERS:
            pass
        elif kind == MATRIX_UNITS:
            if size is None or size < 1:
                raise GradingError("matrix-unit semigroup needs a positive size")
            self.size = size
        else:
            raise GradingError(f"unknown grading kind: {kind!r}")

    # -- construction checks -------------------------------------------------

    def _check_group(self):
        m = self.order
        if len(self.table) != m or any(len(row) != m for row in self.table):
            raise GradingError("Cayley table must be square and match the carrier")
        for row in self.table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < m:
                    raise GradingError(f"Cayley table entry out of range: {v!r}")
        t = self.table
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise GradingError(
                            f"multiplication is not associative at ({a},{b},{c})"
                        )
        identity = None
        for e in range(m):
            if all(t[e][g] == g and t[g][e] == g for g in range(m)):
                identity = e
                break
        if identity is None:
            raise GradingError("Cayley table has no identity element")
        inverse = [None] * m
        for g in range(m):
            for h in range(m):
                if t[g][h] == identity and t[h][g] == identity:
                    inverse[g] = h
                    break
            if inverse[g] is None:
                raise GradingError(f"element {self.names[g]!r} has no inverse")
        return identity, tuple(inverse)

    # -- arithmetic -----------------------------------------------------------

    def mul(self, a: Grade, b: Grade) -> Grade:
        if self.kind == FINITE_GROUP:
            return self.table[a][b]
        if self.kind == INTEGERS:
            return a + b
        if a == MU_ZERO or b == MU_ZERO:
            return MU_ZERO
        return (a[0], b[1]) if a[1] == b[0] else MU_ZERO

    def product(self, grades: Iterable[Grade]) -> Grade:
        """Ordered product of grades; the empty product is the identity.

        The matrix-position kind has no identity, so an empty product there
        is an error rather than a value.
        """
        it = iter(grades)
        if self.kind == MATRIX_UNITS:
            try:
                acc = next(it)
            except StopIteration:
                raise GradingError("empty product is undefined without an identity")
        else:
            acc = self.identity
        for g in it:
            acc = self.mul(acc, g)
        return acc

    @property
    def identity(self) -> Grade:
        if self.kind == FINITE_GROUP:
            return self._identity
        if self.kind == INTEGERS:
            return 0
        raise GradingError("the matrix-position semigroup has no identity element")

    def inverse(self, g: Grade) -> Grade:
        if self.kind == FINITE_GROUP:
            return self._inverse[g]
        if self.kind == INTEGERS:
            return -g
        raise GradingError("the matrix-position semigroup has no inverses")

    @property
    def has_identity(self) -> bool:
        return self.kind != MATRIX_UNITS

    @property
    def has_inverses(self) -> bool:
        return self.kind != MATRIX_UNITS

    # -- membership and formatting ---------------------------------------------

    def contains(self, g: Grade) -> bool:
        if self.kind == FINITE_GROUP:
            return isinstance(g, int) and 0 <= g < self.order
        if self.kind == INTEGERS:
            return isinstance(g, int)
        if g == MU_ZERO:
            return True
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and all(isinstance(x, int) and 1 <= x <= self.size for x in g)
        )

    def require(self, g: Grade) -> Grade:
        if not self.contains(g):
            raise GradingError(f"{g!r} is not a grade of this structure")
        return g

    def elements(self) -> Tuple[Grade, ...]:
        """All grades, for the finite kinds only."""
        if self.kind == FINITE_GROUP:
            return tuple(range(self.order))
        if self.kind == MATRIX_UNITS:
            pairs = [
                (i, j)
                for i in range(1, self.size + 1)
                for j in range(1, self.size + 1)
            ]
            return (MU_ZERO, *pairs)
        raise GradingError("the integer grading has infinitely many grades")

    def grade_from_int(self, value: int) -> Grade:
        """Map an integer literal to a grade, per the text grammar.

        Cyclic groups reduce modulo the order, general finite groups treat the
        value as a carrier index, the integer kind takes it verbatim, and the
        matrix-position kind accepts only 0 (the absorbing zero).
        """
        if self.kind == INTEGERS:
            return value
        if self.kind == FINITE_GROUP:
            if self.is_cyclic:
                return value % self.order
            if 0 <= value < self.order:
                return value
            raise GradingError(f"grade index {value} outside the carrier")
        if value == 0:
            return MU_ZERO
        raise GradingError("matrix-position grades are pairs (i,j) or 0")

    def format_grade(self, g: Grade) -> str:
        self.require(g)
        if self.kind == MATRIX_UNITS:
            return "0" if g == MU_ZERO else f"({g[0]},{g[1]})"
        return str(g)

    def __repr__(self):
        if self.kind == FINITE_GROUP:
            return f"GradingStructure(finite-group, order={self.order})"
        if self.kind == MATRIX_UNITS:
            return f"GradingStructure(matrix-units, size={self.size})"
        return "GradingStructure(integers)"


def cyclic_group(n: int) -> GradingStructure:
    """Additive group of residues modulo n, with the residues as indices."""
    if n < 1:
        raise GradingError("cyclic group order must be positive")
    names = [str(i) for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GradingStructure(FINITE_GROUP, names=names, table=table, cyclic=True)


def integers() -> GradingStructure:
    return GradingStructure(INTEGERS)


def matrix_unit_semigroup(n: int) -> GradingStructure:
    return GradingStructure(MATRIX_UNITS, size=n)


def group_from_table(names: Sequence[str], table: Sequence[Sequence[int]]) -> GradingStructure:
    return GradingStructure(FINITE_GROUP, names=names, table=table)


@dataclass(frozen=True)
class RowStep:
    """Rows where a homogeneous element of one degree can start.

    ``rows`` lists every row k that admits a matrix unit of the requested
    degree; ``target[k]`` is the unique column (equivalently, the next row in
    a product walk) forced by that degree.
    """

    rows: Tuple[int, ...]
    target: Dict[int, int]


@dataclass(frozen=True)
class RowWalk:
    """Row data for a sequence of degrees multiplied left to right.

    ``paths[k]`` has length m+1 for a degree sequence of length m: it starts
    at k and records every intermediate row.  A row k is listed iff the whole
    walk stays defined; an empty ``rows`` means the corresponding monomial
    shape evaluates to zero on generic matrices.
    """

    rows: Tuple[int, ...]
    paths: Dict[int, Tuple[int, ...]]


class ElementaryGrading:
    """Grading of the n-by-n matrix algebra induced by distinct row grades.

    Instances are immutable value objects; all derived data (support, row
    maps) is computed from the inducing tuple.  The diagonal is exactly the
    neutral component for group kinds because the row grades are distinct.
    """

    def __init__(self, structure: GradingStructure, row_grades: Sequence[Grade], spec: Optional[str] = None):
        row_grades = tuple(row_grades)
        if not row_grades:
            raise GradingError("an elementary grading needs at least one row grade")
        for g in row_grades:
            structure.require(g)
        if len(set(row_grades)) != len(row_grades):
            raise GradingError("the inducing tuple must have pairwise distinct entries")
        if structure.kind == MATRIX_UNITS:
            expected = tuple((i, i) for i in range(1, structure.size + 1))
            if row_grades != expected:
                raise GradingError(
                    "the matrix-position grading is fixed: row grades must be "
                    "the diagonal positions (1,1), ..., (n,n)"
                )
        self.structure = structure
        self.row_grades = row_grades
        self.n = len(row_grades)
        self.spec = spec
        if structure.kind != MATRIX_UNITS:
            self._row_of_grade = {g: i + 1 for i, g in enumerate(row_grades)}
        else:
            self._row_of_grade = {}
        self._support = frozenset(
            self.unit_degree(i, j)
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
        )

    def unit_degree(self, i: int, j: int) -> Grade:
        """Degree of the matrix unit at row i, column j (both 1-based)."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise GradingError(f"matrix unit position ({i},{j}) out of range")
        if self.structure.kind == MATRIX_UNITS:
            return (i, j)
        st = self.structure
        return st.mul(st.inverse(self.row_grades[i - 1]), self.row_grades[j - 1])

    def support(self) -> frozenset:
        """All degrees carried by some matrix unit."""
        return self._support

    @property
    def neutral(self) -> Optional[Grade]:
        return self.structure.identity if self.structure.has_identity else None

    def degree_rows(self, h: Grade) -> RowStep:
        """Rows admitting a unit of degree h, with the forced column per row."""
        self.structure.require(h)
        if self.structure.kind == MATRIX_UNITS:
            if h != MU_ZERO and 1 <= h[0] <= self.n and 1 <= h[1] <= self.n:
                return RowStep((h[0],), {h[0]: h[1]})
            return RowStep((), {})
        st = self.structure
        rows = []
        target: Dict[int, int] = {}
        for k in range(1, self.n + 1):
            j = self._row_of_grade.get(st.mul(self.row_grades[k - 1], h))
            if j is not None:
                rows.append(k)
                target[k] = j
        return RowStep(tuple(rows), target)

    def row_walk(self, hs: Sequence[Grade]) -> RowWalk:
        """Surviving row walks for a left-to-right sequence of degrees."""
        steps = {}
        for h in hs:
            if h not in steps:
                steps[h] = self.degree_rows(h)
        rows = []
        paths: Dict[int, Tuple[int, ...]] = {}
        for k in range(1, self.n + 1):
            path = [k]
            cur = k
            alive = True
            for h in hs:
                cur = steps[h].target.get(cur)
                if cur is None:
                    alive = False
                    break
                path.append(cur)
            if alive:
                rows.append(k)
                paths[k] = tuple(path)
        return RowWalk(tuple(rows), paths)

    def describe(self) -> str:
        if self.spec:
            return self.spec
        grades = ",".join(self.structure.format_grade(g) for g in self.row_grades)
        return f"{self.structure.kind}[{grades}]"

    def __repr__(self):
        return f"ElementaryGrading({self.describe()})"


# -- complete sequences of residues -------------------------------------------


def is_complete_sequence(n: int, seq: Sequence[int]) -> bool:
    """Whether a length-n residue sequence sums to 0 with exhaustive partial sums."""
    if len(seq) != n:
        raise GradingError(f"expected a sequence of length {n}, got {len(seq)}")
    partial = set()
    acc = 0
    for x in seq:
        acc = (acc + x) % n
        partial.add(acc)
    return acc == 0 and partial == set(range(n))


def complete_sequence_unit_witness(n: int, seq: Sequence[int]) -> Optional[Tuple[Tuple[int, int], ...]]:
    """Chain of matrix units realizing a complete sequence, or None.

    For a complete sequence the returned units e_{i_l j_l} have degree seq[l]
    under the canonical residue grading, consecutive units are composable
    (i_{l+1} = j_l), the start rows exhaust {1..n}, and the chain closes up
    (i_1 = j_n).  The construction walks the partial sums starting at row 1.
    """
    if not is_complete_sequence(n, seq):
        return None

    def rep(row: int) -> int:
        return (row - 1) % n + 1

    units = []
    acc = 0
    for x in seq:
        nxt = acc + x
        units.append((rep(1 + acc), rep(1 + nxt)))
        acc = nxt
    return tuple(units)


def enumerate_complete_sequences(n: int, *, max_size: int = 6) -> list:
    """All complete length-n residue sequences in lexicographic order."""
    if n > max_size:
        raise GradingError(
            f"refusing to enumerate {n}**{n} sequences (bound {max_size}); "
            "raise max_size explicitly if you mean it"
        )
    return [
        seq
        for seq in itertools.product(range(n), repeat=n)
        if is_complete_sequence(n, seq)
    ]


# -- grading spec strings -------------------------------------------------------


def _positive_int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise GradingError(f"{what} must be an integer, got {text!r}")
    if value < 1:
        raise GradingError(f"{what} must be positive, got {value}")
    return value


def _parse_cayley_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise GradingError(f"cannot read Cayley table file {path!r}: {exc}")
    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GradingError(f"Cayley table file {path!r} is empty")
    names = lines[0].split()
    m = len(names)
    if len(set(names)) != m:
        raise GradingError("duplicate element names in Cayley table header")
    if len(lines) < m + 1:
        raise GradingError(f"Cayley table needs {m} product rows, found {len(lines) - 1}")
    index = {name: i for i, name in enumerate(names)}
    table = []
    for r, line in enumerate(lines[1 : m + 1], start=1):
        entries = line.split()
        if len(entries) != m:
            raise GradingError(f"Cayley table row {r} has {len(entries)} entries, expected {m}")
        row = []
        for name in entries:
            if name not in index:
                raise GradingError(f"unknown element {name!r} in Cayley table row {r}")
            row.append(index[name])
        table.append(row)
    return names, table


def parse_grading_spec(spec: str) -> ElementaryGrading:
    """Build a grading from a spec string.

    Supported forms: ``zn:<n>`` and ``zp:<p>`` (canonical residue grading,
    the latter insisting on a prime), ``z:<n>`` (canonical integer grading),
    ``mu:<n>`` (positional grading), and ``group:<file>:<g1,...,gn>`` where
    the file holds element names on the first line followed by the Cayley
    table rows, written with element names in row-times-column order.
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise GradingError(f"malformed grading spec {spec!r}")
    if head in ("zn", "zp"):
        n = _positive_int(rest, "modulus")
        if head == "zp" and not _is_prime(n):
            raise GradingError(f"zp grading needs a prime modulus, got {n}")
        structure = cyclic_group(n)
        row_grades = tuple(i % n for i in range(1, n + 1))
        return ElementaryGrading(structure, row_grades, spec=spec)
    if head == "z":
        n = _positive_int(rest, "matrix size")
        return ElementaryGrading(integers(), tuple(range(1, n + 1)), spec=spec)
    if head == "mu":
        n = _positive_int(rest, "matrix size")
        structure = matrix_unit_semigroup(n)
        return ElementaryGrading(structure, tuple((i, i) for i in range(1, n + 1)), spec=spec)
    if head == "group":
        file_part, sep2, tuple_part = rest.rpartition(":")
        if not sep2:
            raise GradingError("group spec needs both a file and a tuple of elements")
        names, table = _parse_cayley_file(file_part)
        structure = group_from_table(names, table)
        index = {name: i for i, name in enumerate(names)}
        row_grades = []
        for token in tuple_part.split(","):
            token = token.strip()
            if token not in index:
                raise GradingError(f"unknown group element {token!r} in grading tuple")
            row_grades.append(index[token])
        return ElementaryGrading(structure, tuple(row_grades), spec=spec)
    raise GradingError(f"unknown grading spec kind {head!r}")
