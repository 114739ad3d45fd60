"""Rewriting calculus on graded monomials with replayable congruence proofs.

Two monomials with equal generic evaluations at some shared nonzero entry are
congruent modulo the commutation rules, and the congruence is witnessed by an
explicit chain of rule applications.  Rules act on contiguous blocks (images
of the generator variables under graded substitution):

* ``commute-e``           swap two adjacent blocks of neutral degree,
* ``reverse-conjugate``   a b c -> c b a when deg(a) = deg(c) = deg(b)^-1 != e,
* ``kill-empty-support``  a variable whose degree has no admissible row
                          annihilates the monomial,
* ``mu-commute`` / ``mu-reverse`` / ``mu-zero``
                          the positional-grading counterparts (diagonal-degree
                          swap, off-diagonal reversal, zero-degree kill).

Windows are tuples of 1-based inclusive boundary positions: a swap window
(p, q, r) means blocks [p..q] and [q+1..r]; a reversal window (p, q, r, s)
means blocks [p..q], [q+1..r], [r+1..s]; a kill window is (p,).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .grading import ElementaryGrading, MATRIX_UNITS, MU_ZERO
from .freealg import Monomial, classify, format_monomial, parse_monomial

SWAP_NEUTRAL = "commute-e"
REVERSE_CONJUGATE = "reverse-conjugate"
KILL_EMPTY_SUPPORT = "kill-empty-support"
MU_SWAP = "mu-commute"
MU_REVERSE = "mu-reverse"
MU_KILL = "mu-zero"

_GROUP_RULES = {SWAP_NEUTRAL, REVERSE_CONJUGATE, KILL_EMPTY_SUPPORT}
_MU_RULES = {MU_SWAP, MU_REVERSE, MU_KILL}


class RuleError(ValueError):
    """A rewrite rule was applied outside its precondition."""


@dataclass(frozen=True)
class Step:
    rule: str
    window: Tuple[int, ...]


@dataclass(frozen=True)
class CongruenceProof:
    """Replayable rewrite chain from ``start`` to ``end``."""

    start: Monomial
    end: Monomial
    steps: Tuple[Step, ...]


def _check_rule_kind(rule: str, grading: ElementaryGrading):
    is_mu = grading.structure.kind == MATRIX_UNITS
    if rule in _MU_RULES and not is_mu:
        raise RuleError(f"rule {rule!r} needs a matrix-position grading")
    if rule in _GROUP_RULES and is_mu:
        raise RuleError(f"rule {rule!r} needs a group-kind grading")
    if rule not in _GROUP_RULES | _MU_RULES:
        raise RuleError(f"unknown rule {rule!r}")


def _block_degree(m: Monomial, grading: ElementaryGrading, a: int, b: int):
    return m.window(a, b).degree(grading)


def _is_diagonal(grade) -> bool:
    return grade != MU_ZERO and grade[0] == grade[1]


def apply_rule(m: Monomial, rule: str, window: Tuple[int, ...], grading: ElementaryGrading) -> Optional[Monomial]:
    """Apply one rule at a window; returns the new monomial, or None for a kill."""
    _check_rule_kind(rule, grading)
    l = len(m)
    if rule in (SWAP_NEUTRAL, MU_SWAP):
        if len(window) != 3:
            raise RuleError("swap rules take a window (p, q, r)")
        p, q, r = window
        if not (1 <= p <= q < r <= l):
            raise RuleError(f"bad swap window {window} for length {l}")
        da = _block_degree(m, grading, p, q)
        db = _block_degree(m, grading, q + 1, r)
        if rule == SWAP_NEUTRAL:
            e = grading.structure.identity
            if da != e or db != e:
                raise RuleError("commute-e needs two adjacent neutral blocks")
        else:
            if not (_is_diagonal(da) and _is_diagonal(db)):
                raise RuleError("mu-commute needs two adjacent diagonal-degree blocks")
        a = m.vars[p - 1 : q]
        b = m.vars[q : r]
        return Monomial(m.vars[: p - 1] + b + a + m.vars[r:])
    if rule in (REVERSE_CONJUGATE, MU_REVERSE):
        if len(window) != 4:
            raise RuleError("reversal rules take a window (p, q, r, s)")
        p, q, r, s = window
        if not (1 <= p <= q < r < s <= l):
            raise RuleError(f"bad reversal window {window} for length {l}")
        da = _block_degree(m, grading, p, q)
        db = _block_degree(m, grading, q + 1, r)
        dc = _block_degree(m, grading, r + 1, s)
        if rule == REVERSE_CONJUGATE:
            st = grading.structure
            if da != dc or da == st.identity or db != st.inverse(da):
                raise RuleError(
                    "reverse-conjugate needs deg(a) = deg(c) = deg(b)^-1 != e"
                )
        else:
            if (
                da != dc
                or da == MU_ZERO
                or _is_diagonal(da)
                or db != (da[1], da[0])
            ):
                raise RuleError(
                    "mu-reverse needs off-diagonal deg(a) = deg(c) with deg(b) transposed"
                )
        a = m.vars[p - 1 : q]
        b = m.vars[q : r]
        c = m.vars[r : s]
        return Monomial(m.vars[: p - 1] + c + b + a + m.vars[s:])
    # kill rules
    if len(window) != 1:
        raise RuleError("kill rules take a window (p,)")
    (p,) = window
    if not (1 <= p <= l):
        raise RuleError(f"bad kill window {window} for length {l}")
    grade = m.vars[p - 1].grade
    if rule == KILL_EMPTY_SUPPORT:
        if grading.degree_rows(grade).rows:
            raise RuleError("kill-empty-support needs a degree with no admissible row")
    else:
        if grade != MU_ZERO:
            raise RuleError("mu-zero applies only to zero-degree variables")
    return None


def replay(proof: CongruenceProof, grading: ElementaryGrading) -> Monomial:
    """Re-run a proof, validating every step, and return the final monomial."""
    cur = proof.start
    for step in proof.steps:
        nxt = apply_rule(cur, step.rule, step.window, grading)
        if nxt is None:
            raise RuleError("kill step inside a congruence proof")
        cur = nxt
    if cur != proof.end:
        raise RuleError("replayed chain does not reach the recorded end monomial")
    return cur


def _matched_walks(src: Monomial, dst: Monomial, grading: ElementaryGrading):
    """Shared-entry data: a row k where both evaluations agree on a nonzero
    entry, along with both row paths."""
    hs_src = [v.grade for v in src.vars]
    hs_dst = [v.grade for v in dst.vars]
    w1 = grading.row_walk(hs_src)
    w2 = grading.row_walk(hs_dst)
    for k in w1.rows:
        p1 = w1.paths[k]
        p2 = w2.paths.get(k)
        if p2 is None or p1[-1] != p2[-1]:
            continue
        left = Counter(
            (src.vars[c].grade, src.vars[c].index, p1[c]) for c in range(len(src))
        )
        right = Counter(
            (dst.vars[c].grade, dst.vars[c].index, p2[c]) for c in range(len(dst))
        )
        if left == right:
            return k, p1, p2
    return None


def _rearrangement_steps(grading, base, k1, k2, k3, cur):
    """Steps that bring the block [k2..k3] (suffix-relative) to the front.

    The three suffix blocks A = [1..k1-1], B = [k1..k2-1], C = [k2..k3] satisfy
    deg(A) = deg(C) = deg(B)^-1.  When A is empty or neutral every block is
    neutral and adjacent swaps suffice; otherwise one reversal does it.
    """
    is_mu = grading.structure.kind == MATRIX_UNITS
    swap_rule = MU_SWAP if is_mu else SWAP_NEUTRAL
    rev_rule = MU_REVERSE if is_mu else REVERSE_CONJUGATE
    la, lb, lc = k1 - 1, k2 - k1, k3 - k2 + 1
    off = base
    if la == 0:
        return [Step(swap_rule, (off + 1, off + lb, off + lb + lc))]
    deg_a = cur.window(off + 1, off + la).degree(grading)
    neutral_a = _is_diagonal(deg_a) if is_mu else deg_a == grading.structure.identity
    if neutral_a:
        return [
            Step(swap_rule, (off + la + 1, off + la + lb, off + la + lb + lc)),
            Step(swap_rule, (off + 1, off + la, off + la + lc)),
            Step(swap_rule, (off + lc + 1, off + lc + la, off + lc + la + lb)),
        ]
    return [
        Step(rev_rule, (off + 1, off + la, off + la + lb, off + la + lb + lc))
    ]


def find_congruence(m: Monomial, n: Monomial, grading: ElementaryGrading) -> Optional[CongruenceProof]:
    """Rewrite chain taking m to n, when their evaluations share an entry.

    Both monomials must carry the same variable multiset.  The chain is built
    left to right: whenever the leading variables of the unmatched suffixes
    agree they are stripped; otherwise the suffixes are aligned position by
    position through their shared entry, the least block that must come first
    is located, and a swap or reversal brings it to the front.  Returns None
    exactly when no shared nonzero entry exists (except for m = n, which is
    trivially congruent).
    """
    if Counter(m.vars) != Counter(n.vars):
        raise RuleError("congruence needs monomials with the same variable multiset")
    if m == n:
        return CongruenceProof(m, n, ())
    r = len(m)
    steps: List[Step] = []
    cur = m
    base = 0
    guard = 0
    while base < r:
        guard += 1
        if guard > 6 * r + 6:
            raise RuntimeError("congruence construction failed to converge")
        src = cur.window(base + 1, r)
        dst = n.window(base + 1, r)
        hit = _matched_walks(src, dst, grading)
        if hit is None:
            if base == 0 and not steps:
                return None
            raise RuntimeError("shared entry lost during congruence construction")
        if src.vars[0] == dst.vars[0]:
            base += 1
            continue
        _, p_src, p_dst = hit
        # align src positions with dst positions by (variable, row)
        slots: Dict[tuple, deque] = {}
        for c in range(len(dst)):
            slots.setdefault((dst.vars[c], p_dst[c]), deque()).append(c + 1)
        pos: Dict[int, int] = {}
        for c in range(len(src)):
            key = (src.vars[c], p_src[c])
            queue = slots.get(key)
            if not queue:
                raise RuntimeError("inconsistent alignment despite matching entries")
            pos[queue.popleft()] = c + 1
        # least t whose successor block sits before the front block of dst
        t = 1
        while pos[t + 1] >= pos[1]:
            t += 1
        k1, k2, k3 = pos[t + 1], pos[1], pos[t]
        if not (k1 < k2 <= k3):
            raise RuntimeError("misordered rearrangement windows")
        for step in _rearrangement_steps(grading, base, k1, k2, k3, cur):
            cur = apply_rule(cur, step.rule, step.window, grading)
            steps.append(step)
        if cur.vars[base] != n.vars[base]:
            raise RuntimeError("rearrangement did not surface the target variable")
    if cur != n:
        raise RuntimeError("congruence construction ended on the wrong monomial")
    return CongruenceProof(m, n, tuple(steps))


def follows_from_kill(m: Monomial, grading: ElementaryGrading) -> bool:
    """Whether the monomial identity m is a consequence of the kill rule.

    That happens exactly when some nonempty subword degree leaves the
    support.  Requires m to actually be an identity.
    """
    from .genericmodel import is_identity
    from .freealg import Polynomial

    if not is_identity(Polynomial.from_monomial(m), grading):
        raise RuleError("follows_from_kill expects a monomial identity")
    return not classify(m, grading).support_closed


def proof_to_json(proof: CongruenceProof, grading: ElementaryGrading) -> dict:
    return {
        "start": format_monomial(proof.start, grading),
        "end": format_monomial(proof.end, grading),
        "steps": [
            {"rule": step.rule, "window": list(step.window)} for step in proof.steps
        ],
    }


def proof_from_json(data: dict, grading: ElementaryGrading) -> CongruenceProof:
    steps = tuple(
        Step(item["rule"], tuple(item["window"])) for item in data.get("steps", ())
    )
    return CongruenceProof(
        parse_monomial(data["start"], grading),
        parse_monomial(data["end"], grading),
        steps,
    )
