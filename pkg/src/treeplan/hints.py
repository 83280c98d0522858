"""Order on rightmost-arity sequences and updatability thresholds.

A rightmost subtree at level i is *updatable* when it can be rebuilt at
strictly smaller height, i.e. :func:`treeplan.rework.largest_feasible_base`
returns j >= 2.  Instead of recomputing the product bound, one can compare
the sequence of rightmost arities (top level first) against a fixed
threshold sequence under the order implemented by :func:`seq_precedes`.

``threshold_for`` returns the three published constants.  Careful: the
exhaustive derivation in :func:`derive_threshold` shows that the case-2
constant (1,3,1) is exact only for i <= 3 and the case-3 twelve-entry
constant is conservative at i = 12; ``derive_threshold`` is the ground
truth, obtained by enumerating every feasible subtree leaf count.

The defining text of the order admits two readings; its own worked
comparisons (e.g. (3,1,1,9,...) precedes (3,1,2,4)) are only consistent
with the lexicographic one, which is therefore the default.  The literal
strict-suffix variant is kept behind ``mode="literal"`` for study.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from treeplan.planner import ArityPlan
from treeplan.topology import ceil_div


class UnsupportedThresholdError(LookupError):
    """No published constant for this case/level; use derive_threshold."""


class OrderInconsistencyError(RuntimeError):
    """The updatable set is not downward-closed under the sequence order:
    evidence against the lexicographic reading.  Surfaced, never masked."""


@dataclass(frozen=True, slots=True)
class ThresholdRule:
    case_id: int
    min_i: int
    threshold: tuple[int, ...]


def seq_precedes(
    r: Sequence[int], q: Sequence[int], mode: str = "lexicographic"
) -> bool:
    """True iff r is at-or-below q, comparing from the top (root) end.

    Only the first len(q) entries of r participate; len(q) <= len(r) is
    required.  Lexicographic mode: equal prefixes tie at-or-below, and the
    first differing position decides.  Literal mode follows the strict
    reading of the defining text: after the common prefix, *every*
    remaining compared entry of r must be strictly smaller.
    """
    if len(q) > len(r):
        raise ValueError(f"comparison sequence longer than profile: {len(q)} > {len(r)}")
    head = tuple(r[: len(q)])
    q = tuple(q)
    if mode == "lexicographic":
        return head <= q
    if mode == "literal":
        if head == q:
            return True
        if head[0] < q[0]:
            return True
        for k in range(1, len(q)):
            if head[:k] == q[:k] and all(head[j] < q[j] for j in range(k, len(q))):
                return True
        return False
    raise ValueError(f"unknown mode {mode!r}")


_CASE3_CONSTANT = (1, 3, 1, 3, 1, 3, 1, 3, 1, 3, 1, 2)


def threshold_for(case_id: int, i: int) -> ThresholdRule:
    """Published threshold constants for cases 1-3.

    Level 1 has no shorter rebuild, so every case uses the never-matching
    (1) there.  Cases 4-11 and case 3 below level 12 have no published
    constants; callers fall back to :func:`derive_threshold`.
    """
    if case_id == 1:
        return ThresholdRule(case_id=1, min_i=1, threshold=(1,))
    if case_id == 2:
        if i == 1:
            return ThresholdRule(case_id=2, min_i=1, threshold=(1,))
        if i == 2:
            return ThresholdRule(case_id=2, min_i=2, threshold=(1, 3))
        return ThresholdRule(case_id=2, min_i=3, threshold=(1, 3, 1))
    if case_id == 3:
        if i >= 12:
            return ThresholdRule(case_id=3, min_i=12, threshold=_CASE3_CONSTANT)
        raise UnsupportedThresholdError(f"case 3 has no published constant for i={i}")
    raise UnsupportedThresholdError(f"case {case_id} has no published constants")


def updatable(rule: ThresholdRule, profile: Sequence[int]) -> bool:
    return seq_precedes(profile, rule.threshold)


def profile_for_leaf_count(arities: Sequence[int], i: int, l_i: int) -> tuple[int, ...]:
    """Rightmost profile (r_i, ..., r_1) of a same-depth tree over l_i
    leaves with level arities a_1..a_i, computed arithmetically."""
    n = l_i
    out = []
    for m in range(i):
        a = arities[m]
        nn = ceil_div(n, a)
        out.append(n - a * (nn - 1))
        n = nn
    return tuple(reversed(out))


def derive_threshold(plan: ArityPlan, i: int) -> tuple[int, ...]:
    """Mechanically derive the exact updatability threshold at level i.

    Enumerates every feasible leaf count of the rightmost level-i subtree
    (the profile is a function of that count alone given the arities),
    marks it updatable iff the suffix a_2..a_i already covers it, checks
    that the updatable set is downward-closed under the lexicographic
    order, and returns the shortest prefix of the maximal updatable
    profile that separates it from every non-updatable one.
    """
    if not 1 <= i < plan.height:
        raise ValueError(f"need 1 <= i < plan height {plan.height}, got {i}")
    arities = plan.arities
    cap = prod(arities[:i])
    cap2 = prod(arities[1:i])  # capacity of a rebuild one level shorter
    t_max: tuple[int, ...] | None = None  # max updatable profile
    m_min: tuple[int, ...] | None = None  # min non-updatable profile
    for l_i in range(2, cap + 1):
        p = profile_for_leaf_count(arities, i, l_i)
        if l_i <= cap2:
            if t_max is None or p > t_max:
                t_max = p
        else:
            if m_min is None or p < m_min:
                m_min = p
    if t_max is None:
        # nothing updatable at this level; return a never-matching head
        assert m_min is not None
        return (m_min[0] - 1,)
    if m_min is None:
        return t_max
    if not t_max < m_min:
        raise OrderInconsistencyError(
            f"updatable set not downward-closed at i={i}: "
            f"max updatable {t_max} >= min non-updatable {m_min}"
        )
    for k in range(len(t_max)):
        if t_max[k] != m_min[k]:
            return t_max[: k + 1]
    return t_max
