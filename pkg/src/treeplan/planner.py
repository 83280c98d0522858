"""Selection of the minimal-running-time arity multiset for a block count.

For a message of ``l`` blocks hashed by a rate-1 tree mode, the parallel
running time of a same-depth tree with level arities ``a_1..a_h`` is the
sum of the arities.  For every ``l >= 2`` there is a unique multiset drawn
from {2,3,4,5} that minimises this sum while keeping the counts of 5s,
then 4s, then 3s as large as possible.  ``select_case`` evaluates the
eleven interval conditions that identify it; all comparisons are
cross-multiplied integer comparisons, never floating point, because the
interval boundaries are exact rationals and an off-by-one at a boundary
changes the output multiset.

``l == 1`` falls outside the case analysis: ``plan_message`` maps it to
the empty arity sequence (a single leaf, zero time, zero work).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence


class DegenerateInputError(ValueError):
    """Raised when an operation requires l >= 2 and gets less."""


class CaseSelectionError(RuntimeError):
    """Zero or multiple case conditions fired: an implementation bug."""


@dataclass(frozen=True, slots=True)
class CaseSelection:
    """Which of the eleven cases fired and the arity counts it prescribes."""

    case_id: int
    i: int
    h5: int
    h4: int
    h3: int
    h2: int

    @property
    def total_levels(self) -> int:
        return self.h5 + self.h4 + self.h3 + self.h2


@dataclass(frozen=True, slots=True)
class ArityPlan:
    """Chosen level arities, index 0 = base level, last index = root level.

    The sequence is non-increasing from base to root and satisfies the
    feasibility constraints checked by :func:`validate_constraints`.
    ``case`` is ``None`` only for the degenerate single-leaf plan (l=1).
    """

    l: int
    arities: tuple[int, ...]
    case: CaseSelection | None

    @property
    def height(self) -> int:
        return len(self.arities)

    @property
    def running_time(self) -> int:
        return sum(self.arities)


def minimal_index(l: int) -> int:
    """Least i >= 1 with 3**i >= l (then 3**i < 3l holds automatically)."""
    if l < 2:
        raise DegenerateInputError(f"need l >= 2, got {l}")
    i, p = 1, 3
    while p < l:
        i += 1
        p *= 3
    return i


# case_id -> (|A| - i, h5, h4, h3 - i, h2)
_CASE_SHAPE = {
    1: (0, 0, 0, 0, 0),
    2: (0, 0, 1, -2, 1),
    3: (-1, 0, 3, -4, 0),
    4: (-1, 1, 1, -3, 0),
    5: (0, 0, 0, -1, 1),
    6: (-1, 0, 2, -3, 0),
    7: (-1, 1, 0, -2, 0),
    8: (-1, 1, 1, -4, 1),
    9: (-1, 0, 1, -2, 0),
    10: (-1, 0, 2, -4, 1),
    11: (-1, 1, 0, -3, 1),
}


def matching_cases(l: int, i: int, p: int) -> list[int]:
    """All case ids whose condition holds for l, given i and p = 3**i.

    Exactly one id is expected; callers that want the uniqueness guarantee
    go through :func:`select_case`.  Comparisons like ``3^i < 9l/8`` are
    evaluated as ``8*p < 9*l``.
    """
    l2, l3, l9, l27, l81 = 2 * l, 3 * l, 9 * l, 27 * l, 81 * l
    out = []
    if (8 * p < l9) or (i < 2 and 2 * p < l3):
        out.append(1)
    if (l9 <= 8 * p and 64 * p < l81 and i >= 2) or (
        2 <= i < 4 and l81 < 64 * p and 20 * p < l27
    ):
        out.append(2)
    if l81 <= 64 * p and 20 * p < l27 and i >= 4:
        out.append(3)
    if l27 <= 20 * p and 2 * p < l3 and i >= 3:
        out.append(4)
    if (
        (l3 <= 2 * p and 16 * p < l27 and i >= 1)
        or (l3 <= 2 * p and 5 * p < l9 and i < 3)
        or (l9 <= 5 * p and 4 * p < l9 and i < 2)
    ):
        out.append(5)
    if l27 <= 16 * p and 5 * p < l9 and i >= 3:
        out.append(6)
    if (l9 <= 5 * p and 40 * p < l81 and i >= 2) or (
        l81 <= 40 * p and 4 * p < l9 and 2 <= i <= 3
    ):
        out.append(7)
    if l81 <= 40 * p and 4 * p < l9 and i >= 4:
        out.append(8)
    if (
        (l9 <= 4 * p and 32 * p < l81 and i >= 2)
        or (l81 <= 32 * p and p < l3 and i == 2)
        or (l81 <= 32 * p and 10 * p < l27 and i < 4)
    ):
        out.append(9)
    if l81 <= 32 * p and 10 * p < l27 and i >= 4:
        out.append(10)
    if l27 <= 10 * p and p < l3 and i >= 3:
        out.append(11)
    return out


def select_case(l: int) -> CaseSelection:
    """Evaluate the eleven interval conditions and return the unique match."""
    i = minimal_index(l)
    fired = matching_cases(l, i, 3**i)
    if len(fired) != 1:
        raise CaseSelectionError(f"l={l}: cases {fired} fired, expected exactly one")
    case_id = fired[0]
    d_levels, h5, h4, d_h3, h2 = _CASE_SHAPE[case_id]
    h3 = i + d_h3
    sel = CaseSelection(case_id=case_id, i=i, h5=h5, h4=h4, h3=h3, h2=h2)
    if sel.total_levels != i + d_levels:
        raise CaseSelectionError(f"l={l}: case {case_id} level count mismatch")
    if case_id == 1 and h3 < 1:
        raise CaseSelectionError(f"l={l}: case 1 with h3={h3}")
    return sel


def plan_arities(l: int) -> ArityPlan:
    """Expand the case selection into the decreasing arity sequence.

    Fives first (base level gets the largest arity), then fours, threes,
    twos.
    """
    sel = select_case(l)
    arities = (5,) * sel.h5 + (4,) * sel.h4 + (3,) * sel.h3 + (2,) * sel.h2
    return ArityPlan(l=l, arities=arities, case=sel)


def plan_message(l: int) -> ArityPlan:
    """Like :func:`plan_arities` but maps l=1 to the empty single-leaf plan."""
    if l < 1:
        raise DegenerateInputError(f"need l >= 1, got {l}")
    if l == 1:
        return ArityPlan(l=1, arities=(), case=None)
    return plan_arities(l)


def validate_constraints(arities: Sequence[int], l: int) -> bool:
    """True iff product(arities) >= l and dropping any one arity goes below l."""
    if not arities or any(a < 1 for a in arities):
        raise ValueError("arities must be non-empty and all >= 1")
    p = prod(arities)
    if p < l:
        return False
    # p/a_j < l as exact integers: p < l*a_j
    return all(p < l * a for a in arities)
