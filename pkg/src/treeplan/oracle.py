"""Brute-force ground truth and sweep verification.

Nothing here trusts the planner: the multiset search enumerates arities
up to 9 (strictly wider than the planner's {2..5}, so optimality checks
are not circular) best-first by running time, and the tree search
explores every rooted tree shape within a span budget.  ``sweep_verify``
re-derives the planner, rework and hint claims pointwise and emits a
machine-readable report; violations are report content, not exceptions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

from treeplan import hints
from treeplan.rework import rework as _rework
from treeplan.engine import schedule
from treeplan.planner import minimal_index, plan_arities, validate_constraints
from treeplan.topology import build_same_depth, rightmost_profile, running_time, work

MIN_WORK_MAX_LEAVES = 64
_INF = float("inf")


class ScaleError(ValueError):
    """Requested exhaustive search beyond the configured size bound."""


@dataclass(frozen=True, slots=True)
class SearchResult:
    l: int
    min_time: int
    optimal_multisets: tuple[tuple[int, ...], ...]  # each sorted descending
    elapsed: float


@lru_cache(maxsize=None)
def _multisets_with_sum(s: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    """Descending multisets of integers in 2..max_part summing to s."""
    if s == 0:
        return ((),)
    out = []
    for p in range(min(s, max_part), 1, -1):
        if s - p == 1:
            continue
        for rest in _multisets_with_sum(s - p, p):
            out.append((p,) + rest)
    return tuple(out)


def brute_force_min_time(l: int, max_arity: int = 9) -> SearchResult:
    """All minimal-running-time arity multisets for l, searched best-first.

    Iterating the total sum upward makes the first feasible level provably
    minimal.  Both feasibility constraints are checked: product >= l and
    product/a < l for every member (the second can only fail at sum levels
    below the minimum, but it is part of the contract).
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if max_arity < 2:
        raise ValueError(f"need max_arity >= 2, got {max_arity}")
    t0 = time.monotonic()
    s = 2
    while True:
        found = tuple(
            m
            for m in _multisets_with_sum(s, max_arity)
            if prod(m) >= l and all(prod(m) < l * a for a in m)
        )
        if found:
            return SearchResult(
                l=l, min_time=s, optimal_multisets=found, elapsed=time.monotonic() - t0
            )
        s += 1


def min_work_tree(l: int, time_budget: int) -> int:
    """Minimal edge count over all rooted trees with l leaves whose
    recursive running time is at most ``time_budget``.

    Arity-1 nodes are excluded: deleting one always reduces both work and
    span, so they never appear in a minimal tree.  Children are treated as
    a multiset of subtree shapes, memoized on (leaves, remaining span).
    Raises ScaleError for l above the configured bound; cost grows fast.
    """
    if l < 1:
        raise ValueError(f"need l >= 1, got {l}")
    if l > MIN_WORK_MAX_LEAVES:
        raise ScaleError(f"l={l} exceeds exhaustive-search bound {MIN_WORK_MAX_LEAVES}")
    best = _min_work(l, time_budget)
    if best is _INF:
        raise ValueError(f"no tree over {l} leaves fits span budget {time_budget}")
    return int(best)


@lru_cache(maxsize=None)
def _min_work(l: int, budget: int):
    if l == 1:
        return 0
    best = _INF
    for arity in range(2, min(l, budget) + 1):
        got = _split(l, arity, budget - arity)
        if arity + got < best:
            best = arity + got
    return best


@lru_cache(maxsize=None)
def _split(l: int, parts: int, budget: int):
    """Min total work of `parts` subtrees covering l leaves, span <= budget."""
    if parts == 1:
        return _min_work(l, budget)
    best = _INF
    for first in range(1, l - parts + 2):
        head = _min_work(first, budget)
        if head is _INF:
            continue
        rest = _split(l - first, parts - 1, budget)
        if head + rest < best:
            best = head + rest
    return best


ALL_CHECKS = (
    "planner_sum",
    "planner_tiebreak",
    "eq1",
    "rework_leaves",
    "rework_time",
    "rework_work",
    "rework_processors",
    "hints",
)

PLANNER_CHECKS = ("planner_sum", "planner_tiebreak", "eq1")
REWORK_CHECKS = ("rework_leaves", "rework_time", "rework_work", "rework_processors")


def _arity_counts(multiset: Iterable[int]) -> tuple[int, int, int]:
    m = tuple(multiset)
    return (m.count(5), m.count(4), m.count(3))


def sweep_verify(
    l_min: int,
    l_max: int,
    checks: Sequence[str] | None = None,
    max_arity: int = 9,
) -> list[dict]:
    """Point-by-point verification over l_min..l_max inclusive.

    Returns one record {"l", "check", "status", "detail"} per check per l,
    sorted by l; status is "ok" or "violation".  Degenerate rebuild events
    (rebuilt subtree root of arity 1, an open possibility the planner's
    inputs are not known to trigger) are reported as extra "ok" records.
    """
    if l_min < 2:
        raise ValueError(f"need l_min >= 2, got {l_min}")
    selected = ALL_CHECKS if checks is None else tuple(checks)
    unknown = set(selected) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    records: list[dict] = []

    def emit(l: int, check: str, ok: bool, detail: str) -> None:
        records.append(
            {"l": l, "check": check, "status": "ok" if ok else "violation", "detail": detail}
        )

    for l in range(l_min, l_max + 1):
        plan = plan_arities(l)
        arities = plan.arities
        want_planner = set(selected) & set(PLANNER_CHECKS)
        if want_planner:
            result = brute_force_min_time(l, max_arity=max_arity)
            planned = tuple(sorted(arities, reverse=True))
            if "planner_sum" in selected:
                emit(
                    l,
                    "planner_sum",
                    sum(arities) == result.min_time,
                    f"plan sum {sum(arities)}, oracle min {result.min_time}",
                )
            if "planner_tiebreak" in selected:
                best = max(_arity_counts(m) for m in result.optimal_multisets)
                ok = planned in result.optimal_multisets and _arity_counts(planned) == best
                emit(l, "planner_tiebreak", ok, f"plan {planned}, oracle best counts {best}")
            if "eq1" in selected:
                emit(l, "eq1", validate_constraints(arities, l), f"arities {planned}")
        if set(selected) & set(REWORK_CHECKS):
            same = build_same_depth(plan)
            reworked = _rework(plan)
            tree = reworked.tree
            if "rework_leaves" in selected:
                order = _leaf_order(tree)
                emit(l, "rework_leaves", order == list(range(l)), f"{len(order)} leaves")
            if "rework_time" in selected:
                rt = running_time(tree)
                emit(l, "rework_time", rt == sum(arities), f"time {rt} vs plan {sum(arities)}")
            if "rework_work" in selected:
                w_same, w_re = work(same), work(tree)
                ok = w_re <= w_same and (not reworked.trace or w_re < w_same)
                emit(l, "rework_work", ok, f"work {w_same} -> {w_re}")
            if "rework_processors" in selected:
                p_same = schedule(same).max_processors
                p_re = schedule(tree).max_processors
                emit(l, "rework_processors", p_re <= p_same, f"procs {p_same} -> {p_re}")
            if reworked.degenerate_rebuilds:
                emit(
                    l,
                    "rework_degenerate_rebuild",
                    True,
                    f"{reworked.degenerate_rebuilds} rebuild(s) produced an arity-1 root",
                )
        if "hints" in selected:
            ok, detail = _check_hints(plan)
            emit(l, "hints", ok, detail)
    return records


def _leaf_order(tree) -> list[int]:
    from treeplan.topology import collect_leaves

    return [tree.nodes[nid].block for nid in collect_leaves(tree.nodes, tree.root)]


def _check_hints(plan) -> tuple[bool, str]:
    """Compare the threshold predicate against the direct product test for
    the plan's actual same-depth rightmost states at every level."""
    case_id = plan.case.case_id
    h = plan.height
    arities = plan.arities
    bad = []
    for i in range(1, h):
        cap_i = prod(arities[:i])
        l_i = (plan.l - 1) % cap_i + 1
        if l_i < 2:
            continue
        profile = hints.profile_for_leaf_count(arities, i, l_i)
        direct = prod(arities[1:i]) >= l_i
        try:
            rule = hints.threshold_for(case_id, i)
        except hints.UnsupportedThresholdError:
            rule = hints.ThresholdRule(case_id=case_id, min_i=i, threshold=_derived(arities, i))
        predicted = hints.updatable(rule, profile)
        if predicted != direct:
            bad.append(f"i={i} profile {profile} predicted {predicted} direct {direct}")
    if bad:
        return False, "; ".join(bad)
    return True, f"levels 1..{h - 1} consistent"


@lru_cache(maxsize=None)
def _derived(arities: tuple[int, ...], i: int) -> tuple[int, ...]:
    from treeplan.planner import ArityPlan

    return hints.derive_threshold(ArityPlan(l=prod(arities), arities=arities, case=None), i)


def case_uniqueness_sweep(l_min: int, l_max: int) -> list[int]:
    """All l in the range where the number of firing cases is not one."""
    from treeplan.planner import matching_cases

    violations = []
    i, p = 1, 3
    for l in range(max(2, l_min), l_max + 1):
        while p < l:
            i += 1
            p *= 3
        if len(matching_cases(l, i, p)) != 1:
            violations.append(l)
    return violations
