"""Explicit tree model over message blocks and its cost metrics.

A topology is a rooted tree whose leaves are the l message blocks in
left-to-right order.  Nodes are stored in a flat tuple with every child
appearing before its parent (the root is last); all traversal passes are
therefore simple forward loops.

Useful identities, each asserted in the test suite:

* nested ceilings collapse: ceil(ceil(l/a)/b) == ceil(l/(a*b)),
* level m of a same-depth tree has ceil(l / (a_1 ... a_m)) nodes,
* work (total primitive cost) equals the tree's edge count.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from treeplan.planner import ArityPlan


class InvalidPlanError(ValueError):
    """The arity plan cannot produce a tree over the requested leaves."""


class CompactFormError(ValueError):
    """A compact serialization is inconsistent with its own recomputation."""


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True, slots=True)
class Node:
    """Leaf (carries a block index) or internal node with ordered children."""

    children: tuple[int, ...] | None
    block: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def arity(self) -> int:
        return 0 if self.children is None else len(self.children)


@dataclass(frozen=True, slots=True)
class Topology:
    """Immutable rooted tree; node ids are indices into ``nodes``.

    Invariant: children precede parents in ``nodes`` and the root is the
    last entry.  Builders in this package guarantee it.
    """

    l: int
    nodes: tuple[Node, ...]
    root: int

    def leaf_count(self) -> int:
        return sum(1 for n in self.nodes if n.is_leaf)

    def internal_count(self) -> int:
        return sum(1 for n in self.nodes if not n.is_leaf)


@dataclass(frozen=True, slots=True)
class Metrics:
    running_time: int
    work: int
    level_counts: tuple[int, ...]
    max_processors: int


@dataclass(frozen=True, slots=True)
class CompactForm:
    """(l, arities) regenerate the tree; the profile is validation metadata."""

    l: int
    arities: tuple[int, ...]
    rightmost: tuple[int, ...]
    form: str  # "same_depth" | "reworked"


def build_tree(l: int, arities: Sequence[int]) -> Topology:
    """Same-depth tree over l leaves; level m uses arity ``arities[m-1]``.

    Children are assigned left-to-right greedily, so only the rightmost
    node of a level can have fewer than the level arity.
    """
    if l < 1:
        raise InvalidPlanError(f"need l >= 1, got {l}")
    if not arities:
        if l != 1:
            raise InvalidPlanError(f"empty arity list cannot cover l={l}")
        return Topology(l=1, nodes=(Node(children=None, block=0),), root=0)
    if prod(arities) < l:
        raise InvalidPlanError(f"arities {tuple(arities)} cover only {prod(arities)} < {l} leaves")
    nodes: list[Node] = [Node(children=None, block=b) for b in range(l)]
    level: list[int] = list(range(l))
    for a in arities:
        nxt: list[int] = []
        for p in range(ceil_div(len(level), a)):
            nodes.append(Node(children=tuple(level[p * a : (p + 1) * a])))
            nxt.append(len(nodes) - 1)
        level = nxt
    assert len(level) == 1
    return Topology(l=l, nodes=tuple(nodes), root=level[0])


def build_same_depth(plan: ArityPlan) -> Topology:
    """Build the same-depth tree for an arity plan (l=1 gives a single leaf)."""
    return build_tree(plan.l, plan.arities)


def running_time(t: Topology) -> int:
    """Recursive span: leaves cost 0, a node costs its arity plus the
    slowest child.  Equals the sum of plan arities on same-depth trees."""
    time = [0] * len(t.nodes)
    for nid, node in enumerate(t.nodes):
        if node.children is not None:
            time[nid] = node.arity + max(time[c] for c in node.children)
    return time[t.root]


def work(t: Topology) -> int:
    """Total primitive cost: sum of internal arities, i.e. the edge count."""
    return sum(n.arity for n in t.nodes if n.children is not None)


def rightmost_profile(t: Topology) -> tuple[int, ...]:
    """Arities along the rightmost root-to-leaf path, root end first."""
    out = []
    nid = t.root
    while not t.nodes[nid].is_leaf:
        out.append(t.nodes[nid].arity)
        nid = t.nodes[nid].children[-1]
    return tuple(out)


def level_counts(t: Topology) -> tuple[int, ...]:
    """Internal node counts grouped by height (1 + max child height,
    leaves at height 0).  On a same-depth tree this is the per-level count
    sequence ceil(l/a_1), ceil(l/(a_1 a_2)), ...; the same grouping is
    applied, deterministically, to reworked trees."""
    height = [0] * len(t.nodes)
    counts: dict[int, int] = {}
    for nid, node in enumerate(t.nodes):
        if node.children is not None:
            h = 1 + max(height[c] for c in node.children)
            height[nid] = h
            counts[h] = counts.get(h, 0) + 1
    return tuple(counts.get(h, 0) for h in range(1, max(counts, default=0) + 1))


def metrics(t: Topology) -> Metrics:
    from treeplan import engine  # deferred: engine imports this module

    profile = engine.schedule(t)
    return Metrics(
        running_time=running_time(t),
        work=work(t),
        level_counts=level_counts(t),
        max_processors=profile.max_processors,
    )


def same_nodes(a: Topology, b: Topology) -> bool:
    """Node-for-node equality (ids, kinds, children, block indices)."""
    return a.l == b.l and a.root == b.root and a.nodes == b.nodes


def to_compact(t: Topology, plan: ArityPlan, form: str = "same_depth") -> CompactForm:
    return CompactForm(l=plan.l, arities=plan.arities, rightmost=rightmost_profile(t), form=form)


def from_compact(c: CompactForm) -> Topology:
    """Recompute the tree from (l, arities) and check the stored profile."""
    plan = ArityPlan(l=c.l, arities=c.arities, case=None)
    if c.form == "same_depth":
        t = build_same_depth(plan)
    elif c.form == "reworked":
        from treeplan.rework import rework  # deferred: rework imports this module

        t = rework(plan).tree
    else:
        raise CompactFormError(f"unknown form {c.form!r}")
    got = rightmost_profile(t)
    if got != c.rightmost:
        raise CompactFormError(
            f"stored rightmost profile {c.rightmost} does not match recomputed {got}"
        )
    return t


def compact_to_json_dict(c: CompactForm) -> dict:
    """Topology document with the fixed field order l, arities, rightmost, form."""
    return {
        "l": c.l,
        "arities": list(c.arities),
        "rightmost": list(c.rightmost),
        "form": c.form,
    }


def compact_from_json_dict(d: dict) -> CompactForm:
    return CompactForm(
        l=int(d["l"]),
        arities=tuple(int(a) for a in d["arities"]),
        rightmost=tuple(int(r) for r in d["rightmost"]),
        form=str(d["form"]),
    )


def collect_leaves(nodes: Sequence[Node], nid: int) -> list[int]:
    """Leaf node ids under ``nid`` in left-to-right order."""
    out: list[int] = []
    stack = [nid]
    while stack:
        x = stack.pop()
        node = nodes[x]
        if node.children is None:
            out.append(x)
        else:
            stack.extend(reversed(node.children))
    return out
