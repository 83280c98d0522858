"""Rightmost-path rework of a same-depth tree.

The same-depth tree built from an arity plan is optimal for running time
but can waste processors on its right side: every node there may be
deficient, including chains of arity-1 nodes over a single leaf.  The
rework walks the rightmost path from the root and, at each level, either
replaces a single-leaf subtree by the leaf itself (terminating), skips a
full node, or rebuilds the deficient subtree at reduced height using a
maximal suffix of the arity list.  The leftmost path is untouched, so the
running time is preserved exactly.

Careful: because a rebuild uses the arity *suffix* (the threshold
constants in :mod:`treeplan.hints` encode exactly this suffix capacity),
it drops the largest arity from the rebuilt base level.  On mixed-arity
plans this can leave the edge count unchanged (first at l=296) or even
raise it and add base-level nodes (first at l=884) while still
shortening the rightmost path; the verification sweep reports these.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from treeplan.planner import ArityPlan
from treeplan.topology import (
    Node,
    Topology,
    build_tree,
    ceil_div,
    collect_leaves,
    rightmost_profile,
)


class InfeasibleSubtreeError(ValueError):
    """The requested leaf count exceeds the capacity of the arity suffix."""


@dataclass(frozen=True, slots=True)
class ReworkedTopology:
    """Result of the rework pass.

    ``h_prime`` is the number of internal nodes on the root-to-rightmost-
    leaf path; it is strictly lower than the plan height whenever the tree
    changed.  ``trace`` holds the whole-tree rightmost profile after every
    structural change.  ``degenerate_rebuilds`` counts rebuilds whose new
    subtree root came out with arity 1 (reported by the verification
    sweep; never observed for planner inputs so far).
    """

    tree: Topology
    h_prime: int
    trace: tuple[tuple[int, ...], ...]
    degenerate_rebuilds: int = 0


def largest_feasible_base(arities: Sequence[int], i: int, l_i: int) -> int:
    """Largest j with a_j * a_{j+1} * ... * a_i >= l_i (1-based indices).

    This is the deepest base level from which a same-depth rebuild over
    the suffix a_j..a_i still covers l_i leaves.
    """
    if not 1 <= i <= len(arities):
        raise ValueError(f"i={i} out of range for {len(arities)} arities")
    if l_i < 2:
        raise ValueError(f"need l_i >= 2, got {l_i} (l_i = 1 is the leaf-replacement case)")
    cap = 1
    for j in range(i, 0, -1):
        cap *= arities[j - 1]
        if cap >= l_i:
            return j
    raise InfeasibleSubtreeError(f"l_i={l_i} exceeds capacity {cap} of arities[1..{i}]")


def rebuild_subtree(arities: Sequence[int], j: int, i: int, l_i: int) -> Topology:
    """Same-depth tree over l_i leaves using arities a_j (base) .. a_i."""
    return build_tree(l_i, tuple(arities[j - 1 : i]))


def rework(plan: ArityPlan) -> ReworkedTopology:
    """Apply the rightmost-path rework to the plan's same-depth tree.

    Iteration state is the current rightmost node together with the arity
    suffix available below it; after a genuine rebuild the walk continues
    into the rebuilt subtree's rightmost child, whose available arities
    are the rebuild suffix minus its top entry.  A rebuild whose feasible
    base equals the current base reproduces the existing shape and is
    skipped without a trace entry.
    """
    base = build_tree(plan.l, plan.arities)
    if plan.l < 2 or not plan.arities:
        return ReworkedTopology(tree=base, h_prime=len(plan.arities), trace=())

    # Mutable mirror: per-node child lists (None = leaf).
    children: list[list[int] | None] = [
        None if n.children is None else list(n.children) for n in base.nodes
    ]
    blocks: list[int | None] = [n.block for n in base.nodes]
    root = base.root
    trace: list[tuple[int, ...]] = []
    degenerate = 0

    def leaf_count(nid: int) -> int:
        count = 0
        stack = [nid]
        while stack:
            x = stack.pop()
            if children[x] is None:
                count += 1
            else:
                stack.extend(children[x])
        return count

    def profile() -> tuple[int, ...]:
        out = []
        nid = root
        while children[nid] is not None:
            out.append(len(children[nid]))
            nid = children[nid][-1]
        return tuple(out)

    node = root
    arities = list(plan.arities)  # base-to-top arities of the subtree at `node`
    while True:
        child = children[node][-1]
        if children[child] is None:
            break  # reached a rightmost leaf
        below = arities[:-1]
        l_i = leaf_count(child)
        if l_i == 1:
            # collapse the arity-1 chain down to its single leaf
            leaf = child
            while children[leaf] is not None:
                leaf = children[leaf][-1]
            children[node][-1] = leaf
            trace.append(profile())
            break
        a_i = below[-1]
        if len(children[child]) == a_i:
            node, arities = child, below
            continue
        j = largest_feasible_base(below, len(below), l_i)
        if j == 1:
            # rebuilding over the full suffix reproduces the same-depth
            # shape the subtree already has: no-op, keep descending
            node, arities = child, below
            continue
        suffix = below[j - 1 :]
        leaves = collect_leaves_mut(children, child)
        level = leaves
        for a in suffix:
            nxt = []
            for p in range(ceil_div(len(level), a)):
                children.append(level[p * a : (p + 1) * a])
                blocks.append(None)
                nxt.append(len(children) - 1)
            level = nxt
        new_root = level[0]
        if len(children[new_root]) == 1:
            degenerate += 1
        children[node][-1] = new_root
        trace.append(profile())
        node, arities = new_root, suffix

    if not trace:
        return ReworkedTopology(
            tree=base, h_prime=len(rightmost_profile(base)), trace=()
        )
    tree = _compact(children, blocks, root, plan.l)
    return ReworkedTopology(
        tree=tree,
        h_prime=len(rightmost_profile(tree)),
        trace=tuple(trace),
        degenerate_rebuilds=degenerate,
    )


def collect_leaves_mut(children: list[list[int] | None], nid: int) -> list[int]:
    out: list[int] = []
    stack = [nid]
    while stack:
        x = stack.pop()
        if children[x] is None:
            out.append(x)
        else:
            stack.extend(reversed(children[x]))
    return out


def _compact(
    children: list[list[int] | None], blocks: list[int | None], root: int, l: int
) -> Topology:
    """Renumber reachable nodes in post order (children before parents)."""
    new_id: dict[int, int] = {}
    nodes: list[Node] = []
    # iterative post-order
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        nid, expanded = stack.pop()
        if expanded:
            kids = children[nid]
            if kids is None:
                nodes.append(Node(children=None, block=blocks[nid]))
            else:
                nodes.append(Node(children=tuple(new_id[c] for c in kids)))
            new_id[nid] = len(nodes) - 1
        else:
            stack.append((nid, True))
            if children[nid] is not None:
                for c in reversed(children[nid]):
                    stack.append((c, False))
    return Topology(l=l, nodes=tuple(nodes), root=new_id[root])
