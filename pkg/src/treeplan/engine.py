"""Tree-hash execution over a topology with a pluggable rate-1 primitive.

The primitive maps an ordered sequence of 8-byte units (child digests or
message blocks) to one 8-byte digest at a cost of one unit per input.
The engine evaluates internal nodes bottom-up, so any topological order
gives the identical root digest, and simulates the ASAP schedule with
unbounded processors: a node starts when its slowest child finishes and
runs for `arity` time steps on one processor.  The schedule is computed
analytically, never from wall-clock timing.

The bundled primitive is a 64-bit multiply/rotate mix, bit-exact and
reproducible across languages; it is deliberately order-sensitive so that
topology changes are observable in the digest.  No domain separation or
level framing is added: padding the inputs would break the one-unit-per-
block cost accounting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from treeplan.topology import Topology, running_time, work

BLOCK_SIZE = 8

CompressionPrimitive = Callable[[Sequence[bytes]], bytes]

_MIX_SEED = 0x243F6A8885A308D3
_MIX_MULT = 0x9E3779B97F4A7C15
_U64 = (1 << 64) - 1


def split_blocks(data: bytes) -> list[bytes]:
    """Split raw bytes into 8-byte blocks, zero-padding the last one.

    An empty input is one block of zeros, so every message has l >= 1.
    """
    if not data:
        return [bytes(BLOCK_SIZE)]
    blocks = [data[k : k + BLOCK_SIZE] for k in range(0, len(data), BLOCK_SIZE)]
    if len(blocks[-1]) < BLOCK_SIZE:
        blocks[-1] = blocks[-1].ljust(BLOCK_SIZE, b"\x00")
    return blocks


def default_primitive() -> CompressionPrimitive:
    """Reference mix: acc starts at 0x243F6A8885A308D3; for each unit w
    (little-endian u64), acc <- rotl64((acc ^ w) * 0x9E3779B97F4A7C15, 29)."""

    def mix(units: Sequence[bytes]) -> bytes:
        acc = _MIX_SEED
        for unit in units:
            w = int.from_bytes(unit, "little")
            acc = ((acc ^ w) * _MIX_MULT) & _U64
            acc = ((acc << 29) | (acc >> 35)) & _U64
        return acc.to_bytes(BLOCK_SIZE, "big")

    return mix


def digest_hex(digest: bytes) -> str:
    return digest.hex()


@dataclass(frozen=True, slots=True)
class ScheduleProfile:
    """ASAP times per node plus the per-step active-processor counts.

    ``start[n] == finish[n] == 0`` for leaves; ``active[t]`` counts the
    internal nodes busy during time step ``t``.  ``makespan`` equals the
    topology's running time and ``total_units`` its work.
    """

    start: tuple[int, ...]
    finish: tuple[int, ...]
    active: tuple[int, ...]
    makespan: int
    total_units: int

    @property
    def max_processors(self) -> int:
        return max(self.active, default=0)


def schedule(t: Topology) -> ScheduleProfile:
    """ASAP schedule with unbounded processors; deterministic."""
    n = len(t.nodes)
    start = [0] * n
    finish = [0] * n
    units = 0
    for nid, node in enumerate(t.nodes):
        if node.children is not None:
            s = max(finish[c] for c in node.children)
            start[nid] = s
            finish[nid] = s + node.arity
            units += node.arity
    makespan = finish[t.root]
    delta = [0] * (makespan + 1)
    for nid, node in enumerate(t.nodes):
        if node.children is not None:
            delta[start[nid]] += 1
            delta[finish[nid]] -= 1
    active = []
    cur = 0
    for step in range(makespan):
        cur += delta[step]
        active.append(cur)
    return ScheduleProfile(
        start=tuple(start),
        finish=tuple(finish),
        active=tuple(active),
        makespan=makespan,
        total_units=units,
    )


def hash_tree(
    blocks: Sequence[bytes],
    t: Topology,
    prim: CompressionPrimitive,
    order: Sequence[int] | None = None,
) -> tuple[bytes, ScheduleProfile]:
    """Evaluate the tree over the blocks and return (root digest, profile).

    ``order`` may supply any child-before-parent evaluation order; the
    digest is identical regardless.  A single-leaf topology (l=1) has no
    internal node; its digest is defined as the primitive image of the
    lone block and costs nothing under the tree cost model.
    """
    if len(blocks) != t.l:
        raise ValueError(f"block count {len(blocks)} does not match topology l={t.l}")
    if any(len(b) != BLOCK_SIZE for b in blocks):
        raise ValueError(f"blocks must be exactly {BLOCK_SIZE} bytes")
    profile = schedule(t)
    if t.internal_count() == 0:
        return prim([blocks[0]]), profile
    value: list[bytes | None] = [None] * len(t.nodes)
    ids = range(len(t.nodes)) if order is None else order
    seen = 0
    for nid in ids:
        node = t.nodes[nid]
        if node.children is None:
            value[nid] = blocks[node.block]
        else:
            kids = [value[c] for c in node.children]
            if any(v is None for v in kids):
                raise ValueError("evaluation order visits a parent before a child")
            value[nid] = prim(kids)
        seen += 1
    if seen != len(t.nodes) or value[t.root] is None:
        raise ValueError("evaluation order must cover every node")
    return value[t.root], profile
