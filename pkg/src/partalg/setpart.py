"""Canonical set partitions of a finite ordered ground set.

A partition of {0, ..., g-1} is stored as a restricted-growth string (RGS):
entry t is the label of the block containing vertex t, blocks numbered in
order of first appearance.  The RGS is unique per partition, so equality,
hashing and lexicographic ordering reduce to tuple comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "SetPartition",
    "DisjointSets",
    "from_blocks",
    "from_edges",
    "from_labels",
    "enumerate_partitions",
    "count_partitions",
    "bell_number",
    "stirling2",
    "orbit_partition",
    "refines",
    "parse_text",
]


@dataclass(frozen=True)
class SetPartition:
    """A set partition of {0, ..., g-1} in canonical RGS form."""

    rgs: tuple[int, ...]

    def __post_init__(self):
        rgs = tuple(self.rgs)
        object.__setattr__(self, "rgs", rgs)
        top = -1
        for t, lab in enumerate(rgs):
            if not isinstance(lab, int) or lab < 0:
                raise ValueError(f"rgs[{t}] = {lab!r} is not a non-negative integer")
            if lab > top + 1:
                raise ValueError(f"rgs[{t}] = {lab} breaks restricted growth")
            if lab == top + 1:
                top = lab

    @property
    def ground_size(self) -> int:
        return len(self.rgs)

    @property
    def num_blocks(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for v, lab in enumerate(self.rgs):
            out[lab].append(v)
        return tuple(tuple(b) for b in out)

    def to_text(self, top_size: int | None = None) -> str:
        """Block text form; vertices past top_size print as primed labels."""
        t = self.ground_size if top_size is None else top_size

        def tok(v: int) -> str:
            return str(v + 1) if v < t else f"{v - t + 1}'"

        return "|".join(",".join(tok(v) for v in block) for block in self.blocks)


class DisjointSets:
    """Union-find over {0, ..., n-1} with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def from_labels(labels: Sequence[int]) -> SetPartition:
    """Canonicalize an arbitrary labelling (equal label = same block)."""
    relabel: dict[int, int] = {}
    return SetPartition(tuple(relabel.setdefault(lab, len(relabel)) for lab in labels))


def from_blocks(ground_size: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Canonicalize an explicit block list covering {0, ..., ground_size-1}."""
    if ground_size < 0:
        raise ValueError("ground size must be non-negative")
    owner = [-1] * ground_size
    for b_idx, block in enumerate(blocks):
        for v in block:
            if not isinstance(v, int) or not 0 <= v < ground_size:
                raise ValueError(f"vertex {v!r} out of range for ground size {ground_size}")
            if owner[v] != -1:
                raise ValueError(f"vertex {v} appears in more than one block")
            owner[v] = b_idx
    for v, o in enumerate(owner):
        if o == -1:
            raise ValueError(f"vertex {v} is missing from the blocks")
    return from_labels(owner)


def from_edges(ground_size: int, edges: Iterable[tuple[int, int]]) -> SetPartition:
    """Partition into connected components of a graph on the ground set."""
    if ground_size < 0:
        raise ValueError("ground size must be non-negative")
    dsu = DisjointSets(ground_size)
    for a, b in edges:
        for v in (a, b):
            if not isinstance(v, int) or not 0 <= v < ground_size:
                raise ValueError(f"edge endpoint {v!r} out of range for ground size {ground_size}")
        dsu.union(a, b)
    return from_labels([dsu.find(v) for v in range(ground_size)])


def enumerate_partitions(ground_size: int, max_blocks: int | None = None) -> Iterator[SetPartition]:
    """All partitions of the ground set in lexicographic RGS order."""
    if ground_size < 0:
        raise ValueError("ground size must be non-negative")
    if max_blocks is not None and max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")
    if ground_size == 0:
        yield SetPartition(())
        return
    cap = ground_size if max_blocks is None else min(max_blocks, ground_size)
    rgs = [0] * ground_size

    def rec(t: int, used: int) -> Iterator[SetPartition]:
        if t == ground_size:
            yield SetPartition(tuple(rgs))
            return
        for v in range(min(used + 1, cap)):
            rgs[t] = v
            yield from rec(t + 1, used + (1 if v == used else 0))

    yield from rec(1, 1)


def bell_number(g: int) -> int:
    """Number of partitions of a g-element set, by the Bell triangle."""
    if g < 0:
        raise ValueError("ground size must be non-negative")
    row = [1]
    for _ in range(g):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def stirling2(g: int, j: int) -> int:
    """Number of partitions of a g-element set into exactly j blocks."""
    if g < 0 or j < 0:
        raise ValueError("arguments must be non-negative")
    if j > g:
        return 0
    row = [1]
    for n in range(1, g + 1):
        nxt = [0] * (n + 1)
        for m in range(1, n + 1):
            nxt[m] = m * (row[m] if m < len(row) else 0) + row[m - 1]
        row = nxt
    return row[j]


def count_partitions(ground_size: int, max_blocks: int | None = None) -> int:
    """Partition count, optionally restricted to at most max_blocks blocks."""
    if ground_size < 0:
        raise ValueError("ground size must be non-negative")
    if max_blocks is None:
        return bell_number(ground_size)
    if max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")
    return sum(stirling2(ground_size, j) for j in range(min(max_blocks, ground_size) + 1))


def orbit_partition(values: Sequence[int]) -> SetPartition:
    """Group positions carrying equal values: the orbit type of a tuple."""
    first: dict[int, int] = {}
    out = []
    for v in values:
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"tuple entries must be positive integers, got {v!r}")
        out.append(first.setdefault(v, len(first)))
    return SetPartition(tuple(out))


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True when every block of p lies inside a block of q."""
    if p.ground_size != q.ground_size:
        raise ValueError("partitions live on different ground sets")
    seen: dict[int, int] = {}
    for v, lab in enumerate(p.rgs):
        q_lab = q.rgs[v]
        if seen.setdefault(lab, q_lab) != q_lab:
            return False
    return True


_VERTEX_RE = re.compile(r"(\d+)(')?\Z")


def _parse_token_blocks(text: str) -> list[list[tuple[int, bool]]]:
    blocks = []
    for chunk in text.split("|"):
        block = []
        for tok in chunk.split(","):
            tok = tok.strip()
            m = _VERTEX_RE.match(tok)
            if m is None:
                raise ValueError(f"malformed vertex token {tok!r}")
            label = int(m.group(1))
            if label < 1:
                raise ValueError(f"vertex labels start at 1, got {tok!r}")
            block.append((label, m.group(2) is not None))
        blocks.append(block)
    return blocks


def parse_text(text: str, top_size: int | None = None, ground_size: int | None = None) -> SetPartition:
    """Parse block text like ``1,2,1'|3`` or a raw ``rgs:`` label string.

    Unprimed labels 1..t map to vertices 0..t-1 and primed labels j' to
    t+j-1 where t = top_size; with top_size None primes are rejected.
    """
    text = text.strip()
    if text.startswith("rgs:"):
        body = text[4:]
        try:
            rgs = tuple(int(x.strip()) for x in body.split(","))
        except ValueError:
            raise ValueError(f"malformed rgs text {body!r}") from None
        p = SetPartition(rgs)
        if ground_size is not None and p.ground_size != ground_size:
            raise ValueError(
                f"rgs length {p.ground_size} does not match expected ground size {ground_size}"
            )
        return p
    token_blocks = _parse_token_blocks(text)
    idx_blocks: list[list[int]] = []
    bottom_max = 0
    top_max = 0
    for block in token_blocks:
        idx_block = []
        for label, primed in block:
            if primed:
                if top_size is None:
                    raise ValueError(f"primed vertex {label}' is not allowed here")
                idx_block.append(top_size + label - 1)
                bottom_max = max(bottom_max, label)
            else:
                if top_size is not None and label > top_size:
                    raise ValueError(f"vertex {label} exceeds top size {top_size}")
                idx_block.append(label - 1)
                top_max = max(top_max, label)
        idx_blocks.append(idx_block)
    if ground_size is None:
        ground_size = top_max if top_size is None else top_size + bottom_max
    return from_blocks(ground_size, idx_blocks)
