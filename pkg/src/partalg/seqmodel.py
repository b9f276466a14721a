"""Diagram actions on weighted sequence spaces, decided at finite truncation.

With geometric weights mu_i = r^i the operator norm of a diagram matrix on
the truncated space either stabilizes as the truncation grows (bounded
operator) or grows without bound, and the block shape of the diagram
decides which.  Norms here are exact rationals, never floats, so the
stability comparison is an equality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .diagram import (
    Diagram,
    is_bottom_propagating,
    is_top_propagating,
    is_uniform,
)
from .rational import frac_str
from .rep import act, matrix, tuple_rank
from .setpart import SetPartition, enumerate_partitions, count_partitions, refines

__all__ = [
    "GeometricWeights",
    "NormProfile",
    "MonomialInvariant",
    "l1_truncated_norm",
    "classify_lp_bounded",
    "linf_matrix_norm",
    "classify_linf_bounded",
    "classify_column_finite",
    "lp_norm_profile",
    "linf_norm_profile",
    "monomial_vector",
    "invariant_dim",
    "act_on_invariants",
]

DEFAULT_RATIO = Fraction(1, 2)
DEFAULT_TRUNC_SMALL = 4
DEFAULT_TRUNC_LARGE = 8


@dataclass(frozen=True)
class GeometricWeights:
    """Summable weights mu_i = ratio^i with 0 < ratio < 1."""

    ratio: Fraction = DEFAULT_RATIO

    def __post_init__(self):
        r = Fraction(self.ratio)
        object.__setattr__(self, "ratio", r)
        if not 0 < r < 1:
            raise ValueError(f"ratio must lie strictly between 0 and 1, got {r}")

    def mu(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError("indices start at 1")
        return self.ratio**i

    def mu_tuple(self, t: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for v in t:
            out *= self.mu(v)
        return out


def _split_blocks(d: Diagram) -> list[tuple[list[int], list[int]]]:
    """Per block: top positions and bottom positions (both 0-based in the row)."""
    k = d.k
    return [
        ([v for v in block if v < k], [v - k for v in block if v >= k])
        for block in d.part.blocks
    ]


def l1_truncated_norm(d: Diagram, trunc: int, weights: GeometricWeights) -> Fraction:
    """Weighted operator norm on the first trunc basis sequences.

    This is the maximum over bottom tuples i of (sum of mu_j over tops j
    compatible with i) / mu_i.  The inner sum factors over blocks: a block
    meeting the bottom row pins its value, a block isolated in the top row
    sums a free value over the truncation window.
    """
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    k = d.k
    split = _split_blocks(d)
    mu = [Fraction(0)] + [weights.mu(i) for i in range(1, trunc + 1)]
    free_sums: dict[int, Fraction] = {}
    for tops, bots in split:
        if not bots and len(tops) not in free_sums:
            e = len(tops)
            free_sums[e] = sum((mu[v] ** e for v in range(1, trunc + 1)), Fraction(0))
    best = Fraction(0)
    for bt in product(range(1, trunc + 1), repeat=k):
        col = Fraction(1)
        ok = True
        for tops, bots in split:
            if bots:
                x = bt[bots[0]]
                if any(bt[p] != x for p in bots[1:]):
                    ok = False
                    break
                if tops:
                    col *= mu[x] ** len(tops)
            else:
                col *= free_sums[len(tops)]
        if not ok:
            continue
        ratio = col / weights.mu_tuple(bt)
        if ratio > best:
            best = ratio
    return best


def classify_lp_bounded(
    d: Diagram,
    weights: GeometricWeights | None = None,
    trunc_small: int = DEFAULT_TRUNC_SMALL,
    trunc_large: int = DEFAULT_TRUNC_LARGE,
) -> bool:
    """Bounded on the weighted sequence space: norm stable across truncations."""
    if weights is None:
        weights = GeometricWeights()
    if not 1 <= trunc_small < trunc_large:
        raise ValueError("truncations must satisfy 1 <= small < large")
    return l1_truncated_norm(d, trunc_small, weights) == l1_truncated_norm(d, trunc_large, weights)


def linf_matrix_norm(d: Diagram, trunc: int) -> Fraction:
    """Supremum-norm of the truncated matrix: the largest row sum."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    k = d.k
    split = _split_blocks(d)
    best = 0
    for tt in product(range(1, trunc + 1), repeat=k):
        count = 1
        ok = True
        for tops, bots in split:
            if tops:
                x = tt[tops[0]]
                if any(tt[p] != x for p in tops[1:]):
                    ok = False
                    break
                # bots, if any, are pinned to x: one choice
            elif bots:
                count *= trunc  # one free value shared by the whole block
        if ok and count > best:
            best = count
    return Fraction(best)


def classify_linf_bounded(
    d: Diagram,
    trunc_small: int = DEFAULT_TRUNC_SMALL,
    trunc_large: int = DEFAULT_TRUNC_LARGE,
) -> bool:
    """Bounded for the matrix sup-norm: row sums stable across truncations."""
    if not 1 <= trunc_small < trunc_large:
        raise ValueError("truncations must satisfy 1 <= small < large")
    return linf_matrix_norm(d, trunc_small) == linf_matrix_norm(d, trunc_large)


def _max_column_count(d: Diagram, trunc: int) -> int:
    """Largest number of compatible top tuples over any single bottom tuple."""
    split = _split_blocks(d)
    best = 0
    for bt in product(range(1, trunc + 1), repeat=d.k):
        count = 1
        ok = True
        for tops, bots in split:
            if bots:
                x = bt[bots[0]]
                if any(bt[p] != x for p in bots[1:]):
                    ok = False
                    break
            elif tops:
                count *= trunc ** len(tops)
        if ok and count > best:
            best = count
    return best


def classify_column_finite(d: Diagram, trunc: int = DEFAULT_TRUNC_SMALL) -> bool:
    """Every column has finitely many nonzeros in the untruncated action.

    Decided combinatorially (no block isolated in the top row) and
    cross-checked against column counts at two truncation sizes.
    """
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    verdict = is_top_propagating(d)
    stable = _max_column_count(d, trunc) == _max_column_count(d, 2 * trunc)
    if stable != verdict:
        raise RuntimeError("column count stability disagrees with the block criterion")
    return verdict


@dataclass(frozen=True)
class NormProfile:
    """Exact norms of one diagram across a list of truncation sizes."""

    diagram: Diagram
    truncations: tuple[int, ...]
    norms: tuple[Fraction, ...]
    divergent: bool
    ratio: Fraction | None = None

    def to_json(self) -> dict:
        doc = {
            "diagram": self.diagram.to_text(),
            "truncations": list(self.truncations),
            "norms": [frac_str(v) for v in self.norms],
            "divergent": self.divergent,
        }
        if self.ratio is not None:
            doc["r"] = frac_str(self.ratio)
        return doc


def lp_norm_profile(
    d: Diagram, weights: GeometricWeights, truncations: Sequence[int]
) -> NormProfile:
    if not truncations:
        raise ValueError("at least one truncation is required")
    norms = tuple(l1_truncated_norm(d, t, weights) for t in truncations)
    return NormProfile(
        diagram=d,
        truncations=tuple(truncations),
        norms=norms,
        divergent=not classify_lp_bounded(d, weights),
        ratio=weights.ratio,
    )


def linf_norm_profile(d: Diagram, truncations: Sequence[int]) -> NormProfile:
    if not truncations:
        raise ValueError("at least one truncation is required")
    norms = tuple(linf_matrix_norm(d, t) for t in truncations)
    return NormProfile(
        diagram=d,
        truncations=tuple(truncations),
        norms=norms,
        divergent=not classify_linf_bounded(d),
    )


@dataclass(frozen=True)
class MonomialInvariant:
    """The 0/1 vector over [n]^k that is 1 where pi refines the tuple's orbit type."""

    pi: SetPartition
    n: int
    vector: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.pi.ground_size

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.vector) if v)


def monomial_vector(pi: SetPartition, n: int) -> MonomialInvariant:
    """Indicator of tuples constant on every block of pi."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    blocks = pi.blocks
    vec = []
    for t in product(range(1, n + 1), repeat=pi.ground_size):
        hit = 1
        for block in blocks:
            x = t[block[0]]
            if any(t[p] != x for p in block[1:]):
                hit = 0
                break
        vec.append(hit)
    return MonomialInvariant(pi, n, tuple(vec))


def invariant_dim(n: int, k: int) -> int:
    """Dimension of the symmetric-group invariants in the k-fold tensor power."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive integers")
    return count_partitions(k, max_blocks=n)


def act_on_invariants(d: Diagram, pi: SetPartition, n: int) -> dict[SetPartition, Fraction]:
    """Apply a diagram to a monomial invariant and re-expand in the basis.

    Requires n >= k so every partition of the k positions is an orbit type.
    The change of basis is unitriangular along refinement: coefficients are
    peeled off orbit representatives from the finest partition down, and
    the expansion is re-checked against the acted vector exactly.
    """
    k = d.k
    if pi.ground_size != k:
        raise ValueError(f"partition covers {pi.ground_size} positions, the diagram has k={k}")
    if n < k:
        raise ValueError(f"need n >= k = {k} for a full monomial basis, got n={n}")
    w = act(matrix(d, n), monomial_vector(pi, n).vector)
    order = sorted(enumerate_partitions(k), key=lambda p: (-p.num_blocks, p.rgs))
    coeffs: dict[SetPartition, Fraction] = {}
    for tau in order:
        rep = tuple(lab + 1 for lab in tau.rgs)
        a = w[tuple_rank(rep, n)]
        for finer, c in coeffs.items():
            if finer is not tau and refines(finer, tau):
                a -= c
        if a:
            coeffs[tau] = a
    recon = [Fraction(0)] * len(w)
    for tau, a in coeffs.items():
        for idx in monomial_vector(tau, n).support():
            recon[idx] += a
    if recon != w:
        raise RuntimeError("acted vector left the invariant span")
    return coeffs
