"""Exact sparse matrices for diagram and permutation actions on tensor powers.

The module realizes a k-strand diagram as an n^k by n^k matrix over the
rationals.  Rows are indexed by top-row tuples (outputs) and columns by
bottom-row tuples (inputs); tuples over {1, ..., n} are ranked
lexicographically with the leftmost entry most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .diagram import AlgebraElement, Diagram
from .rational import frac_str

__all__ = [
    "SparseMat",
    "PermWord",
    "tuple_rank",
    "unrank_tuple",
    "entry",
    "matrix",
    "perm_matrix",
    "eval_at",
    "act",
]


class SparseMat:
    """Immutable square sparse matrix with exact rational entries.

    Entries are kept as a row-major sorted coordinate list with no stored
    zeros, so equality and hashing are structural.
    """

    __slots__ = ("dim", "triples")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], object] | Iterable[tuple[int, int, object]] = ()):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        if isinstance(entries, Mapping):
            items: Iterable[tuple[int, int, object]] = ((r, c, v) for (r, c), v in entries.items())
        else:
            items = entries
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, v in items:
            if not (0 <= r < dim and 0 <= c < dim):
                raise ValueError(f"coordinate ({r}, {c}) outside a {dim} by {dim} matrix")
            f = Fraction(v)
            if f:
                key = (r, c)
                s = acc.get(key, Fraction(0)) + f
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        self.dim = dim
        self.triples = tuple(sorted((r, c, v) for (r, c), v in acc.items()))

    @classmethod
    def identity(cls, dim: int) -> "SparseMat":
        return cls(dim, [(i, i, 1) for i in range(dim)])

    @property
    def nnz(self) -> int:
        return len(self.triples)

    def entry(self, r: int, c: int) -> Fraction:
        for rr, cc, v in self.triples:
            if (rr, cc) == (r, c):
                return v
            if (rr, cc) > (r, c):
                break
        return Fraction(0)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMat)
            and self.dim == other.dim
            and self.triples == other.triples
        )

    def __hash__(self):
        return hash((self.dim, self.triples))

    def __add__(self, other: "SparseMat") -> "SparseMat":
        if not isinstance(other, SparseMat):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return SparseMat(self.dim, list(self.triples) + list(other.triples))

    def __sub__(self, other: "SparseMat") -> "SparseMat":
        return self + other.scaled(-1)

    def scaled(self, scalar) -> "SparseMat":
        s = Fraction(scalar)
        return SparseMat(self.dim, [(r, c, s * v) for r, c, v in self.triples])

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        if not isinstance(other, SparseMat):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        rows_b: dict[int, list[tuple[int, Fraction]]] = {}
        for r, c, v in other.triples:
            rows_b.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for r, c, v in self.triples:
            for l, w in rows_b.get(c, ()):
                key = (r, l)
                s = acc.get(key, Fraction(0)) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return SparseMat(self.dim, acc)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for r, c, v in self.triples:
            out[r][c] = v
        return out

    def to_json(self) -> dict:
        return {"dim": self.dim, "triples": [[r, c, frac_str(v)] for r, c, v in self.triples]}

    def __repr__(self):
        return f"SparseMat(dim={self.dim}, nnz={self.nnz})"


def tuple_rank(t: Sequence[int], n: int) -> int:
    """Lexicographic rank of a tuple over {1, ..., n}, leftmost most significant."""
    r = 0
    for v in t:
        if not 1 <= v <= n:
            raise ValueError(f"tuple entry {v} outside [1, {n}]")
        r = r * n + (v - 1)
    return r


def unrank_tuple(rank: int, n: int, k: int) -> tuple[int, ...]:
    if not 0 <= rank < n**k:
        raise ValueError(f"rank {rank} outside [0, {n**k})")
    out = []
    for _ in range(k):
        rank, digit = divmod(rank, n)
        out.append(digit + 1)
    return tuple(reversed(out))


def entry(d: Diagram, top: Sequence[int], bottom: Sequence[int]) -> int:
    """1 when the combined row assignment is constant on every block of d."""
    if len(top) != d.k or len(bottom) != d.k:
        raise ValueError("tuple lengths must equal the diagram's k")
    vals = list(top) + list(bottom)
    for v in vals:
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"tuple entries must be positive integers, got {v!r}")
    for block in d.part.blocks:
        x = vals[block[0]]
        for v in block[1:]:
            if vals[v] != x:
                return 0
    return 1


def matrix(d: Diagram, n: int) -> SparseMat:
    """The n^k by n^k 0/1 matrix of d, columns indexed by bottom tuples.

    Nonzero positions correspond bijectively to assignments of a value in
    {1, ..., n} to each block, so they are generated directly rather than
    by scanning all n^2k entry pairs.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    k = d.k
    blocks = d.part.blocks
    entries = {}
    for assign in product(range(1, n + 1), repeat=len(blocks)):
        vals = [0] * (2 * k)
        for x, block in zip(assign, blocks):
            for v in block:
                vals[v] = x
        entries[(tuple_rank(vals[:k], n), tuple_rank(vals[k:], n))] = 1
    return SparseMat(n**k, entries)


@dataclass(frozen=True)
class PermWord:
    """A permutation of {1, ..., n} stored by its image word."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images!r} is not a bijection of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"point {i} outside [1, {self.n}]")
        return self.images[i - 1]

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.images[v - 1] for v in t)

    def compose(self, other: "PermWord") -> "PermWord":
        """self after other: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different degrees")
        return PermWord(tuple(self.images[v - 1] for v in other.images))

    def __mul__(self, other):
        if isinstance(other, PermWord):
            return self.compose(other)
        return NotImplemented

    @classmethod
    def identity(cls, n: int) -> "PermWord":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "PermWord":
        if not (1 <= a <= n and 1 <= b <= n and a != b):
            raise ValueError(f"invalid transposition ({a} {b}) on 1..{n}")
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n: int) -> "PermWord":
        """The long cycle sending 1 to 2, ..., n to 1."""
        if n < 1:
            raise ValueError("degree must be positive")
        return cls(tuple(range(2, n + 1)) + (1,))


def perm_matrix(sigma: PermWord, k: int) -> SparseMat:
    """Permutation matrix of the diagonal action on k-tuples."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = sigma.n
    entries = {}
    for t in product(range(1, n + 1), repeat=k):
        entries[(tuple_rank(sigma.apply(t), n), tuple_rank(t, n))] = 1
    return SparseMat(n**k, entries)


def eval_at(elem: AlgebraElement, n: int) -> SparseMat:
    """Specialize the loop parameter to n and sum the diagram matrices."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    acc: dict[tuple[int, int], Fraction] = {}
    for d, poly in elem.terms():
        scalar = poly(Fraction(n))
        if not scalar:
            continue
        for r, c, v in matrix(d, n).triples:
            key = (r, c)
            s = acc.get(key, Fraction(0)) + scalar * v
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return SparseMat(n**elem.k, acc)


def act(m: SparseMat, vec: Sequence) -> list[Fraction]:
    """Exact matrix-vector product."""
    if len(vec) != m.dim:
        raise ValueError(f"vector length {len(vec)} does not match dimension {m.dim}")
    out = [Fraction(0)] * m.dim
    for r, c, v in m.triples:
        x = vec[c]
        if x:
            out[r] += v * x
    return out
