"""Diagrams spanning the partition algebra and its propagating subalgebras.

A diagram on k strands is a set partition of the 2k vertices formed by a
top row and a bottom row.  Vertices 0..k-1 are the top row (printed 1..k)
and vertices k..2k-1 are the bottom row (printed 1'..k').  The product of
two diagrams stacks the first above the second, fuses the shared row, and
pays one factor of the loop parameter per component swallowed in the
middle, so coefficients are polynomials in that parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import setpart
from .rational import frac_str
from .setpart import DisjointSets, SetPartition

__all__ = [
    "Diagram",
    "RectDiagram",
    "Poly",
    "AlgebraElement",
    "identity",
    "concat",
    "multiply",
    "flip",
    "is_uniform",
    "is_top_propagating",
    "is_bottom_propagating",
    "enumerate_diagrams",
    "parse_diagram",
    "parse_rect_diagram",
    "rect_compose",
]


@dataclass(frozen=True)
class Diagram:
    """A set partition of k top and k bottom vertices."""

    k: int
    part: SetPartition

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.part.ground_size != 2 * self.k:
            raise ValueError(
                f"partition covers {self.part.ground_size} vertices, expected {2 * self.k}"
            )

    def to_text(self) -> str:
        return self.part.to_text(top_size=self.k)

    def sort_key(self) -> tuple[int, ...]:
        return self.part.rgs

    def __repr__(self):
        return f"Diagram({self.k}, {self.to_text()!r})"


def parse_diagram(text: str, k: int | None = None) -> Diagram:
    """Parse diagram text, inferring k from the largest vertex label."""
    text = text.strip()
    if text.startswith("rgs:"):
        p = setpart.parse_text(text)
        if p.ground_size % 2 or p.ground_size == 0:
            raise ValueError(f"diagram rgs length must be a positive even number, got {p.ground_size}")
        inferred = p.ground_size // 2
        if k is not None and inferred != k:
            raise ValueError(f"rgs length {p.ground_size} does not match k={k} (expected {2 * k})")
        return Diagram(inferred, p)
    token_blocks = setpart._parse_token_blocks(text)
    inferred = max(label for block in token_blocks for label, _ in block)
    use_k = inferred if k is None else k
    try:
        p = setpart.parse_text(text, top_size=use_k, ground_size=2 * use_k)
    except ValueError as err:
        raise ValueError(f"invalid diagram text {text!r}: {err}") from None
    return Diagram(use_k, p)


def identity(k: int) -> Diagram:
    """The diagram joining each top vertex to the bottom vertex below it."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return Diagram(k, SetPartition(tuple(range(k)) * 2))


def is_uniform(d: Diagram) -> bool:
    """Every block meets the two rows in equally many vertices."""
    k = d.k
    for block in d.part.blocks:
        tops = sum(1 for v in block if v < k)
        if 2 * tops != len(block):
            return False
    return True


def is_top_propagating(d: Diagram) -> bool:
    """No block lies entirely in the top row."""
    k = d.k
    return all(any(v >= k for v in block) for block in d.part.blocks)


def is_bottom_propagating(d: Diagram) -> bool:
    """No block lies entirely in the bottom row."""
    k = d.k
    return all(any(v < k for v in block) for block in d.part.blocks)


_SUBSET_PREDICATES = {
    "uniform": is_uniform,
    "top": is_top_propagating,
    "bottom": is_bottom_propagating,
}


def enumerate_diagrams(k: int, subset: str | None = None) -> Iterator[Diagram]:
    """All k-strand diagrams in lexicographic RGS order, optionally filtered."""
    if subset is not None and subset not in _SUBSET_PREDICATES:
        raise ValueError(f"unknown diagram subset {subset!r}")
    pred = _SUBSET_PREDICATES.get(subset)
    for p in setpart.enumerate_partitions(2 * k):
        d = Diagram(k, p)
        if pred is None or pred(d):
            yield d


def flip(d: Diagram) -> Diagram:
    """Exchange the two rows (the algebra's natural involution)."""
    k = d.k
    labels = [0] * (2 * k)
    for v, lab in enumerate(d.part.rgs):
        labels[(v + k) % (2 * k)] = lab
    return Diagram(k, setpart.from_labels(labels))


def concat(d1: Diagram, d2: Diagram) -> tuple[Diagram, int]:
    """Stack d1 above d2 and fuse d1's bottom row with d2's top row.

    Returns the induced diagram on d1's top row and d2's bottom row,
    together with the number of connected components that lie entirely in
    the fused middle row.
    """
    if d1.k != d2.k:
        raise ValueError(f"cannot concatenate diagrams with k={d1.k} and k={d2.k}")
    k = d1.k
    # Nodes 0..k-1: top of d1.  k..2k-1: fused middle.  2k..3k-1: bottom of d2.
    dsu = DisjointSets(3 * k)
    for block in d1.part.blocks:
        for v in block[1:]:
            dsu.union(block[0], v)
    for block in d2.part.blocks:
        for v in block[1:]:
            dsu.union(block[0] + k, v + k)
    keep = list(range(k)) + list(range(2 * k, 3 * k))
    labels = [dsu.find(v) for v in keep]
    middle_only = {dsu.find(v) for v in range(k, 2 * k)} - set(labels)
    return Diagram(k, setpart.from_labels(labels)), len(middle_only)


@dataclass(frozen=True)
class Poly:
    """Polynomial in the loop parameter with exact rational coefficients.

    Coefficients are stored by ascending power with no trailing zeros.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, *coeffs) -> "Poly":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls.of(1)

    @classmethod
    def x_power(cls, m: int) -> "Poly":
        if m < 0:
            raise ValueError("power must be non-negative")
        return cls((Fraction(0),) * m + (Fraction(1),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    def __rmul__(self, scalar) -> "Poly":
        s = Fraction(scalar)
        return Poly(tuple(s * c for c in self.coeffs))

    def shifted(self, m: int) -> "Poly":
        """Multiply by the m-th power of the loop parameter."""
        if m < 0:
            raise ValueError("shift must be non-negative")
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * m + self.coeffs)

    def __call__(self, value) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_strings(self) -> list[str]:
        return [frac_str(c) for c in self.coeffs]

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(frac_str(c) if c.denominator != 1 else str(c.numerator))
            else:
                x = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(x)
                else:
                    coef = frac_str(c) if c.denominator != 1 else str(c.numerator)
                    parts.append(f"{coef}*{x}")
        return " + ".join(parts)


class AlgebraElement:
    """A finite linear combination of same-k diagrams with Poly coefficients."""

    __slots__ = ("k", "_terms")

    def __init__(self, k: int, terms: Mapping[Diagram, Poly] | Iterable[tuple[Diagram, Poly]] = ()):
        if k < 1:
            raise ValueError("k must be a positive integer")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Diagram, Poly] = {}
        for d, c in items:
            if d.k != k:
                raise ValueError(f"term diagram has k={d.k}, element has k={k}")
            if not isinstance(c, Poly):
                c = Poly.of(c)
            if d in acc:
                c = acc[d] + c
            if c.is_zero():
                acc.pop(d, None)
            else:
                acc[d] = c
        self.k = k
        self._terms = acc

    @classmethod
    def from_diagram(cls, d: Diagram, coeff: Poly | int | Fraction = 1) -> "AlgebraElement":
        c = coeff if isinstance(coeff, Poly) else Poly.of(coeff)
        return cls(d.k, {d: c})

    @classmethod
    def identity(cls, k: int) -> "AlgebraElement":
        return cls.from_diagram(identity(k))

    def terms(self) -> list[tuple[Diagram, Poly]]:
        """Terms in the canonical (lexicographic RGS) diagram order."""
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def coeff(self, d: Diagram) -> Poly:
        return self._terms.get(d, Poly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.k != other.k:
            raise ValueError("cannot add elements with different k")
        acc = dict(self._terms)
        for d, c in other._terms.items():
            s = acc.get(d, Poly.zero()) + c
            if s.is_zero():
                acc.pop(d, None)
            else:
                acc[d] = s
        return AlgebraElement(self.k, acc)

    def __rmul__(self, scalar) -> "AlgebraElement":
        if isinstance(scalar, Poly):
            return AlgebraElement(self.k, {d: scalar * c for d, c in self._terms.items()})
        s = Fraction(scalar)
        return AlgebraElement(self.k, {d: s * c for d, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.k == other.k
            and self._terms == other._terms
        )

    def __repr__(self):
        if self.is_zero():
            return f"AlgebraElement({self.k}, 0)"
        body = " + ".join(f"({c.pretty()})*{{{d.to_text()}}}" for d, c in self.terms())
        return f"AlgebraElement({self.k}, {body})"

    def to_json_terms(self) -> list[dict]:
        return [{"coeff": c.to_strings(), "diagram": d.to_text()} for d, c in self.terms()]


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the diagram product to linear combinations."""
    if a.k != b.k:
        raise ValueError("cannot multiply elements with different k")
    acc: dict[Diagram, Poly] = {}
    for d1, c1 in a.terms():
        for d2, c2 in b.terms():
            d, m = concat(d1, d2)
            contrib = (c1 * c2).shifted(m)
            s = acc.get(d, Poly.zero()) + contrib
            if s.is_zero():
                acc.pop(d, None)
            else:
                acc[d] = s
    return AlgebraElement(a.k, acc)


@dataclass(frozen=True)
class RectDiagram:
    """A diagram with k top and l bottom vertices, no block inside the top row.

    These compose only when the inner shapes agree; a shape mismatch is a
    genuine zero, returned as None by rect_compose.
    """

    k_top: int
    l_bottom: int
    part: SetPartition

    def __post_init__(self):
        if self.k_top < 0 or self.l_bottom < 0:
            raise ValueError("row sizes must be non-negative")
        if self.part.ground_size != self.k_top + self.l_bottom:
            raise ValueError(
                f"partition covers {self.part.ground_size} vertices, "
                f"expected {self.k_top + self.l_bottom}"
            )
        for block in self.part.blocks:
            if all(v < self.k_top for v in block):
                raise ValueError(f"block {block} is isolated to the top row")

    def to_text(self) -> str:
        return f"{self.k_top},{self.l_bottom}:{self.part.to_text(top_size=self.k_top)}"

    def __repr__(self):
        return f"RectDiagram({self.to_text()!r})"


def parse_rect_diagram(text: str) -> RectDiagram:
    """Parse 'k,l:' prefixed rectangular diagram text."""
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"rectangular diagram text needs a 'k,l:' prefix, got {text!r}")
    try:
        k_str, l_str = head.split(",")
        k, l = int(k_str), int(l_str)
    except ValueError:
        raise ValueError(f"malformed shape prefix {head!r}") from None
    p = setpart.parse_text(body, top_size=k, ground_size=k + l)
    return RectDiagram(k, l, p)


def rect_compose(d1: RectDiagram, d2: RectDiagram) -> RectDiagram | None:
    """Concatenate when d1's bottom shape matches d2's top shape, else None.

    Because neither operand has a block isolated to its top row, every
    fused middle vertex connects down to d2's bottom row, so no component
    can be swallowed; this is asserted rather than compensated for.
    """
    if d1.l_bottom != d2.k_top:
        return None
    k1, mid, l2 = d1.k_top, d1.l_bottom, d2.l_bottom
    dsu = DisjointSets(k1 + mid + l2)
    for block in d1.part.blocks:
        for v in block[1:]:
            dsu.union(block[0], v)
    for block in d2.part.blocks:
        for v in block[1:]:
            dsu.union(block[0] + k1, v + k1)
    keep = list(range(k1)) + list(range(k1 + mid, k1 + mid + l2))
    labels = [dsu.find(v) for v in keep]
    middle_only = {dsu.find(v) for v in range(k1, k1 + mid)} - set(labels)
    assert not middle_only, "middle components cannot arise without top-isolated blocks"
    return RectDiagram(k1, l2, setpart.from_labels(labels))
