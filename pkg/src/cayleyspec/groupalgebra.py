"""Sparse exact arithmetic in the integral group algebra."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .permgroup import DEFAULT_ORDER_CAP, GroupTable, builtin_group, parse_permutation


class GroupAlgebraVector:
    """Finite integer combination of group elements, keyed by element index."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupTable, coeffs: Mapping[int, int] | None = None) -> None:
        self.group = group
        self.coeffs: dict[int, int] = {
            int(g): int(c) for g, c in (coeffs or {}).items() if c
        }

    @classmethod
    def basis(cls, group: GroupTable, g: int) -> GroupAlgebraVector:
        return cls(group, {g: 1})

    @classmethod
    def from_set(cls, group: GroupTable, elements: Iterable[int]) -> GroupAlgebraVector:
        """The sum of a set of elements."""
        return cls(group, {g: 1 for g in set(elements)})

    @classmethod
    def from_cycles(cls, group: GroupTable, texts: Iterable[str]) -> GroupAlgebraVector:
        out: dict[int, int] = defaultdict(int)
        for t in texts:
            out[group.index(parse_permutation(t, group.degree))] += 1
        return cls(group, out)

    def _check(self, other: GroupAlgebraVector) -> None:
        if other.group is not self.group:
            raise ValueError("vectors live in different group algebras")

    def __add__(self, other: GroupAlgebraVector) -> GroupAlgebraVector:
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraVector(self.group, out)

    def __neg__(self) -> GroupAlgebraVector:
        return GroupAlgebraVector(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: GroupAlgebraVector) -> GroupAlgebraVector:
        return self + (-other)

    def __rmul__(self, scalar: int) -> GroupAlgebraVector:
        return GroupAlgebraVector(self.group, {g: scalar * c for g, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraVector):
            return algebra_product(self, other)
        return other * self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraVector):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"{c}*{self.group.elements[g]}" for g, c in sorted(self.coeffs.items())]
        return " + ".join(terms)

    def is_zero(self) -> bool:
        return not self.coeffs


def algebra_product(u: GroupAlgebraVector, v: GroupAlgebraVector) -> GroupAlgebraVector:
    """Convolution: ``coeff(z) = sum_{xy = z} u(x) v(y)``."""
    u._check(v)
    G = u.group
    out: dict[int, int] = defaultdict(int)
    for x, cx in u.coeffs.items():
        for y, cy in v.coeffs.items():
            out[G.mul(x, y)] += cx * cy
    return GroupAlgebraVector(G, out)


def commutator(u: GroupAlgebraVector, v: GroupAlgebraVector) -> GroupAlgebraVector:
    return u * v - v * u


def cor5_elements(G: GroupTable, n: int) -> dict[str, GroupAlgebraVector]:
    """The four elements used to rewrite the 3-cycle set ``{(1 2 i)^{+-1}}``
    of ``S_n`` through transposition sums:

    * ``a``: sum of ``(1 2 i)`` and ``(2 1 i)`` over ``i = 3..n``
    * ``b``: sum of all transpositions
    * ``c``: sum of transpositions on the points ``3..n``
    * ``d``: the transposition ``(1 2)``
    """
    pts = range(1, n + 1)
    return {
        "a": GroupAlgebraVector.from_cycles(
            G, [f"(1 2 {i})" for i in range(3, n + 1)] + [f"(2 1 {i})" for i in range(3, n + 1)]
        ),
        "b": GroupAlgebraVector.from_cycles(G, [f"({i} {j})" for i in pts for j in pts if i < j]),
        "c": GroupAlgebraVector.from_cycles(G, [f"({i} {j})" for i in pts for j in pts if 3 <= i < j]),
        "d": GroupAlgebraVector.from_cycles(G, ["(1 2)"]),
    }


def verify_cor5_identity(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Check ``a = d (b - c - d)`` and that ``b``, ``c``, ``d`` pairwise commute
    in the integral group algebra of ``S_n``."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    G = builtin_group("sym", n, order_cap)
    e = cor5_elements(G, n)
    a, b, c, d = e["a"], e["b"], e["c"], e["d"]
    if a != d * (b - c - d):
        return False
    return all(commutator(x, y).is_zero() for x, y in ((c, d), (b, c), (b, d)))
