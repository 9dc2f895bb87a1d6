"""Permutations and fully enumerated finite permutation groups.

Points are 1-based in every user-facing string and 0-based internally.
Products are read left to right: ``a * b`` applies ``a`` first, then ``b``,
so the Cayley graph edge ``g -> g*s`` is right multiplication.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError, ParseError

DEFAULT_ORDER_CAP = 10_000

FAMILIES = ("sym", "alt", "dih", "cyc")


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image table."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.images:
            raise ValueError("permutation degree must be positive")
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(int(x) - 1 for x in images))

    def one_based(self) -> list[int]:
        return [x + 1 for x in self.images]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        return power(self, k)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point (0-based)."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return format_cycles(self)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_list(text: str) -> list[list[int]]:
    compact = re.sub(r"\s+", " ", text.strip())
    if not compact:
        raise ParseError("empty permutation text")
    pos = 0
    cycles: list[list[int]] = []
    for m in _CYCLE_RE.finditer(compact):
        gap = compact[pos:m.start()]
        if gap.strip():
            raise ParseError(f"unexpected text {gap.strip()!r} in {text!r}")
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            cycles.append([])
            continue
        try:
            cycles.append([int(tok) for tok in body.split(" ")])
        except ValueError:
            raise ParseError(f"non-integer point in cycle ({body}) of {text!r}") from None
    if compact[pos:].strip():
        raise ParseError(f"unexpected text {compact[pos:].strip()!r} in {text!r}")
    return cycles


def max_point(text: str) -> int:
    """Largest point mentioned in cycle notation (0 for the identity)."""
    return max((x for c in _parse_cycle_list(text) for x in c), default=0)


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"`` or ``"()"``.

    >>> parse_permutation("(1 2 3)(4 5)", 5).one_based()
    [2, 3, 1, 5, 4]
    """
    if degree < 1:
        raise ParseError(f"degree must be positive, got {degree}")
    images = list(range(degree))
    used: set[int] = set()
    for cyc in _parse_cycle_list(text):
        for x in cyc:
            if x < 1 or x > degree:
                raise ParseError(f"point {x} outside 1..{degree} in {text!r}")
            if x in used:
                raise ParseError(f"point {x} repeated in {text!r}")
            used.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return Permutation(tuple(images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` then ``b``: ``result[i] = b[a[i]]``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[x] for x in a.images))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a.images):
        inv[x] = i
    return Permutation(tuple(inv))


def power(a: Permutation, k: int) -> Permutation:
    k %= element_order(a)
    result = Permutation.identity(a.degree)
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycle_type(a: Permutation) -> tuple[int, ...]:
    """Cycle lengths in decreasing order, fixed points counted as 1-cycles."""
    lengths = [len(c) for c in a.cycles()]
    lengths += [1] * (a.degree - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def element_order(a: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in a.cycles()), 1)


class GroupTable:
    """A finite permutation group with every element enumerated.

    ``elements[0]`` is the identity. Element ordering is the BFS layer order
    of the closure under right multiplication by the generators, with each
    layer sorted by image table.

    ``family`` and ``n`` are set for built-in groups only; named connection
    sets (transpositions, star, ...) rely on them.
    """

    def __init__(
        self,
        elements: Sequence[Permutation],
        generators: Sequence[int],
        *,
        spec: str = "",
        family: str | None = None,
        n: int | None = None,
    ) -> None:
        self.elements: tuple[Permutation, ...] = tuple(elements)
        self.degree = self.elements[0].degree
        self.index_of: dict[tuple[int, ...], int] = {
            p.images: i for i, p in enumerate(self.elements)
        }
        self.generators: tuple[int, ...] = tuple(generators)
        self.spec = spec
        self.family = family
        self.n = n
        self._inv = tuple(self.index_of[inverse(p).images] for p in self.elements)
        self._orders: tuple[int, ...] | None = None
        self._array: np.ndarray | None = None
        self._keys: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.spec or "group"
        return f"<GroupTable {label} degree={self.degree} order={self.order}>"

    def index(self, p: Permutation) -> int:
        try:
            return self.index_of[p.images]
        except KeyError:
            raise KeyError(f"{p} is not an element of {self.spec or 'the group'}") from None

    def contains(self, p: Permutation) -> bool:
        return p.images in self.index_of

    def mul(self, i: int, j: int) -> int:
        return self.index_of[compose(self.elements[i], self.elements[j]).images]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def pow(self, i: int, k: int) -> int:
        return self.index_of[power(self.elements[i], k).images]

    def as_array(self) -> np.ndarray:
        """Image tables stacked into an ``(order, degree)`` integer array."""
        if self._array is None:
            self._array = np.array([p.images for p in self.elements], dtype=np.int64)
        return self._array

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of many image tables at once."""
        rows = np.asarray(rows, dtype=np.int64)
        # base-degree encoding fits in int64 while degree**degree < 2**63
        if self.degree > 15:
            return np.array([self.index_of[tuple(r)] for r in rows.tolist()], dtype=np.int64)
        if self._keys is None:
            weights = self.degree ** np.arange(self.degree, dtype=np.int64)
            keys = self.as_array() @ weights
            order = np.argsort(keys)
            self._keys = (weights, keys[order], order)
        weights, sorted_keys, order = self._keys
        q = rows @ weights
        pos = np.searchsorted(sorted_keys, q)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        if np.any(sorted_keys[pos] != q):
            raise KeyError("image table is not a group element")
        return order[pos]

    def right_translates(self, s: int) -> np.ndarray:
        """``out[g]`` is the index of ``g * s`` for every element ``g``."""
        s_images = np.asarray(self.elements[s].images, dtype=np.int64)
        return self.lookup_rows(s_images[self.as_array()])

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            self._orders = tuple(element_order(p) for p in self.elements)
        return self._orders

    def is_abelian(self) -> bool:
        gens = [self.elements[g] for g in self.generators]
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)


def generate_group(
    generators: Sequence[Permutation],
    order_cap: int = DEFAULT_ORDER_CAP,
    *,
    spec: str = "",
    family: str | None = None,
    n: int | None = None,
) -> GroupTable:
    """Enumerate the group generated by ``generators`` breadth-first."""
    if not generators:
        raise ValueError("at least one generator is required")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise ValueError("generators must share a degree")
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident.images}
    layer = [ident]
    while layer:
        fresh: list[Permutation] = []
        for x in layer:
            for g in generators:
                y = compose(x, g)
                if y.images not in seen:
                    seen.add(y.images)
                    fresh.append(y)
                    if len(seen) > order_cap:
                        raise CapExceededError(
                            f"group closure exceeds order cap {order_cap}"
                        )
        fresh.sort(key=lambda p: p.images)
        elements.extend(fresh)
        layer = fresh
    table = GroupTable(elements, [], spec=spec, family=family, n=n)
    table.generators = tuple(table.index_of[g.images] for g in generators)
    return table


def _cycle(points: Iterable[int], degree: int) -> Permutation:
    pts = list(points)
    images = list(range(degree))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        images[a] = b
    return Permutation(tuple(images))


def builtin_generators(family: str, n: int) -> list[Permutation]:
    """Standard generators on the points ``1..n``.

    * ``sym``: ``(1 2)`` and ``(1 2 ... n)``
    * ``alt``: ``(1 2 i)`` for ``i = 3..n``
    * ``dih``: ``(1 2 ... n)`` and the reflection ``i -> n+1-i``
    * ``cyc``: ``(1 2 ... n)``
    """
    if family not in FAMILIES:
        raise ParseError(f"unknown group family {family!r}")
    min_n = 3 if family in ("alt", "dih") else 1
    if n < min_n:
        raise ParseError(f"{family}:{n} requires n >= {min_n}")
    ident = Permutation.identity(n)
    if family == "sym":
        if n == 1:
            return [ident]
        return [_cycle([0, 1], n), _cycle(range(n), n)]
    if family == "alt":
        return [_cycle([0, 1, i], n) for i in range(2, n)]
    if family == "dih":
        reflection = Permutation(tuple(n - 1 - i for i in range(n)))
        return [_cycle(range(n), n), reflection]
    if n == 1:
        return [ident]
    return [_cycle(range(n), n)]


def builtin_order(family: str, n: int) -> int:
    return {
        "sym": math.factorial(n),
        "alt": math.factorial(n) // 2,
        "dih": 2 * n,
        "cyc": n,
    }[family]


def builtin_group(family: str, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    gens = builtin_generators(family, n)
    expected = builtin_order(family, n)
    if expected > order_cap:
        raise CapExceededError(f"{family}:{n} has order {expected} > cap {order_cap}")
    G = generate_group(gens, order_cap, spec=f"{family}:{n}", family=family, n=n)
    assert G.order == expected, (family, n, G.order)
    return G


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_group_spec(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build a group from ``sym:N``, ``alt:N``, ``dih:N``, ``cyc:N`` or
    ``gens:<cycles>,<cycles>,...[@degree]``."""
    head, sep, body = spec.partition(":")
    if not sep:
        raise ParseError(f"group spec {spec!r} lacks ':'")
    if head in FAMILIES:
        try:
            n = int(body)
        except ValueError:
            raise ParseError(f"bad integer in group spec {spec!r}") from None
        return builtin_group(head, n, order_cap)
    if head != "gens":
        raise ParseError(f"unknown group family {head!r}")
    gen_text, at, deg_text = body.partition("@")
    texts = [t for t in _split_top_level(gen_text, ",")]
    if not gen_text.strip() or any(not t.strip() for t in texts):
        raise ParseError(f"empty generator in {spec!r}")
    if at:
        try:
            degree = int(deg_text)
        except ValueError:
            raise ParseError(f"bad degree in group spec {spec!r}") from None
    else:
        degree = max(1, max(max_point(t) for t in texts))
    gens = [parse_permutation(t, degree) for t in texts]
    return generate_group(gens, order_cap, spec=spec)


def order_profile(G: GroupTable, members: Iterable[int]) -> dict[int, int]:
    """Element-order multiset as ``{order: count}`` sorted by order."""
    orders = G.element_orders()
    counts = Counter(orders[i] for i in members)
    return dict(sorted(counts.items()))
