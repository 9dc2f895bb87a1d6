"""Connection sets: classification, closures and the set-spec language.

A connection set is a ``frozenset`` of element indices into a
:class:`~cayleyspec.permgroup.GroupTable`.

Set-spec grammar::

    SPEC  := NAME | "classof:" CYCLES | "elems:" CYCLES ("," CYCLES)*
           | "stab:" INT | COMB "[" SPEC ";" SPEC "]" | UNARY "[" SPEC "]"
    NAME  := "transpositions" | "star" | "cycles12"
    COMB  := "union" | "minus"
    UNARY := "eulerclose" | "normalclose" | "invclose"
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .classalgebra import ClassData, conjugacy_classes
from .errors import CapExceededError, ParseError
from .permgroup import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    Permutation,
    order_profile,
    parse_permutation,
)

ElementSet = frozenset


@dataclass(frozen=True)
class SubsetAnalysis:
    size: int
    excludes_identity: bool
    symmetric: bool
    normal: bool
    euler: bool
    class_indices: frozenset[int] | None
    order_profile: dict[int, int] = field(default_factory=dict)


def prime_factorization(m: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def euler_phi(m: int) -> int:
    """Totient from the prime-power decomposition: prod p^(a-1) (p-1)."""
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = 1
    for p, e in prime_factorization(m):
        result *= p ** (e - 1) * (p - 1)
    return result


def coprime_exponents(m: int) -> list[int]:
    return [k for k in range(m) if math.gcd(k, m) == 1]


def cyclic_generators(G: GroupTable, x: int) -> frozenset[int]:
    """All ``y`` with ``<y> = <x>``, i.e. ``x**k`` for ``k`` coprime to ``|x|``."""
    m = G.element_orders()[x]
    return frozenset(G.pow(x, k) for k in coprime_exponents(m))


def is_symmetric(G: GroupTable, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return all(G.inv(s) in S for s in S)


def is_normal(C: ClassData, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return all(C.union([c]) <= S for c in C.classes_meeting(S))


def is_euler(G: GroupTable, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return all(cyclic_generators(G, s) <= S for s in S)


def analyze_subset(G: GroupTable, C: ClassData, S: Iterable[int]) -> SubsetAnalysis:
    S = frozenset(S)
    normal = is_normal(C, S)
    return SubsetAnalysis(
        size=len(S),
        excludes_identity=0 not in S,
        symmetric=is_symmetric(G, S),
        normal=normal,
        euler=is_euler(G, S),
        class_indices=C.classes_meeting(S) if normal else None,
        order_profile=order_profile(G, S),
    )


def euler_closure(G: GroupTable, S: Iterable[int]) -> frozenset[int]:
    return frozenset().union(*(cyclic_generators(G, s) for s in S))


def normal_closure(G: GroupTable, C: ClassData, S: Iterable[int]) -> frozenset[int]:
    return C.union(C.classes_meeting(S))


def inverse_closure(G: GroupTable, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    return S | frozenset(G.inv(s) for s in S)


def _closure(G: GroupTable, gens: list[int], order_cap: int) -> np.ndarray:
    translates = np.stack([G.right_translates(s) for s in gens])
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(translates[:, frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        if seen.sum() > order_cap:
            raise CapExceededError(f"subgroup closure exceeds order cap {order_cap}")
        frontier = nxt
    return seen


def generated_subgroup(
    G: GroupTable, S: Iterable[int], order_cap: int = DEFAULT_ORDER_CAP
) -> frozenset[int]:
    """Element set of ``<S>``.

    Elements of ``S`` are added as generators only when they fall outside
    the subgroup built so far, so at most ``log2 |G|`` BFS closures run.
    """
    elems = sorted(set(S))
    if not elems:
        raise ValueError("generated_subgroup needs a nonempty set")
    gens: list[int] = []
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    for s in elems:
        if not member[s]:
            gens.append(s)
            member = _closure(G, gens, order_cap)
    return frozenset(np.flatnonzero(member).tolist())


def point_stabilizer(G: GroupTable, point: int) -> frozenset[int]:
    """Elements fixing ``point`` (1-based)."""
    if not 1 <= point <= G.degree:
        raise ParseError(f"stab point {point} outside 1..{G.degree}")
    return frozenset(i for i, p in enumerate(G.elements) if p.images[point - 1] == point - 1)


# -- set-spec language -------------------------------------------------------

NAMED_SETS = ("transpositions", "star", "cycles12")
COMBINATORS = ("union", "minus")
UNARY_OPS = ("eulerclose", "normalclose", "invclose")


def _named_permutations(name: str, n: int) -> list[Permutation]:
    pts = range(1, n + 1)
    if name == "transpositions":
        texts = [f"({i} {j})" for i in pts for j in pts if i < j]
    elif name == "star":
        texts = [f"(1 {i})" for i in range(2, n + 1)]
    else:
        texts = [f"(1 2 {i})" for i in range(3, n + 1)]
        texts += [f"(2 1 {i})" for i in range(3, n + 1)]
    return [parse_permutation(t, n) for t in texts]


def _lookup(G: GroupTable, perms: Iterable[Permutation], context: str) -> frozenset[int]:
    out = set()
    for p in perms:
        if not G.contains(p):
            raise ParseError(f"{p} from {context!r} is not an element of {G.spec or 'the group'}")
        out.add(G.index(p))
    return frozenset(out)


def _split_args(body: str, spec: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {spec!r}")
        if ch == ";" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {spec!r}")
    parts.append("".join(cur))
    return parts


def _split_cycles_list(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def resolve_set_spec(spec: str, G: GroupTable, C: ClassData | None = None) -> frozenset[int]:
    """Resolve a set spec to element indices of ``G``.

    Named sets are defined on the natural points of ``sym``/``alt`` built-ins
    and are rejected for any other group. The result may contain the
    identity; graph construction rejects that later.
    """
    if C is None:
        C = conjugacy_classes(G)
    return _resolve(spec.strip(), G, C)


def _resolve(spec: str, G: GroupTable, C: ClassData) -> frozenset[int]:
    if not spec:
        raise ParseError("empty set spec")
    if spec in NAMED_SETS:
        if G.family not in ("sym", "alt") or G.n is None:
            raise ParseError(f"named set {spec!r} needs a sym:N or alt:N group")
        return _lookup(G, _named_permutations(spec, G.n), spec)
    if spec.startswith("classof:"):
        p = parse_permutation(spec[len("classof:"):], G.degree)
        x = next(iter(_lookup(G, [p], spec)))
        return C.union([C.class_of[x]])
    if spec.startswith("elems:"):
        texts = _split_cycles_list(spec[len("elems:"):])
        if any(not t.strip() for t in texts):
            raise ParseError(f"empty element in {spec!r}")
        return _lookup(G, [parse_permutation(t, G.degree) for t in texts], spec)
    if spec.startswith("stab:"):
        try:
            point = int(spec[len("stab:"):])
        except ValueError:
            raise ParseError(f"bad point in {spec!r}") from None
        return point_stabilizer(G, point)
    op, bracket, rest = spec.partition("[")
    if not bracket or not rest.endswith("]"):
        raise ParseError(f"unrecognized set spec {spec!r}")
    args = _split_args(rest[:-1], spec)
    if op in COMBINATORS:
        if len(args) != 2:
            raise ParseError(f"{op} takes two arguments in {spec!r}")
        left, right = (_resolve(a.strip(), G, C) for a in args)
        return left | right if op == "union" else left - right
    if op in UNARY_OPS:
        if len(args) != 1:
            raise ParseError(f"{op} takes one argument in {spec!r}")
        inner = _resolve(args[0].strip(), G, C)
        if op == "eulerclose":
            return euler_closure(G, inner)
        if op == "normalclose":
            return normal_closure(G, C, inner)
        return inverse_closure(G, inner)
    raise ParseError(f"unknown set operator {op!r} in {spec!r}")
