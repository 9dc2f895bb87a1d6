"""Conjugacy classes and the structure constants of the class algebra.

The class sums ``K_0, ..., K_{k-1}`` span the center of the integral group
algebra, and ``K_i K_j = sum_r a[i, j, r] K_r`` with nonnegative integers
``a``. Class 0 is always the identity class; other classes are numbered by
their least element index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import VerificationError
from .permgroup import GroupTable, compose, inverse


@dataclass(frozen=True)
class ClassData:
    class_of: tuple[int, ...]
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    inverse_class: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.reps)

    def classes_meeting(self, elements) -> frozenset[int]:
        return frozenset(self.class_of[x] for x in elements)

    def union(self, classes) -> frozenset[int]:
        return frozenset(x for c in classes for x in self.members[c])


@dataclass(frozen=True)
class StructureConstants:
    """``a[i, j, r]`` counts pairs ``(x, y)`` in ``K_i x K_j`` with ``xy = z``
    for a fixed ``z`` in ``K_r``."""

    a: np.ndarray

    @property
    def k(self) -> int:
        return self.a.shape[0]


def conjugacy_classes(G: GroupTable) -> ClassData:
    """Conjugation orbits; orbits are grown with the generators only."""
    elems = G.elements
    gens = [elems[g] for g in G.generators]
    gen_pairs = [(inverse(g), g) for g in gens]
    class_of = [-1] * G.order
    reps: list[int] = []
    members: list[tuple[int, ...]] = []
    for start in range(G.order):
        if class_of[start] >= 0:
            continue
        cls = len(reps)
        reps.append(start)
        class_of[start] = cls
        orbit = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                px = elems[x]
                for ginv, g in gen_pairs:
                    y = G.index_of[compose(compose(ginv, px), g).images]
                    if class_of[y] < 0:
                        class_of[y] = cls
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        members.append(tuple(sorted(orbit)))
    inverse_class = tuple(class_of[G.inv(r)] for r in reps)
    return ClassData(
        class_of=tuple(class_of),
        reps=tuple(reps),
        sizes=tuple(len(m) for m in members),
        inverse_class=inverse_class,
        members=tuple(members),
    )


def power_class_map(G: GroupTable, C: ClassData, i: int, k: int) -> int:
    """Class of ``rep_i ** k``; ``k`` may be negative."""
    return C.class_of[G.pow(C.reps[i], k)]


def structure_constants(G: GroupTable, C: ClassData) -> StructureConstants:
    """One sweep over ``G`` per target class: for each ``x``, the pair
    ``(x, x^-1 z)`` contributes to ``a[class(x), class(x^-1 z), r]``."""
    k = C.count
    a = np.zeros((k, k, k), dtype=np.int64)
    class_of = np.asarray(C.class_of, dtype=np.int64)
    inv_rows = G.as_array()[[G.inv(x) for x in range(G.order)]]
    for r in range(k):
        z = np.asarray(G.elements[C.reps[r]].images, dtype=np.int64)
        ys = G.lookup_rows(z[inv_rows])
        counts = np.bincount(class_of * k + class_of[ys], minlength=k * k)
        a[:, :, r] = counts.reshape(k, k)
    # entries are bounded by |G|; this guards against silent wraparound
    if a.min() < 0 or a.max() > G.order:
        raise VerificationError("structure constant out of range")
    return StructureConstants(a)


def class_matrix(A: StructureConstants, i: int) -> np.ndarray:
    """Matrix of multiplication by ``K_i``: column ``j`` holds ``K_i K_j``."""
    return A.a[i].T.copy()
