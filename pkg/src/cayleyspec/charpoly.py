"""Exact integer characteristic polynomials and integer root extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class CharPolyZ:
    """Monic integer polynomial, coefficients highest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError(f"polynomial must be monic: {self.coeffs}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, B) -> np.ndarray:
        """Horner evaluation at a square matrix with Python-int entries."""
        M = np.array(B, dtype=object)
        ident = np.identity(M.shape[0], dtype=np.int64).astype(object)
        acc = np.zeros_like(M)
        for c in self.coeffs:
            acc = acc.dot(M) + c * ident
        return acc

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    n = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = n - i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + (f"^{e}" if e > 1 else "")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def charpoly_integer(B) -> CharPolyZ:
    """Characteristic polynomial ``det(xI - B)`` by Berkowitz's division-free
    recurrence over Python integers."""
    M = [[int(v) for v in row] for row in np.asarray(B, dtype=object)]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return CharPolyZ((1,))
    poly = [1, -M[0][0]]
    for r in range(1, n):
        A = [row[:r] for row in M[:r]]
        col = [M[i][r] for i in range(r)]
        row = M[r][:r]
        q = [1, -M[r][r]]
        v = col
        for _ in range(r):
            q.append(-sum(a * b for a, b in zip(row, v)))
            v = [sum(a * b for a, b in zip(Ai, v)) for Ai in A]
        poly = [
            sum(q[i - j] * poly[j] for j in range(min(i, r) + 1))
            for i in range(r + 2)
        ]
    return CharPolyZ(tuple(poly))


def synthetic_division(coeffs: Sequence[int], root: int) -> tuple[list[int], int]:
    """Divide by ``x - root``; returns (quotient, remainder)."""
    out = []
    acc = 0
    for c in coeffs:
        acc = acc * root + c
        out.append(acc)
    return out[:-1], out[-1]


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials by a monic divisor."""
    if not den or den[0] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    quot = []
    for i in range(len(num) - len(den) + 1):
        c = rem[i]
        quot.append(c)
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    tail = rem[len(quot):] if quot else rem
    while len(tail) > 1 and tail[0] == 0:
        tail = tail[1:]
    return quot or [0], tail


def has_factor(p: CharPolyZ, factor: Sequence[int]) -> bool:
    _, rem = poly_divmod(p.coeffs, factor)
    return all(c == 0 for c in rem)


def _iroot_ceil(v: int, n: int) -> int:
    """Smallest integer ``r >= 0`` with ``r**n >= v``."""
    if v <= 0:
        return 0
    lo, hi = 0, 1 << (v.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n >= v:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(coeffs: Sequence[int]) -> int:
    """Fujiwara bound on root magnitudes of a monic polynomial, rounded up."""
    n = len(coeffs) - 1
    if n == 0:
        return 0
    best = 0
    for i in range(1, n + 1):
        c = abs(coeffs[i])
        if i == n:
            c = (c + 1) // 2
        best = max(best, _iroot_ceil(c, i))
    return 2 * best


def integer_roots(p: CharPolyZ) -> tuple[list[tuple[int, int]], bool]:
    """Integer roots with multiplicity, and whether ``p`` splits over them.

    Zero roots are stripped first; the remaining candidates are divisors of
    the constant term inside the Fujiwara bound, each deflated repeatedly.
    """
    coeffs = list(p.coeffs)
    roots: dict[int, int] = {}
    zeros = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1
    if zeros:
        roots[0] = zeros
    const = coeffs[-1]
    for d in range(1, root_bound(coeffs) + 1):
        if len(coeffs) == 1:
            break
        if const % d:
            continue
        for r in (d, -d):
            while len(coeffs) > 1:
                quot, rem = synthetic_division(coeffs, r)
                if rem:
                    break
                coeffs = quot
                roots[r] = roots.get(r, 0) + 1
    pairs = sorted(roots.items(), key=lambda kv: -kv[0])
    return pairs, coeffs == [1]
