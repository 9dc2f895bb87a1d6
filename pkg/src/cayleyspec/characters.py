"""Central characters of a finite group from its class algebra.

Every irreducible character ``chi`` gives an algebra homomorphism ``omega``
from the center of the group algebra to the complex numbers. On class sums,
``omega(K_i) = chi(x_i) |K_i| / chi(1)``. The row vector
``w = (omega(K_0), ..., omega(K_{k-1}))`` satisfies ``w M_i = omega(K_i) w``
for every class matrix ``M_i``, so the rows are the common left eigenvectors
of the class matrices, normalised by ``w_0 = 1``.

Degrees follow from first orthogonality. Since ``omega(K_i) omega(K_i')``
equals ``|chi(x_i)|^2 |K_i|^2 / chi(1)^2`` when ``i'`` is the inverse class,

    chi(1)^2 = |G| / sum_i omega(K_i) omega(K_i') / |K_i|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classalgebra import ClassData, StructureConstants, class_matrix
from .errors import VerificationError
from .permgroup import GroupTable

RETRY_LIMIT = 5
VERIFY_RTOL = 1e-8
DEGREE_TOL = 1e-6


@dataclass(frozen=True)
class CentralCharacterTable:
    omega: np.ndarray  # (k, k) complex; row per irreducible, column per class
    degrees: tuple[int, ...]
    residual: float  # worst relative homomorphism defect

    @property
    def k(self) -> int:
        return len(self.degrees)


def _sort_key(row: np.ndarray, degree: int):
    # trivial character (largest values) first among linear characters
    return (degree, tuple((-round(v.real, 6), -round(v.imag, 6)) for v in row))


def homomorphism_residual(omega: np.ndarray, A: StructureConstants, sizes) -> float:
    """Max over rows of ``|w_i w_j - sum_r a_ijr w_r| / (|K_i| |K_j|)``."""
    a = A.a.astype(float)
    sizes = np.asarray(sizes, dtype=float)
    scale = np.outer(sizes, sizes)
    worst = 0.0
    for w in omega:
        lhs = np.outer(w, w)
        rhs = a @ w
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / scale)))
    return worst


def central_characters(
    G: GroupTable,
    C: ClassData,
    A: StructureConstants,
    *,
    seed: int = 0,
) -> CentralCharacterTable:
    """Simultaneously diagonalise the class matrices.

    A random real combination ``sum r_i M_i`` (``r_i`` uniform in ``[1, 2)``)
    has simple spectrum with probability one; its left eigenvectors are then
    the central character rows. Each row is checked against every ``M_i``.
    """
    order = G.order
    k = C.count
    mats = [class_matrix(A, i).astype(float) for i in range(k)]
    rng = np.random.default_rng(seed)
    last_error = "no attempt made"
    for _ in range(RETRY_LIMIT):
        coeffs = rng.uniform(1.0, 2.0, size=k)
        combo = sum(c * M for c, M in zip(coeffs, mats))
        vals, vecs = np.linalg.eig(combo.T)
        scale = max(1.0, float(np.max(np.abs(vals))))
        gaps = np.abs(vals[:, None] - vals[None, :]) + np.eye(k) * scale
        if k > 1 and gaps.min() < 1e-7 * scale:
            last_error = "random combination has a repeated eigenvalue"
            continue
        rows = vecs.T
        if np.any(np.abs(rows[:, 0]) < 1e-12):
            last_error = "eigenvector with vanishing identity component"
            continue
        omega = rows / rows[:, [0]]
        ok = True
        for i, M in enumerate(mats):
            lhs = omega @ M
            rhs = omega[:, [i]] * omega
            bound = VERIFY_RTOL * max(1.0, float(np.abs(M).sum(axis=0).max())) * np.abs(omega).max(axis=1)
            if np.any(np.abs(lhs - rhs).max(axis=1) > bound):
                ok = False
                break
        if not ok:
            last_error = "eigenrow failed class-matrix verification"
            continue
        break
    else:
        raise VerificationError(f"simultaneous diagonalisation failed: {last_error}")

    sizes = np.asarray(C.sizes, dtype=float)
    inv = list(C.inverse_class)
    degrees = []
    for w in omega:
        denom = np.sum(w * w[inv] / sizes)
        d2 = order / denom
        if abs(d2.imag) > DEGREE_TOL * max(1.0, abs(d2)):
            raise VerificationError(f"non-real squared degree {d2}")
        d = float(np.sqrt(max(d2.real, 0.0)))
        rounded = int(round(d))
        if rounded < 1 or abs(d - rounded) > DEGREE_TOL:
            raise VerificationError(f"degree {d} is not a positive integer")
        degrees.append(rounded)
    if sum(d * d for d in degrees) != order:
        raise VerificationError(f"sum of squared degrees {sum(d * d for d in degrees)} != {order}")

    perm = sorted(range(k), key=lambda r: _sort_key(omega[r], degrees[r]))
    omega = omega[perm]
    degrees = [degrees[r] for r in perm]
    residual = homomorphism_residual(omega, A, C.sizes)
    if residual > VERIFY_RTOL:
        raise VerificationError(f"homomorphism residual {residual:.3e} exceeds {VERIFY_RTOL}")
    return CentralCharacterTable(omega=omega, degrees=tuple(degrees), residual=residual)
