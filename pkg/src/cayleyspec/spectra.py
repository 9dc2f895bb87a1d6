"""Cayley graph spectra by two independent routes.

For a normal set ``S`` (a union of conjugacy classes) the class sum of ``S``
is central, so it acts on each irreducible module as the scalar
``lambda_chi = sum_{i in S} omega_chi(K_i)``; the graph eigenvalue
``lambda_chi`` then appears with multiplicity ``chi(1)^2``. The same values are
the eigenvalues of the small integer matrix ``B = sum_{i in S} M_i``, so
integrality is certified exactly from the characteristic polynomial of ``B``.

The direct route builds the ``|G| x |G|`` adjacency matrix and diagonalises
it numerically. It is the oracle for the character route and the only route
for non-normal ``S``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .characters import CentralCharacterTable, central_characters
from .charpoly import CharPolyZ, charpoly_integer, integer_roots
from .classalgebra import (
    ClassData,
    StructureConstants,
    class_matrix,
    conjugacy_classes,
    structure_constants,
)
from .errors import CapExceededError, VerificationError
from .permgroup import DEFAULT_ORDER_CAP, GroupTable, generate_group
from .subsets import generated_subgroup, is_normal, is_symmetric

DEFAULT_TOL = 1e-6
DEFAULT_ORACLE_CAP = 1500
CHARACTERS = "central-characters"
DIRECT = "direct-oracle"


@dataclass
class SpectrumReport:
    """Eigenvalue/multiplicity pairs, largest eigenvalue first.

    Values are ``int`` when the spectrum is certified integral and ``float``
    otherwise. ``residual`` is the largest distance of an eigenvalue to the
    nearest integer (0 for an exact certificate).
    """

    pairs: list[tuple[int | float, int]]
    method: str
    certified: bool
    integral: bool
    residual: float
    charpoly: CharPolyZ | None = field(default=None, repr=False)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.pairs)

    def expanded(self) -> np.ndarray:
        """All eigenvalues with repetition, sorted ascending."""
        vals = [float(v) for v, m in self.pairs for _ in range(m)]
        return np.sort(np.array(vals))

    def as_dict(self) -> dict[int | float, int]:
        return dict(self.pairs)


def check_report(
    report: SpectrumReport,
    order: int,
    set_size: int,
    components: int | None = None,
    tol: float = DEFAULT_TOL,
) -> None:
    """Trace and Perron identities every spectrum of ``Cay(G, S)`` obeys."""
    if not report.pairs:
        raise VerificationError("empty spectrum")
    total = report.total_multiplicity
    if total != order:
        raise VerificationError(f"multiplicities sum to {total}, expected {order}")
    exact = report.certified and report.integral
    trace1 = sum(v * m for v, m in report.pairs)
    trace2 = sum(v * v * m for v, m in report.pairs)
    slack1 = 0 if exact else tol * order
    slack2 = 0 if exact else 2 * tol * order * max(1, set_size)
    if abs(trace1) > slack1:
        raise VerificationError(f"sum of eigenvalues is {trace1}, expected 0")
    if abs(trace2 - set_size * order) > slack2:
        raise VerificationError(f"sum of squared eigenvalues is {trace2}, expected {set_size * order}")
    top, top_mult = max(report.pairs, key=lambda p: p[0])
    if abs(top - set_size) > (0 if exact else tol):
        raise VerificationError(f"largest eigenvalue {top}, expected {set_size}")
    if components is not None and top_mult != components:
        raise VerificationError(
            f"largest eigenvalue has multiplicity {top_mult}, expected {components} components"
        )


def _cluster(values: Sequence[float], weights: Sequence[int], min_gap: float) -> list[tuple[float, int]]:
    """Group sorted values whose neighbours are closer than ``min_gap``."""
    order = np.argsort(values)
    groups: list[list[int]] = []
    for idx in order:
        if groups and values[idx] - values[groups[-1][-1]] <= min_gap:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    out = []
    for g in groups:
        w = sum(weights[i] for i in g)
        mean = sum(values[i] * weights[i] for i in g) / w
        out.append((float(mean), int(w)))
    out.sort(key=lambda p: -p[0])
    return out


def _integer_residual(values: Iterable[float]) -> float:
    return max((abs(v - round(v)) for v in values), default=0.0)


def subset_class_matrix(A: StructureConstants, classes: Iterable[int]) -> np.ndarray:
    """``B = sum_{i in classes} M_i``, multiplication by the class sum of S."""
    classes = sorted(set(classes))
    if not classes:
        raise ValueError("at least one class is required")
    if 0 in classes:
        raise ValueError("the identity class cannot belong to a connection set")
    B = np.zeros((A.k, A.k), dtype=np.int64)
    for i in classes:
        B += class_matrix(A, i)
    return B


def character_eigenvalues(T: CentralCharacterTable, classes: Iterable[int]) -> np.ndarray:
    """``lambda_chi`` for every row of the table, as complex numbers."""
    cols = sorted(set(classes))
    return T.omega[:, cols].sum(axis=1)


def spectrum_via_central_characters(
    T: CentralCharacterTable,
    classes: Iterable[int],
    C: ClassData | None = None,
    *,
    exact_roots: Sequence[int] | None = None,
    tol: float = DEFAULT_TOL,
) -> SpectrumReport:
    """Spectrum of the Cayley graph of a normal symmetric set.

    With ``exact_roots`` (the integer roots of the charpoly of ``B``) every
    value is snapped to its root and the report is certified integral.
    """
    classes = sorted(set(classes))
    if not classes or 0 in classes:
        raise ValueError("classes must be nonempty and exclude the identity class")
    if C is not None and any(C.inverse_class[i] not in classes for i in classes):
        raise ValueError("class set is not closed under inversion")
    lam = character_eigenvalues(T, classes)
    scale = max(1.0, float(np.abs(lam).max()))
    if np.abs(lam.imag).max() > tol * scale:
        raise VerificationError("complex eigenvalue for a symmetric connection set")
    real = lam.real
    squares = [d * d for d in T.degrees]
    numeric = _cluster(real, squares, 10 * tol)
    if exact_roots is None:
        return SpectrumReport(
            pairs=numeric,
            method=CHARACTERS,
            certified=False,
            integral=_integer_residual(real) <= tol,
            residual=_integer_residual(real),
        )
    roots = sorted(set(int(r) for r in exact_roots))
    mult: dict[int, int] = {}
    snapped = []
    for value, d2 in zip(real, squares):
        r = min(roots, key=lambda x: abs(x - value))
        if abs(r - value) > tol * scale:
            raise VerificationError(f"eigenvalue {value} is not near any exact root")
        snapped.append(r)
        mult[r] = mult.get(r, 0) + d2
    # numerically merged clusters must not straddle distinct exact roots
    for cluster_value, _ in numeric:
        hits = {s for s, v in zip(snapped, real) if abs(v - cluster_value) <= 10 * tol * scale + 1e-12}
        if len(hits) > 1:
            raise VerificationError(f"eigenvalue cluster near {cluster_value} spans roots {sorted(hits)}")
    return SpectrumReport(
        pairs=sorted(mult.items(), key=lambda p: -p[0]),
        method=CHARACTERS,
        certified=True,
        integral=True,
        residual=0.0,
    )


def adjacency_matrix(
    G: GroupTable, S: Iterable[int], oracle_cap: int = DEFAULT_ORACLE_CAP
) -> np.ndarray:
    """Dense adjacency matrix: entry ``(g, h)`` is 1 iff ``g^-1 h`` lies in ``S``."""
    S = sorted(set(S))
    if 0 in S:
        raise ValueError("connection set contains the identity")
    if not is_symmetric(G, S):
        raise ValueError("connection set is not symmetric")
    if G.order > oracle_cap:
        raise CapExceededError(f"order {G.order} exceeds direct-oracle cap {oracle_cap}")
    adj = np.zeros((G.order, G.order), dtype=np.float64)
    rows = np.arange(G.order)
    for s in S:
        adj[rows, G.right_translates(s)] = 1.0
    return adj


def spectrum_direct(adj: np.ndarray, tol: float = DEFAULT_TOL) -> SpectrumReport:
    try:
        vals = np.linalg.eigvalsh(adj)
    except np.linalg.LinAlgError as exc:
        raise VerificationError(f"eigensolver did not converge: {exc}") from exc
    residual = _integer_residual(vals)
    return SpectrumReport(
        pairs=_cluster(vals, [1] * len(vals), 10 * tol),
        method=DIRECT,
        certified=False,
        integral=residual <= tol,
        residual=residual,
    )


@dataclass
class ComponentsReport:
    count: int
    size: int
    lemma_check: bool | None  # None when neither route could compare spectra


def graph_component_sizes(G: GroupTable, S: Iterable[int]) -> list[int]:
    S = sorted(set(S))
    translates = [G.right_translates(s) for s in S]
    seen = np.zeros(G.order, dtype=bool)
    sizes = []
    for start in range(G.order):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        size = 0
        while queue:
            g = queue.popleft()
            size += 1
            for t in translates:
                h = t[g]
                if not seen[h]:
                    seen[h] = True
                    queue.append(h)
        sizes.append(size)
    return sizes


def _spectra_match(big: SpectrumReport, small: SpectrumReport, n: int, tol: float) -> bool:
    if big.certified and small.certified and big.integral and small.integral:
        return big.as_dict() == {v: m * n for v, m in small.pairs}
    if len(big.pairs) != len(small.pairs):
        return False
    for (v1, m1), (v2, m2) in zip(big.pairs, small.pairs):
        if m1 != n * m2 or abs(v1 - v2) > 10 * tol:
            return False
    return True


def subgroup_table(G: GroupTable, S: Iterable[int], order_cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """``<S>`` as a group of its own, generated by the permutations in ``S``."""
    gens = [G.elements[s] for s in sorted(set(S))]
    return generate_group(gens, order_cap, spec=f"<S> in {G.spec}" if G.spec else "<S>")


def components_report(
    G: GroupTable,
    S: Iterable[int],
    C: ClassData | None = None,
    *,
    tol: float = DEFAULT_TOL,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> ComponentsReport:
    """Component count ``|G : <S>|`` and a check that every component has
    ``|<S>|`` vertices and that the spectrum of ``Cay(G, S)`` is that of
    ``Cay(<S>, S)`` with multiplicities scaled by the component count."""
    S = frozenset(S)
    H = generated_subgroup(G, S, order_cap)
    if G.order % len(H):
        raise VerificationError(f"|<S>| = {len(H)} does not divide |G| = {G.order}")
    n = G.order // len(H)
    sizes = graph_component_sizes(G, S)
    sizes_ok = len(sizes) == n and all(sz == len(H) for sz in sizes)

    H_table = subgroup_table(G, S, order_cap)
    S_in_H = frozenset(H_table.index(G.elements[s]) for s in S)
    if C is None:
        C = conjugacy_classes(G)
    if is_normal(C, S):
        big = certify_integrality(G, C, structure_constants(G, C), S, tol=tol)
        CH = conjugacy_classes(H_table)
        small = certify_integrality(H_table, CH, structure_constants(H_table, CH), S_in_H, tol=tol)
        spectra_ok: bool | None = _spectra_match(big, small, n, tol)
    elif G.order <= oracle_cap:
        big = spectrum_direct(adjacency_matrix(G, S, oracle_cap), tol)
        small = spectrum_direct(adjacency_matrix(H_table, S_in_H, oracle_cap), tol)
        spectra_ok = _spectra_match(big, small, n, tol)
    else:
        spectra_ok = None
    lemma = sizes_ok and spectra_ok if spectra_ok is not None else (None if sizes_ok else False)
    return ComponentsReport(count=n, size=len(H), lemma_check=lemma)


def certify_integrality(
    G: GroupTable,
    C: ClassData,
    A: StructureConstants,
    S: Iterable[int],
    *,
    table: CentralCharacterTable | None = None,
    tol: float = DEFAULT_TOL,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> SpectrumReport:
    """Decide integrality of ``Cay(G, S)``.

    Normal ``S``: exact verdict from the integer roots of the charpoly of
    ``B``, with multiplicities from the central characters. Otherwise: numeric
    verdict from the dense adjacency matrix.
    """
    S = frozenset(S)
    if not S:
        raise ValueError("connection set is empty")
    if 0 in S:
        raise ValueError("connection set contains the identity")
    if not is_symmetric(G, S):
        raise ValueError("connection set is not symmetric")
    if not is_normal(C, S):
        return spectrum_direct(adjacency_matrix(G, S, oracle_cap), tol)

    classes = sorted(C.classes_meeting(S))
    B = subset_class_matrix(A, classes)
    poly = charpoly_integer(B)
    roots, split = integer_roots(poly)
    if table is None:
        table = central_characters(G, C, A)
    if split:
        report = spectrum_via_central_characters(
            table, classes, C, exact_roots=[r for r, _ in roots], tol=tol
        )
        # each exact root of B is hit by exactly as many characters as its multiplicity
        lam = character_eigenvalues(table, classes).real
        for r, m in roots:
            hits = int(np.sum(np.abs(lam - r) <= tol * max(1.0, abs(r))))
            if hits != m:
                raise VerificationError(f"root {r} has multiplicity {m} but {hits} characters")
    else:
        report = spectrum_via_central_characters(table, classes, C, tol=tol)
        report.certified = True
        report.integral = False
    report.charpoly = poly
    return report
