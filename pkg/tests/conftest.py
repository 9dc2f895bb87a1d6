from __future__ import annotations

from functools import lru_cache

import pytest

from cayleyspec.characters import central_characters
from cayleyspec.classalgebra import conjugacy_classes, structure_constants
from cayleyspec.permgroup import parse_group_spec
from cayleyspec.permgroup import inverse as perm_inverse, compose as perm_compose


@lru_cache(maxsize=None)
def context(spec: str):
    """(G, C, A, T) for a group spec, shared across tests."""
    G = parse_group_spec(spec)
    C = conjugacy_classes(G)
    A = structure_constants(G, C)
    T = central_characters(G, C, A)
    return G, C, A, T


def brute_force_classes(G) -> list[frozenset[int]]:
    """Conjugation orbits computed with every group element."""
    seen: set[int] = set()
    out = []
    for x in range(G.order):
        if x in seen:
            continue
        px = G.elements[x]
        orbit = frozenset(
            G.index(perm_compose(perm_compose(perm_inverse(g), px), g)) for g in G.elements
        )
        seen |= orbit
        out.append(orbit)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def sym3():
    return context("sym:3")


@pytest.fixture
def sym4():
    return context("sym:4")


@pytest.fixture
def alt4():
    return context("alt:4")


@pytest.fixture
def cyc5():
    return context("cyc:5")
