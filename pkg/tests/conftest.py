"""Shared fixtures: the example algebras and seeded random corpora."""

from __future__ import annotations

import os

import pytest

from gentle import load_algebra

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")

FIXTURE_NAMES = ["dual_numbers", "kronecker", "a2", "a3_hereditary", "a3_relation", "pent"]


def fixture_text(name: str) -> str:
    with open(os.path.join(FIXTURE_DIR, f"{name}.gentle"), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def algebras():
    return {name: load_algebra(fixture_text(name)) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def random_corpus_small():
    from gentle.randomgen import random_corpus
    return random_corpus(2000, 12, max_vertices=5)


@pytest.fixture(scope="session")
def acceptance_corpus():
    """50 seed-fixed algebras on at most 6 vertices."""
    from gentle.randomgen import random_corpus
    return random_corpus(1000, 50, max_vertices=6)


@pytest.fixture(scope="session")
def search_corpus():
    """10 seed-fixed algebras on at most 5 vertices, line-of-three excluded."""
    from gentle.randomgen import random_corpus
    return random_corpus(3000, 10, max_vertices=5, exclude_a3_graph=True)
