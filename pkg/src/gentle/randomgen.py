"""Seeded random gentle algebras for property testing and self-tests.

Quivers are grown from a random spanning tree with a few extra arrows,
respecting the degree bounds; composable pairs through each vertex are
then assigned to the ideal so the gentle continuation rules hold (a full
crossing at a 2-in 2-out vertex forces a diagonal pattern, a fan forces
exactly one zero composite, a straight-through vertex is a free choice).
Candidates failing finite dimensionality are retried with fresh choices.
"""

from __future__ import annotations

import random

from .presentation import (Arrow, GentleAlgebra, GentleValidationError,
                           Presentation, validate_gentle)


def random_gentle(seed: int, max_vertices: int = 6, max_extra_arrows: int = 3,
                  exclude_a3_graph: bool = False) -> GentleAlgebra:
    """A random connected finite-dimensional gentle algebra, seed-determined."""
    rng = random.Random(seed)
    for attempt in range(400):
        p = _random_presentation(rng, max_vertices, max_extra_arrows)
        if p is None:
            continue
        if exclude_a3_graph and _underlying_a3(p):
            continue
        try:
            return validate_gentle(p)
        except GentleValidationError:
            continue
    raise RuntimeError(f"no gentle algebra found for seed {seed}")


def _underlying_a3(p: Presentation) -> bool:
    if len(p.vertices) != 3 or len(p.arrows) != 2:
        return False
    edges = [frozenset((a.source, a.target)) for a in p.arrows]
    return (len(edges[0]) == 2 and len(edges[1]) == 2 and edges[0] != edges[1]
            and len(edges[0] | edges[1]) == 3)


def _random_presentation(rng: random.Random, max_vertices: int,
                         max_extra: int) -> Presentation | None:
    n = rng.randint(2, max_vertices)
    vertices = [str(i + 1) for i in range(n)]
    out_deg = {v: 0 for v in vertices}
    in_deg = {v: 0 for v in vertices}
    arrows: list[Arrow] = []
    names = iter("abcdefghijklmnopqrstuvwxyz")

    def add_arrow(src: str, tgt: str) -> bool:
        if out_deg[src] >= 2 or in_deg[tgt] >= 2:
            return False
        arrows.append(Arrow(next(names), src, tgt))
        out_deg[src] += 1
        in_deg[tgt] += 1
        return True

    # spanning tree
    for i in range(1, n):
        new = vertices[i]
        for _ in range(8):
            old = vertices[rng.randrange(i)]
            src, tgt = (old, new) if rng.random() < 0.5 else (new, old)
            if add_arrow(src, tgt):
                break
        else:
            return None

    for _ in range(rng.randint(0, max_extra)):
        for _ in range(8):
            src, tgt = rng.choice(vertices), rng.choice(vertices)
            if add_arrow(src, tgt):
                break

    relations = _random_relations(rng, vertices, arrows)
    if relations is None:
        return None
    return Presentation("random", tuple(vertices), tuple(arrows), tuple(relations))


def _random_relations(rng: random.Random, vertices, arrows) -> list[tuple[str, str]] | None:
    relations: list[tuple[str, str]] = []
    for v in vertices:
        ins = [a for a in arrows if a.target == v]
        outs = [a for a in arrows if a.source == v]
        if not ins or not outs:
            continue
        if len(ins) == 2 and len(outs) == 2:
            # both continuation rules force a perfect matching of zero pairs
            if rng.random() < 0.5:
                zero = [(ins[0], outs[0]), (ins[1], outs[1])]
            else:
                zero = [(ins[0], outs[1]), (ins[1], outs[0])]
        elif len(ins) == 2:
            zero = [(ins[rng.randrange(2)], outs[0])]
        elif len(outs) == 2:
            zero = [(ins[0], outs[rng.randrange(2)])]
        else:
            zero = [(ins[0], outs[0])] if rng.random() < 0.5 else []
        for b, g in zero:
            relations.append((b.name, g.name))
    return relations


def random_corpus(base_seed: int, count: int, max_vertices: int = 6,
                  exclude_a3_graph: bool = False) -> list[GentleAlgebra]:
    return [random_gentle(base_seed + i, max_vertices,
                          exclude_a3_graph=exclude_a3_graph)
            for i in range(count)]
