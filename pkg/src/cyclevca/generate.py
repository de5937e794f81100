"""Seeded instance generators.

Every draw uses ``numpy.random.default_rng([seed, attempt])`` so a retry
after an infeasible draw gets an independent stream and the whole sequence
is reproducible from ``seed``.
"""

from __future__ import annotations

import numpy as np

from .errors import GenerationFailedError
from .feasibility import feasible
from .instance import Chord, Instance, all_chords, wrap

MAX_ATTEMPTS = 1000


def all_chords_instance(n: int) -> Instance:
    return Instance(n, tuple(all_chords(n)))


def random_instance(n: int, p: float, seed: int = 0, attempts: int = MAX_ATTEMPTS) -> Instance:
    """Keep each chord independently with probability p; redraw until feasible."""
    if n < 4:
        raise ValueError("n must be at least 4")
    if not (0 < p <= 1):
        raise ValueError("p must lie in (0, 1]")
    chords = all_chords(n)
    for attempt in range(attempts):
        rng = np.random.default_rng([seed, attempt])
        keep = rng.random(len(chords)) < p
        links = [c for c, k in zip(chords, keep) if k]
        if feasible(n, links):
            return Instance(n, tuple(links))
    raise GenerationFailedError(f"no feasible draw for n={n}, p={p} in {attempts} attempts")


def zigzag_block(start: int, links: int, n: int) -> list[Chord]:
    """``links`` pairwise-chained chords covering 2*links consecutive vertices from ``start``.

    The pattern (1,3), (2,5), (4,7), ..., (2m-2, 2m) is the shape of a
    minimum solution on the full chord set: each chord crosses the next.
    """
    v = [wrap(start + i, n) for i in range(2 * links)]
    if links == 1:
        return [Chord(v[0], v[1])]
    out = [Chord(v[0], v[2])]
    for j in range(1, links - 1):
        out.append(Chord(v[2 * j - 1], v[2 * j + 2]))
    out.append(Chord(v[2 * links - 3], v[2 * links - 1]))
    return out


def planted_instance(n: int, k: int = 2, block: int = 2, p: float = 0.3, seed: int = 0,
                     attempts: int = MAX_ATTEMPTS) -> Instance:
    """``k`` evenly spaced chained components of ``block`` links each, plus random bridges.

    With block=2 every planted component is a single crossing pair; larger
    blocks give components that the local search can pick up whole.
    """
    if block < 2 or k < 1:
        raise ValueError("need k >= 1 and block >= 2")
    if 2 * block * k > n:
        raise ValueError(f"{k} blocks of {block} links need {2 * block * k} vertices, n={n}")
    planted: set[Chord] = set()
    for j in range(k):
        start = 1 + (j * n) // k
        planted.update(zigzag_block(start, block, n))
    planted = {c for c in planted if not (abs(c.a - c.b) in (1, n - 1))}
    chords = all_chords(n)
    for attempt in range(attempts):
        rng = np.random.default_rng([seed, attempt])
        keep = rng.random(len(chords)) < p
        links = planted | {c for c, kk in zip(chords, keep) if kk}
        if feasible(n, links):
            return Instance(n, tuple(sorted(links)))
    raise GenerationFailedError(f"no feasible planted draw for n={n} in {attempts} attempts")
