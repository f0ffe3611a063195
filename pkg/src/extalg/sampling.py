"""Seeded randomness.

Every random draw comes from ``stream(seed, *labels)``: the seed and the label
path are hashed with SHA-256 and the first 8 bytes seed a
:class:`random.Random`.  Two streams with different labels are independent,
the same (seed, labels) pair always replays the same draws, and adding a new
consumer never perturbs existing ones.
"""

from __future__ import annotations

import hashlib
import random
from math import comb

from .exterior import BasisFrame, MultiVector, Subspace, span, wedge
from .hypergraphs import random_hypergraph
from .rational_linalg import RatMatrix
from .subsets import level

DEFAULT_SEED = 0


def stream(seed: int, *labels) -> random.Random:
    key = "/".join([str(int(seed))] + [str(x) for x in labels])
    digest = hashlib.sha256(key.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_frame(rng: random.Random, n: int, bound: int = 9) -> BasisFrame:
    """Random invertible integer frame with entries in [-bound, bound]."""
    while True:
        try:
            return BasisFrame(RatMatrix.from_rows(random_int_matrix(rng, n, n, bound)))
        except ZeroDivisionError:
            continue


def random_vector(rng: random.Random, n: int, bound: int = 5,
                  frame: BasisFrame | None = None) -> MultiVector:
    return MultiVector.vector([rng.randint(-bound, bound) for _ in range(n)], frame)


def random_multivector(rng: random.Random, n: int, r: int, density: float = 1.0,
                       bound: int = 5, frame: BasisFrame | None = None) -> MultiVector:
    coeffs = {A: rng.randint(-bound, bound) for A in level(n, r) if rng.random() < density}
    return MultiVector(n, r, coeffs, frame)


def random_subspace(rng: random.Random, n: int, r: int, frame: BasisFrame | None = None,
                    kind: str | None = None) -> Subspace:
    """A random subspace of level r, drawn from a mix of shapes.

    ``kind`` is one of ``dense`` (a few generic vectors), ``sparse`` (few
    monomials per generator, so initial hypergraphs are varied), ``monomial``,
    ``star`` (v wedged with a random subspace of level r-1) or ``decomposable``
    (spans of wedges of random vectors); chosen at random when omitted.
    """
    frame = frame or BasisFrame.standard(n)
    kinds = ["dense", "sparse", "monomial", "star", "decomposable"]
    if kind is None:
        kind = rng.choice(kinds if r >= 1 else ["dense"])
    total = comb(n, r)
    if kind == "dense":
        k = rng.randint(0, total)
        vecs = [random_multivector(rng, n, r, 1.0, frame=frame) for _ in range(k)]
    elif kind == "sparse":
        k = rng.randint(0, total)
        p = min(1.0, 2.0 / max(total, 1))
        vecs = [random_multivector(rng, n, r, p, bound=3, frame=frame) for _ in range(k)]
    elif kind == "monomial":
        H = random_hypergraph(rng, n, r)
        vecs = [MultiVector(n, r, {A: 1}, frame) for A in H.edges]
    elif kind == "star":
        if r == 0:
            return random_subspace(rng, n, r, frame, "dense")
        v = random_vector(rng, n, frame=frame)
        inner = random_subspace(rng, n, r - 1, frame, rng.choice(["dense", "sparse", "monomial"]))
        vecs = [wedge(v, z) for z in inner.rows]
    elif kind == "decomposable":
        k = rng.randint(0, max(1, total // 2))
        vecs = []
        for _ in range(k):
            w = MultiVector.scalar(n, 1, frame)
            for _ in range(r):
                w = wedge(w, random_vector(rng, n, 2, frame))
            vecs.append(w)
    else:
        raise ValueError(f"unknown subspace kind {kind!r}")
    return span(vecs, n, r, frame)
