"""Hypergraphs on [n] and the purely combinatorial operators on them.

Edges are bitmasks (see :mod:`extalg.subsets`).  Besides shadows, restrictions
and intersection predicates this module holds the brute-force extremal
oracles (Erdős–Ko–Rado and cross-intersecting products) used to check the
exterior-algebra bounds at small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, PreconditionError
from .subsets import full, level, members, size, submasks_of_size, to_mask

EKR_N_CAP = 7
INTERSECTING_N_CAP = 5
CROSS_N_CAP = 6


class Hypergraph:
    """A family of subsets of [n].

    ``uniform_rank`` is the common edge size when the family is uniform.  It is
    inferred from nonempty families and may be given explicitly so that an
    empty family still knows its level.
    """

    __slots__ = ("n", "edges", "uniform_rank")

    def __init__(self, n: int, edges: Iterable[int] = (), uniform_rank: int | None = None):
        edges = frozenset(int(e) for e in edges)
        limit = full(n)
        for e in edges:
            if e < 0 or e & ~limit:
                raise ValueError(f"edge {members(e)} is not a subset of [{n}]")
        sizes = {size(e) for e in edges}
        if uniform_rank is not None:
            if sizes - {uniform_rank}:
                raise ValueError(f"edges are not all of size {uniform_rank}")
        elif len(sizes) == 1:
            uniform_rank = sizes.pop()
        self.n = n
        self.edges = edges
        self.uniform_rank = uniform_rank

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], uniform_rank: int | None = None):
        return cls(n, (to_mask(s, n) for s in sets), uniform_rank)

    @classmethod
    def full_level(cls, n: int, r: int) -> Hypergraph:
        return cls(n, level(n, r), r)

    @property
    def is_uniform(self) -> bool:
        return self.uniform_rank is not None

    def sorted_edges(self) -> list[int]:
        """Edges by size, then reverse-colex descending."""
        return sorted(self.edges, key=lambda e: (size(e), e))

    def sets(self) -> list[tuple[int, ...]]:
        return [members(e) for e in self.sorted_edges()]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_edges())

    def __contains__(self, edge) -> bool:
        if not isinstance(edge, int):
            edge = to_mask(edge)
        return edge in self.edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __le__(self, other: Hypergraph) -> bool:
        return self.edges <= other.edges

    def __ge__(self, other: Hypergraph) -> bool:
        return self.edges >= other.edges

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={self.sets()})"

    def density(self) -> Fraction:
        if not self.is_uniform:
            raise PreconditionError("density is defined for uniform hypergraphs")
        return Fraction(len(self), comb(self.n, self.uniform_rank))


def _require_uniform(H: Hypergraph) -> int:
    if H.uniform_rank is None:
        if H.edges:
            raise PreconditionError("hypergraph is not uniform")
        raise PreconditionError("empty hypergraph needs an explicit uniform_rank")
    return H.uniform_rank


def upper_shadow(H: Hypergraph, b: int) -> Hypergraph:
    """All (a+b)-subsets of [n] containing some edge of the a-uniform H."""
    a = _require_uniform(H)
    if b < 0 or a + b > H.n:
        raise PreconditionError(f"shadow level a+b={a + b} outside [0, {H.n}]")
    out = set()
    ground = full(H.n)
    for e in H.edges:
        for extra in submasks_of_size(ground & ~e, b):
            out.add(e | extra)
    return Hypergraph(H.n, out, a + b)


def restriction(H: Hypergraph, B: int | Iterable[int]) -> Hypergraph:
    """Edges contained in B; the ground set stays [n]."""
    if not isinstance(B, int):
        B = to_mask(B, H.n)
    return Hypergraph(H.n, (e for e in H.edges if e & ~B == 0), H.uniform_rank)


def is_intersecting(H: Hypergraph | Iterable[int]) -> bool:
    edges = list(H.edges if isinstance(H, Hypergraph) else H)
    for i, e in enumerate(edges):
        if e == 0:
            return False
        for f in edges[i + 1:]:
            if not e & f:
                return False
    return True


def is_cross_intersecting(H1: Hypergraph | Iterable[int], H2: Hypergraph | Iterable[int]) -> bool:
    e1 = H1.edges if isinstance(H1, Hypergraph) else list(H1)
    e2 = H2.edges if isinstance(H2, Hypergraph) else list(H2)
    return all(a & b for a in e1 for b in e2)


@dataclass(frozen=True)
class LymCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool


def local_lym_check(H: Hypergraph, b: int) -> LymCheck:
    a = _require_uniform(H)
    shadow = upper_shadow(H, b)
    lhs = Fraction(len(shadow), comb(H.n, a + b))
    rhs = Fraction(len(H), comb(H.n, a))
    return LymCheck(lhs, rhs, lhs >= rhs)


@dataclass(frozen=True)
class DensityProjection:
    best_B: int
    best_value: Fraction
    density: Fraction
    holds: bool


def density_projection_bound(H: Hypergraph, b: int) -> DensityProjection:
    """Best b-set restriction density against the density of H.

    The maximizing B is the first one in reverse-colex-descending order.
    """
    a = _require_uniform(H)
    if not a <= b <= H.n:
        raise PreconditionError(f"need a <= b <= n, got a={a}, b={b}, n={H.n}")
    density = Fraction(len(H), comb(H.n, a))
    best_B, best = None, Fraction(-1)
    for B in level(H.n, b):
        value = Fraction(sum(1 for e in H.edges if e & ~B == 0), comb(b, a))
        if value > best:
            best_B, best = B, value
    return DensityProjection(best_B, best, density, best >= density)


# -- extremal oracles -------------------------------------------------------

def max_weight_cliques(adjacency: Sequence[int], weights: Sequence | None = None,
                       all_witnesses: bool = False, root: int | None = None):
    """Branch and bound for maximum-weight cliques.

    ``adjacency[v]`` is the bitmask of neighbours of vertex ``v``.  The bound at
    each node is the greedy-colouring bound: per colour class only its heaviest
    vertex can join the clique.  With ``root`` set the search only considers
    cliques containing that vertex (symmetry pruning at the root).

    Returns ``(best_weight, cliques)`` with cliques as sorted vertex tuples in
    lexicographic order: every optimum with ``all_witnesses``, otherwise the
    lexicographically least one.  Weights must be positive.
    """
    nv = len(adjacency)
    w = [1] * nv if weights is None else list(weights)
    best = [0]
    found: list[tuple[int, ...]] = []

    def colour_bounds(P: int) -> list[tuple[int, object]]:
        order = []
        uncoloured = P
        bound = 0
        while uncoloured:
            avail = uncoloured
            members_ = []
            heaviest = 0
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                members_.append(v)
                heaviest = max(heaviest, w[v])
                uncoloured &= ~low
                avail &= ~low & ~adjacency[v]
            bound += heaviest
            order.extend((v, bound) for v in members_)
        return order

    def expand(R: list[int], weight, P: int):
        if P == 0:
            clique = tuple(sorted(R))
            if weight > best[0]:
                best[0] = weight
                found[:] = [clique]
            elif weight == best[0] and weight > 0:
                if all_witnesses:
                    found.append(clique)
                elif clique < found[0]:
                    found[0] = clique
            return
        for v, bound in reversed(colour_bounds(P)):
            if weight + bound < best[0]:
                return
            R.append(v)
            expand(R, weight + w[v], P & adjacency[v])
            R.pop()
            P &= ~(1 << v)

    if root is not None:
        expand([root], w[root], adjacency[root])
    else:
        expand([], 0, (1 << nv) - 1)
    return best[0], sorted(found)


@dataclass(frozen=True)
class OracleResult:
    max_size: int
    witnesses: tuple[Hypergraph, ...]


def ekr_oracle(n: int, r: int | None = None, cap: int | None = None,
               all_witnesses: bool = True) -> OracleResult:
    """Exhaustive maximum intersecting family.

    With ``r`` given the family is r-uniform; with ``r=None`` it may contain
    sets of any size.  Without ``all_witnesses`` the search is restricted to
    families containing the first candidate set, which loses nothing because
    the symmetric group acts transitively on each level (for ``r=None`` the
    restriction is not applied).
    """
    if r is None:
        cap = INTERSECTING_N_CAP if cap is None else cap
        if n > cap:
            raise CapacityError(f"global intersecting oracle capped at n <= {cap}")
        verts = [m for m in range(1, 1 << n)]
    else:
        cap = EKR_N_CAP if cap is None else cap
        if n > cap:
            raise CapacityError(f"EKR oracle capped at n <= {cap}")
        if not 0 <= r <= n:
            raise PreconditionError(f"r={r} outside [0, {n}]")
        verts = [m for m in level(n, r) if m]
    if not verts:
        return OracleResult(0, (Hypergraph(n, (), r),))
    adjacency = []
    for i, a in enumerate(verts):
        nb = 0
        for j, b in enumerate(verts):
            if i != j and a & b:
                nb |= 1 << j
        adjacency.append(nb)
    root = 0 if (r is not None and not all_witnesses) else None
    best, cliques = max_weight_cliques(adjacency, all_witnesses=all_witnesses, root=root)
    wit = tuple(Hypergraph(n, (verts[v] for v in c), r) for c in cliques)
    return OracleResult(best, wit)


@dataclass(frozen=True)
class CrossResult:
    max_product: int
    A: Hypergraph
    B: Hypergraph


def cross_product_oracle(n: int, r: int, s: int, cap: int = CROSS_N_CAP) -> CrossResult:
    """Maximum of |A||B| over cross-intersecting r-uniform A and s-uniform B.

    For a fixed A the best B is every s-set meeting all of A, so the search
    runs over A only.  Depth-first over the r-sets in canonical order with the
    bound ``(|A| + remaining) * |B(A)|``; A is assumed to contain {1..r}
    (symmetry at the root).
    """
    if n > cap:
        raise CapacityError(f"cross-intersecting oracle capped at n <= {cap}")
    if not (0 <= r <= n and 0 <= s <= n):
        raise PreconditionError("levels outside [0, n]")
    As = list(level(n, r))
    Bs = list(level(n, s))
    all_B = (1 << len(Bs)) - 1
    meets = []
    for a in As:
        m = 0
        for j, b in enumerate(Bs):
            if a & b:
                m |= 1 << j
        meets.append(m)

    best = [0, (), 0]

    def dfs(i: int, chosen: list[int], bmask: int):
        count = bin(bmask).count("1")
        value = len(chosen) * count
        if value > best[0]:
            best[0], best[1], best[2] = value, tuple(chosen), bmask
        if i == len(As) or (len(chosen) + len(As) - i) * count <= best[0]:
            return
        nb = bmask & meets[i]
        if nb:
            chosen.append(i)
            dfs(i + 1, chosen, nb)
            chosen.pop()
        dfs(i + 1, chosen, bmask)

    if As and Bs:
        dfs(1, [0], all_B & meets[0])
    fam_A = Hypergraph(n, (As[i] for i in best[1]), r)
    fam_B = Hypergraph(n, (Bs[j] for j in range(len(Bs)) if best[2] >> j & 1), s)
    return CrossResult(best[0], fam_A, fam_B)


def random_hypergraph(rng, n: int, r: int, p: float | None = None) -> Hypergraph:
    """Each r-set kept independently; ``p`` itself is random when not given."""
    if p is None:
        p = rng.random()
    return Hypergraph(n, (m for m in level(n, r) if rng.random() < p), r)


def all_uniform_hypergraphs(n: int, r: int) -> Iterator[Hypergraph]:
    lv = level(n, r)
    for bits in range(1 << len(lv)):
        yield Hypergraph(n, (lv[i] for i in range(len(lv)) if bits >> i & 1), r)
