"""Multivectors, frames and subspaces of the exterior algebra of Q^n.

A :class:`BasisFrame` is an invertible matrix F whose columns f_1..f_n give
the monomial basis f_A of each level.  A :class:`MultiVector` is a sparse map
from r-subsets to Fractions in one frame.  A :class:`Subspace` keeps a basis in
reduced row echelon form with coordinates scanned in reverse-colex-descending
order, so the pivot of each row is that row's initial set and the pivot list
is the initial hypergraph.

Frames are compared by identity token.  Wedging or spanning elements from
different frames raises :class:`FrameMismatch`; convert with :func:`to_frame`.
"""

from __future__ import annotations

import hashlib
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from . import rational_linalg as rl
from .errors import FrameMismatch, PreconditionError, Singular, ZeroVector
from .hypergraphs import Hypergraph
from .rational_linalg import RatMatrix, echelon, integer_row
from .subsets import level, level_index, members, size, to_mask, wedge_monomials

STANDARD = "standard"


class BasisFrame:
    """An invertible n x n rational matrix; its columns are the basis vectors."""

    __slots__ = ("n", "matrix", "frame_id", "_cache", "_lock")

    def __init__(self, matrix: RatMatrix | Sequence[Sequence], frame_id: str | None = None):
        if not isinstance(matrix, RatMatrix):
            matrix = RatMatrix.from_rows(matrix)
        if not matrix.is_square:
            raise PreconditionError("frame matrix must be square")
        self.n = matrix.rows
        self.matrix = matrix
        if frame_id is None:
            if matrix == RatMatrix.identity(self.n):
                frame_id = STANDARD
            else:
                text = ",".join(f"{x.numerator}/{x.denominator}" for x in matrix.entries)
                frame_id = "sha256:" + hashlib.sha256(f"{self.n}|{text}".encode()).hexdigest()[:16]
        self.frame_id = frame_id
        self._cache: dict = {}
        self._lock = threading.RLock()
        if frame_id != STANDARD and rl.det(matrix) == 0:
            raise Singular("frame matrix is singular")

    @classmethod
    def standard(cls, n: int) -> BasisFrame:
        return _standard_frame(n)

    @property
    def is_standard(self) -> bool:
        return self.frame_id == STANDARD

    def _cached(self, key, compute):
        # populate under the lock so concurrent readers never see partial state
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def inverse(self) -> RatMatrix:
        return self._cached("inv", lambda: rl.invert(self.matrix))

    def adjugate(self) -> RatMatrix:
        """``det(F) F^{-1}``, integral for integer frames."""
        return self._cached("adj", lambda: self.inverse().scale(rl.det(self.matrix)))

    def compound(self, r: int) -> RatMatrix:
        """Columns are the standard coordinates of the monomials f_B."""
        return self._cached(("c", r), lambda: rl.compound(self.matrix, r))

    def inverse_compound(self, r: int) -> RatMatrix:
        """Maps standard coordinates to coordinates in this frame."""
        return self._cached(("ic", r), lambda: rl.compound(self.inverse(), r))

    def adjugate_compound(self, r: int) -> RatMatrix:
        """``det(F)^r`` times :meth:`inverse_compound`; integral for integer frames."""
        return self._cached(("ac", r), lambda: rl.compound(self.adjugate(), r))

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Frame coordinates of a vector given in standard coordinates."""
        return self.inverse().matvec(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisFrame) and other.frame_id == self.frame_id

    def __hash__(self) -> int:
        return hash(self.frame_id)

    def __repr__(self) -> str:
        return f"BasisFrame(n={self.n}, id={self.frame_id})"


@lru_cache(maxsize=None)
def _standard_frame(n: int) -> BasisFrame:
    return BasisFrame(RatMatrix.identity(n), STANDARD)


def _check_frames(*frames: BasisFrame):
    ids = {f.frame_id for f in frames}
    if len(ids) > 1:
        raise FrameMismatch(f"elements live in different frames: {sorted(ids)}")
    ns = {f.n for f in frames}
    if len(ns) > 1:
        raise FrameMismatch(f"elements have different ground sets: {sorted(ns)}")


class MultiVector:
    """Homogeneous element of degree r, sparse in the monomial basis of a frame.

    Zero coefficients are never stored; the zero element is the empty map and
    keeps its degree.
    """

    __slots__ = ("n", "r", "frame", "coeffs")

    def __init__(self, n: int, r: int, coeffs: Mapping[int, object] | None = None,
                 frame: BasisFrame | None = None):
        if frame is None:
            frame = BasisFrame.standard(n)
        elif frame.n != n:
            raise FrameMismatch(f"frame is for n={frame.n}, element for n={n}")
        clean = {}
        for A, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if size(A) != r or A >> n:
                raise ValueError(f"key {members(A)} is not an {r}-subset of [{n}]")
            clean[A] = c
        self.n = n
        self.r = r
        self.frame = frame
        self.coeffs = clean

    @classmethod
    def monomial(cls, n: int, A: int | Iterable[int], coeff=1,
                 frame: BasisFrame | None = None) -> MultiVector:
        if not isinstance(A, int):
            A = to_mask(A, n)
        return cls(n, size(A), {A: coeff}, frame)

    @classmethod
    def vector(cls, values: Sequence, frame: BasisFrame | None = None) -> MultiVector:
        """Degree-1 element from its n coordinates."""
        n = len(values)
        return cls(n, 1, {1 << i: v for i, v in enumerate(values)}, frame)

    @classmethod
    def scalar(cls, n: int, c=1, frame: BasisFrame | None = None) -> MultiVector:
        return cls(n, 0, {0: c}, frame)

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Iterable[int], object],
                   frame: BasisFrame | None = None, r: int | None = None) -> MultiVector:
        """Build from ``{(1, 4): 1, (2, 3): 1}``-style term maps."""
        coeffs = {to_mask(s, n): c for s, c in terms.items()}
        if r is None:
            if not coeffs:
                raise ValueError("degree of an empty term map must be given")
            r = size(next(iter(coeffs)))
        return cls(n, r, coeffs, frame)

    @classmethod
    def from_dense(cls, n: int, r: int, values: Sequence, frame: BasisFrame | None = None):
        lv = level(n, r)
        return cls(n, r, {lv[i]: v for i, v in enumerate(values) if v}, frame)

    def dense(self) -> list[Fraction]:
        return [self.coeffs.get(A, Fraction(0)) for A in level(self.n, self.r)]

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(members(A), self.coeffs[A]) for A in sorted(self.coeffs)]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _compatible(self, other: MultiVector):
        _check_frames(self.frame, other.frame)
        if self.r != other.r:
            raise ValueError(f"cannot add degree {self.r} and degree {other.r}")

    def __add__(self, other: MultiVector) -> MultiVector:
        self._compatible(other)
        out = dict(self.coeffs)
        for A, c in other.coeffs.items():
            out[A] = out.get(A, 0) + c
        return MultiVector(self.n, self.r, out, self.frame)

    def __neg__(self) -> MultiVector:
        return MultiVector(self.n, self.r, {A: -c for A, c in self.coeffs.items()}, self.frame)

    def __sub__(self, other: MultiVector) -> MultiVector:
        return self + (-other)

    def __mul__(self, c) -> MultiVector:
        if isinstance(c, MultiVector):
            return NotImplemented
        c = Fraction(c)
        return MultiVector(self.n, self.r, {A: c * v for A, v in self.coeffs.items()}, self.frame)

    __rmul__ = __mul__

    def __xor__(self, other: MultiVector) -> MultiVector:
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.n, self.r, self.frame.frame_id, self.coeffs) == \
            (other.n, other.r, other.frame.frame_id, other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"MultiVector(n={self.n}, r={self.r}, 0)"
        body = " + ".join(f"{c}*f{list(s)}" for s, c in self.terms())
        return f"MultiVector(n={self.n}, r={self.r}, {body})"


def wedge(u: MultiVector, w: MultiVector) -> MultiVector:
    _check_frames(u.frame, w.frame)
    out: dict[int, Fraction] = {}
    r = u.r + w.r
    if r <= u.n:
        for A, a in u.coeffs.items():
            for B, b in w.coeffs.items():
                prod = wedge_monomials(A, B)
                if prod is None:
                    continue
                sign, U = prod
                out[U] = out.get(U, 0) + sign * a * b
    return MultiVector(u.n, r, out, u.frame)


def initial_set(w: MultiVector) -> int:
    """Reverse-colex maximum of the support, as a bitmask."""
    if not w.coeffs:
        raise ZeroVector("initial set of the zero vector")
    return min(w.coeffs)


def to_frame(w: MultiVector, target: BasisFrame) -> MultiVector:
    if target.n != w.n:
        raise FrameMismatch("target frame has a different ground set")
    if target.frame_id == w.frame.frame_id:
        return w
    coords = w.dense()
    if not w.frame.is_standard:
        coords = w.frame.compound(w.r).matvec(coords)
    if not target.is_standard:
        coords = target.inverse_compound(w.r).matvec(coords)
    return MultiVector.from_dense(w.n, w.r, coords, target)


class Subspace:
    """Subspace of one level, stored as an RREF basis in reverse-colex-descending scan.

    ``int_rows`` are the same rows scaled to primitive integers (pivot
    positive); linear-algebra routines work on those.
    """

    __slots__ = ("n", "r", "frame", "int_rows", "pivots")

    def __init__(self, n: int, r: int, frame: BasisFrame, int_rows: list[list[int]],
                 pivots: list[int]):
        self.n = n
        self.r = r
        self.frame = frame
        self.int_rows = int_rows
        # pivot column indices translated to the subsets they name
        lv = level(n, r)
        self.pivots = tuple(lv[p] for p in pivots)

    @classmethod
    def from_int_rows(cls, n: int, r: int, frame: BasisFrame,
                      rows: Iterable[Sequence[int]]) -> Subspace:
        basis, pivots = echelon(rows)
        return cls(n, r, frame, basis, pivots)

    @classmethod
    def zero(cls, n: int, r: int, frame: BasisFrame | None = None) -> Subspace:
        return cls(n, r, frame or BasisFrame.standard(n), [], [])

    @property
    def dim(self) -> int:
        return len(self.int_rows)

    def __len__(self) -> int:
        return self.dim

    @property
    def rows(self) -> list[MultiVector]:
        """The RREF basis: each row has coefficient 1 on its initial set."""
        out = []
        lv = level(self.n, self.r)
        idx = level_index(self.n, self.r)
        for row, P in zip(self.int_rows, self.pivots):
            pv = row[idx[P]]
            out.append(MultiVector(self.n, self.r,
                                   {lv[i]: Fraction(x, pv) for i, x in enumerate(row) if x},
                                   self.frame))
        return out

    def matrix(self) -> RatMatrix:
        return RatMatrix.from_rows([m.dense() for m in self.rows], cols=comb(self.n, self.r))

    def initial_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, self.pivots, self.r)

    def contains(self, w: MultiVector) -> bool:
        _check_frames(self.frame, w.frame)
        if w.r != self.r:
            return False
        if not w.coeffs:
            return True
        rows = self.int_rows + [integer_row(w.dense())]
        return len(echelon(rows, reduce=False)[1]) == self.dim

    def to_frame(self, target: BasisFrame) -> Subspace:
        """Same abstract subspace, re-expressed in ``target`` coordinates.

        Row scalings do not change a span, so the conversion multiplies by
        integer multiples of the compound matrices (adjugate instead of
        inverse) and stays in integer arithmetic.
        """
        if target.frame_id == self.frame.frame_id:
            return self
        rows = [list(r) for r in self.int_rows]
        if not self.frame.is_standard:
            rows = [integer_row(self.frame.compound(self.r).matvec(row)) for row in rows]
        if not target.is_standard:
            conv = target.adjugate_compound(self.r)
            rows = [integer_row(conv.matvec(row)) for row in rows]
        return Subspace.from_int_rows(self.n, self.r, target, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n, self.r, self.frame.frame_id, self.pivots, self.int_rows) == \
            (other.n, other.r, other.frame.frame_id, other.pivots, other.int_rows)

    __hash__ = None

    def __repr__(self) -> str:
        piv = [list(members(P)) for P in self.pivots]
        return f"Subspace(n={self.n}, r={self.r}, dim={self.dim}, pivots={piv})"


def span(vectors: Iterable[MultiVector], n: int | None = None, r: int | None = None,
         frame: BasisFrame | None = None) -> Subspace:
    """RREF span of homogeneous elements sharing ground set, degree and frame.

    ``n``, ``r`` and ``frame`` are only needed to type an empty span.
    """
    vectors = list(vectors)
    if not vectors:
        if n is None or r is None:
            raise ValueError("span of no vectors needs n and r")
        return Subspace.zero(n, r, frame)
    head = vectors[0]
    for v in vectors[1:]:
        _check_frames(head.frame, v.frame)
        if v.r != head.r:
            raise ValueError("span of elements of different degrees")
    return Subspace.from_int_rows(head.n, head.r, head.frame,
                                  [integer_row(v.dense()) for v in vectors])


def initial_hypergraph(W: Subspace) -> Hypergraph:
    return W.initial_hypergraph()


def monomial_space(frame: BasisFrame | int, A: Hypergraph) -> Subspace:
    """span{f_A : A in the family}; its pivots are the family itself."""
    if isinstance(frame, int):
        frame = BasisFrame.standard(frame)
    if A.uniform_rank is None:
        if A.edges:
            raise PreconditionError("monomial spaces need a uniform family")
        raise PreconditionError("empty family needs an explicit uniform_rank")
    r = A.uniform_rank
    idx = level_index(frame.n, r)
    rows = []
    for e in sorted(A.edges):
        row = [0] * comb(frame.n, r)
        row[idx[e]] = 1
        rows.append(row)
    return Subspace(frame.n, r, frame, rows, [idx[e] for e in sorted(A.edges)])


def _pair_products_vanish(left: Subspace, right: Subspace, same: bool) -> bool:
    _check_frames(left.frame, right.frame)
    L = left.rows
    R = L if same else right.rows
    for i, u in enumerate(L):
        for w in (R[i:] if same else R):
            if wedge(u, w):
                return False
    return True


def is_self_annihilating(W: Subspace) -> bool:
    """All basis pairs, including each row with itself, wedge to zero."""
    return _pair_products_vanish(W, W, same=True)


def is_mutually_annihilating(U: Subspace, W: Subspace) -> bool:
    return _pair_products_vanish(U, W, same=False)


def algebraic_shift(A: Hypergraph, seed: int = 0, **sampler_options) -> Hypergraph:
    """Initial hypergraph of the standard monomial space in a sampled generic frame.

    Returns the shifted family; see :func:`algebraic_shift_with_certificate`
    for the frame and certificate.
    """
    return algebraic_shift_with_certificate(A, seed, **sampler_options)[0]


def algebraic_shift_with_certificate(A: Hypergraph, seed: int = 0, **sampler_options):
    from .projection import GenericityRequest, sample_generic_basis

    I_A = monomial_space(A.n, A)
    request = GenericityRequest(A.n, multivector_spaces=[I_A])
    frame, cert = sample_generic_basis(request, seed, **sampler_options)
    shifted = I_A.to_frame(frame).initial_hypergraph()
    return shifted, frame, cert
