"""Finite subsets of [n] stored as integer bitmasks.

Element ``i`` (1-indexed) lives in bit ``i - 1``.  With this encoding the
reverse colex order has a one-line description: ``A > B`` in reverse colex
exactly when ``mask(A) < mask(B)`` as integers, because the largest element
of ``A ^ B`` is the highest differing bit.  Every "canonical order" in the
package is therefore plain ascending mask order, whose first element on level
``r`` is ``{1, ..., r}``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable


def to_mask(members: Iterable[int], n: int | None = None) -> int:
    """Encode a collection of positive integers as a bitmask."""
    mask = 0
    for x in members:
        x = int(x)
        if x < 1:
            raise ValueError(f"set elements must be positive integers, got {x}")
        if n is not None and x > n:
            raise ValueError(f"element {x} outside ground set [{n}]")
        mask |= 1 << (x - 1)
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Ascending tuple of the elements encoded by ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: int) -> int:
    return bin(mask).count("1")


def full(n: int) -> int:
    """Mask of [n]."""
    return (1 << n) - 1


@lru_cache(maxsize=None)
def level(n: int, r: int) -> tuple[int, ...]:
    """All r-subsets of [n] in reverse-colex-descending order."""
    if r < 0 or r > n:
        return ()
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(n), r)))


@lru_cache(maxsize=None)
def level_index(n: int, r: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(level(n, r))}


def submasks_of_size(mask: int, r: int) -> list[int]:
    """r-subsets of ``mask`` in ascending mask order."""
    bits = [1 << (i - 1) for i in members(mask)]
    return sorted(sum(c) for c in combinations(bits, r))


def all_subsets(n: int) -> tuple[int, ...]:
    return tuple(range(1 << n))


def revcolex_cmp(a: int, b: int) -> int:
    """Compare equal-size subsets in reverse colex order.

    Returns -1, 0 or 1 for ``a < b``, ``a == b``, ``a > b``.  ``a > b`` iff
    the largest element of the symmetric difference lies in ``b``.
    """
    if size(a) != size(b):
        raise ValueError("reverse colex compares sets of equal cardinality only")
    if a == b:
        return 0
    top = (a ^ b).bit_length() - 1
    return 1 if (b >> top) & 1 else -1


def wedge_sign(a: int, b: int) -> int:
    """Sign of the permutation sorting the concatenation (a ascending, b ascending).

    Assumes ``a & b == 0``.  Each element of ``b`` must move past every
    larger element of ``a``; the parity of that count is the sign.
    """
    inversions = 0
    rest = b
    while rest:
        low = rest & -rest
        # elements of a strictly greater than this element of b
        inversions += size(a & ~((low << 1) - 1))
        rest ^= low
    return -1 if inversions & 1 else 1


def wedge_monomials(a: int, b: int) -> tuple[int, int] | None:
    """``f_a ^ f_b`` as ``(sign, a | b)``, or ``None`` when the sets meet."""
    if a & b:
        return None
    return wedge_sign(a, b), a | b
