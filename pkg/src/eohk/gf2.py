"""Linear algebra over GF(2) on int bitmasks.

A vector of length ``n`` is an int whose bit ``n - k`` holds coordinate
``k`` (1-based), matching the signature index convention.
"""
from __future__ import annotations

from typing import Iterable


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced row echelon basis, sorted by decreasing leading bit."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            # clear the new leading bit from the existing rows
            lead = v.bit_length() - 1
            basis = [b ^ v if (b >> lead) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def reduce(v: int, basis: list[int]) -> int:
    """Remainder of ``v`` modulo the span of an RREF basis."""
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v


def in_span(v: int, basis: list[int]) -> bool:
    return reduce(v, basis) == 0


def leading_bit(v: int) -> int:
    return v.bit_length() - 1


def nullspace(basis: list[int], n: int) -> list[int]:
    """Basis of ``{h : <h, b> = 0 for all b in basis}`` inside GF(2)^n."""
    rows = rref(basis)
    pivots = [leading_bit(b) for b in rows]
    free = [k for k in range(n) if k not in pivots]
    out = []
    for fb in free:
        h = 1 << fb
        for b, p in zip(rows, pivots):
            if (b >> fb) & 1:
                h |= 1 << p
        out.append(h)
    return out


def dot(a: int, b: int) -> int:
    return bin(a & b).count("1") & 1


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def all_subspaces(n: int) -> list[tuple[int, ...]]:
    """Every linear subspace of GF(2)^n, as RREF bases (the zero space is ``()``)."""
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for basis in frontier:
            for v in range(1, 1 << n):
                if in_span(v, list(basis)):
                    continue
                key = tuple(rref(list(basis) + [v]))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return sorted(seen, key=lambda b: (len(b), b))
