"""Signatures (constraint functions) and their global predicates/transforms.

Values are stored densely in lexicographic input order with ``x1`` as the
most significant bit: the entry for ``(x1, ..., xn)`` lives at index
``sum(x_k << (n - k))``.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .scalar import I, ONE, SQRT2, ZERO, Scalar, as_scalar

MAX_ARITY = 16


class FormatError(ValueError):
    """Malformed signature / grid / instance data."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


def bit(idx: int, k: int, n: int) -> int:
    """Value of variable ``x_k`` (1-based) in the index ``idx`` of an arity-``n`` table."""
    return (idx >> (n - k)) & 1


def bits(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> (n - k)) & 1 for k in range(1, n + 1))


def index_of(assignment: Sequence[int]) -> int:
    idx = 0
    for b in assignment:
        idx = (idx << 1) | b
    return idx


def popcount(x: int) -> int:
    return bin(x).count("1")


class Signature:
    """An arity-``n`` constraint function with a dense exact value table."""

    __slots__ = ("arity", "values", "__dict__")

    def __init__(self, arity: int, values: Iterable):
        values = tuple(as_scalar(v) for v in values)
        if not isinstance(arity, int) or arity < 1:
            raise FormatError(f"arity must be a positive integer, got {arity!r}")
        if arity > MAX_ARITY:
            raise FormatError(f"arity {arity} exceeds the dense-table limit {MAX_ARITY}")
        if len(values) != 1 << arity:
            raise FormatError(f"arity {arity} needs {1 << arity} values, got {len(values)}")
        self.arity = arity
        self.values = values

    # ---- basic protocol ----------------------------------------------------
    def __getitem__(self, idx: int) -> Scalar:
        return self.values[idx]

    def at(self, *assignment: int) -> Scalar:
        return self.values[index_of(assignment)]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self.arity == other.arity and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.arity, self.values))

    def __repr__(self) -> str:
        return f"Signature({self.arity}, [{', '.join(map(str, self.values))}])"

    # ---- cached predicates -------------------------------------------------
    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if not v.is_zero())

    def is_zero(self) -> bool:
        return not self.support

    @cached_property
    def is_eo(self) -> bool:
        n = self.arity
        if n % 2 and self.support:
            return False
        return all(popcount(a) * 2 == n for a in self.support)

    @cached_property
    def is_ars(self) -> bool:
        full = (1 << self.arity) - 1
        vals = self.values
        return all(vals[full ^ a] == vals[a].conj() for a in range(len(vals)))

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.values)

    # ---- arithmetic helpers ------------------------------------------------
    def scale(self, s) -> "Signature":
        s = as_scalar(s)
        return Signature(self.arity, (v * s for v in self.values))

    def first_nonzero(self) -> Scalar:
        for v in self.values:
            if not v.is_zero():
                return v
        return ZERO

    def permute(self, order: Sequence[int]) -> "Signature":
        """New signature ``g`` with ``g(y1..yn) = f(x)`` where ``x_{order[k]} = y_{k+1}``.

        ``order`` lists 1-based variables of ``self``; the result's k-th variable
        is ``self``'s variable ``order[k-1]``.
        """
        n = self.arity
        if sorted(order) != list(range(1, n + 1)):
            raise PreconditionError(f"not a permutation of 1..{n}: {order}")
        out = [ZERO] * len(self.values)
        for idx, v in enumerate(self.values):
            if v.is_zero():
                continue
            new = 0
            for pos, var in enumerate(order):
                new |= bit(idx, var, n) << (n - 1 - pos)
            out[new] = v
        return Signature(n, out)


def make_signature(arity: int, values: Sequence) -> Signature:
    return Signature(arity, values)


def support_set(f: Signature) -> tuple[int, ...]:
    """Sorted, duplicate-free support of ``f`` as integer bitstrings."""
    return f.support


# ---------------------------------------------------------------------------
# named signatures


def neq2() -> Signature:
    return Signature(2, [0, 1, 1, 0])


def eq2() -> Signature:
    return Signature(2, [1, 0, 0, 1])


def b_i() -> Signature:
    """The binary signature (0, i, -i, 0)."""
    return Signature(2, [ZERO, I, -I, ZERO])


def zero_signature(arity: int) -> Signature:
    return Signature(arity, [ZERO] * (1 << arity))


# ---------------------------------------------------------------------------
# transforms

_INV_SQRT2 = SQRT2 / 2
# Z = 1/sqrt2 [[1, 1], [i, -i]];  Z^{-1} = 1/sqrt2 [[1, -i], [1, i]]
_Z = ((ONE, ONE), (I, -I))
_ZINV = ((ONE, -I), (ONE, I))


def _apply_local(f: Signature, m) -> list[Scalar]:
    """Apply the 2x2 matrix ``m`` to every tensor leg of ``f`` (no scaling)."""
    n = f.arity
    vals = list(f.values)
    for k in range(1, n + 1):
        shift = n - k
        out = [ZERO] * len(vals)
        for idx in range(len(vals)):
            if (idx >> shift) & 1:
                continue
            lo, hi = vals[idx], vals[idx | (1 << shift)]
            out[idx] = m[0][0] * lo + m[0][1] * hi
            out[idx | (1 << shift)] = m[1][0] * lo + m[1][1] * hi
        vals = out
    return vals


def z_transform(f: Signature, direction: str = "forward") -> Signature:
    """``Z^{(x)n} f`` (forward) or ``(Z^{-1})^{(x)n} f`` (inverse), with the exact 2^{-n/2} factor."""
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    m = _Z if direction == "forward" else _ZINV
    factor = _INV_SQRT2 ** f.arity
    return Signature(f.arity, (v * factor for v in _apply_local(f, m)))


def row_transform(f: Signature, m) -> Signature:
    """Covariant action ``f T^{(x)n}`` of a 2x2 matrix on a row-vector signature."""
    mt = ((m[0][0], m[1][0]), (m[0][1], m[1][1]))
    return Signature(f.arity, _apply_local(f, mt))


Z_MATRIX = tuple(tuple(_INV_SQRT2 * e for e in row) for row in _Z)
Z_INVERSE = tuple(tuple(_INV_SQRT2 * e for e in row) for row in _ZINV)


def is_real(f: Signature) -> bool:
    return f.is_real()


def check_ars_real_equivalence(f: Signature) -> bool:
    return f.is_ars == z_transform(f).is_real()


def norm_square(f: Signature) -> Signature:
    return Signature(f.arity, (v.abs2() for v in f.values))


def tilde(g: Signature) -> Signature:
    """EO embedding of arity 2n: ``g(x1..xn)`` when ``x_i != x_{n+i}`` for all i, else 0."""
    n = g.arity
    if 2 * n > MAX_ARITY:
        raise PreconditionError(f"tilde of arity {n} exceeds arity limit")
    mask = (1 << n) - 1
    out = [ZERO] * (1 << (2 * n))
    for x, v in enumerate(g.values):
        out[(x << n) | (mask ^ x)] = v
    return Signature(2 * n, out)


def untilde(f: Signature) -> Signature | None:
    """Inverse of :func:`tilde`; ``None`` when ``f`` is not a tilde image."""
    if f.arity % 2:
        return None
    n = f.arity // 2
    mask = (1 << n) - 1
    for idx in f.support:
        if (idx >> n) ^ (idx & mask) != mask:
            return None
    return Signature(n, (f.values[(x << n) | (mask ^ x)] for x in range(1 << n)))


def tensor(f: Signature, g: Signature) -> Signature:
    """``(f (x) g)(x, y) = f(x) g(y)``, variables of ``f`` first."""
    if f.arity + g.arity > MAX_ARITY:
        raise PreconditionError("tensor product exceeds arity limit")
    out = [fv * gv for fv in f.values for gv in g.values]
    return Signature(f.arity + g.arity, out)
