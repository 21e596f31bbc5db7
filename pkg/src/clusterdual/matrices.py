"""Exchange matrices, mutation, and entry-wise matrix operators.

Direction indices in the public API are 1-based (``k`` in ``1..n``), matching
the usual way mutation sequences are written.  Plain integer matrices are
read-only ``int64`` numpy arrays.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from . import _kernels

MAX_RANK = 12
_INT_LIMIT = 2**62


def int_matrix(data) -> np.ndarray:
    """Return a read-only 2-D ``int64`` copy of ``data``."""
    arr = np.array(data, dtype=object)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ValueError(f"expected a non-empty 2-D integer matrix, got shape {arr.shape}")
    for x in arr.flat:
        if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
            raise TypeError(f"matrix entries must be integers, got {x!r}")
        if abs(int(x)) >= _INT_LIMIT:
            raise OverflowError(f"matrix entry {x} exceeds the int64 working range")
    out = arr.astype(np.int64)
    out.setflags(write=False)
    return out


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _check_index(k: int, n: int) -> int:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise IndexError(f"direction k={k} out of range 1..{n}")
    return int(k) - 1


def guard_product(X: np.ndarray, Y: np.ndarray) -> None:
    """Raise ``OverflowError`` if a row-by-column product of X and Y might leave int64."""
    bound = int(np.abs(X).max(initial=0)) * int(np.abs(Y).max(initial=0)) * X.shape[1]
    if bound + int(np.abs(X).max(initial=0)) >= _INT_LIMIT:
        raise OverflowError("integer matrix product would overflow int64")


def is_skew_symmetrizable(B) -> tuple[bool, tuple[int, ...] | None]:
    """Search for a positive symmetrizer ``d`` with ``d_i b_ij = -d_j b_ji``.

    Ratios are propagated over the graph of nonzero entries.  Each connected
    component is scaled to coprime positive integers; isolated vertices get 1.
    Returns ``(True, d)`` or ``(False, None)``.
    """
    A = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False, None
    n = A.shape[0]
    for i in range(n):
        if A[i, i] != 0:
            return False, None
        for j in range(n):
            if np.sign(A[i, j]) != -np.sign(A[j, i]):
                return False, None

    ratio: list[Fraction | None] = [None] * n
    d = [0] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if A[i, j] == 0:
                    continue
                # d_j = d_i * b_ij / (-b_ji)
                rj = ratio[i] * Fraction(int(A[i, j]), -int(A[j, i]))
                if ratio[j] is None:
                    ratio[j] = rj
                    component.append(j)
                    stack.append(j)
                elif ratio[j] != rj:
                    return False, None
        den = lcm(*(ratio[i].denominator for i in component))
        ints = [int(ratio[i] * den) for i in component]
        g = gcd(*ints)
        for i, v in zip(component, ints):
            d[i] = v // g
    return True, tuple(d)


class ExchangeMatrix:
    """An immutable skew-symmetrizable integer matrix of rank ``n <= 12``."""

    __slots__ = ("_entries", "_key", "symmetrizer")

    def __init__(self, entries, *, symmetrizer: tuple[int, ...] | None = None):
        arr = entries if isinstance(entries, np.ndarray) and not entries.flags.writeable else None
        arr = int_matrix(entries) if arr is None or arr.dtype != np.int64 else arr
        n, m = arr.shape
        if n != m:
            raise ValueError(f"exchange matrix must be square, got {n}x{m}")
        if n > MAX_RANK:
            raise ValueError(f"rank {n} exceeds the supported maximum {MAX_RANK}")
        if symmetrizer is None:
            ok, symmetrizer = is_skew_symmetrizable(arr)
            if not ok:
                raise ValueError(f"matrix is not skew-symmetrizable: {arr.tolist()}")
        self._entries = arr
        self._key = arr.tobytes()
        self.symmetrizer = symmetrizer

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __array__(self, dtype=None, copy=None):
        return self._entries if dtype is None else self._entries.astype(dtype)

    def __getitem__(self, idx):
        return self._entries[idx]

    def __eq__(self, other) -> bool:
        if isinstance(other, ExchangeMatrix):
            return self._key == other._key and self.n == other.n
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self._key))

    def __repr__(self) -> str:
        return f"ExchangeMatrix({self._entries.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self._entries.tolist()

    def mutate(self, k: int) -> ExchangeMatrix:
        return mutate(self, k)

    def transpose_negated(self) -> ExchangeMatrix:
        """``(-B)^T``, the exchange matrix used on the dual side of D-matrix duality."""
        return ExchangeMatrix(_freeze(-self._entries.T))

    def to_json(self) -> dict:
        return {"n": self.n, "B": self.tolist()}

    @classmethod
    def from_json(cls, data: dict | str) -> ExchangeMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        B = cls(data["B"])
        if "n" in data and data["n"] != B.n:
            raise ValueError(f"declared n={data['n']} does not match matrix rank {B.n}")
        return B


def mutate(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction ``k`` (1-based)."""
    i = _check_index(k, B.n)
    guard_product(B.entries, B.entries)
    # the symmetrizer is invariant under mutation
    return ExchangeMatrix(_freeze(_kernels.mutate_matrix(B.entries, i)), symmetrizer=B.symmetrizer)


def mutate_word(B: ExchangeMatrix, word: Sequence[int]) -> ExchangeMatrix:
    for k in word:
        B = mutate(B, k)
    return B


def positive_part(A) -> np.ndarray:
    return _freeze(np.maximum(np.asarray(A, dtype=np.int64), 0))


def absolute(A) -> np.ndarray:
    return _freeze(np.abs(np.asarray(A, dtype=np.int64)))


def entrywise_max(A1, A2) -> np.ndarray:
    A1 = np.asarray(A1, dtype=np.int64)
    A2 = np.asarray(A2, dtype=np.int64)
    if A1.shape != A2.shape:
        raise ValueError(f"shape mismatch: {A1.shape} vs {A2.shape}")
    return _freeze(np.maximum(A1, A2))


def row_mask(A, k: int) -> np.ndarray:
    """``A^{k.}``: keep row ``k`` only."""
    A = np.asarray(A, dtype=np.int64)
    i = _check_index(k, A.shape[0])
    out = np.zeros_like(A)
    out[i, :] = A[i, :]
    return _freeze(out)


def col_mask(A, k: int) -> np.ndarray:
    """``A^{.k}``: keep column ``k`` only."""
    A = np.asarray(A, dtype=np.int64)
    i = _check_index(k, A.shape[1])
    out = np.zeros_like(A)
    out[:, i] = A[:, i]
    return _freeze(out)


def j_matrix(n: int, k: int) -> np.ndarray:
    i = _check_index(k, n)
    out = np.eye(n, dtype=np.int64)
    out[i, i] = -1
    return _freeze(out)


def cartan_companion(B) -> np.ndarray:
    A = -np.abs(np.asarray(B, dtype=np.int64))
    np.fill_diagonal(A, 2)
    return _freeze(A)


def is_source_sink(B, k: int) -> bool:
    """True when every entry of row ``k`` is >= 0, or every entry is <= 0."""
    A = np.asarray(B)
    row = A[_check_index(k, A.shape[0]), :]
    return bool((row >= 0).all() or (row <= 0).all())
