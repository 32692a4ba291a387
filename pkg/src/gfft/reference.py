"""Ground-truth transforms: Horner evaluation at every point of the group.

naive_dft is the oracle every fast path is checked against.  It is coded as
Horner evaluation, deliberately not as a stored-matrix product, so that
dense_matvec against the Vandermonde matrix is an independent second coding.
naive_dft_batch is a numpy-vectorized third coding of the same definition,
used where the pure-Python oracle would dominate the test budget.
"""

from __future__ import annotations

import numpy as np

from .field import FieldContext, OpCount


def poly_eval(f: list[int], x: int, ctx: FieldContext, oc: OpCount | None = None) -> int:
    """Horner evaluation of a coefficient vector at one field element."""
    if not f:
        return 0
    acc = f[-1]
    for c in reversed(f[:-1]):
        acc = ctx.add(ctx.mul(acc, x, oc), c, oc)
    return acc


def naive_dft(f: list[int], ctx: FieldContext, oc: OpCount | None = None) -> list[int]:
    """F_i = f(a^i) for i in [0, n), by Horner at each point."""
    if len(f) != ctx.n:
        raise ValueError(f"expected length {ctx.n}, got {len(f)}")
    return [poly_eval(f, ctx.exp[i], ctx, oc) for i in range(ctx.n)]


def unit_response(j: int, ctx: FieldContext) -> list[int]:
    """Transform of the unit vector delta_j: column j of the Vandermonde matrix."""
    return [ctx.exp[(i * j) % ctx.n] for i in range(ctx.n)]


def transform_matrix(ctx: FieldContext) -> list[list[int]]:
    """The n x n Vandermonde matrix W with W[i][j] = a^(ij)."""
    n = ctx.n
    return [[ctx.exp[(i * j) % n] for j in range(n)] for i in range(n)]


def dense_matvec(
    mat: list[list[int]], v: list[int], ctx: FieldContext, oc: OpCount | None = None
) -> list[int]:
    """Exact matrix-vector product over GF(2^m) with op counting."""
    if mat and len(mat[0]) != len(v):
        raise ValueError(f"shape mismatch: {len(mat[0])} columns vs {len(v)} entries")
    out = []
    for row in mat:
        acc = ctx.mul(row[0], v[0], oc)
        for a, b in zip(row[1:], v[1:]):
            acc = ctx.add(acc, ctx.mul(a, b, oc), oc)
        out.append(acc)
    return out


class _BatchTables:
    """Per-context numpy scratch for the vectorized oracle."""

    __slots__ = ("idx", "exp3", "logpad", "sentinel")

    def __init__(self, ctx: FieldContext):
        n = ctx.n
        self.idx = np.arange(n, dtype=np.int64)
        # exp repeated twice, then a zero pad that the 0-element sentinel maps into
        self.exp3 = np.concatenate(
            [np.array(ctx.exp, dtype=np.int32)] * 2 + [np.zeros(n, dtype=np.int32)]
        )
        self.sentinel = 2 * n
        logpad = np.zeros(1 << ctx.m, dtype=np.int32)
        for v in range(1, 1 << ctx.m):
            logpad[v] = ctx.log[v]
        logpad[0] = self.sentinel
        self.logpad = logpad


_BATCH_CACHE: dict[tuple[int, int], _BatchTables] = {}


def _batch_tables(ctx: FieldContext) -> _BatchTables:
    key = (ctx.m, ctx.spec.resolved_poly())
    tab = _BATCH_CACHE.get(key)
    if tab is None:
        tab = _BatchTables(ctx)
        _BATCH_CACHE[key] = tab
    return tab


def naive_dft_batch(vectors: list[list[int]], ctx: FieldContext) -> list[list[int]]:
    """Vandermonde-sum oracle for a batch of vectors, vectorized with numpy.

    Computes F_i = XOR_j exp[(i*j + log f_j) mod n] directly from the
    definition; exact, but does no operation counting.  Row chunks of the
    exponent-product matrix are reused across the whole batch.
    """
    n = ctx.n
    tab = _batch_tables(ctx)
    for vec in vectors:
        if len(vec) != n:
            raise ValueError(f"expected length {n}, got {len(vec)}")
    if not vectors:
        return []
    lfs = tab.logpad[np.asarray(vectors, dtype=np.int64)]
    count = len(vectors)
    res = np.empty((count, n), dtype=np.int32)
    chunk = max(1, (1 << 21) // max(n, 1))  # keep the (rows x n) block in cache
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        # exponent products for this row block, shared by the whole batch
        block = ((tab.idx[lo:hi, None] * tab.idx[None, :]) % n).astype(np.int32)
        for b in range(count):
            res[b, lo:hi] = np.bitwise_xor.reduce(tab.exp3[block + lfs[b]], axis=1)
    return [[int(v) for v in row] for row in res]
