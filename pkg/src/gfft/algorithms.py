"""The semifast transform family: remainder, split, and factored forms.

Every algorithm here is a (build, apply) pair: build precomputes a plan from
the field alone, apply transforms one coefficient vector and tallies exact
operation counts.  The factored algorithms share one shape: permute the
input into coset order, multiply by a block-diagonal stage of small dense or
circulant blocks (the only stage with field multiplications), then multiply
by a single binary matrix (additions only), and un-permute.

Construction rests on two facts.  The coset-s slice of f is a linearized
polynomial composed with x^s, so its values are GF(2)-linear in the point;
and in a normal basis squaring is a coordinate rotation, which is what makes
the per-coset sub-blocks of the binary stage circulant when both input and
output are enumerated in doubling order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import binmat
from .field import FieldContext, OpCount
from .structure import (
    BinaryMatrix,
    Coset,
    CosetPartition,
    LinearSolver,
    NormalBasis,
    cyclotomic_cosets,
    doubling_orbit,
    find_normal_basis,
    minimal_polynomial,
)

GOERTZEL = "goertzel"
BLAHUT2008 = "blahut2008"
FT2002 = "ft2002"
TF2003 = "tf2003"
FED2006A = "fed2006a"
FED2006B = "fed2006b"

FACTORED_TAGS = (FT2002, TF2003, FED2006A, FED2006B)
ALL_TAGS = (GOERTZEL, BLAHUT2008) + FACTORED_TAGS


@dataclass
class TransformTally:
    """Per-stage counters: stage1 holds the multiplication stage, stage2 the
    binary (additions-only) stage."""

    stage1: OpCount
    stage2: OpCount

    @classmethod
    def fresh(cls, count_units: bool = False) -> "TransformTally":
        return cls(
            OpCount(stage="stage1", count_units=count_units),
            OpCount(stage="stage2", count_units=count_units),
        )


@dataclass(frozen=True)
class CirculantBlock:
    """Square block whose row r is the first row rotated left by r."""

    first_row: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.first_row)

    def row(self, r: int) -> tuple[int, ...]:
        d = self.size
        return tuple(self.first_row[(j + r) % d] for j in range(d))

    def entry(self, r: int, j: int) -> int:
        return self.first_row[(j + r) % self.size]


@dataclass(frozen=True)
class DenseBlock:
    """General square block of field elements (row-major)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def row(self, r: int) -> tuple[int, ...]:
        return self.rows[r]

    def entry(self, r: int, j: int) -> int:
        return self.rows[r][j]


Block = CirculantBlock | DenseBlock

UNIT_BLOCK = CirculantBlock((1,))


def circulant_matvec(
    first_row: list[int] | tuple[int, ...],
    v: list[int] | tuple[int, ...],
    ctx: FieldContext,
    oc: OpCount | None = None,
) -> list[int]:
    """y_r = sum_j first_row[(j + r) mod d] * v_j  (row r = left rotation by r)."""
    d = len(first_row)
    if len(v) != d:
        raise ValueError(f"length mismatch: {d} vs {len(v)}")
    out = []
    for r in range(d):
        acc = ctx.mul(first_row[r % d], v[0], oc)
        for j in range(1, d):
            acc = ctx.add(acc, ctx.mul(first_row[(j + r) % d], v[j], oc), oc)
        out.append(acc)
    return out


def _block_matvec(block: Block, v: list[int], ctx: FieldContext, oc: OpCount | None) -> list[int]:
    if isinstance(block, CirculantBlock):
        if block.size == 1 and block.first_row[0] == 1:
            return list(v)  # pass-through; no operations issued
        return circulant_matvec(block.first_row, v, ctx, oc)
    out = []
    for r in range(block.size):
        row = block.rows[r]
        acc = ctx.mul(row[0], v[0], oc)
        for j in range(1, len(row)):
            acc = ctx.add(acc, ctx.mul(row[j], v[j], oc), oc)
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Coset layouts: representative, column basis, and diagonal block per coset.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetLayout:
    coset: Coset
    rep: int
    elements: tuple[int, ...]  # doubling order from rep
    basis: tuple[int, ...]  # column basis for the binary-stage expansion
    std_coords: bool  # True when coords(x) are just the bits of x
    block: Block


class _CoordCache:
    """Memoized coordinate solves for one column basis."""

    __slots__ = ("solver", "memo")

    def __init__(self, basis: tuple[int, ...]):
        self.solver = LinearSolver(basis)
        self.memo: dict[int, int] = {}

    def coords(self, x: int) -> int:
        c = self.memo.get(x)
        if c is None:
            c = self.solver.coords(x)
            self.memo[x] = c
        return c


def _normal_bases(ctx: FieldContext, partition: CosetPartition, shifted: bool) -> dict[int, NormalBasis]:
    """One normal basis per occurring coset size; shifted squares the generator."""
    bases: dict[int, NormalBasis] = {}
    for size in sorted(set(partition.sizes())):
        nb = find_normal_basis(ctx, size)
        if shifted and size > 1:
            gen = ctx.mul(nb.generator, nb.generator)
            conj = tuple(nb.basis[(j + 1) % size] for j in range(size))
            nb = NormalBasis(gen, size, conj)
        bases[size] = nb
    return bases


def _layouts_ft2002(ctx: FieldContext, partition: CosetPartition) -> list[CosetLayout]:
    n, m = ctx.n, ctx.m
    out = []
    for coset in partition.cosets:
        d = coset.size
        s = coset.leader
        if d == 1:
            out.append(CosetLayout(coset, s, coset.elements, (1,), False, UNIT_BLOCK))
            continue
        if d == m:
            basis = tuple(1 << t for t in range(m))
            std = True
        else:
            basis = tuple(ctx.exp[(s * t) % n] for t in range(d))
            std = False
        rows = tuple(
            tuple(ctx.pow(basis[t], 1 << j) for j in range(d)) for t in range(d)
        )
        out.append(CosetLayout(coset, s, coset.elements, basis, std, DenseBlock(rows)))
    return out


def _layouts_normal(
    ctx: FieldContext, partition: CosetPartition, shifted: bool
) -> list[CosetLayout]:
    n = ctx.n
    bases = _normal_bases(ctx, partition, shifted)
    rep_override: dict[int, int] = {}
    if shifted:
        # The coset holding the generator's exponent starts at that exponent,
        # which keeps the identity sub-block aligned with the shifted basis.
        for size, nb in bases.items():
            if size > 1:
                lg = ctx.log[nb.generator]
                rep_override[min(doubling_orbit(lg, n))] = lg
    out = []
    for coset in partition.cosets:
        d = coset.size
        if d == 1:
            out.append(CosetLayout(coset, coset.leader, coset.elements, (1,), False, UNIT_BLOCK))
            continue
        rep = rep_override.get(coset.leader, coset.leader)
        elements = doubling_orbit(rep, n)
        nb = bases[d]
        for j in range(d):  # first row must be a conjugate sequence
            assert ctx.mul(nb.basis[j], nb.basis[j]) == nb.basis[(j + 1) % d]
        out.append(
            CosetLayout(coset, rep, elements, nb.basis, False, CirculantBlock(nb.basis))
        )
    return out


# ---------------------------------------------------------------------------
# Factored transforms (binary matrix times block diagonal).
# ---------------------------------------------------------------------------


@dataclass
class FactoredTransform:
    """Transform in the shape  output = unpermute(A . D . permute(input)).

    in_perm / out_perm list natural indices in factored order; A is binary;
    the diagonal blocks carry all field multiplications.
    """

    tag: str
    ctx: FieldContext
    partition: CosetPartition
    layouts: tuple[CosetLayout, ...]
    in_perm: tuple[int, ...]
    out_perm: tuple[int, ...]
    a_matrix: BinaryMatrix

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def d_blocks(self) -> tuple[Block, ...]:
        return tuple(lay.block for lay in self.layouts)

    def block_offsets(self) -> list[int]:
        offs, acc = [], 0
        for lay in self.layouts:
            offs.append(acc)
            acc += lay.coset.size
        return offs


def _assemble_factored(ctx: FieldContext, tag: str, layouts: list[CosetLayout],
                       natural_out: bool) -> FactoredTransform:
    n = ctx.n
    partition = cyclotomic_cosets(n)
    in_perm = tuple(i for lay in layouts for i in lay.elements)
    out_perm = tuple(range(n)) if natural_out else in_perm

    caches = [None if lay.std_coords else _CoordCache(lay.basis) for lay in layouts]
    rows = []
    for i in out_perm:
        row = 0
        offset = 0
        for lay, cache in zip(layouts, caches):
            arg = ctx.exp[(i * lay.rep) % n]
            coords = arg if cache is None else cache.coords(arg)
            row |= coords << offset
            offset += lay.coset.size
        rows.append(row)
    return FactoredTransform(
        tag, ctx, partition, tuple(layouts), in_perm, out_perm, BinaryMatrix(rows, n)
    )


def build_ft2002(ctx: FieldContext) -> FactoredTransform:
    """Standard-basis factorization: dense linearized-evaluation blocks."""
    layouts = _layouts_ft2002(ctx, cyclotomic_cosets(ctx.n))
    return _assemble_factored(ctx, FT2002, layouts, natural_out=True)


def build_tf2003(ctx: FieldContext) -> FactoredTransform:
    """Normal-basis factorization: circulant blocks, natural output order."""
    layouts = _layouts_normal(ctx, cyclotomic_cosets(ctx.n), shifted=False)
    return _assemble_factored(ctx, TF2003, layouts, natural_out=True)


def build_fed2006(ctx: FieldContext, variant: str = "a") -> FactoredTransform:
    """Coset-ordered output on both sides; variant 'b' shifts the normal basis
    (generator squared) and starts the generator's coset at its exponent."""
    variant = variant.lower()
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    shifted = variant == "b"
    layouts = _layouts_normal(ctx, cyclotomic_cosets(ctx.n), shifted=shifted)
    tag = FED2006B if shifted else FED2006A
    return _assemble_factored(ctx, tag, layouts, natural_out=False)


def apply_factored(
    plan: FactoredTransform,
    f: list[int],
    four_russians: bool = False,
    tally: TransformTally | None = None,
    fr_plan: binmat.FourRussiansPlan | None = None,
) -> list[int]:
    """Permute, multiply by the diagonal blocks, then by the binary matrix."""
    n = plan.n
    if len(f) != n:
        raise ValueError(f"expected length {n}, got {len(f)}")
    ctx = plan.ctx
    oc1 = tally.stage1 if tally else None
    oc2 = tally.stage2 if tally else None

    fe = [f[j] for j in plan.in_perm]
    g: list[int] = []
    pos = 0
    for lay in plan.layouts:
        d = lay.coset.size
        g.extend(_block_matvec(lay.block, fe[pos : pos + d], ctx, oc1))
        pos += d
    if four_russians:
        y = binmat.binmatvec_four_russians(plan.a_matrix, g, fr_plan, oc2)
    else:
        y = binmat.binmatvec_naive(plan.a_matrix, g, oc2)

    out = [0] * n
    for r, i in enumerate(plan.out_perm):
        out[i] = y[r]
    return out


def materialize(plan: FactoredTransform) -> list[list[int]]:
    """Un-permuted dense n x n matrix of the factorization; equals the
    Vandermonde matrix when the construction is sound."""
    n = plan.n
    dense = [[0] * n for _ in range(n)]
    offsets = plan.block_offsets()
    for r in range(n):
        arow = plan.a_matrix.rows[r]
        i = plan.out_perm[r]
        for lay, c0 in zip(plan.layouts, offsets):
            d = lay.coset.size
            sel = (arow >> c0) & ((1 << d) - 1)
            if not sel:
                continue
            for j in range(d):
                acc = 0
                s = sel
                while s:
                    t = (s & -s).bit_length() - 1
                    acc ^= lay.block.entry(t, j)
                    s &= s - 1
                dense[i][plan.in_perm[c0 + j]] = acc
    return dense


def coset_block_report(plan: FactoredTransform) -> list[dict]:
    """Read-only structure report for the coset-pair sub-blocks of A.

    Flags, per (output coset, input coset) pair, whether consecutive rows are
    right rotations and whether the block is a full circulant (square with
    wrap-around).  No algorithm consumes this; it documents structure.
    """
    from .structure import rotate_right_bits

    if plan.out_perm != plan.in_perm:
        raise ValueError("block report requires coset-ordered output rows")
    offsets = plan.block_offsets()
    report = []
    row_base = 0
    for out_lay in plan.layouts:
        d_out = out_lay.coset.size
        for in_lay, c0 in zip(plan.layouts, offsets):
            d_in = in_lay.coset.size
            sub = plan.a_matrix.submatrix(row_base, row_base + d_out, c0, c0 + d_in)
            chain = all(
                sub.rows[r + 1] == rotate_right_bits(sub.rows[r], d_in)
                for r in range(d_out - 1)
            )
            circulant = (
                chain
                and d_out == d_in
                and sub.rows[0] == rotate_right_bits(sub.rows[-1], d_in)
            )
            report.append(
                {
                    "out_coset": out_lay.coset.leader,
                    "in_coset": in_lay.coset.leader,
                    "shape": (d_out, d_in),
                    "rotation_chain": chain,
                    "circulant": circulant,
                }
            )
        row_base += d_out
    return report


# ---------------------------------------------------------------------------
# Remainder-evaluation transform (long division by minimal polynomials).
# ---------------------------------------------------------------------------


@dataclass
class GoertzelPlan:
    """Remainder map R (binary) plus per-coset evaluation blocks.

    Row block k of R carries the coefficients of f mod M_k, M_k the coset's
    minimal polynomial; evaluation block k holds the Vandermonde rows at the
    coset's points, so the second stage is d small dot products per coset.
    """

    ctx: FieldContext
    partition: CosetPartition
    remainder_matrix: BinaryMatrix
    eval_blocks: tuple[tuple[tuple[int, ...], ...], ...]
    min_polys: tuple[int, ...]
    out_perm: tuple[int, ...]


def build_goertzel(ctx: FieldContext) -> GoertzelPlan:
    n = ctx.n
    partition = cyclotomic_cosets(n)
    rows: list[int] = []
    eval_blocks = []
    min_polys = []
    out_perm = []
    for coset in partition.cosets:
        d = coset.size
        mpoly = minimal_polynomial(coset, ctx)
        min_polys.append(mpoly)
        block_rows = [0] * d
        rem = 1  # x^j mod M_k, iterated over j
        for j in range(n):
            for t in range(d):
                if (rem >> t) & 1:
                    block_rows[t] |= 1 << j
            rem <<= 1
            if (rem >> d) & 1:
                rem ^= mpoly
        rows.extend(block_rows)
        eval_blocks.append(
            tuple(tuple(ctx.exp[(e * t) % n] for t in range(d)) for e in coset.elements)
        )
        out_perm.extend(coset.elements)
    return GoertzelPlan(
        ctx,
        partition,
        BinaryMatrix(rows, n),
        tuple(eval_blocks),
        tuple(min_polys),
        tuple(out_perm),
    )


def remainders(plan: GoertzelPlan, f: list[int], oc: OpCount | None = None) -> list[list[int]]:
    """Per-coset remainder coefficient vectors r_k = f mod M_k."""
    stacked = binmat.binmatvec_naive(plan.remainder_matrix, f, oc)
    out, pos = [], 0
    for coset in plan.partition.cosets:
        out.append(stacked[pos : pos + coset.size])
        pos += coset.size
    return out


def apply_goertzel(
    plan: GoertzelPlan, f: list[int], tally: TransformTally | None = None
) -> list[int]:
    n = plan.ctx.n
    if len(f) != n:
        raise ValueError(f"expected length {n}, got {len(f)}")
    ctx = plan.ctx
    oc1 = tally.stage1 if tally else None
    oc2 = tally.stage2 if tally else None
    rems = remainders(plan, f, oc2)
    out = [0] * n
    for k, (coset, block) in enumerate(zip(plan.partition.cosets, plan.eval_blocks)):
        rk = rems[k]
        for r, e in enumerate(coset.elements):
            row = block[r]
            acc = ctx.mul(row[0], rk[0], oc1)
            for t in range(1, coset.size):
                acc = ctx.add(acc, ctx.mul(row[t], rk[t], oc1), oc1)
            out[e] = acc
    return out


# ---------------------------------------------------------------------------
# Coset-split transform (per-coset evaluation then binary recombination).
# ---------------------------------------------------------------------------


@dataclass
class BlahutPlan:
    """Per coset: V_k evaluates the coset slice at the first d points; B_k
    (binary, n x d) spreads those values to all n outputs.  The {0} coset
    contributes an all-ones column times f_0."""

    ctx: FieldContext
    partition: CosetPartition
    v_blocks: tuple[tuple[tuple[int, ...], ...], ...]
    b_blocks: tuple[BinaryMatrix, ...]
    combine_matrix: BinaryMatrix  # [ones | B_1 | ... | B_l] stacked column-wise
    in_perm: tuple[int, ...]


def build_blahut2008(ctx: FieldContext) -> BlahutPlan:
    n = ctx.n
    partition = cyclotomic_cosets(n)
    v_blocks = []
    b_blocks = []
    in_perm: list[int] = []
    combined = [0] * n
    offset = 0
    for coset in partition.cosets:
        d = coset.size
        s = coset.leader
        in_perm.extend(coset.elements)
        if d == 1 and s == 0:
            v_blocks.append(((1,),))
            ones = BinaryMatrix([1] * n, 1)
            b_blocks.append(ones)
            for i in range(n):
                combined[i] |= 1 << offset
            offset += 1
            continue
        v_blocks.append(
            tuple(tuple(ctx.exp[(t * e) % n] for e in coset.elements) for t in range(d))
        )
        basis = tuple(ctx.exp[(s * t) % n] for t in range(d))
        cache = _CoordCache(basis)
        rows = [cache.coords(ctx.exp[(i * s) % n]) for i in range(n)]
        b_blocks.append(BinaryMatrix(list(rows), d))
        for i in range(n):
            combined[i] |= rows[i] << offset
        offset += d
    return BlahutPlan(
        ctx,
        partition,
        tuple(v_blocks),
        tuple(b_blocks),
        BinaryMatrix(combined, n),
        tuple(in_perm),
    )


def apply_blahut2008(
    plan: BlahutPlan, f: list[int], tally: TransformTally | None = None
) -> list[int]:
    n = plan.ctx.n
    if len(f) != n:
        raise ValueError(f"expected length {n}, got {len(f)}")
    ctx = plan.ctx
    oc1 = tally.stage1 if tally else None
    oc2 = tally.stage2 if tally else None
    mid: list[int] = []
    for coset, vblock in zip(plan.partition.cosets, plan.v_blocks):
        if coset.size == 1 and coset.leader == 0:
            mid.append(f[0])
            continue
        slice_vals = [f[e] for e in coset.elements]
        for row in vblock:
            acc = ctx.mul(row[0], slice_vals[0], oc1)
            for t in range(1, len(row)):
                acc = ctx.add(acc, ctx.mul(row[t], slice_vals[t], oc1), oc1)
            mid.append(acc)
    return binmat.binmatvec_naive(plan.combine_matrix, mid, oc2)


# ---------------------------------------------------------------------------
# Shared entry points.
# ---------------------------------------------------------------------------


def build(tag: str, ctx: FieldContext):
    if tag == GOERTZEL:
        return build_goertzel(ctx)
    if tag == BLAHUT2008:
        return build_blahut2008(ctx)
    if tag == FT2002:
        return build_ft2002(ctx)
    if tag == TF2003:
        return build_tf2003(ctx)
    if tag == FED2006A:
        return build_fed2006(ctx, "a")
    if tag == FED2006B:
        return build_fed2006(ctx, "b")
    raise ValueError(f"unknown algorithm tag {tag!r}")


def apply(plan, f: list[int], tally: TransformTally | None = None, **kw) -> list[int]:
    if isinstance(plan, GoertzelPlan):
        return apply_goertzel(plan, f, tally)
    if isinstance(plan, BlahutPlan):
        return apply_blahut2008(plan, f, tally)
    return apply_factored(plan, f, tally=tally, **kw)


# ---------------------------------------------------------------------------
# Batched application (testing-scale; exact, uncounted).
#
# Elements of all vectors in a batch are packed into one big int per input
# position, one lane of m bits per vector; XOR never crosses lanes, so the
# binary stage runs once per matrix row for the whole batch.
# ---------------------------------------------------------------------------


def _pack_lanes(columns: list[list[int]], lane: int) -> list[int]:
    out = []
    for col in columns:
        word = 0
        for b, v in enumerate(col):
            word |= v << (b * lane)
        out.append(word)
    return out


def _binary_fold_packed(rows: list[int], packed: list[int]) -> list[int]:
    cols = len(packed)
    if cols < 64 or len(rows) * cols < 1 << 14:
        out = []
        for row in rows:
            acc = 0
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                acc ^= packed[j]
                r &= r - 1
            out.append(acc)
        return out

    # Group-major subset-sum fold (same idea as the Four-Russians kernel):
    # one 2^t table per column group, built incrementally, then one lookup
    # per (row, group).  Large batches make each XOR wide, so cutting the
    # XOR count from popcount(A) to ~cols/t per row is the dominant win.
    t = max(4, min(10, len(rows).bit_length() - 3))
    size = 1 << t
    mask = size - 1
    out = [0] * len(rows)
    shifted = list(rows)
    for base in range(0, cols, t):
        table = [0] * size
        width = min(t, cols - base)
        for bit in range(width):
            stride = 1 << bit
            val = packed[base + bit]
            for prev in range(stride):
                table[stride + prev] = table[prev] ^ val
        for i, row in enumerate(shifted):
            sel = row & mask
            if sel:
                out[i] ^= table[sel]
            shifted[i] = row >> t
    return out


def _unpack_lanes(word: int, count: int, lane: int) -> list[int]:
    mask = (1 << lane) - 1
    return [(word >> (b * lane)) & mask for b in range(count)]


def apply_batch(plan, vectors: list[list[int]]) -> list[list[int]]:
    """Apply one plan to many vectors, sharing the binary-stage row folds."""
    if isinstance(plan, FactoredTransform):
        return _apply_factored_batch(plan, vectors)
    if isinstance(plan, GoertzelPlan):
        return _apply_goertzel_batch(plan, vectors)
    if isinstance(plan, BlahutPlan):
        return _apply_blahut_batch(plan, vectors)
    raise TypeError(f"unsupported plan type {type(plan)!r}")


def _apply_factored_batch(plan: FactoredTransform, vectors: list[list[int]]) -> list[list[int]]:
    ctx, n = plan.ctx, plan.n
    count = len(vectors)
    mids = []
    for f in vectors:
        if len(f) != n:
            raise ValueError(f"expected length {n}, got {len(f)}")
        fe = [f[j] for j in plan.in_perm]
        g: list[int] = []
        pos = 0
        for lay in plan.layouts:
            d = lay.coset.size
            g.extend(_block_matvec(lay.block, fe[pos : pos + d], ctx, None))
            pos += d
        mids.append(g)
    packed = _pack_lanes([[mids[b][j] for b in range(count)] for j in range(n)], ctx.m)
    folded = _binary_fold_packed(plan.a_matrix.rows, packed)
    outs = [[0] * n for _ in range(count)]
    for r, i in enumerate(plan.out_perm):
        vals = _unpack_lanes(folded[r], count, ctx.m)
        for b in range(count):
            outs[b][i] = vals[b]
    return outs


def _apply_goertzel_batch(plan: GoertzelPlan, vectors: list[list[int]]) -> list[list[int]]:
    ctx, n = plan.ctx, plan.ctx.n
    count = len(vectors)
    for f in vectors:
        if len(f) != n:
            raise ValueError(f"expected length {n}, got {len(f)}")
    packed = _pack_lanes([[vectors[b][j] for b in range(count)] for j in range(n)], ctx.m)
    folded = _binary_fold_packed(plan.remainder_matrix.rows, packed)
    outs = [[0] * n for _ in range(count)]
    pos = 0
    for coset, block in zip(plan.partition.cosets, plan.eval_blocks):
        d = coset.size
        rems = [_unpack_lanes(folded[pos + t], count, ctx.m) for t in range(d)]
        for r, e in enumerate(coset.elements):
            row = block[r]
            for b in range(count):
                acc = ctx.mul(row[0], rems[0][b])
                for t in range(1, d):
                    acc ^= ctx.mul(row[t], rems[t][b])
                outs[b][e] = acc
        pos += d
    return outs


def _apply_blahut_batch(plan: BlahutPlan, vectors: list[list[int]]) -> list[list[int]]:
    ctx, n = plan.ctx, plan.ctx.n
    count = len(vectors)
    mids = []
    for f in vectors:
        if len(f) != n:
            raise ValueError(f"expected length {n}, got {len(f)}")
        mid: list[int] = []
        for coset, vblock in zip(plan.partition.cosets, plan.v_blocks):
            if coset.size == 1 and coset.leader == 0:
                mid.append(f[0])
                continue
            slice_vals = [f[e] for e in coset.elements]
            for row in vblock:
                acc = ctx.mul(row[0], slice_vals[0])
                for t in range(1, len(row)):
                    acc ^= ctx.mul(row[t], slice_vals[t])
                mid.append(acc)
        mids.append(mid)
    width = len(mids[0])
    packed = _pack_lanes([[mids[b][j] for b in range(count)] for j in range(width)], ctx.m)
    folded = _binary_fold_packed(plan.combine_matrix.rows, packed)
    unpacked = [_unpack_lanes(folded[i], count, ctx.m) for i in range(n)]
    return [[unpacked[i][b] for i in range(n)] for b in range(count)]


# ---------------------------------------------------------------------------
# Structural operation counts (no transform execution required).
# ---------------------------------------------------------------------------


def structural_stage1_counts(plan: FactoredTransform) -> tuple[int, int]:
    """Worst-case (mults, adds) for the block-diagonal stage.

    Multiplications follow the skip-units policy: entries equal to 0 or 1 are
    free, so a d x d circulant of non-unit conjugates costs d^2 and a dense
    linearized block costs its count of non-unit entries.
    """
    mults = adds = 0
    for lay in plan.layouts:
        d = lay.coset.size
        if d == 1:
            continue
        adds += d * (d - 1)
        if isinstance(lay.block, CirculantBlock):
            mults += sum(1 for e in lay.block.first_row if e > 1) * d
        else:
            mults += sum(1 for row in lay.block.rows for e in row if e > 1)
    return mults, adds


def stage2_naive_adds(plan: FactoredTransform) -> int:
    """Exact additions of the naive binary stage: sum of (popcount - 1)."""
    return sum(r.bit_count() - 1 for r in plan.a_matrix.rows if r)


def stage1_bound(ctx: FieldContext) -> int:
    """n * log2(n + 1) = n * m, the multiplication budget."""
    return ctx.n * ctx.m


# The bench path must cover fields whose full binary matrix would not fit in
# memory, so the naive-stage addition count is aggregated per coset: the
# arguments a^(i*s) sweep the cyclic subgroup generated by a^gcd(s, n), each
# value hit gcd(s, n) times, and popcounts are summed over that subgroup once
# per distinct (basis, subgroup) pair.


def _layouts_for_tag(ctx: FieldContext, tag: str) -> list[CosetLayout]:
    partition = cyclotomic_cosets(ctx.n)
    if tag == FT2002:
        return _layouts_ft2002(ctx, partition)
    if tag == TF2003:
        return _layouts_normal(ctx, partition, shifted=False)
    if tag == FED2006A:
        return _layouts_normal(ctx, partition, shifted=False)
    if tag == FED2006B:
        return _layouts_normal(ctx, partition, shifted=True)
    raise ValueError(f"not a factored algorithm tag: {tag!r}")


def structural_counts_for_tag(ctx: FieldContext, tag: str) -> tuple[int, int, int]:
    """(stage1 mults, stage1 adds, stage2 naive adds) without building A."""
    n = ctx.n
    layouts = _layouts_for_tag(ctx, tag)
    mults = adds = 0
    for lay in layouts:
        d = lay.coset.size
        if d == 1:
            continue
        adds += d * (d - 1)
        if isinstance(lay.block, CirculantBlock):
            mults += sum(1 for e in lay.block.first_row if e > 1) * d
        else:
            mults += sum(1 for row in lay.block.rows for e in row if e > 1)

    subgroup_pc: dict[tuple, int] = {}
    total_ones = 0
    for lay in layouts:
        g = gcd(lay.rep, n)
        key = (lay.basis, g)
        s = subgroup_pc.get(key)
        if s is None:
            if lay.std_coords:
                s = sum(ctx.exp[e].bit_count() for e in range(0, n, g))
            else:
                cache = _CoordCache(lay.basis)
                s = sum(cache.coords(ctx.exp[e]).bit_count() for e in range(0, n, g))
            subgroup_pc[key] = s
        total_ones += g * s
    return mults, adds, total_ones - n
