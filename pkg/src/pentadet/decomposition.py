"""Stride-k rearrangement into a direct sum of 1,2-pentadiagonal blocks.

Reordering rows and columns by residue class modulo ``k`` turns a
k,2k-pentadiagonal matrix into ``p`` blocks of order ``q+1`` followed by
``k-p`` blocks of order ``q``, where ``n + 1 = k*q + p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Literal

from .model import PentaSpec, assemble_dense, shape_of, validate_shape
from .oracle import LogDet, det_exact_dense, det_float_dense
from .toeplitz import d_sequence

BlockMethod = Literal["dense-exact", "recursion-if-toeplitz"]


@dataclass(frozen=True)
class BlockSet:
    blocks: tuple

    @property
    def orders(self) -> tuple:
        return tuple(b.order for b in self.blocks)


def sigma(n: int, k: int, i: int) -> int:
    """Original index placed at position ``i`` of the rearranged order."""
    shape = shape_of(n, k)
    q, p = shape.q, shape.p
    if not 0 <= i <= n:
        raise IndexError(f"index {i} outside 0..{n}")
    head = p * (q + 1)
    if i < head:
        j, s = divmod(i, q + 1)
    else:
        j, s = divmod(i - head, q)
        j += p
    return s * k + j


def sigma_table(n: int, k: int) -> list[int]:
    return [sigma(n, k, i) for i in range(n + 1)]


def _block(spec: PentaSpec, s: int, t: int) -> PentaSpec:
    """Block ``s`` of order ``t + 1``: diagonals sampled with stride ``k`` from offset ``s``."""
    k = spec.k
    return PentaSpec(
        t, 1,
        L=spec.L[s: s + (t - 2) * k + 1: k] if t >= 2 else (),
        l=spec.l[s: s + (t - 1) * k + 1: k],
        d=spec.d[s: s + t * k + 1: k],
        r=spec.r[s: s + (t - 1) * k + 1: k],
        R=spec.R[s: s + (t - 2) * k + 1: k] if t >= 2 else (),
    )


def split_blocks(spec: PentaSpec) -> BlockSet:
    shape = validate_shape(spec)
    q, p = shape.q, shape.p
    blocks = [_block(spec, s, q) for s in range(p)]
    blocks += [_block(spec, s, q - 1) for s in range(p, spec.k)]
    return BlockSet(tuple(blocks))


def _toeplitz_params(block: PentaSpec):
    vecs = (block.L, block.l, block.d, block.r, block.R)
    if all(len(set(v)) <= 1 for v in vecs):
        return tuple(v[0] if v else 0 for v in vecs)
    return None


def block_det(block: PentaSpec, method: BlockMethod = "dense-exact"):
    if method == "recursion-if-toeplitz":
        params = _toeplitz_params(block)
        if params is not None:
            return d_sequence(params, block.order)[block.order]
    elif method != "dense-exact":
        raise ValueError(f"unknown block method {method!r}")
    return det_exact_dense(assemble_dense(block, check=False))


def det_via_blocks(spec: PentaSpec, block_method: BlockMethod = "dense-exact"):
    """Product of the block determinants; total for exact scalars."""
    blockset = split_blocks(spec)
    if block_method == "recursion-if-toeplitz":
        # identical blocks share one determinant
        cache: dict = {}
        vals = []
        for b in blockset.blocks:
            key = (b.L, b.l, b.d, b.r, b.R)
            if key not in cache:
                cache[key] = block_det(b, block_method)
            vals.append(cache[key])
        return prod(vals)
    return prod(block_det(b, block_method) for b in blockset.blocks)


def slogdet_via_blocks(spec: PentaSpec) -> LogDet:
    """Float variant: each block through pivoted LU, combined in log space."""
    out = LogDet(1, 0.0)
    for b in split_blocks(spec).blocks:
        out = out * det_float_dense(assemble_dense(b, zero=0.0, check=False))
    return out


def permuted_dense(spec: PentaSpec):
    """``P A P^T`` built entrywise; only for small-scale checks."""
    n = spec.n
    a = assemble_dense(spec)
    perm = sigma_table(n, spec.k)
    return [[a[perm[i], perm[j]] for j in range(n + 1)] for i in range(n + 1)]


def direct_sum(blocks) -> list[list]:
    total = sum(b.order for b in blocks)
    out = [[0] * total for _ in range(total)]
    off = 0
    for b in blocks:
        m = assemble_dense(b, check=False)
        for i in range(b.order):
            for j in range(b.order):
                out[off + i][off + j] = m[i, j]
        off += b.order
    return out

