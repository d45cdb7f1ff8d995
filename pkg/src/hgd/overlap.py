"""Overlap-matrix families of caterpillar-Halin graphs and brute-force rank distributions.

Every family is described by a :class:`Layout`: a matrix dimension plus one
``(row, col)`` position per free bit. Setting a bit puts a 1 at that
position and its mirror, so every matrix built here is symmetric.

Bit order for the full family is fixed: ``x_1..x_k``, ``y_1..y_(k-1)``,
then ``x_(i,l)`` block by block, ``y_(i,l)`` block by block, then the
``z`` vectors block by block, each vector in increasing ``l``. Bit 0 of a
flat assignment index is the first bit in this order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from hgd import _kernels
from hgd._parallel import parallel_histogram
from hgd.errors import BudgetExceeded, InvalidArgument
from hgd.gf2 import Gf2Matrix
from hgd.params import ParamLike, ParamTuple, as_params
from hgd.polynomial import GenusPolynomial

log = logging.getLogger(__name__)

DEFAULT_BUDGET_BITS = 26

Label = tuple  # ("x", i) | ("y", i) | ("x", i, l) | ("y", i, l) | ("z", i, l)


@dataclass(frozen=True)
class Layout:
    dim: int
    labels: tuple[Label, ...]
    positions: tuple[tuple[int, int], ...]

    @property
    def nbits(self) -> int:
        return len(self.positions)

    def index_of(self, label: Label) -> int:
        return self.labels.index(label)

    def build(self, assignment: int) -> Gf2Matrix:
        rows = [0] * self.dim
        for b, (i, j) in enumerate(self.positions):
            if (assignment >> b) & 1:
                rows[i] ^= 1 << j
                if i != j:
                    rows[j] ^= 1 << i
        return Gf2Matrix(self.dim, tuple(rows))

    def restricted(self, keep) -> Layout:
        pairs = [(lab, pos) for lab, pos in zip(self.labels, self.positions) if keep(lab, pos)]
        return Layout(self.dim, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def _row_index(params: ParamTuple):
    k = params.k
    offsets = [k]
    for mi in params.m[:-1]:
        offsets.append(offsets[-1] + mi)

    def e(i: int, l: int | None = None) -> int:
        if l is None:
            return i - 1
        return offsets[i - 1] + l - 1

    return e


def delta_layout(params: ParamLike) -> Layout:
    """Free bits of the full overlap family of ``H_{m_1..m_k}`` (``k >= 2``, strict)."""
    p = as_params(params).require_strict()
    if p.k < 2:
        raise InvalidArgument("the block overlap family needs k >= 2; use phi_layout for k = 1")
    k, m = p.k, p.m
    e = _row_index(p)
    labels: list[Label] = []
    pos: list[tuple[int, int]] = []

    def put(label, ij):
        labels.append(label)
        pos.append(ij)

    for i in range(1, k + 1):
        put(("x", i), (e(i), e(i)))
    for i in range(1, k):
        put(("y", i), (e(i), e(i + 1)))
    for i in range(1, k + 1):
        for l in range(1, m[i - 1] + 1):
            put(("x", i, l), (e(i, l), e(i, l)))
    for i in range(1, k + 1):
        for l in range(1, m[i - 1]):
            put(("y", i, l), (e(i, l), e(i, l + 1)))
    for i in range(1, k + 1):
        lo = 1 if i == 1 else 0
        hi = m[i - 1] if i == k else m[i - 1] + 1
        for l in range(lo, hi + 1):
            if l == 0:
                other = e(i - 1, m[i - 2])
            elif l == m[i - 1] + 1:
                other = e(i + 1, 1)
            else:
                other = e(i, l)
            put(("z", i, l), (e(i), other))
    return Layout(p.betti, tuple(labels), tuple(pos))


def lambda_layout(params: ParamLike) -> Layout:
    """Full family with row and column ``e_k`` forced to zero."""
    full = delta_layout(params)
    last = as_params(params).k - 1
    return full.restricted(lambda lab, ij: last not in ij)


def tridiag_layout(m: int) -> Layout:
    if m < 1:
        raise InvalidArgument(f"tridiagonal size must be >= 1, got {m}")
    labels = [("a", i) for i in range(1, m + 1)] + [("b", i) for i in range(1, m)]
    pos = [(i, i) for i in range(m)] + [(i, i + 1) for i in range(m - 1)]
    return Layout(m, tuple(labels), tuple(pos))


def phi_layout(n: int) -> Layout:
    """Ringel-ladder family of dimension ``n``: bits ``x_0..x_(n-1)``, ``y_1..y_(n-2)``, ``z_1..z_(n-1)``."""
    if n < 2:
        raise InvalidArgument(f"phi family needs dimension >= 2, got {n}")
    labels = [("x", i) for i in range(n)] + [("y", i) for i in range(1, n - 1)]
    labels += [("z", i) for i in range(1, n)]
    pos = [(i, i) for i in range(n)] + [(i, i + 1) for i in range(1, n - 1)]
    pos += [(0, i) for i in range(1, n)]
    return Layout(n, tuple(labels), tuple(pos))


class OverlapAssignment:
    """Bit values ``X, Y, Z`` of the full overlap family for one parameter tuple.

    Stored as a flat integer in the documented bit order; every bit is
    addressable by its label, e.g. ``asg[("z", 2, 0)]``.
    """

    def __init__(self, params: ParamLike, bits: int = 0):
        self.params = as_params(params).require_strict()
        self.layout = delta_layout(self.params)
        if bits < 0 or bits >> self.layout.nbits:
            raise InvalidArgument(f"assignment wider than {self.layout.nbits} bits")
        self.bits = bits

    @classmethod
    def all_ones(cls, params: ParamLike) -> OverlapAssignment:
        n = delta_layout(params).nbits
        return cls(params, (1 << n) - 1)

    @classmethod
    def from_vectors(cls, params: ParamLike, x0, y0, xi, yi, z) -> OverlapAssignment:
        """Build from per-block vectors.

        ``xi[i-1]`` has ``m_i`` bits, ``yi[i-1]`` has ``m_i - 1``; ``z[0]`` is
        ``z_(1,1..m_1+1)``, ``z[i-1]`` for middle blocks is ``z_(i,0..m_i+1)``
        and ``z[k-1]`` is ``z_(k,0..m_k)``.
        """
        p = as_params(params).require_strict()
        k, m = p.k, p.m
        expected_z = [m[0] + 1] + [mi + 2 for mi in m[1:-1]] + [m[-1] + 1]
        checks = [(x0, k, "x0"), (y0, k - 1, "y0")]
        checks += [(xi[i], m[i], f"x{i + 1}") for i in range(k)]
        checks += [(yi[i], m[i] - 1, f"y{i + 1}") for i in range(k)]
        checks += [(z[i], expected_z[i], f"z{i + 1}") for i in range(k)]
        if len(xi) != k or len(yi) != k or len(z) != k:
            raise InvalidArgument("need one x, y and z vector per block")
        for vec, n, name in checks:
            if len(vec) != n:
                raise InvalidArgument(f"{name} must have {n} bits, got {len(vec)}")
        flat = list(x0) + list(y0)
        for v in xi:
            flat += list(v)
        for v in yi:
            flat += list(v)
        for v in z:
            flat += list(v)
        bits = sum((b & 1) << i for i, b in enumerate(flat))
        return cls(p, bits)

    @property
    def nbits(self) -> int:
        return self.layout.nbits

    def __getitem__(self, label: Label) -> int:
        return (self.bits >> self.layout.index_of(label)) & 1

    def with_bit(self, label: Label, value: int) -> OverlapAssignment:
        b = self.layout.index_of(label)
        bits = (self.bits & ~(1 << b)) | ((value & 1) << b)
        return OverlapAssignment(self.params, bits)


def expected_delta_bits(params: ParamLike) -> int:
    p = as_params(params)
    return 3 * p.total + 3 * p.k - 3


def expected_lambda_bits(params: ParamLike) -> int:
    p = as_params(params)
    return 3 * p.total - p.m[-1] + 3 * p.k - 6


def _bits_of(bits: Sequence[int], n: int, name: str) -> list[int]:
    if len(bits) != n:
        raise InvalidArgument(f"{name} must have length {n}, got {len(bits)}")
    return [int(b) & 1 for b in bits]


def build_tridiag(a: Sequence[int], b: Sequence[int]) -> Gf2Matrix:
    """Symmetric tridiagonal matrix with diagonal ``a`` and off-diagonal ``b``."""
    m = len(a)
    layout = tridiag_layout(m)
    flat = _bits_of(a, m, "a") + _bits_of(b, m - 1, "b")
    return layout.build(sum(v << i for i, v in enumerate(flat)))


def build_delta(params: ParamLike, asg: OverlapAssignment) -> Gf2Matrix:
    p = as_params(params).require_strict()
    if asg.params != p:
        raise InvalidArgument(f"assignment is for {asg.params}, not {p}")
    return asg.layout.build(asg.bits)


def build_lambda_matrix(params: ParamLike, asg: OverlapAssignment) -> Gf2Matrix:
    full = build_delta(params, asg)
    last = as_params(params).k - 1
    keep = ~(1 << last)
    rows = tuple((r & keep) if i != last else 0 for i, r in enumerate(full.rows))
    return Gf2Matrix(full.dim, rows)


def build_phi(m: int, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> Gf2Matrix:
    """The ``(m+1) x (m+1)`` Ringel-ladder overlap matrix.

    First row/column ``(x_0, z_1..z_m)``; trailing block tridiagonal with
    diagonal ``x_1..x_m`` and off-diagonal ``y_1..y_(m-1)``.
    """
    if m < 1:
        raise InvalidArgument(f"m must be >= 1, got {m}")
    layout = phi_layout(m + 1)
    flat = _bits_of(x, m + 1, "x") + _bits_of(y, m - 1, "y") + _bits_of(z, m, "z")
    return layout.build(sum(v << i for i, v in enumerate(flat)))


def layout_for(builder: str, params) -> Layout:
    """Resolve a family name and its parameters to a layout.

    ``delta`` and ``lambda`` take a parameter tuple (``delta`` with ``k = 1``
    uses the Ringel-ladder family of dimension ``m + 2``); ``phi`` takes the
    dimension ``n`` of ``phi_n``; ``tridiag`` takes ``m`` of ``L_m``.
    """
    if builder == "delta":
        p = as_params(params).require_strict()
        return phi_layout(p.m[0] + 2) if p.k == 1 else delta_layout(p)
    if builder == "lambda":
        return lambda_layout(params)
    if builder == "phi":
        return phi_layout(int(params))
    if builder == "tridiag":
        return tridiag_layout(int(params))
    raise InvalidArgument(f"unknown builder {builder!r}")


def layout_histogram(layout: Layout, workers: int = 1) -> list[int]:
    pos_i = np.array([ij[0] for ij in layout.positions], dtype=np.int64)
    pos_j = np.array([ij[1] for ij in layout.positions], dtype=np.int64)
    dim = layout.dim

    def run(start, stop, hist):
        _kernels.rank_histogram(pos_i, pos_j, dim, start, stop, hist)

    return parallel_histogram(layout.nbits, dim + 1, run, workers)


def enumerate_distribution(
    builder: str,
    params,
    budget: int = DEFAULT_BUDGET_BITS,
    workers: int = 1,
) -> GenusPolynomial:
    """Histogram of GF(2) ranks over every assignment of a family's free bits."""
    layout = layout_for(builder, params)
    if layout.nbits > budget:
        raise BudgetExceeded(layout.nbits, budget, f"{builder} enumeration for {params}")
    if layout.dim > 63:
        raise InvalidArgument(f"dimension {layout.dim} exceeds the 63-column kernel limit")
    log.debug("enumerating %s(%s): %d bits, dim %d", builder, params, layout.nbits, layout.dim)
    return GenusPolynomial.from_histogram(layout_histogram(layout, workers))


def enumerate_distribution_python(builder: str, params) -> GenusPolynomial:
    """Reference enumeration without the compiled kernel (small inputs only)."""
    layout = layout_for(builder, params)
    hist = [0] * (layout.dim + 1)
    for a in range(1 << layout.nbits):
        hist[layout.build(a).rank()] += 1
    return GenusPolynomial.from_histogram(hist)
