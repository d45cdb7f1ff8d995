"""Truncated multivariate Laurent series and the transfer-matrix generating functions.

A :class:`LaurentSeries` in ``t_1..t_n`` has coefficients that are
polynomials in ``z`` (truncated at ``zmax``) with signed integer
coefficients. Each series tracks, per variable, the exponent up to which
its coefficients are exact (``prec``); products and inverses propagate
that bound, so a coefficient is only ever read where it is known exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from hgd.errors import InvalidArgument, InvariantViolation
from hgd.params import ParamLike, as_params
from hgd.polynomial import GenusPolynomial

LAURENT_FLOOR = -3
INF = math.inf

Exps = tuple[int, ...]
ZPoly = tuple[int, ...]


def _zadd(a: Sequence[int], b: Sequence[int], sign: int = 1) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += sign * c
    return out


def _zmul(a: Sequence[int], b: Sequence[int], zmax: int) -> list[int]:
    n = min(len(a) + len(b) - 1, zmax + 1)
    if n <= 0:
        return []
    out = [0] * n
    for i, ca in enumerate(a):
        if ca == 0 or i >= n:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += ca * b[j]
    return out


def _zstrip(c: Sequence[int], zmax: int) -> ZPoly:
    c = list(c[: zmax + 1])
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _zinv(c: Sequence[int], zmax: int) -> list[int]:
    """Inverse of a z-polynomial with constant term +-1, modulo ``z**(zmax+1)``."""
    c0 = c[0]
    out = [0] * (zmax + 1)
    out[0] = c0
    for n in range(1, zmax + 1):
        acc = 0
        for j in range(1, min(n, len(c) - 1) + 1):
            acc += c[j] * out[n - j]
        out[n] = -c0 * acc
    return out


class LaurentSeries:
    """Immutable truncated Laurent series; see the module docstring."""

    __slots__ = ("nvars", "zmax", "prec", "terms")

    def __init__(
        self,
        nvars: int,
        zmax: int,
        terms: Mapping[Exps, Sequence[int]] | None = None,
        prec: Sequence[float] | None = None,
    ):
        self.nvars = nvars
        self.zmax = zmax
        self.prec = tuple(prec) if prec is not None else (INF,) * nvars
        if len(self.prec) != nvars:
            raise InvalidArgument("precision vector has the wrong length")
        clean: dict[Exps, ZPoly] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise InvalidArgument(f"exponent {e} does not have {nvars} entries")
            if any(x > p for x, p in zip(e, self.prec)):
                continue
            zc = _zstrip(c, zmax)
            if zc:
                clean[e] = zc
        for e in clean:
            if any(x < LAURENT_FLOOR for x in e):
                raise InvariantViolation(f"exponent {e} below the Laurent floor {LAURENT_FLOOR}")
        self.terms = clean

    # construction

    @classmethod
    def constant(cls, nvars: int, zmax: int, zpoly: Sequence[int] = (1,)) -> LaurentSeries:
        return cls(nvars, zmax, {(0,) * nvars: zpoly})

    @classmethod
    def monomial(cls, nvars: int, zmax: int, exps: Exps, zpoly: Sequence[int] = (1,)) -> LaurentSeries:
        return cls(nvars, zmax, {tuple(exps): zpoly})

    @classmethod
    def univariate(cls, nvars: int, zmax: int, var: int, coeffs: Mapping[int, Sequence[int]]) -> LaurentSeries:
        """Exact polynomial in a single variable ``t_(var+1)``: ``{exponent: zpoly}``."""
        terms = {}
        for n, c in coeffs.items():
            e = [0] * nvars
            e[var] = n
            terms[tuple(e)] = c
        return cls(nvars, zmax, terms)

    # inspection

    def lo(self, var: int) -> float:
        return min((e[var] for e in self.terms), default=INF)

    def coefficient(self, exps: Exps) -> GenusPolynomial:
        exps = tuple(exps)
        for i, (x, p) in enumerate(zip(exps, self.prec)):
            if x > p:
                raise InvalidArgument(f"t_{i + 1}^{x} is beyond the known precision t_{i + 1}^{p}")
        return GenusPolynomial(self.terms.get(exps, ()))

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.nvars, self.zmax, self.prec, self.terms) == (
            other.nvars, other.zmax, other.prec, other.terms,
        )

    def __repr__(self) -> str:
        return f"LaurentSeries(nvars={self.nvars}, terms={len(self.terms)}, prec={self.prec})"

    # arithmetic

    def _check(self, other: LaurentSeries) -> None:
        if self.nvars != other.nvars or self.zmax != other.zmax:
            raise InvalidArgument("series live in different rings")

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        return self._combine(other, 1)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self._combine(other, -1)

    def _combine(self, other: LaurentSeries, sign: int) -> LaurentSeries:
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = _zadd(terms.get(e, ()), c, sign)
        prec = tuple(min(a, b) for a, b in zip(self.prec, other.prec))
        return LaurentSeries(self.nvars, self.zmax, terms, prec)

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.nvars, self.zmax, {e: [-x for x in c] for e, c in self.terms.items()}, self.prec)

    def __mul__(self, other) -> LaurentSeries:
        if isinstance(other, int):
            return LaurentSeries(self.nvars, self.zmax, {e: [other * x for x in c] for e, c in self.terms.items()}, self.prec)
        self._check(other)
        prec = tuple(
            min(pa + other.lo(i), pb + self.lo(i))
            for i, (pa, pb) in enumerate(zip(self.prec, other.prec))
        )
        terms: dict[Exps, list[int]] = {}
        zmax = self.zmax
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if any(x > p for x, p in zip(e, prec)):
                    continue
                prod = _zmul(ca, cb, zmax)
                if e in terms:
                    terms[e] = _zadd(terms[e], prod)
                else:
                    terms[e] = prod
        return LaurentSeries(self.nvars, zmax, terms, prec)

    __rmul__ = __mul__

    def shift(self, exps: Exps) -> LaurentSeries:
        """Multiply by the monomial ``t^exps`` (exact, shifts precision too)."""
        terms = {tuple(x + d for x, d in zip(e, exps)): c for e, c in self.terms.items()}
        prec = tuple(p + d for p, d in zip(self.prec, exps))
        return LaurentSeries(self.nvars, self.zmax, terms, prec)

    def truncate(self, prec: Sequence[float]) -> LaurentSeries:
        new = tuple(min(a, b) for a, b in zip(self.prec, prec))
        return LaurentSeries(self.nvars, self.zmax, self.terms, new)

    def extend(self, nvars: int) -> LaurentSeries:
        """Embed into a ring with more variables (the new ones appear to power 0)."""
        pad = (0,) * (nvars - self.nvars)
        terms = {e + pad: c for e, c in self.terms.items()}
        return LaurentSeries(nvars, self.zmax, terms, self.prec + (INF,) * len(pad))

    def negative_support(self) -> list[Exps]:
        return [e for e in self.terms if any(x < 0 for x in e)]


def series_invert(d: LaurentSeries, prec: Sequence[float] | None = None) -> LaurentSeries:
    """Multiplicative inverse of ``d`` up to ``prec``.

    ``d`` must have nonnegative exponents and a constant term (``t^0 z^0``)
    of +1 or -1. Variables that ``d`` actually depends on need a finite
    target precision, from ``prec`` or from ``d`` itself.
    """
    n = d.nvars
    zero = (0,) * n
    c0 = d.terms.get(zero, ())
    if not c0 or c0[0] not in (1, -1):
        raise InvalidArgument("series_invert needs a constant term of +1 or -1")
    if d.negative_support():
        raise InvalidArgument("series_invert needs nonnegative exponents")
    want = tuple(prec) if prec is not None else (INF,) * n
    out_prec = tuple(min(a, b) for a, b in zip(d.prec, want))
    depends = [any(e[i] for e in d.terms) for i in range(n)]
    for i in range(n):
        if depends[i] and out_prec[i] == INF:
            raise InvalidArgument(f"inverse needs a finite truncation in t_{i + 1}")
    ranges = [range(int(out_prec[i]) + 1) if depends[i] else range(1) for i in range(n)]
    zmax = d.zmax
    inv0 = _zinv(c0, zmax)
    others = [(e, c) for e, c in d.terms.items() if e != zero]
    s: dict[Exps, list[int]] = {}
    for e in sorted(itertools.product(*ranges), key=sum):
        acc = [1] if e == zero else []
        for f, c in others:
            g = tuple(x - y for x, y in zip(e, f))
            if any(x < 0 for x in g):
                continue
            sg = s.get(g)
            if sg:
                acc = _zadd(acc, _zmul(c, sg, zmax), -1)
        if acc:
            val = _zmul(acc, inv0, zmax)
            if any(val):
                s[e] = val
    return LaurentSeries(n, zmax, s, out_prec)


# closed forms -------------------------------------------------------------

def _den_lambda(nvars: int, zmax: int, var: int) -> LaurentSeries:
    """``1 - (2 + 4z) t - 16 z^2 t^2``."""
    return LaurentSeries.univariate(nvars, zmax, var, {0: [1], 1: [-2, -4], 2: [0, 0, -16]})


def _den_euler(nvars: int, zmax: int, var: int) -> LaurentSeries:
    """``1 - (1 + 4z) t - 16 z^2 t^2``."""
    return LaurentSeries.univariate(nvars, zmax, var, {0: [1], 1: [-1, -4], 2: [0, 0, -16]})


def _rational(num: LaurentSeries, den: LaurentSeries, var: int, trunc: int) -> LaurentSeries:
    prec = [INF] * num.nvars
    prec[var] = trunc
    return num * series_invert(den, prec)


def Lstar_series(trunc: int, zmax: int, nvars: int = 1, var: int = 0) -> LaurentSeries:
    """``sum_{m>=1} 2^m L_m(z) t^m`` up to ``t^trunc``."""
    num = LaurentSeries.univariate(nvars, zmax, var, {1: [2, 2], 2: [0, 0, 8]})
    return _rational(num, _den_lambda(nvars, zmax, var), var, trunc)


def phi_series(trunc: int, zmax: int, nvars: int = 1, var: int = 0) -> LaurentSeries:
    """``sum_{m>=2} phi_m(z) t^m`` up to ``t^trunc``."""
    num = LaurentSeries.univariate(nvars, zmax, var, {
        2: [1, 3, 4],
        3: [-2, -10, -8, -4],
        4: [0, 0, -32, -96, -80],
        5: [0, 0, 0, 0, -128, -128],
    })
    prec = [INF] * nvars
    prec[var] = trunc
    den = _den_lambda(nvars, zmax, var) * _den_euler(nvars, zmax, var)
    return num * series_invert(den, prec)


class Bundle(NamedTuple):
    """The four generating functions propagated by the transfer matrix."""

    lam1: LaurentSeries
    lam2: LaurentSeries
    E1: LaurentSeries
    E2: LaurentSeries

    @property
    def k(self) -> int:
        return self.E1.nvars


@dataclass(frozen=True)
class Truncation:
    """Final exponent bounds per ``t`` variable and the ``z``-degree bound."""

    t: tuple[int, ...]
    zmax: int

    @classmethod
    def for_params(cls, params: ParamLike) -> Truncation:
        p = as_params(params)
        return cls(tuple(p.m), p.k + p.total)


def k2_bundle(t1: int, t2: int, zmax: int) -> Bundle:
    """``(lambda^1, lambda^2, E^1, E^2)`` in ``(t_1, t_2)``, exact up to ``t_1^t1 t_2^t2``."""
    n = 2
    phi_c = [1, 3, 4]
    phi3_c = [1, 7, 28, 28]
    phi = phi_series(t1 + 3, zmax, n, 0)
    lstar = Lstar_series(t1 + 3, zmax, n, 0)

    def T2(coeffs):
        return LaurentSeries.univariate(n, zmax, 1, coeffs)

    def mono(e1, e2, c=(1,)):
        return LaurentSeries.monomial(n, zmax, (e1, e2), c)

    phi_over_t1 = phi.shift((-1, 0))
    lam_num = T2({1: [2, 4], 2: [0, 0, 16]}) * phi_over_t1 + mono(0, 1, [0, 0, 4]) * lstar
    lam1 = _rational(lam_num, _den_lambda(n, zmax, 1), 1, t2)
    slice1 = mono(0, 1, [2, 4]) * phi_over_t1 + mono(0, 1, [0, 0, 4]) * lstar
    lam2 = lam1 - slice1

    e_num = (
        (mono(-2, 2, [0, 0, 32]) + mono(-3, 1, [2])) * phi
        + mono(0, 1, [0, 0, 16]) * lam1
        - mono(-1, 1, [2 * c for c in phi_c])
        - mono(0, 1, [2 * c for c in phi3_c])
        - mono(0, 2, [0, 0] + [32 * c for c in phi_c])
    )
    E1 = _rational(e_num, _den_euler(n, zmax, 1), 1, t2)
    # m_2 = 1 slice: sum_{m_1 >= 1} 2 phi_{m_1+3} t_1^m_1 t_2
    m2_one = mono(-3, 1, [2]) * phi - mono(-1, 1, [2 * c for c in phi_c]) - mono(0, 1, [2 * c for c in phi3_c])
    E2 = E1 - m2_one

    bundle = Bundle(*(s.truncate((t1, t2)) for s in (lam1, lam2, E1, E2)))
    for name, s in zip(Bundle._fields, bundle):
        if s.negative_support():
            raise InvariantViolation(f"{name} kept negative exponents {s.negative_support()[:3]}")
    return bundle


def transfer_matrix(k: int, trunc: int, zmax: int) -> list[list[LaurentSeries]]:
    """Entries ``A_ij(t_(k-1), t_k, z)`` as series in ``k`` variables, exact to ``t_k^trunc``."""
    prev, cur = k - 2, k - 1

    def Tk(coeffs):
        return LaurentSeries.univariate(k, zmax, cur, coeffs)

    def inv_prev(s: LaurentSeries) -> LaurentSeries:
        e = [0] * k
        e[prev] = -1
        return s.shift(tuple(e))

    zero = LaurentSeries(k, zmax)
    A11 = _rational(Tk({1: [0, 0, 16]}), _den_lambda(k, zmax, cur), cur, trunc)
    A13 = _rational(Tk({1: [1, 2], 2: [0, 0, 8]}), _den_lambda(k, zmax, cur), cur, trunc)
    A21 = A11 - Tk({1: [0, 0, 16]})
    A23 = A13 - Tk({1: [1, 2]})

    den = _den_euler(k, zmax, cur)
    sixteen_z2_tk = Tk({1: [0, 0, 16]})
    A31 = _rational(sixteen_z2_tk * A11, den, cur, trunc)
    A32 = inv_prev(_rational(sixteen_z2_tk, den, cur, trunc))
    A33 = _rational(sixteen_z2_tk + sixteen_z2_tk * A13, den, cur, trunc)
    A34 = inv_prev(_rational(Tk({1: [1, 4], 2: [0, 0, 16]}), den, cur, trunc))
    A41 = A31
    A42 = A32 - inv_prev(sixteen_z2_tk)
    A43 = A33 - sixteen_z2_tk
    A44 = A34 - inv_prev(Tk({1: [1, 4]}))
    return [
        [A11, zero, A13, zero],
        [A21, zero, A23, zero],
        [A31, A32, A33, A34],
        [A41, A42, A43, A44],
    ]


def transfer_apply(bundle: Bundle, trunc: int, keep: int = 1) -> Bundle:
    """Propagate a ``(k-1)``-variable bundle to ``k`` variables.

    ``keep`` is the exponent of ``t_(k-1)`` that must still be exact after
    the step; the ``t_(k-1)^-1`` factors in the matrix consume one degree.
    """
    k = bundle.k + 1
    prev = k - 2
    have = min(s.prec[prev] for s in bundle)
    if have < keep + 1:
        raise InvalidArgument(
            f"t_{k - 1} is exact only to degree {have}; need {keep + 1} (one guard degree)"
        )
    zmax = bundle.E1.zmax
    A = transfer_matrix(k, trunc, zmax)
    old = [s.extend(k) for s in bundle]
    out = []
    for row in A:
        acc = LaurentSeries(k, zmax)
        for a, s in zip(row, old):
            if a.terms:
                acc = acc + a * s
        out.append(acc)
    return Bundle(*out)


def genfun_bundle(trunc: Truncation) -> Bundle:
    """The bundle in ``k = len(trunc.t)`` variables, exact up to ``trunc``."""
    t = trunc.t
    k = len(t)
    if k < 2:
        raise InvalidArgument("generating functions are defined for k >= 2")
    # every spine variable except the first and last loses one degree per later step
    first = t[1] + 1 if k > 2 else t[1]
    bundle = k2_bundle(t[0], first, trunc.zmax)
    for i in range(2, k):
        tk = t[i] + 1 if i < k - 1 else t[i]
        bundle = transfer_apply(bundle, tk, keep=t[i - 1])
    return bundle


def extract_E(params: ParamLike, trunc: Truncation | None = None) -> GenusPolynomial:
    """Coefficient of ``t_1^m_1 ... t_k^m_k`` in ``E^1``."""
    p = as_params(params).require_strict()
    if p.k < 2:
        raise InvalidArgument("coefficient extraction needs k >= 2")
    trunc = trunc or Truncation.for_params(p)
    if len(trunc.t) != p.k:
        raise InvalidArgument("truncation has the wrong number of variables")
    for i, (mi, ti) in enumerate(zip(p.m, trunc.t)):
        if ti < mi:
            raise InvalidArgument(f"truncation of t_{i + 1} is {ti}, below the requested exponent {mi}")
    if trunc.zmax < p.betti:
        raise InvalidArgument(f"z truncation {trunc.zmax} is below the maximum genus {p.betti}")
    E1 = genfun_bundle(trunc).E1
    poly = E1.coefficient(tuple(p.m))
    if any(c < 0 for c in poly.coeffs):
        raise InvariantViolation(f"negative coefficient extracted for {p}: {poly}")
    return poly


def series_table(series: LaurentSeries) -> list[dict]:
    """Rows ``{"t": [...], "z": d, "c": "decimal"}`` for every nonzero coefficient."""
    rows = []
    for e, c in series.items():
        for d, v in enumerate(c):
            if v:
                rows.append({"t": list(e), "z": d, "c": str(v)})
    return rows
