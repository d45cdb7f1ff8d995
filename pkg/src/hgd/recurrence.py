"""Recurrence engine for ``L_m``, ``phi_m``, ``lambda`` and the Euler-genus polynomial ``E``.

Results are memoized on the exact parameter tuple. Trailing 0/1 entries are
rewritten exactly as the initial conditions prescribe; no canonicalization
happens behind the caller's back.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from hgd.errors import InvalidArgument, InvariantViolation, Unsupported
from hgd.params import ParamLike, ParamTuple, as_params
from hgd.polynomial import GenusPolynomial

_ONE_2Z = GenusPolynomial([1, 2])
_ONE_4Z = GenusPolynomial([1, 4])
_Z2 = GenusPolynomial([0, 0, 1])

_lock = threading.RLock()


def _locked(fn):
    cached = lru_cache(maxsize=None)(fn)

    def wrapper(*args):
        with _lock:
            return cached(*args)

    wrapper.cache_clear = cached.cache_clear
    wrapper.__wrapped__ = fn
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_locked
def L_poly(m: int) -> GenusPolynomial:
    """Rank distribution ``L_m`` of symmetric tridiagonal ``m x m`` matrices."""
    if m < 1:
        raise InvalidArgument(f"L_m needs m >= 1, got {m}")
    if m == 1:
        return GenusPolynomial([1, 1])
    if m == 2:
        return GenusPolynomial([1, 3, 4])
    return _ONE_2Z * L_poly(m - 1) + 4 * _Z2 * L_poly(m - 2)


@_locked
def phi_poly(m: int) -> GenusPolynomial:
    """Rank distribution ``phi_m`` of the Ringel-ladder overlap family of dimension ``m``."""
    if m < 2:
        raise InvalidArgument(f"phi_m needs m >= 2, got {m}")
    if m == 2:
        return GenusPolynomial([1, 3, 4])
    if m == 3:
        return GenusPolynomial([1, 7, 28, 28])
    n = m - 1
    return _ONE_4Z * phi_poly(n) + 16 * _Z2 * phi_poly(n - 1) + (2**n) * _Z2 * L_poly(n - 1)


def lambda_poly(params: ParamLike) -> GenusPolynomial:
    """Rank distribution of the overlap family with the last spine co-tree edge deleted."""
    p = as_params(params)
    if p.k < 2:
        raise InvalidArgument("lambda is defined for k >= 2 only")
    return _lambda(p.m)


@_locked
def _lambda(m: tuple[int, ...]) -> GenusPolynomial:
    head, last = m[:-1], m[-1]
    if len(m) == 2:
        m1 = m[0]
        if last == 0:
            return phi_poly(m1 + 1)
        if last == 1:
            return _ONE_2Z * phi_poly(m1 + 1) + (2 ** (m1 + 1)) * _Z2 * L_poly(m1)
    else:
        if last == 0:
            return _halve(_euler(head))
        if last == 1:
            return _ONE_2Z * _halve(_euler(head)) + (2 ** (head[-1] + 3)) * _Z2 * _lambda(head)
    return _ONE_2Z * _lambda(head + (last - 1,)) + 4 * _Z2 * _lambda(head + (last - 2,))


def euler_genus_poly(params: ParamLike) -> GenusPolynomial:
    """Euler-genus polynomial ``E_{m_1..m_k}`` of ``H_{m_1..m_k}``."""
    return _euler(as_params(params).m)


@_locked
def _euler(m: tuple[int, ...]) -> GenusPolynomial:
    if len(m) == 1:
        return 2 * phi_poly(m[0] + 2)
    head, last = m[:-1], m[-1]
    if len(m) == 2:
        if last == 0:
            return 2 * phi_poly(m[0] + 2)
        if last == 1:
            return 2 * phi_poly(m[0] + 3)
    else:
        if last == 0:
            return _euler(head[:-1] + (head[-1] + 1,))
        if last == 1:
            return _euler(head[:-1] + (head[-1] + 2,))
    return (
        _ONE_4Z * _euler(head + (last - 1,))
        + 16 * _Z2 * _euler(head + (last - 2,))
        + (2 ** (last + 3)) * _Z2 * _lambda(head + (last - 1,))
    )


def _halve(p: GenusPolynomial) -> GenusPolynomial:
    try:
        return p.exact_halve()
    except ArithmeticError as exc:
        raise InvariantViolation(str(exc)) from exc


def canonicalize(params: ParamLike) -> ParamTuple:
    """Smallest representative of a parameter tuple under the graph isomorphisms.

    For ``k >= 3`` a trailing 0 is dropped and adds 1 to the new last entry,
    a trailing 1 is dropped and adds 2; this repeats while it applies. A
    two-entry ``(m, 0)`` becomes ``(m)``; ``(m, 1)`` is left alone, being
    strict already. The result is the lexicographically smaller of the tuple
    and its reversal.
    """
    m = list(as_params(params).m)
    while len(m) > 2 and m[-1] <= 1:
        last = m.pop()
        m[-1] += last + 1
    if len(m) == 2 and m[-1] == 0:
        m.pop()
    t = tuple(m)
    return ParamTuple(min(t, t[::-1]))


def closed_form_eps(params: ParamLike, j: int) -> int:
    """Number of embeddings into the surface of Euler genus ``j`` for ``j`` in 0, 1, 2."""
    p = as_params(params)
    if j not in (0, 1, 2):
        raise Unsupported(f"closed forms are known only for genus 0, 1, 2 (got {j})")
    if not p.is_strict:
        raise Unsupported(f"closed forms need all m_i >= 1, got {p}")
    m, k = p.m, p.k
    if j == 0:
        return 2
    if k == 1:
        if j == 1:
            return 2 * (4 * (m[0] + 2) - 5)
        raise Unsupported("no closed form for genus 2 with k = 1")
    if j == 1:
        return 8 * (sum(m) + k) - 10
    total = 8 * sum(-9 + 4 * i + (-3 + 4 * i) * mi + 2 * mi * mi for i, mi in enumerate(m, start=1))
    total += 2 * sum(2 ** (m[i] + 3) + 3 * 2 ** (m[i - 1] + 3) for i in range(1, k))
    total -= 2 ** (m[0] + 5)
    total += 32 * sum(m[jj] * m[i] + m[jj] for i in range(1, k) for jj in range(i))
    return total


def clear_caches() -> None:
    for fn in (L_poly, phi_poly, _lambda, _euler):
        fn.cache_clear()
