"""Dense univariate polynomials in the genus marker ``z`` with exact integer coefficients."""

from __future__ import annotations

import json
from typing import Iterable, Sequence


class GenusPolynomial:
    """Immutable polynomial ``sum(c[i] * z**i)``.

    Coefficients are Python ints (arbitrary precision). Trailing zeros are
    stripped on construction, so the zero polynomial has ``coeffs == ()`` and
    equality is plain structural equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> GenusPolynomial:
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls([0] * degree + [coeff])

    @classmethod
    def from_histogram(cls, counts: Sequence[int]) -> GenusPolynomial:
        return cls(int(c) for c in counts)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._coeffs) - 1

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self._coeffs[i] if i < len(self._coeffs) else 0

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GenusPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == GenusPolynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: GenusPolynomial | int) -> GenusPolynomial:
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: GenusPolynomial | int) -> GenusPolynomial:
        q = _coerce(other)
        n = max(len(self._coeffs), len(q._coeffs))
        return GenusPolynomial(self[i] - q[i] for i in range(n))

    def __mul__(self, other: GenusPolynomial | int) -> GenusPolynomial:
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> GenusPolynomial:
        return GenusPolynomial(-c for c in self._coeffs)

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * z + c
        return acc

    def exact_halve(self) -> GenusPolynomial:
        """Divide every coefficient by 2, refusing to round."""
        if any(c & 1 for c in self._coeffs):
            raise ArithmeticError(f"coefficients of {self!r} are not all even")
        return GenusPolynomial(c >> 1 for c in self._coeffs)

    def shift(self, k: int) -> GenusPolynomial:
        """Multiply by ``z**k``."""
        if not self._coeffs:
            return self
        return GenusPolynomial([0] * k + list(self._coeffs))

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    def to_strings(self) -> list[str]:
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, text: str) -> GenusPolynomial:
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("expected a JSON array of decimal strings")
        return cls(int(s) for s in data)

    def __repr__(self) -> str:
        return f"GenusPolynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return " + ".join(terms).replace("+ -", "- ")


def _coerce(p: GenusPolynomial | int) -> GenusPolynomial:
    if isinstance(p, GenusPolynomial):
        return p
    if isinstance(p, int):
        return GenusPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def add(p: GenusPolynomial, q: GenusPolynomial) -> GenusPolynomial:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return GenusPolynomial(out)


def mul(p: GenusPolynomial, q: GenusPolynomial) -> GenusPolynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return GenusPolynomial()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return GenusPolynomial(out)


def coefficient_sum(p: GenusPolynomial) -> int:
    """Value at ``z = 1``: total number of objects counted."""
    return sum(p.coeffs)


Z = GenusPolynomial([0, 1])
ONE = GenusPolynomial([1])
ZERO = GenusPolynomial()
