"""One entry point per engine, all returning the Euler-genus polynomial ``E``."""

from __future__ import annotations

from typing import Callable

from hgd import embedding, genfun, overlap, recurrence
from hgd.errors import InvalidArgument, Unsupported
from hgd.params import ParamLike, ParamTuple, as_params
from hgd.polynomial import GenusPolynomial

ENGINE_NAMES = ("recurrence", "matrix", "embedding", "genfun")


def _strict(p: ParamTuple) -> ParamTuple:
    # Exhaustive engines need a strict tuple; an isomorphic one is as good.
    return p if p.is_strict else recurrence.canonicalize(p)


def _recurrence(p: ParamTuple, budget: int | None, workers: int, trunc) -> GenusPolynomial:
    return recurrence.euler_genus_poly(p)


def _matrix(p: ParamTuple, budget: int | None, workers: int, trunc) -> GenusPolynomial:
    b = overlap.DEFAULT_BUDGET_BITS if budget is None else budget
    return 2 * overlap.enumerate_distribution("delta", _strict(p), budget=b, workers=workers)


def _embedding(p: ParamTuple, budget: int | None, workers: int, trunc) -> GenusPolynomial:
    b = embedding.DEFAULT_BUDGET_BITS if budget is None else budget
    return embedding.embedding_distribution(_strict(p), budget=b, workers=workers)


def _genfun(p: ParamTuple, budget: int | None, workers: int, trunc) -> GenusPolynomial:
    q = _strict(p)
    if q.k == 1:
        if q.m[0] < 2:
            raise Unsupported(f"no strict tuple with k >= 2 is isomorphic to H_{q}")
        q = ParamTuple((q.m[0] - 1, 1))
    t = None
    if trunc is not None:
        if len(trunc) != q.k:
            raise InvalidArgument(f"--trunc gives {len(trunc)} bounds for a {q.k}-entry tuple {q}")
        t = genfun.Truncation(tuple(trunc), q.k + q.total)
    return genfun.extract_E(q, t)


ENGINES: dict[str, Callable[..., GenusPolynomial]] = {
    "recurrence": _recurrence,
    "matrix": _matrix,
    "embedding": _embedding,
    "genfun": _genfun,
}


def compute(
    params: ParamLike,
    engine: str = "recurrence",
    budget: int | None = None,
    workers: int = 1,
    trunc=None,
) -> GenusPolynomial:
    """Euler-genus polynomial of ``H_params`` by the named engine."""
    if engine not in ENGINES:
        raise InvalidArgument(f"unknown engine {engine!r}; choose from {', '.join(ENGINE_NAMES)}")
    return ENGINES[engine](as_params(params), budget, workers, trunc)
