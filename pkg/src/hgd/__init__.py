"""Euler-genus distributions of cubic caterpillar-Halin graphs ``H_{m_1,...,m_k}``.

Four engines compute the same polynomial: the recurrences (:mod:`hgd.recurrence`),
overlap-matrix rank enumeration over GF(2) (:mod:`hgd.overlap`), rotation-system
enumeration with face tracing (:mod:`hgd.embedding`) and generating-function
coefficient extraction (:mod:`hgd.genfun`).
"""

from hgd.engines import ENGINE_NAMES, compute
from hgd.params import ParamTuple
from hgd.polynomial import GenusPolynomial
from hgd.recurrence import canonicalize, closed_form_eps, euler_genus_poly

__all__ = [
    "ENGINE_NAMES",
    "GenusPolynomial",
    "ParamTuple",
    "canonicalize",
    "closed_form_eps",
    "compute",
    "euler_genus_poly",
]
__version__ = "0.1.0"
