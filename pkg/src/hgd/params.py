"""Parameter tuples ``(m_1, ..., m_k)`` naming the graphs ``H_{m_1,...,m_k}``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from hgd.errors import InvalidArgument


@dataclass(frozen=True)
class ParamTuple:
    """The run-length parameters of a cubic caterpillar-Halin graph.

    Extended form allows ``m_k = 0``; strict form requires every entry
    to be at least 1. Entries before the last must always be positive.
    """

    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        object.__setattr__(self, "m", m)
        if not m:
            raise InvalidArgument("parameter tuple must be nonempty")
        if any(x < 1 for x in m[:-1]):
            raise InvalidArgument(f"entries m_1..m_(k-1) must be >= 1, got {m}")
        if m[-1] < 0:
            raise InvalidArgument(f"last entry must be >= 0, got {m}")
        if len(m) == 1 and m[0] < 1:
            raise InvalidArgument(f"single-entry tuple needs m_1 >= 1, got {m}")

    @classmethod
    def parse(cls, text: str) -> ParamTuple:
        try:
            values = [int(s) for s in text.replace(" ", "").split(",") if s != ""]
        except ValueError as exc:
            raise InvalidArgument(f"cannot parse parameter tuple {text!r}") from exc
        return cls(tuple(values))

    @property
    def k(self) -> int:
        return len(self.m)

    @property
    def total(self) -> int:
        return sum(self.m)

    @property
    def is_strict(self) -> bool:
        return all(x >= 1 for x in self.m)

    @property
    def spine_length(self) -> int:
        """Number of interior spine vertices ``v_1..v_l``."""
        if self.k == 1:
            return self.m[0]
        return self.total + self.k - 2

    @property
    def betti(self) -> int:
        """Cycle rank ``|E| - |V| + 1`` of the graph (strict tuples)."""
        if self.k == 1:
            return self.m[0] + 2
        return self.total + self.k

    @property
    def runs(self) -> tuple[int, ...]:
        """Lengths of the maximal up/down pendant runs along the spine."""
        if self.k == 1:
            return self.m
        return (self.m[0],) + tuple(x + 1 for x in self.m[1:-1]) + (self.m[-1],)

    def require_strict(self) -> ParamTuple:
        if not self.is_strict:
            raise InvalidArgument(f"strict tuple (all m_i >= 1) required, got {self}")
        return self

    def reversed(self) -> ParamTuple:
        return ParamTuple(self.m[::-1])

    def __iter__(self):
        return iter(self.m)

    def __len__(self) -> int:
        return len(self.m)

    def __getitem__(self, i):
        return self.m[i]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.m)


ParamLike = Union[ParamTuple, Iterable[int], str]


def as_params(p: ParamLike) -> ParamTuple:
    if isinstance(p, ParamTuple):
        return p
    if isinstance(p, str):
        return ParamTuple.parse(p)
    return ParamTuple(tuple(p))
