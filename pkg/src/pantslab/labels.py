"""Cell labels.

Every cell of every complex carries one of these immutable, hashable
labels.  ``key()`` gives a tuple used as the global total order for
deterministic tie-breaking; ``str()`` gives the canonical rendering used by
the exporters.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .combinatorics import CyclicPartition, format_subset, popcount


class _CachedHash:
    """Mixin for composite labels: hash and key are computed once per instance."""

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
        return h

    def key(self) -> tuple:
        k = self.__dict__.get("_key")
        if k is None:
            k = self._key()
            object.__setattr__(self, "_key", k)
        return k


@dataclass(frozen=True)
class PlainFace:
    """Face of a simplex spanned by the vertex set `J`."""

    J: int

    def key(self) -> tuple:
        return (0, popcount(self.J), self.J)

    def __str__(self) -> str:
        return "F" + format_subset(self.J)


@dataclass(frozen=True)
class SimplexFace:
    """Cell of a dualizing subdivision: all faces between `I` and `J`."""

    I: int
    J: int

    def key(self) -> tuple:
        return (1, self.I, self.J)

    def __str__(self) -> str:
        return f"D[{format_subset(self.I)},{format_subset(self.J)}]"


@dataclass(frozen=True)
class SFace:
    """Face of the tropical skeleton: two or more coordinates in `I` tie for the max, support `J`."""

    I: int
    J: int

    def key(self) -> tuple:
        return (2, self.I, self.J)

    def __str__(self) -> str:
        return f"S[{format_subset(self.I)},{format_subset(self.J)}]"


@dataclass(frozen=True, eq=True)
class SigmaFace(_CachedHash):
    sigma: CyclicPartition

    __hash__ = _CachedHash.__hash__

    def _key(self) -> tuple:
        return (3, self.sigma.key())

    def __str__(self) -> str:
        return "Sigma" + self.sigma.format()


@dataclass(frozen=True, eq=True)
class Pair(_CachedHash):
    """Stratum cell labeled by a cyclic partition and an edge set."""

    sigma: CyclicPartition
    J: int

    __hash__ = _CachedHash.__hash__

    def _key(self) -> tuple:
        return (4, self.sigma.key(), self.J)

    def __str__(self) -> str:
        return f"P({self.sigma.format()},{format_subset(self.J)})"


@dataclass(frozen=True, eq=True)
class GhostCell(_CachedHash):
    """Cell of the ghost complex.

    `sigma_hat` is a cyclic partition of ``{0..n} + {g}`` (g = n+1).  When
    the ghost is a part on its own, `position` records the vertex of the
    base partition at which it was inserted; otherwise it is None.
    """

    sigma_hat: CyclicPartition
    J: int
    position: Optional[int] = None

    __hash__ = _CachedHash.__hash__

    def _key(self) -> tuple:
        return (5, self.sigma_hat.key(), self.J, -1 if self.position is None else self.position)

    def __str__(self) -> str:
        g = self.sigma_hat.size - 1
        pos = "" if self.position is None else f",@{self.position}"
        return f"G({self.sigma_hat.format(ghost=g)},{format_subset(self.J, ghost=g)}{pos})"


@dataclass(frozen=True)
class NonInterlacing:
    """Cell of the non-interlacing complex: marked edges `I`, marked vertices `V`.

    `V` is a bitmask over the separating vertices of the base partition
    (bit ``s`` = vertex after part ``s``).
    """

    I: int
    V: int

    def key(self) -> tuple:
        return (6, self.I, self.V)

    def __str__(self) -> str:
        return f"L({format_subset(self.I)},V{format_subset(self.V)})"


@dataclass(frozen=True, eq=True)
class Interval(_CachedHash):
    """Cell of the dualizing subdivision of an arbitrary face poset."""

    low: "Label"
    high: "Label"

    __hash__ = _CachedHash.__hash__

    def _key(self) -> tuple:
        return (7, self.low.key(), self.high.key())

    def __str__(self) -> str:
        return f"[{self.low},{self.high}]"


@dataclass(frozen=True, eq=True)
class Product(_CachedHash):
    left: "Label"
    right: "Label"

    __hash__ = _CachedHash.__hash__

    def _key(self) -> tuple:
        return (8, self.left.key(), self.right.key())

    def __str__(self) -> str:
        return f"({self.left})x({self.right})"


@dataclass(frozen=True)
class Opaque:
    id: str

    def key(self) -> tuple:
        return (9, self.id)

    def __str__(self) -> str:
        return self.id


Label = Union[PlainFace, SimplexFace, SFace, SigmaFace, Pair, GhostCell,
              NonInterlacing, Interval, Product, Opaque]


def label_key(label) -> tuple:
    return label.key()
