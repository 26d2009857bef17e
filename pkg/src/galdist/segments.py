"""Segment calculus over an abstract universe of supercuspidal labels.

A segment ``(base, twist, length)`` stands for
``[rho|.|^(c+l-1), ..., rho|.|^c]`` with ``rho = base`` and ``c = twist``.
Labels are integer ids into a :class:`LabelUniverse`, which carries the
involutions sigma and dual and the externally supplied distinction table.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import NotAdjacent, SizeMismatch
from .exact import as_rational


@dataclass(frozen=True)
class DistFlags:
    distinguished: bool = False
    eta: bool = False


@dataclass(frozen=True)
class LabelUniverse:
    degree: tuple[int, ...]
    sigma: tuple[int, ...]
    dual: tuple[int, ...]
    dist_table: Mapping[tuple[int, int], DistFlags] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(self.degree))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "dual", tuple(self.dual))
        object.__setattr__(self, "dist_table", dict(self.dist_table))
        n = len(self.degree)
        if len(self.sigma) != n or len(self.dual) != n:
            raise ValueError("degree, sigma and dual must have one entry per label")
        for name, m in (("sigma", self.sigma), ("dual", self.dual)):
            if sorted(m) != list(range(n)):
                raise ValueError(f"{name} is not a permutation of the label ids")
            if any(m[m[b]] != b for b in range(n)):
                raise ValueError(f"{name} is not an involution")
        if any(self.sigma[self.dual[b]] != self.dual[self.sigma[b]] for b in range(n)):
            raise ValueError("sigma and dual do not commute")
        if any(r < 1 for r in self.degree):
            raise ValueError("degrees must be positive")
        if any(self.degree[self.sigma[b]] != self.degree[b] or self.degree[self.dual[b]] != self.degree[b]
               for b in range(n)):
            raise ValueError("sigma and dual must preserve degree")
        for (b, length), flags in self.dist_table.items():
            if not 0 <= b < n or length < 1:
                raise ValueError(f"bad dist_table key {(b, length)}")
            if flags.distinguished and flags.eta:
                raise ValueError(f"{(b, length)} marked both distinguished and eta-distinguished")
            if (flags.distinguished or flags.eta) and not self.is_autodual_label(b):
                raise ValueError(f"{(b, length)} flagged but its centered segment is not Galois-autodual")

    @property
    def labels(self) -> range:
        return range(len(self.degree))

    def dual_sigma(self, b: int) -> int:
        return self.dual[self.sigma[b]]

    def is_autodual_label(self, b: int) -> bool:
        return self.dual_sigma(b) == b

    def flags(self, b: int, length: int) -> DistFlags:
        return self.dist_table.get((b, length), DistFlags())

    def with_dist_table(self, table: Mapping[tuple[int, int], DistFlags]) -> LabelUniverse:
        return replace(self, dist_table=table)


@dataclass(frozen=True, order=True)
class Segment:
    base: int
    twist: Fraction
    length: int

    def __post_init__(self):
        object.__setattr__(self, "twist", as_rational(self.twist))
        if self.length < 1:
            raise ValueError("segment length must be positive")

    @property
    def top(self) -> Fraction:
        return self.twist + self.length - 1

    def size(self, universe: LabelUniverse) -> int:
        return self.length * universe.degree[self.base]

    def key(self) -> tuple[int, Fraction, int]:
        return (self.base, self.twist, self.length)

    def __str__(self) -> str:
        return f"[{self.base}; {self.twist}..{self.top}]"


def sigma(seg: Segment, universe: LabelUniverse) -> Segment:
    return Segment(universe.sigma[seg.base], seg.twist, seg.length)


def dual(seg: Segment, universe: LabelUniverse) -> Segment:
    return Segment(universe.dual[seg.base], -seg.twist - seg.length + 1, seg.length)


def dual_sigma(seg: Segment, universe: LabelUniverse) -> Segment:
    return dual(sigma(seg, universe), universe)


def is_galois_autodual(seg: Segment, universe: LabelUniverse) -> bool:
    return universe.is_autodual_label(seg.base) and 2 * seg.twist == 1 - seg.length


def _same_line(a: Segment, b: Segment) -> bool:
    return a.base == b.base and (a.twist - b.twist).denominator == 1


def linked(a: Segment, b: Segment) -> bool:
    if not _same_line(a, b):
        return False
    contiguous = max(a.twist, b.twist) <= min(a.top, b.top) + 1
    a_in_b = b.twist <= a.twist and a.top <= b.top
    b_in_a = a.twist <= b.twist and b.top <= a.top
    return contiguous and not a_in_b and not b_in_a


def precedes(a: Segment, b: Segment) -> bool:
    """a sits immediately above b: same base and a.twist = b.twist + b.length."""
    return a.base == b.base and a.twist == b.twist + b.length


def concat(a: Segment, b: Segment) -> Segment:
    if not precedes(a, b):
        raise NotAdjacent(f"{a} does not immediately precede {b}")
    return Segment(b.base, b.twist, a.length + b.length)


def concat_all(pieces: Sequence[Segment]) -> Segment:
    return reduce(concat, pieces)


def jacquet_split(seg: Segment, parts: Sequence[int], universe: LabelUniverse) -> list[Segment] | None:
    """Pieces of ``seg`` of matrix sizes ``parts``, highest exponents first,
    or None when the Jacquet module vanishes."""
    r = universe.degree[seg.base]
    if sum(parts) != seg.length * r:
        raise SizeMismatch(f"parts {tuple(parts)} do not sum to {seg.length * r}")
    if any(p < 1 for p in parts):
        raise SizeMismatch("parts must be positive")
    if any(p % r for p in parts):
        return None
    pieces = []
    upper = seg.top + 1
    for p in parts:
        length = p // r
        upper -= length
        pieces.append(Segment(seg.base, upper, length))
    return pieces


def is_generic(family: Sequence[Segment]) -> bool:
    return not any(
        linked(family[i], family[j]) for i in range(len(family)) for j in range(i + 1, len(family))
    )


def is_galois_autodual_family(family: Iterable[Segment], universe: LabelUniverse) -> bool:
    counts = Counter(family)
    return all(counts[dual_sigma(seg, universe)] == c for seg, c in counts.items())


def is_distinguished_segment(seg: Segment, universe: LabelUniverse) -> bool:
    return is_galois_autodual(seg, universe) and universe.flags(seg.base, seg.length).distinguished
