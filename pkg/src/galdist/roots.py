"""Type-A root data for GL(n): compositions, roots, Weyl permutations and
modulus characters written as integer exponent vectors on the diagonal torus.

Roots are ordered pairs ``(i, j)`` of 1-based indices standing for
``e_i - e_j``.
"""
from __future__ import annotations

from bisect import bisect_left
from itertools import accumulate, product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import OutOfRange

ExponentVector = tuple[int, ...]


class Composition(tuple):
    """Ordered tuple of positive parts ``(n_1, ..., n_t)``."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("empty composition")
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def t(self) -> int:
        return len(self)

    def offsets(self) -> tuple[int, ...]:
        """Partial sums ``(0, n_1, n_1 + n_2, ..., n)``."""
        return (0, *accumulate(self))

    def blocks(self) -> list[range]:
        off = self.offsets()
        return [range(off[i] + 1, off[i + 1] + 1) for i in range(self.t)]

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> Composition:
        """``"2,1"`` -> (2, 1). Empty parts are an error."""
        return cls(int(p) for p in text.replace(" ", "").split(","))


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, ordered lexicographically by parts."""
    if n < 1:
        return

    def rec(rest: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first, *tail)

    for parts in rec(n):
        yield Composition(parts)


class Root(NamedTuple):
    i: int
    j: int

    @property
    def positive(self) -> bool:
        return self.i < self.j

    def __neg__(self) -> Root:
        return Root(self.j, self.i)


def all_roots(n: int) -> list[Root]:
    return [Root(i, j) for i, j in product(range(1, n + 1), repeat=2) if i != j]


def positive_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def block_of(comp: Composition, k: int) -> int:
    """1-based index of the part of ``comp`` containing coordinate k."""
    if not 1 <= k <= comp.n:
        raise OutOfRange(f"coordinate {k} outside 1..{comp.n}")
    return bisect_left(comp.offsets(), k)


def block_labels(comp: Composition) -> tuple[int, ...]:
    return tuple(i + 1 for i, p in enumerate(comp) for _ in range(p))


def levi_roots(comp: Composition) -> set[Root]:
    lab = block_labels(comp)
    return {r for r in all_roots(comp.n) if lab[r.i - 1] == lab[r.j - 1]}


def unipotent_roots(comp: Composition) -> list[Root]:
    """Phi^+ minus Phi_M^+: the roots of Lie(N)."""
    lab = block_labels(comp)
    return [r for r in positive_roots(comp.n) if lab[r.i - 1] != lab[r.j - 1]]


def root_character(roots: Iterable[Root], n: int) -> ExponentVector:
    """Exponent vector of prod |alpha(t)| over the given roots."""
    e = [0] * n
    for r in roots:
        e[r.i - 1] += 1
        e[r.j - 1] -= 1
    return tuple(e)


def modulus_exponents(comp: Composition) -> ExponentVector:
    """delta_P on the diagonal torus, P the standard parabolic of ``comp``."""
    return root_character(unipotent_roots(comp), comp.n)


def add_exponents(*vectors: Sequence[int]) -> ExponentVector:
    return tuple(sum(col) for col in zip(*vectors, strict=True))


def refines(fine: Composition, coarse: Composition) -> bool:
    """True iff every partial sum of ``coarse`` is a partial sum of ``fine``."""
    return fine.n == coarse.n and set(coarse.offsets()) <= set(fine.offsets())


def levi_modulus_exponents(fine: Composition, coarse: Composition) -> ExponentVector:
    """delta of the parabolic of M_coarse with Levi M_fine: roots of Phi_M^+ not in Phi_fine^+."""
    if not refines(fine, coarse):
        raise ValueError(f"{fine} does not refine {coarse}")
    lab_c = block_labels(coarse)
    lab_f = block_labels(fine)
    roots = [
        r for r in positive_roots(fine.n)
        if lab_c[r.i - 1] == lab_c[r.j - 1] and lab_f[r.i - 1] != lab_f[r.j - 1]
    ]
    return root_character(roots, fine.n)


def refinements(comp: Composition) -> Iterator[Composition]:
    for pieces in product(*(list(compositions(p)) for p in comp)):
        yield Composition(x for piece in pieces for x in piece)


class WeylPerm(tuple):
    """A permutation of {1..n} stored as its tuple of images."""

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> WeylPerm:
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, k: int) -> int:
        return self[k - 1]

    def act(self, root: Root) -> Root:
        return Root(self[root.i - 1], self[root.j - 1])

    def compose(self, other: WeylPerm) -> WeylPerm:
        """``self ∘ other``."""
        return WeylPerm(self[other[k] - 1] for k in range(len(other)))

    def inverse(self) -> WeylPerm:
        inv = [0] * len(self)
        for k, img in enumerate(self, start=1):
            inv[img - 1] = k
        return WeylPerm(inv)

    def is_involution(self) -> bool:
        return all(self[img - 1] == k for k, img in enumerate(self, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            k = self[start - 1]
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self[k - 1]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"WeylPerm({tuple(self)})"


def weyl_image_positive(w: WeylPerm, roots: Iterable[Root]) -> bool:
    return all(w.act(r).positive for r in roots)
