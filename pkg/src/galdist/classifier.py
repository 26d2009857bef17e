"""Decision procedures for distinction of generic representations.

Two independent criteria are implemented and compared:

* the *pairing form*: the segments split into sigma-dual pairs
  ``(D, D^{dual sigma})`` plus distinguished singletons;
* the *Jacquet witness*: some ``s`` in I(n) for which every segment splits
  along row i of ``s``, diagonal pieces are distinguished and off-diagonal
  pieces match under ``D -> D^{dual sigma}``.

Only the combinatorial biconditional is modelled. Factor series and
invariant linear forms are not.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cosets import CosetIndex, iter_I
from .errors import InternalCheckFailed, NotAutodualFamily, PreconditionViolated
from .roots import Composition
from .segments import (
    LabelUniverse,
    Segment,
    dual_sigma,
    is_distinguished_segment,
    is_galois_autodual,
    is_galois_autodual_family,
    jacquet_split,
    linked,
)


@dataclass(frozen=True)
class GenericFamily:
    segments: tuple[Segment, ...]
    universe: LabelUniverse

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise PreconditionViolated("a family needs at least one segment")
        for seg in segs:
            if not 0 <= seg.base < len(self.universe.degree):
                raise PreconditionViolated(f"segment {seg} uses an unknown label")
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                if linked(segs[i], segs[j]):
                    raise PreconditionViolated(f"segments {i} and {j} are linked: {segs[i]}, {segs[j]}")

    def __len__(self) -> int:
        return len(self.segments)

    def __getitem__(self, i: int) -> Segment:
        return self.segments[i]

    @property
    def sizes(self) -> Composition:
        return Composition(seg.size(self.universe) for seg in self.segments)

    def is_closed(self) -> bool:
        return is_galois_autodual_family(self.segments, self.universe)

    def reordered(self, order: Sequence[int]) -> GenericFamily:
        return GenericFamily(tuple(self.segments[k] for k in order), self.universe)

    def with_universe(self, universe: LabelUniverse) -> GenericFamily:
        return GenericFamily(self.segments, universe)


@dataclass(frozen=True)
class PairingCertificate:
    """``order`` is 0-based; positions 2k, 2k+1 (k < r) are dual pairs,
    positions >= 2r are distinguished singletons."""

    order: tuple[int, ...]
    r: int


@dataclass(frozen=True)
class WitnessCertificate:
    s: CosetIndex
    splits: tuple[tuple[Segment | None, ...], ...]


# --------------------------------------------------------------------------
# ordering


def normalize_order(family: GenericFamily) -> GenericFamily:
    """Ascending size; per size, dual pairs alternate C, C', C, ... then autodual ones."""
    if not family.is_closed():
        raise NotAutodualFamily("family is not stable under D -> D^{dual sigma}")
    U = family.universe
    counts = Counter(family.segments)
    by_size: dict[int, list[Segment]] = {}
    for seg in counts:
        by_size.setdefault(seg.size(U), []).append(seg)
    out: list[Segment] = []
    for size in sorted(by_size):
        classes = by_size[size]
        reps = sorted({min(c, dual_sigma(c, U)) for c in classes if not is_galois_autodual(c, U)})
        for rep in reps:
            partner = dual_sigma(rep, U)
            for _ in range(counts[rep]):
                out.extend((rep, partner))
        for c in sorted(c for c in classes if is_galois_autodual(c, U)):
            out.extend([c] * counts[c])
    return GenericFamily(tuple(out), U)


# --------------------------------------------------------------------------
# pairing form


def _match_brute_force(family: GenericFamily) -> PairingCertificate | None:
    U = family.universe
    segs = family.segments

    def rec(remaining: tuple[int, ...]) -> tuple[list, list] | None:
        if not remaining:
            return [], []
        first, rest = remaining[0], remaining[1:]
        target = dual_sigma(segs[first], U)
        for pos, j in enumerate(rest):
            if segs[j] == target:
                sub = rec(rest[:pos] + rest[pos + 1:])
                if sub is not None:
                    return [(first, j)] + sub[0], sub[1]
        if is_distinguished_segment(segs[first], U):
            sub = rec(rest)
            if sub is not None:
                return sub[0], [first] + sub[1]
        return None

    found = rec(tuple(range(len(segs))))
    if found is None:
        return None
    pairs, singles = found
    order = tuple(k for p in pairs for k in p) + tuple(singles)
    return PairingCertificate(order, len(pairs))


def pairing_multiset_criterion(family: GenericFamily) -> bool:
    U = family.universe
    counts = Counter(family.segments)
    for seg, c in counts.items():
        if is_galois_autodual(seg, U):
            if c % 2 and not is_distinguished_segment(seg, U):
                return False
        elif counts[dual_sigma(seg, U)] != c:
            return False
    return True


def check_pairing_certificate(family: GenericFamily, cert: PairingCertificate) -> bool:
    U = family.universe
    t = len(family)
    if sorted(cert.order) != list(range(t)) or not 0 <= 2 * cert.r <= t:
        return False
    segs = [family[k] for k in cert.order]
    for k in range(cert.r):
        if segs[2 * k + 1] != dual_sigma(segs[2 * k], U):
            return False
    return all(is_distinguished_segment(seg, U) for seg in segs[2 * cert.r:])


def find_pairing_form(family: GenericFamily) -> PairingCertificate | None:
    cert = _match_brute_force(family)
    if (cert is not None) != pairing_multiset_criterion(family):
        raise InternalCheckFailed("matcher and multiset criterion disagree")
    if cert is not None and not check_pairing_certificate(family, cert):
        raise InternalCheckFailed(f"matcher produced an invalid certificate {cert}")
    return cert


# --------------------------------------------------------------------------
# Jacquet witnesses


def check_witness(family: GenericFamily, s: CosetIndex) -> WitnessCertificate | None:
    if tuple(s.base) != tuple(family.sizes):
        raise PreconditionViolated(f"s is over {tuple(s.base)}, family sizes are {tuple(family.sizes)}")
    U = family.universe
    t = len(family)
    splits: list[tuple[Segment | None, ...]] = []
    for i in range(t):
        cols = [j for j in range(t) if s.entries[i][j]]
        pieces = jacquet_split(family[i], [s.entries[i][j] for j in cols], U)
        if pieces is None:
            return None
        row: list[Segment | None] = [None] * t
        for j, piece in zip(cols, pieces):
            row[j] = piece
        splits.append(tuple(row))
    for i in range(t):
        if splits[i][i] is not None and not is_distinguished_segment(splits[i][i], U):
            return None
        for j in range(i + 1, t):
            if splits[i][j] is not None and splits[j][i] != dual_sigma(splits[i][j], U):
                return None
    return WitnessCertificate(s, tuple(splits))


def exists_witness_naive(family: GenericFamily) -> tuple[CosetIndex, WitnessCertificate] | None:
    """Reference search: every s in I(n), in enumeration order."""
    for s in iter_I(family.sizes):
        cert = check_witness(family, s)
        if cert is not None:
            return s, cert
    return None


def _witness_search(family: GenericFamily) -> Iterator[CosetIndex]:
    """Same order as :func:`iter_I`, pruning subtrees that cannot contain a witness.

    Rows are closed one at a time; once row i is known the segment can be
    split and every condition touching rows <= i is decidable.
    """
    U = family.universe
    segs = family.segments
    t = len(segs)
    sizes = family.sizes
    deg = [U.degree[seg.base] for seg in segs]
    cells = [(i, j) for i in range(t) for j in range(i, t)]
    grid = [[0] * t for _ in range(t)]
    remaining = list(sizes)
    pieces: list[list[Segment | None]] = [[None] * t for _ in range(t)]

    def close_row(i: int) -> bool:
        cols = [j for j in range(t) if grid[i][j]]
        split = jacquet_split(segs[i], [grid[i][j] for j in cols], U)
        if split is None:
            return False
        row: list[Segment | None] = [None] * t
        for j, piece in zip(cols, split):
            row[j] = piece
        pieces[i] = row
        if row[i] is not None and not is_distinguished_segment(row[i], U):
            return False
        for j in range(i):
            if row[j] is not None and row[j] != dual_sigma(pieces[j][i], U):
                return False
        return True

    def rec(k: int) -> Iterator[CosetIndex]:
        if k == len(cells):
            yield CosetIndex(sizes, tuple(tuple(r) for r in grid))
            return
        i, j = cells[k]
        top = remaining[i] if i == j else min(remaining[i], remaining[j])
        last_in_row = j == t - 1
        for v in range(top + 1):
            if last_in_row and remaining[i] != v:
                continue
            if v and (v % deg[i] or v % deg[j]):
                continue
            grid[i][j] = grid[j][i] = v
            remaining[i] -= v
            if i != j:
                remaining[j] -= v
            if not last_in_row or close_row(i):
                yield from rec(k + 1)
            remaining[i] += v
            if i != j:
                remaining[j] += v
        grid[i][j] = grid[j][i] = 0

    yield from rec(0)


def exists_witness(family: GenericFamily) -> tuple[CosetIndex, WitnessCertificate] | None:
    """First s in enumeration order admitting a witness."""
    for s in _witness_search(family):
        cert = check_witness(family, s)
        if cert is None:
            raise InternalCheckFailed(f"pruned search accepted {s} but check_witness rejects it")
        return s, cert
    return None


def witness_from_pairing(family: GenericFamily, cert: PairingCertificate) -> CosetIndex:
    """Block s: diagonal entries for singletons, antidiagonal entries for pairs."""
    t = len(family)
    sizes = family.sizes
    grid = [[0] * t for _ in range(t)]
    for k in range(cert.r):
        a, b = cert.order[2 * k], cert.order[2 * k + 1]
        grid[a][b] = grid[b][a] = sizes[a]
    for a in cert.order[2 * cert.r:]:
        grid[a][a] = sizes[a]
    return CosetIndex(sizes, tuple(tuple(r) for r in grid))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    pairing: PairingCertificate | None
    witness: tuple[CosetIndex, WitnessCertificate] | None

    @property
    def agree(self) -> bool:
        return (self.pairing is not None) == (self.witness is not None)

    @property
    def distinguished(self) -> bool:
        return self.pairing is not None


def classify(family: GenericFamily, normalize: bool = True) -> Verdict:
    if not family.is_closed():
        raise PreconditionViolated("family is not stable under D -> D^{dual sigma}")
    if normalize:
        family = normalize_order(family)
    return Verdict(find_pairing_form(family), exists_witness(family))


def theorem_equivalence(family: GenericFamily) -> bool:
    return classify(family).agree
