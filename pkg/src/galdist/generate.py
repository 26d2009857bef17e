"""Seeded random families for the randomized equivalence experiments."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from .classifier import GenericFamily
from .errors import GenerationFailed, PreconditionViolated
from .segments import DistFlags, LabelUniverse, Segment, dual_sigma, is_generic

MAX_RETRIES = 200


@dataclass(frozen=True)
class FamilyParams:
    max_t: int = 6
    max_len: int = 4
    universe_size: int = 6
    max_degree: int = 2
    p_distinguished: float = 0.5
    p_eta: float = 0.25

    def __post_init__(self):
        if min(self.max_t, self.max_len, self.universe_size, self.max_degree) < 1:
            raise ValueError(f"family parameters must be positive: {self}")
        if not 0 <= self.p_distinguished + self.p_eta <= 1:
            raise ValueError("p_distinguished + p_eta must lie in [0, 1]")


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from any tuple of printable parts."""
    digest = hashlib.sha256(":".join(map(str, parts)).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_universe(rng: random.Random, size: int, max_degree: int) -> LabelUniverse:
    """Labels grouped into orbits of the Klein group generated by sigma and dual."""
    ids = list(range(size))
    rng.shuffle(ids)
    sigma = list(range(size))
    dual = list(range(size))
    degree = [1] * size
    pos = 0
    while pos < size:
        left = size - pos
        kinds = ["fixed"] + (["sigma", "dual", "both"] if left >= 2 else []) + (["four"] if left >= 4 else [])
        kind = rng.choice(kinds)
        r = rng.randint(1, max_degree)
        if kind == "fixed":
            orbit = ids[pos:pos + 1]
        elif kind == "four":
            a, b, c, d = orbit = ids[pos:pos + 4]
            sigma[a], sigma[b], sigma[c], sigma[d] = b, a, d, c
            dual[a], dual[c], dual[b], dual[d] = c, a, d, b
        else:
            a, b = orbit = ids[pos:pos + 2]
            if kind in ("sigma", "both"):
                sigma[a], sigma[b] = b, a
            if kind in ("dual", "both"):
                dual[a], dual[b] = b, a
        for x in orbit:
            degree[x] = r
        pos += len(orbit)
    return LabelUniverse(degree, sigma, dual)


def random_dist_table(rng: random.Random, universe: LabelUniverse, max_len: int,
                      p_distinguished: float = 0.5, p_eta: float = 0.25) -> dict[tuple[int, int], DistFlags]:
    table = {}
    for b in universe.labels:
        if not universe.is_autodual_label(b):
            continue
        for length in range(1, max_len + 1):
            x = rng.random()
            if x < p_distinguished:
                table[(b, length)] = DistFlags(distinguished=True)
            elif x < p_distinguished + p_eta:
                table[(b, length)] = DistFlags(eta=True)
    return table


def _centered(base: int, length: int, shift: Fraction) -> Segment:
    return Segment(base, Fraction(1 - length, 2) + shift, length)


def _draw_segments(rng: random.Random, universe: LabelUniverse, params: FamilyParams) -> list[Segment]:
    t = rng.randint(1, params.max_t)
    capable = [b for b in universe.labels if universe.is_autodual_label(b)]
    segs: list[Segment] = []
    while len(segs) < t:
        room = t - len(segs)
        length = rng.randint(1, params.max_len)
        if capable and (room == 1 or rng.random() < 0.5):
            seg = _centered(rng.choice(capable), length, Fraction(0))
            copies = 2 if room >= 2 and rng.random() < 0.25 else 1
            segs.extend([seg] * copies)
        elif room >= 2:
            shift = Fraction(rng.randint(-4, 4), 2)
            seg = _centered(rng.choice(list(universe.labels)), length, shift)
            segs.extend([seg, dual_sigma(seg, universe)])
        else:
            break
    rng.shuffle(segs)
    return segs


def generate_family(seed: int, params: FamilyParams = FamilyParams()) -> GenericFamily:
    rng = random.Random(seed)
    universe = random_universe(rng, params.universe_size, params.max_degree)
    for _ in range(MAX_RETRIES):
        segs = _draw_segments(rng, universe, params)
        if segs and is_generic(segs):
            break
    else:
        raise GenerationFailed(f"no generic family after {MAX_RETRIES} draws (seed={seed})")
    table = random_dist_table(rng, universe, params.max_len, params.p_distinguished, params.p_eta)
    try:
        return GenericFamily(tuple(segs), universe.with_dist_table(table))
    except PreconditionViolated as exc:  # pragma: no cover - is_generic already held
        raise GenerationFailed(str(exc)) from exc


def redraw_dist_table(family: GenericFamily, seed: int, params: FamilyParams = FamilyParams()) -> GenericFamily:
    rng = random.Random(seed)
    table = random_dist_table(rng, family.universe, params.max_len, params.p_distinguished, params.p_eta)
    return family.with_universe(family.universe.with_dist_table(table))
