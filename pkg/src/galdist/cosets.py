"""Double cosets P(K)\\GL(n,K)/GL(n,F) indexed by symmetric integer matrices.

A :class:`CosetIndex` is a symmetric t x t matrix of nonnegative integers
whose i-th row sums to n_i. Everything below builds on three objects
attached to it: the interval layout of {1..n}, the explicit representative
``u`` over Q(delta), and the involution ``w = u u^{-sigma}``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple

from .errors import InternalCheckFailed
from .exact import (
    DEFAULT_D,
    QuadMatrix,
    QuadScalar,
    RationalLike,
    as_rational,
    mat_inverse,
    permutation_matrix,
    subspace_intersect_dim,
)
from .roots import (
    Composition,
    ExponentVector,
    Root,
    WeylPerm,
    add_exponents,
    block_labels,
    levi_modulus_exponents,
    levi_roots,
    modulus_exponents,
    positive_roots,
)


class Interval(NamedTuple):
    i: int
    j: int
    start: int  # 1-based, inclusive
    stop: int  # 1-based, inclusive

    def __len__(self) -> int:
        return self.stop - self.start + 1

    def positions(self) -> range:
        return range(self.start, self.stop + 1)


@dataclass(frozen=True)
class CosetIndex:
    base: Composition
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        base = self.base if isinstance(self.base, Composition) else Composition(self.base)
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "entries", entries)
        t = base.t
        if len(entries) != t or any(len(r) != t for r in entries):
            raise ValueError(f"entries must be {t}x{t}")
        for i in range(t):
            for j in range(t):
                if entries[i][j] < 0:
                    raise ValueError("entries must be nonnegative")
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"not symmetric at ({i + 1},{j + 1})")
            if sum(entries[i]) != base[i]:
                raise ValueError(f"row {i + 1} sums to {sum(entries[i])}, expected {base[i]}")

    @property
    def t(self) -> int:
        return self.base.t

    @property
    def n(self) -> int:
        return self.base.n

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based access ``s[i, j]``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.t) for j in range(self.t) if i != j)

    @classmethod
    def diagonal(cls, base) -> CosetIndex:
        base = Composition(base)
        return cls(base, tuple(tuple(base[i] if i == j else 0 for j in range(base.t)) for i in range(base.t)))

    @cached_property
    def layout(self) -> tuple[Interval, ...]:
        """Nonempty intervals I_{i,j} in row-major order of (i, j)."""
        out = []
        pos = 1
        for i in range(1, self.t + 1):
            for j in range(1, self.t + 1):
                m = self[i, j]
                if m:
                    out.append(Interval(i, j, pos, pos + m - 1))
                    pos += m
        return tuple(out)

    def interval(self, i: int, j: int) -> Interval | None:
        return next((iv for iv in self.layout if iv.i == i and iv.j == j), None)

    @cached_property
    def levi(self) -> Composition:
        """M_s: the nonzero entries of s read row by row."""
        return Composition(len(iv) for iv in self.layout)

    def __str__(self) -> str:
        return f"{tuple(self.base)}:" + "|".join(",".join(map(str, r)) for r in self.entries)


def enumerate_I(comp) -> list[CosetIndex]:
    """All of I(comp), lexicographic in the row-major upper triangle."""
    return list(iter_I(comp))


def iter_I(comp) -> Iterator[CosetIndex]:
    comp = Composition(comp)
    t = comp.t
    cells = [(i, j) for i in range(t) for j in range(i, t)]
    grid = [[0] * t for _ in range(t)]
    remaining = list(comp)

    def rec(k: int) -> Iterator[CosetIndex]:
        if k == len(cells):
            yield CosetIndex(comp, tuple(tuple(r) for r in grid))
            return
        i, j = cells[k]
        top = remaining[i] if i == j else min(remaining[i], remaining[j])
        last_in_row = j == t - 1
        for v in range(top + 1):
            # a row is closed once its last cell is filled
            if last_in_row and remaining[i] != v:
                continue
            grid[i][j] = grid[j][i] = v
            remaining[i] -= v
            if i != j:
                remaining[j] -= v
            yield from rec(k + 1)
            remaining[i] += v
            if i != j:
                remaining[j] += v
        grid[i][j] = grid[j][i] = 0

    yield from rec(0)


# --------------------------------------------------------------------------
# representatives and involutions


def representative(s: CosetIndex, d: RationalLike = DEFAULT_D) -> QuadMatrix:
    """u: identity on V0_{i,i}, [[I, -delta I], [I, delta I]] on V0_{i,j} + V0_{j,i}."""
    d = as_rational(d)
    n = s.n
    grid: list[list] = [[0] * n for _ in range(n)]
    delta = QuadScalar.delta(d)
    for iv in s.layout:
        if iv.i == iv.j:
            for p in iv.positions():
                grid[p - 1][p - 1] = 1
        elif iv.i < iv.j:
            partner = s.interval(iv.j, iv.i)
            for p, q in zip(iv.positions(), partner.positions()):
                # column p is the image of the k-th basis vector of V0_{i,j}
                grid[p - 1][p - 1] = 1
                grid[q - 1][p - 1] = 1
                grid[p - 1][q - 1] = -delta
                grid[q - 1][q - 1] = delta
    return QuadMatrix(grid, d, cols=n)


def involution_of(s: CosetIndex) -> WeylPerm:
    images = list(range(1, s.n + 1))
    for iv in s.layout:
        if iv.i != iv.j:
            partner = s.interval(iv.j, iv.i)
            for p, q in zip(iv.positions(), partner.positions()):
                images[p - 1] = q
    return WeylPerm(images)


def w_matrix(s: CosetIndex, d: RationalLike = DEFAULT_D) -> QuadMatrix:
    """u * conj(u^{-1}), computed in exact arithmetic."""
    u = representative(s, d)
    return u @ mat_inverse(u).conj()


def verify_w_equals_uu_sigma(s: CosetIndex, d: RationalLike = DEFAULT_D) -> bool:
    return w_matrix(s, d) == permutation_matrix(involution_of(s), d)


# --------------------------------------------------------------------------
# root-level checks


def check_admissible(s: CosetIndex) -> bool:
    """w normalizes M_s and w(Phi_M^+) is positive."""
    w = involution_of(s)
    phi_s = levi_roots(s.levi)
    if {w.act(r) for r in phi_s} != phi_s:
        return False
    return all(w.act(r).positive for r in levi_roots(s.base) if r.positive)


def levi_intersection(s: CosetIndex) -> Composition:
    """M_s, cross-checked against the block structure of M ∩ w M w^{-1}."""
    w = involution_of(s)
    lab = block_labels(s.base)
    keys = [(lab[k - 1], lab[w(k) - 1]) for k in range(1, s.n + 1)]
    runs: list[int] = []
    seen = set()
    prev = None
    for key in keys:
        if key == prev:
            runs[-1] += 1
            continue
        if key in seen:
            raise InternalCheckFailed(f"block {key} of M ∩ M^w is not an interval for {s}")
        seen.add(key)
        runs.append(1)
        prev = key
    common = Composition(runs)
    if common != s.levi:
        raise InternalCheckFailed(f"M ∩ M^w = {tuple(common)} but flattened s gives {tuple(s.levi)}")
    return s.levi


def _root_sum_is_root(a: Root, b: Root) -> bool:
    v = Counter()
    for r in (a, b):
        v[r.i] += 1
        v[r.j] -= 1
    nz = sorted(c for c in v.values() if c)
    return nz == [-1, 1]


def check_unipotent_pairing(s: CosetIndex) -> bool:
    """For alpha in Phi_M^+ - Phi_s^+: w(alpha) lies in Phi^+ - Phi_M^+ and
    alpha + w(alpha) is not a root."""
    w = involution_of(s)
    phi_m = levi_roots(s.base)
    phi_s = levi_roots(s.levi)
    for alpha in phi_m - phi_s:
        if not alpha.positive:
            continue
        image = w.act(alpha)
        if not image.positive or image in phi_m:
            return False
        if _root_sum_is_root(alpha, image):
            return False
    return True


@dataclass(frozen=True)
class ThetaStructure:
    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = field(default=())
    fixed: tuple[tuple[int, int], ...] = field(default=())


def theta_structure(s: CosetIndex) -> ThetaStructure:
    pairs = []
    fixed = []
    for iv in s.layout:
        if iv.i == iv.j:
            fixed.append((iv.i, iv.i))
        elif iv.i < iv.j:
            pairs.append(((iv.i, iv.j), (iv.j, iv.i)))
    return ThetaStructure(tuple(pairs), tuple(fixed))


# --------------------------------------------------------------------------
# modulus characters on the split centre Z_s^theta


def _split_torus_variables(s: CosetIndex) -> tuple[list[tuple[int, int]], list[int]]:
    """One variable per unordered nonzero block; returns (variables, variable of each coordinate)."""
    variables: list[tuple[int, int]] = []
    coord_var = [0] * s.n
    for iv in s.layout:
        key = (min(iv.i, iv.j), max(iv.i, iv.j))
        if key not in variables:
            variables.append(key)
        for p in iv.positions():
            coord_var[p - 1] = variables.index(key)
    return variables, coord_var


def restrict_to_split_torus(e: ExponentVector, s: CosetIndex) -> ExponentVector:
    """Pull a torus character back along lambda -> diag(lambda_{block(k)})."""
    variables, coord_var = _split_torus_variables(s)
    out = [0] * len(variables)
    for k, c in enumerate(e):
        out[coord_var[k]] += c
    return tuple(out)


def k_to_f_exponents(e: ExponentVector) -> ExponentVector:
    """|x|_K = |x|_F^2 on F."""
    return tuple(2 * c for c in e)


def modulus_identity_sides(s: CosetIndex) -> dict[str, ExponentVector]:
    """Exponent vectors (in |.|_F, over the split-torus variables) of the
    characters compared in the modulus identity."""
    w = involution_of(s)
    n = s.n
    phi_s = levi_roots(s.levi)
    outside = [r for r in positive_roots(n) if r not in phi_s]
    outside_set = set(outside)

    def char(roots) -> ExponentVector:
        e = [0] * n
        for r in roots:
            e[r.i - 1] += 1
            e[r.j - 1] -= 1
        return restrict_to_split_torus(tuple(e), s)

    theta_fixed = char(r for r in outside if w.act(r) in outside_set)
    full = char(outside)
    d_p = modulus_exponents(s.base)
    d_p_prime = levi_modulus_exponents(s.levi, s.base)
    d_ps = modulus_exponents(s.levi)
    lhs_f = k_to_f_exponents(restrict_to_split_torus(add_exponents(d_p, d_p_prime), s))
    return {
        "delta_P_s_theta": theta_fixed,
        "delta_P_s_F": full,
        "delta_P_delta_P_prime_F": lhs_f,
        "delta_P_theta_squared": tuple(2 * c for c in theta_fixed),
        "lie_lhs_K": add_exponents(d_p, d_p_prime),
        "lie_rhs_K": d_ps,
    }


def verify_modulus_identity(s: CosetIndex) -> bool:
    sides = modulus_identity_sides(s)
    if sides["lie_lhs_K"] != sides["lie_rhs_K"]:
        raise InternalCheckFailed(f"delta_P * delta_P'_s != delta_P_s on the torus for {s}")
    return (
        sides["delta_P_s_theta"] == sides["delta_P_s_F"]
        and sides["delta_P_delta_P_prime_F"] == sides["delta_P_theta_squared"]
    )


# --------------------------------------------------------------------------
# flag invariants


def flag_invariants(s: CosetIndex) -> tuple[tuple[int, ...], ...]:
    """d_{i,j} = sum_{k<=i, l<=j} n_{k,l}, for 1 <= i, j <= t."""
    t = s.t
    return tuple(
        tuple(sum(s.entries[k][l] for k in range(i + 1) for l in range(j + 1)) for j in range(t))
        for i in range(t)
    )


def flag_dimensions(u: QuadMatrix, comp) -> tuple[tuple[int, ...], ...]:
    """dim(V_i ∩ V_j^sigma) for the flag V_i = u^{-1}(V0_i), computed by rank."""
    comp = Composition(comp)
    if u.rows != comp.n or u.cols != comp.n:
        raise ValueError(f"u is {u.rows}x{u.cols}, composition has n = {comp.n}")
    u_prime = mat_inverse(u)
    off = comp.offsets()
    flags = [u_prime.columns(range(off[i])) for i in range(1, comp.t + 1)]
    conj_flags = [f.conj() for f in flags]
    return tuple(
        tuple(subspace_intersect_dim(flags[i], conj_flags[j]) for j in range(comp.t))
        for i in range(comp.t)
    )


def second_differences(dims) -> tuple[tuple[int, ...], ...]:
    t = len(dims)

    def at(i: int, j: int) -> int:
        return dims[i][j] if i >= 0 and j >= 0 else 0

    return tuple(
        tuple(at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1) for j in range(t))
        for i in range(t)
    )


def roundtrip_s(u: QuadMatrix, comp) -> CosetIndex:
    comp = Composition(comp)
    return CosetIndex(comp, second_differences(flag_dimensions(u, comp)))
