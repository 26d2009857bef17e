import itertools

import pytest
from hypothesis import given, strategies as st

from galdist.errors import OutOfRange
from galdist.roots import (
    Composition,
    Root,
    WeylPerm,
    add_exponents,
    all_roots,
    block_of,
    compositions,
    levi_modulus_exponents,
    levi_roots,
    modulus_exponents,
    positive_roots,
    refinements,
    refines,
    weyl_image_positive,
)


@pytest.mark.parametrize("comp, k, expected", [((2, 1), 2, 1), ((2, 1), 3, 2), ((1, 1, 1), 2, 2)])
def test_block_of(comp, k, expected):
    assert block_of(Composition(comp), k) == expected


def test_block_of_out_of_range():
    with pytest.raises(OutOfRange):
        block_of(Composition((2, 1)), 4)
    with pytest.raises(OutOfRange):
        block_of(Composition((2, 1)), 0)


def test_composition_validation():
    with pytest.raises(ValueError):
        Composition(())
    with pytest.raises(ValueError):
        Composition((2, 0))
    assert Composition.parse("2, 1") == (2, 1)


def test_levi_roots_examples():
    assert levi_roots(Composition((1, 1))) == set()
    assert levi_roots(Composition((2,))) == {Root(1, 2), Root(2, 1)}
    assert levi_roots(Composition((2, 1))) == {Root(1, 2), Root(2, 1)}


@pytest.mark.parametrize("comp, expected", [((1, 1), (1, -1)), ((2,), (0, 0)), ((1, 1, 1), (2, 0, -2))])
def test_modulus_exponents_examples(comp, expected):
    assert modulus_exponents(Composition(comp)) == expected


def test_modulus_exponents_against_adjoint_action():
    # oracle: t acts on the matrix unit E_{ij} (i<j, different blocks) by t_i / t_j
    for n in range(1, 7):
        for comp in compositions(n):
            e = [0] * n
            off = comp.offsets()
            blk = lambda k: next(b for b in range(comp.t) if off[b] < k <= off[b + 1])
            for i, j in itertools.combinations(range(1, n + 1), 2):
                if blk(i) != blk(j):
                    e[i - 1] += 1
                    e[j - 1] -= 1
            assert modulus_exponents(comp) == tuple(e)


def test_weyl_image_positive_examples():
    assert weyl_image_positive(WeylPerm.identity(4), positive_roots(4))
    assert not weyl_image_positive(WeylPerm((2, 1)), {Root(1, 2)})
    assert weyl_image_positive(WeylPerm((2, 1, 3)), {Root(2, 3)})


def test_root_counts():
    for n in range(1, 8):
        assert len(all_roots(n)) == n * (n - 1)
        assert len(positive_roots(n)) == n * (n - 1) // 2


@pytest.mark.parametrize("n", range(1, 7))
def test_levi_positive_partition(n):
    phi_plus = set(positive_roots(n))
    for comp in compositions(n):
        levi_plus = {r for r in levi_roots(comp) if r.positive}
        rest = phi_plus - levi_plus
        assert levi_plus | rest == phi_plus and not levi_plus & rest


@pytest.mark.parametrize("n", range(1, 7))
def test_modulus_sums_to_zero(n):
    for comp in compositions(n):
        assert sum(modulus_exponents(comp)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_modulus_of_refinement_factorizes(n):
    """delta_P * delta_{P'} = delta_{P_fine} for every refinement pair."""
    pairs = 0
    for coarse in compositions(n):
        for fine in refinements(coarse):
            assert refines(fine, coarse)
            lhs = add_exponents(modulus_exponents(coarse), levi_modulus_exponents(fine, coarse))
            assert lhs == modulus_exponents(fine)
            pairs += 1
    # each composition of n refines exactly 2^(t-1) compositions
    assert pairs == sum(2 ** (c.t - 1) for c in compositions(n))


def test_compositions_count():
    for n in range(1, 9):
        assert len(list(compositions(n))) == 2 ** (n - 1)


perms = st.integers(1, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@given(perms)
def test_weyl_perm_group_laws(images):
    w = WeylPerm(images)
    n = len(images)
    assert w.compose(w.inverse()) == WeylPerm.identity(n)
    assert w.is_involution() == (w.compose(w) == WeylPerm.identity(n))
    for r in all_roots(n):
        assert w.act(-r) == -w.act(r)
    assert set(map(w.act, all_roots(n))) == set(all_roots(n))


def test_cycle_notation():
    assert WeylPerm((3, 4, 1, 2)).cycle_notation() == "(1 3)(2 4)"
    assert WeylPerm.identity(3).cycle_notation() == "id"
    with pytest.raises(ValueError):
        WeylPerm((1, 1))
