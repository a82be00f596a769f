import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kusphere.errors import InputError
from kusphere.mackey import check_mackey_axioms
from kusphere.qgroups import lattice, parse_group
from kusphere.repring import (
    GreenFunctorRU,
    character_labels,
    multiply,
    psi_map,
    restriction_matrix,
    rq_orbit_basis,
    transfer_matrix,
    transfer_of_one,
)

GROUPS = ["C9", "C27", "C9xC3", "C3xC3xC3", "C25", "C5xC5"]


def phase(K, b, g):
    """chi_b(g) as a fraction of a full turn, from K's invariant-factor coordinates."""
    return sum(Fraction(x * c, n) for x, c, n in zip(b, K.coords(g), K.invariants)) % 1


def value(K, vec, g):
    chars = K.characters()
    return sum(c * cmath.exp(2j * cmath.pi * float(phase(K, chars[i], g))) for i, c in enumerate(vec) if c)


def pairs(text):
    lat = lattice(parse_group(text))
    return [(H, K) for K in lat for H in lat.subgroups_of(K)]


@pytest.mark.parametrize("text", GROUPS[:4])
def test_restriction_matches_character_values(text):
    for H, K in pairs(text):
        R = restriction_matrix(K, H)
        hchars = H.characters()
        for i, b in enumerate(K.characters()):
            (j,) = [r for r in range(H.order) if R[r, i]]
            assert all(phase(K, b, g) == phase(H, hchars[j], g) for g in H.basis)


@pytest.mark.parametrize("text", ["C9", "C9xC3", "C5xC5"])
def test_transfer_is_induction(text):
    # (ind chi)(g) = [K:H] chi(g) on H, 0 off H (G abelian)
    for H, K in pairs(text):
        T = transfer_matrix(K, H)
        for j in range(H.order):
            col = [T[i, j] for i in range(K.order)]
            for g in K.elements():
                want = K.order // H.order * value(H, [int(r == j) for r in range(H.order)], g) \
                    if H.contains(g) else 0
                assert abs(value(K, col, g) - want) < 1e-9


def test_identity_inclusion():
    G = parse_group("C9xC3")
    for H in lattice(G):
        I = [[int(i == j) for j in range(H.order)] for i in range(H.order)]
        assert restriction_matrix(H, H).tolist() == I
        assert transfer_matrix(H, H).tolist() == I


def test_restriction_needs_inclusion():
    lat = lattice(parse_group("C3xC3"))
    a, b = [H for H in lat if H.order == 3][:2]
    with pytest.raises(InputError):
        restriction_matrix(a, b)


def test_psi_map():
    C3, C9 = (lattice(parse_group(t)).top for t in ("C3", "C9"))
    S, s = psi_map(C3, 2, 0)
    assert S == [0, 2, 1] and s == 1
    S, s = psi_map(C9, 2, 1)
    assert sorted(len(c) for c in _cycles(S)) == [1, 2, 6] and s == 2
    S2, s2 = psi_map(C9, 2, -1)
    assert S2 == S and s2 == Fraction(1, 2)


def _cycles(perm):
    from kusphere.exactla import perm_cycles

    return perm_cycles(perm)


def test_rq_basis():
    assert rq_orbit_basis(lattice(parse_group("C3")).top, 2) == [{0: 1}, {1: 1, 2: 1}]
    assert len(rq_orbit_basis(lattice(parse_group("C9")).top, 2)) == 3
    with pytest.raises(InputError):
        rq_orbit_basis(lattice(parse_group("C9")).top, 4)


def test_character_labels():
    G = parse_group("C9xC3")
    top = lattice(G).top
    assert character_labels(top)[:4] == ["1", "y", "y^2", "x"]


@pytest.mark.parametrize("text", GROUPS)
def test_ru_axioms(text):
    G = parse_group(text)
    rep = check_mackey_axioms(GreenFunctorRU(G))
    assert rep.ok, rep.summary()


@given(st.sampled_from(GROUPS), st.data())
def test_restriction_is_ring_map(text, data):
    H, K = data.draw(st.sampled_from(pairs(text)))
    vec = st.lists(st.integers(-3, 3), min_size=K.order, max_size=K.order)
    a, b = data.draw(vec), data.draw(vec)
    R = restriction_matrix(K, H)
    assert R.apply(multiply(K, a, b)) == multiply(H, R.apply(a), R.apply(b))


@given(st.sampled_from(GROUPS), st.data())
def test_frobenius_reciprocity(text, data):
    H, K = data.draw(st.sampled_from(pairs(text)))
    a = data.draw(st.lists(st.integers(-3, 3), min_size=H.order, max_size=H.order))
    b = data.draw(st.lists(st.integers(-3, 3), min_size=K.order, max_size=K.order))
    R, T = restriction_matrix(K, H), transfer_matrix(K, H)
    assert T.apply(multiply(H, a, R.apply(b))) == multiply(K, T.apply(a), b)


@given(st.sampled_from(GROUPS), st.data())
def test_res_tr_is_index(text, data):
    H, K = data.draw(st.sampled_from(pairs(text)))
    R, T = restriction_matrix(K, H), transfer_matrix(K, H)
    assert (R @ T).tolist() == [[K.order // H.order * (i == j) for j in range(H.order)] for i in range(H.order)]
    assert sum(transfer_of_one(K, H)) == K.order // H.order
