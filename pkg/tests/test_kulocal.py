import pytest
from hypothesis import given, settings, strategies as st

from kusphere import arith
from kusphere.abgroup import AbGroupExpr
from kusphere.errors import InputError
from kusphere.kulocal import (
    EXTERNAL_MARKER,
    HomotopyQuery,
    homotopy,
    local_homotopy_mackey,
    pi_ku_local_away_from_q,
    pi_nonequivariant_local,
    transfer_ideal_certificate,
)
from kusphere.mackey import check_mackey_axioms, coker_mackey
from kusphere.qgroups import cyclic_subgroup_classes, lattice, parse_group
from kusphere.render import render_text

C3, C9 = parse_group("C3"), parse_group("C9")


def classical_image_of_j(n):
    """Order of the image of J in degree n = 4s - 1 (denominator of B_2s / 4s)."""
    from fractions import Fraction

    s = (n + 1) // 4
    B = [Fraction(1)]
    for m in range(1, 2 * s + 1):
        B.append(-sum(Fraction(comb(m + 1, k)) * B[k] for k in range(m)) / (m + 1))
    return (B[2 * s] / (4 * s)).denominator


def comb(n, k):
    from math import comb as c

    return c(n, k)


@pytest.mark.parametrize("n,p,want", [(-1, 5, "Z5^"), (1, 2, "Z/2 + Z/2"), (7, 5, "Z/5"), (0, 3, "Z3^"),
                                      (3, 2, "Z/8"), (2, 2, "Z/2"), (4, 2, "0"), (5, 3, "0"), (11, 3, "Z/9")])
def test_pi_nonequivariant(n, p, want):
    assert str(pi_nonequivariant_local(n, p)) == want


@pytest.mark.parametrize("n,q,want", [(3, 3, "Z/8"), (7, 3, "Z/16 + Z/5"), (5, 3, "0"), (1, 5, "Z/2 + Z/2")])
def test_away_from_q(n, q, want):
    assert str(pi_ku_local_away_from_q(n, q)) == want


@pytest.mark.parametrize("n", [0, 2, -1])
def test_away_rejects_out_of_contract(n):
    with pytest.raises(InputError):
        pi_ku_local_away_from_q(n, 3)


@pytest.mark.parametrize("n", [3, 7, 11, 15, 19, 23])
def test_away_plus_q_part_is_image_of_j(n):
    # reinstating the 3-part recovers the classical order of the image of J
    for q in (3, 5, 7):
        away = pi_ku_local_away_from_q(n, q)
        qpart = pi_nonequivariant_local(n, q)
        assert away.order * (qpart.order if qpart.is_finite else 1) == classical_image_of_j(n)


def test_local_examples():
    assert local_homotopy_mackey(C9, 2, 3).is_zero
    M = local_homotopy_mackey(C9, 1, 3, 2)
    assert M.summary() == coker_mackey(C9, 2, 1).summary()
    assert M.res == coker_mackey(C9, 2, 1).res
    L = local_homotopy_mackey(C3, -1, 5)
    assert L.summary() == {"e": "Z5^", "C3": "Z5^ + Z5^"}
    assert L.res_matrix("e", "C3").tolist() == [[1, 2]]


def test_homotopy_examples():
    assert homotopy(C3, -1).is_zero
    M = homotopy(C3, 3, 2)
    assert M.summary() == {"e": "Z/8 + Z/3", "C3": "Z/8 + Z/8 + Z/3 + Z/3"}
    N = homotopy(C9, -2, 2)
    assert N.summary() == {"e": "Q/Z", "C3": "Q/Z + Q/Z", "C9": "Q/Z + Q/Z + Q/Z"}
    Z = homotopy(C9, 0)
    assert Z.meta["provenance"] == EXTERNAL_MARKER
    assert Z.summary()["e"] == "Z + Z/2"


def test_query_validation():
    with pytest.raises(InputError):
        HomotopyQuery(C9, 1, ell=4)
    assert HomotopyQuery("C9", 1).ell == 2
    assert HomotopyQuery(parse_group("C49"), 1).ell == 3


GROUPS = ["C3", "C9", "C27", "C3xC3", "C9xC3"]


@settings(max_examples=40)
@given(st.sampled_from(GROUPS), st.integers(-10, 10))
def test_dispatcher_rows(text, n):
    G = parse_group(text)
    M = homotopy(G, n)
    assert check_mackey_axioms(M).ok
    cyclic_below = {lattice(G).name(H): len(cyclic_subgroup_classes(H.abstract)) for H in lattice(G)}
    if n == -1:
        assert M.is_zero
    elif n == -2:
        assert {k: v.count("Q/Z") for k, v in M.values().items()} == cyclic_below
    elif n % 2 == 0 and n != 0:
        want = n % 8 in (0, 2)
        for k, v in M.values().items():
            assert v == (AbGroupExpr.cyclic_group(2) * cyclic_below[k] if want else AbGroupExpr())
    elif n % 2:
        away = pi_ku_local_away_from_q(n, G.q).order
        for H in lattice(G):
            k = lattice(G).name(H)
            cok = coker_mackey(G, 2 if G.q == 3 else 3, (n + 1) // 2).value(k)
            assert M.value(k).order == away ** cyclic_below[k] * cok.order


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_transfer_ideal_certificate(q):
    cert = transfer_ideal_certificate(q)
    assert cert.value == q
    assert cert.steps[-1] == ("difference", str(q))
    assert len(cert.transfers) == q + 1


def test_certificate_expansion_q3():
    cert = transfer_ideal_certificate(3)
    assert cert.steps[0][1].startswith("4 + ")
    assert cert.steps[1][1].startswith("1 + ")


def test_c9_text_output_at_q():
    text = render_text(local_homotopy_mackey(C9, 1, 3, 2))
    assert "C9 : Z/3{x^3} + Z/9{x}" in text
    assert "res C9 -> C3: [[0, 1]]" in text


@given(st.sampled_from([3, 5, 7]), st.integers(-30, 30).filter(lambda n: n % 2 and n != -1))
def test_away_is_finite_and_prime_to_q(q, n):
    A = pi_ku_local_away_from_q(n, q)
    assert A.is_finite and A.order % q


def test_primitive_root_default():
    assert HomotopyQuery(parse_group("C25xC5"), 3).ell == arith.smallest_primitive_root(125)
