import itertools
import json

import pytest
from hypothesis import given, strategies as st

from kusphere.errors import DataError, ParseError, ResourceError
from kusphere.qgroups import (
    AbelianQGroup,
    class_orbits,
    cyclic_subgroup_classes,
    cyclic_subgroup_counts,
    enumerate_subgroups,
    lattice,
    load_class_data,
    parse_group,
    psi_orbits,
)
from kusphere.suites import classdata_fixture, classdata_orbit_count

from classdata_oracle import class_data


def brute_subgroups(G):
    """Element sets of all subgroups, by closing every rank-tuple of elements."""
    elems = list(G.elements())
    found = set()
    for gens in itertools.product(elems, repeat=max(G.rank, 1)):
        span = {G.identity()}
        frontier = [G.identity()]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = G.add(x, g)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        found.add(frozenset(span))
    return found


@pytest.mark.parametrize("text,q,exps", [("C9", 3, (2,)), ("C3xC3", 3, (1, 1)), ("C3 x C27", 3, (3, 1)),
                                         ("C25xC5", 5, (2, 1))])
def test_parse_group(text, q, exps):
    G = parse_group(text)
    assert (G.q, G.exponents) == (q, exps)


@pytest.mark.parametrize("text,pos", [("C4", 0), ("C9xC5", 3), ("C9*C3", 2), ("", 0), ("C6", 0), ("C1", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_group(text)
    assert err.value.position == pos


@pytest.mark.parametrize("text,n,orders", [("C9", 3, [1, 3, 9]), ("C3xC3", 6, [1, 3, 3, 3, 3, 9]),
                                           ("C27", 4, [1, 3, 9, 27])])
def test_enumerate_subgroups(text, n, orders):
    subs = enumerate_subgroups(parse_group(text))
    assert len(subs) == n and [H.order for H in subs] == orders


@pytest.mark.parametrize("text", ["C9xC3", "C3xC3xC3", "C27xC3", "C9xC9", "C5xC5"])
def test_subgroups_match_brute_force(text):
    G = parse_group(text)
    subs = enumerate_subgroups(G)
    assert {frozenset(H.elements()) for H in subs} == brute_subgroups(G)
    assert len({H.canonical_key for H in subs}) == len(subs)


def test_bound_is_enforced():
    with pytest.raises(ResourceError, match="729"):
        enumerate_subgroups(parse_group("C7xC7xC7xC7"))
    assert len(enumerate_subgroups(parse_group("C7xC7xC7xC7"), bound=2401)) > 0


@pytest.mark.parametrize("text,n", [("C9", 3), ("C3xC3", 5)])
def test_cyclic_subgroup_classes(text, n):
    assert len(cyclic_subgroup_classes(parse_group(text))) == n


@pytest.mark.parametrize("text", ["C9xC3", "C27xC9", "C3xC3xC3", "C25xC5", "C7xC7", "C49xC7"])
def test_cyclic_count_equals_orbit_count(text):
    G = parse_group(text)
    counts = cyclic_subgroup_counts(G.q, G.exponents)
    assert len(cyclic_subgroup_classes(G)) == sum(counts.values())
    for ell in (2, 3):
        if ell % G.q:
            from kusphere.arith import is_primitive_mod

            if is_primitive_mod(ell, G.exponent):
                assert len(psi_orbits(G, ell)) == sum(counts.values())


def test_psi_orbits_c9():
    P = psi_orbits(parse_group("C9"), 2)
    assert P.as_sets() == {frozenset({(0,)}), frozenset({(3,), (6,)}),
                           frozenset({(1,), (2,), (4,), (8,), (7,), (5,)})}
    assert sorted(P.sizes) == [1, 2, 6]


def test_psi_orbits_small():
    assert sorted(psi_orbits(parse_group("C3"), 2).sizes) == [1, 2]
    assert sorted(psi_orbits(parse_group("C3xC3"), 2).sizes) == [1, 2, 2, 2, 2]


def test_psi_orbits_need_coprime_ell():
    with pytest.raises(Exception):
        psi_orbits(parse_group("C9"), 3)


@given(st.sampled_from(["C9", "C27", "C9xC3", "C3xC3xC3", "C25", "C5xC5", "C49"]), st.integers(1, 200))
def test_psi_orbits_partition(text, ell):
    G = parse_group(text)
    if ell % G.q == 0:
        return
    P = psi_orbits(G, ell)
    flat = [b for o in P.orbits for b in o]
    assert sorted(flat) == sorted(itertools.product(*(range(m) for m in G.moduli)))
    for o in P.orbits:
        for a, b in zip(o, o[1:] + o[:1]):
            assert b == G.scale(ell, a)


def test_lattice_covers_c3xc3():
    lat = lattice(parse_group("C3xC3"))
    assert len(lat) == 6 and len(lat.covers) == 8


@pytest.mark.parametrize("text", ["C9xC3", "C3xC3xC3", "C27xC9"])
def test_covers_are_index_q_inclusions(text):
    G = parse_group(text)
    lat = lattice(G)
    want = {(H, K) for H in lat for K in lat
            if K.order == H.order * G.q and H.is_subgroup_of(K)}
    assert set(lat.covers) == want


def test_subgroup_invariants_and_coords():
    G = parse_group("C9xC3")
    for H in enumerate_subgroups(G):
        assert H.order == H.abstract.order
        coords = {H.coords(g) for g in H.elements()}
        assert len(coords) == H.order


def test_class_data_c9():
    raw = {"q": 3, "classes": [{"order": AbelianQGroup(3, (2,)).element_order((a,))} for a in range(9)],
           "power_maps": {"2": [2 * a % 9 for a in range(9)]}}
    orbits = class_orbits(load_class_data(raw))
    assert sorted(len(o.classes) for o in orbits) == [1, 2, 6]


def test_class_data_identity_only():
    data = load_class_data({"q": 5, "classes": [{"order": 1}], "power_maps": {"2": [0]}})
    assert len(class_orbits(data)) == 1


@pytest.mark.parametrize("mutate,field", [
    (lambda d: d.update(q=4), "q"),
    (lambda d: d["classes"].append({"order": 2}), "classes[11].order"),
    (lambda d: d["power_maps"].update({"2": [0] * 11}), "power_maps.2"),
    (lambda d: d["power_maps"].update({"3": list(range(11))}), "power_maps.3"),
])
def test_class_data_errors_name_field(mutate, field):
    raw = json.loads(json.dumps(class_data("extraspecial27")))
    mutate(raw)
    with pytest.raises(DataError) as err:
        load_class_data(raw)
    assert err.value.field == field


def test_class_data_orbit_orders_checked():
    raw = {"q": 3, "classes": [{"order": 1}, {"order": 3}, {"order": 9}],
           "power_maps": {"2": [0, 2, 1]}}
    with pytest.raises(DataError, match="orders"):
        class_orbits(load_class_data(raw))


@pytest.mark.parametrize("name", ["extraspecial27", "extraspecial27_exp9"])
def test_fixtures_match_brute_force(name):
    fixture = classdata_fixture(name)
    rebuilt = load_class_data(class_data(name))
    assert sorted(fixture.class_orders) == sorted(rebuilt.class_orders)
    assert len(class_orbits(fixture)) == len(class_orbits(rebuilt))
    found, declared = classdata_orbit_count(name)
    assert found == declared == 6
