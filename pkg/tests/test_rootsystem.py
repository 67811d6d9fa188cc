import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnbounds.errors import DomainError, ResourceError, ValidationError
from hnbounds.rootsystem import (
    WEYL_CAP_ENV,
    bilinear,
    build_root_system,
    coroot,
    pair_coroot,
    parse_cartan_label,
    product_root_system,
    reduced_word,
    weyl_element,
    weyl_group,
    weyl_orbit,
)

from conftest import SMALL_SYSTEMS, rationals, system_id

POSITIVE_COUNTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 5): 15,
    ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("C", 4): 16,
    ("D", 4): 12, ("D", 5): 20, ("G", 2): 6, ("F", 4): 24,
    ("E", 6): 36, ("E", 7): 63, ("E", 8): 120,
}


@pytest.mark.parametrize("datum,count", POSITIVE_COUNTS.items(), ids=lambda x: str(x))
def test_positive_root_count(datum, count):
    rs = build_root_system(*datum)
    assert len(rs.positive_roots) == count
    assert rs.dim_g == rs.rank + 2 * count


def test_bourbaki_cartan_matrices():
    # row i pairs with the coroot of alpha_i, so short simple roots carry the -2 / -3
    assert build_root_system("B", 2).cartan_matrix == ((2, -1), (-2, 2))
    assert build_root_system("C", 3).cartan_matrix == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert build_root_system("G", 2).cartan_matrix == ((2, -3), (-1, 2))
    assert build_root_system("F", 4).cartan_matrix[2][1] == -2


def test_g2_roots_and_lengths():
    rs = build_root_system("G", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}
    long = [a for a in rs.positive_roots if bilinear(rs, a, a) == 2]
    assert set(long) == {(0, 1), (3, 1), (3, 2)}


def test_highest_root_of_b3_and_c3():
    assert build_root_system("B", 3).positive_roots[-1] == (1, 2, 2)
    assert build_root_system("C", 3).positive_roots[-1] == (2, 2, 1)


@pytest.mark.parametrize("datum", SMALL_SYSTEMS + [("F", 4), ("E", 6)], ids=system_id)
def test_weights_and_coweights_are_dual_bases(datum):
    rs = build_root_system(*datum)
    for i in range(1, rs.rank + 1):
        for j in range(1, rs.rank + 1):
            assert pair_coroot(rs, rs.fundamental_weights[i - 1], j) == (i == j)
            assert bilinear(rs, rs.fundamental_coweights[i - 1], rs.simple_root(j)) == (i == j)


def test_a2_weights():
    rs = build_root_system("A", 2)
    assert rs.fundamental_weights == ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)))
    assert bilinear(rs, rs.fundamental_weights[0], rs.fundamental_weights[1]) == Fraction(1, 3)


@pytest.mark.parametrize("datum", SMALL_SYSTEMS, ids=system_id)
def test_roots_closed_under_reflections(datum):
    rs = build_root_system(*datum)
    roots = set(rs.roots)
    for alpha in rs.roots:
        for i in range(1, rs.rank + 1):
            c = pair_coroot(rs, alpha, i)
            beta = tuple(x - c * (j == i - 1) for j, x in enumerate(alpha))
            assert beta in roots


@pytest.mark.parametrize("datum,order", [(("A", 3), 24), (("B", 3), 48), (("G", 2), 12), (("D", 4), 192), (("F", 4), 1152)])
def test_weyl_group_order_by_enumeration(datum, order):
    rs = build_root_system(*datum)
    assert len(weyl_group(rs)) == order == rs.weyl_order


def test_weyl_orbit_of_highest_root_is_long_roots():
    rs = build_root_system("B", 2)
    orbit = weyl_orbit(rs, rs.positive_roots[-1])
    assert {tuple(int(x) for x in v) for v in orbit} == {a for a in rs.roots if bilinear(rs, a, a) == 2}


def test_coroot_pairing_is_cartan():
    rs = build_root_system("G", 2)
    for i in (1, 2):
        cv = coroot(rs, rs.simple_root(i))
        for j in (1, 2):
            assert bilinear(rs, rs.simple_root(j), cv) == rs.cartan_matrix[i - 1][j - 1]


def test_reduced_word_is_lex_least_by_brute_force():
    rs = build_root_system("A", 2)
    for w in weyl_group(rs):
        length = len(w.word)
        words = [wd for wd in itertools.product((1, 2), repeat=length) if weyl_element(rs, wd) == w]
        assert reduced_word(rs, w) == min(words)
        shorter = [wd for k in range(length) for wd in itertools.product((1, 2), repeat=k)]
        assert all(weyl_element(rs, wd) != w for wd in shorter)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_SYSTEMS), st.data())
def test_weyl_group_preserves_form(datum, data):
    rs = build_root_system(*datum)
    x = data.draw(st.lists(rationals, min_size=rs.rank, max_size=rs.rank))
    y = data.draw(st.lists(rationals, min_size=rs.rank, max_size=rs.rank))
    word = data.draw(st.lists(st.integers(1, rs.rank), max_size=8))
    w = weyl_element(rs, word)
    assert bilinear(rs, w.apply(x), w.apply(y)) == bilinear(rs, x, y)
    assert (w * w.inverse()).is_identity


@pytest.mark.parametrize("t,r", [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("F", 3), ("G", 3), ("Z", 2)])
def test_invalid_data_rejected(t, r):
    with pytest.raises(ValidationError):
        build_root_system(t, r)


def test_not_a_root():
    with pytest.raises(DomainError):
        coroot(build_root_system("A", 2), (1, -1))


def test_weyl_cap(monkeypatch):
    rs = build_root_system("B", 3)
    with pytest.raises(ResourceError):
        weyl_group(rs, cap=10)
    monkeypatch.setenv(WEYL_CAP_ENV, "20")
    with pytest.raises(ResourceError):
        weyl_group(rs)
    with pytest.raises(ResourceError) as exc:
        weyl_orbit(rs, rs.fundamental_weights[0], cap=3)
    assert exc.value.partial_size > 3


def test_e8_weyl_group_refused():
    with pytest.raises(ResourceError):
        weyl_group(build_root_system("E", 8))


def test_product_system():
    rs = parse_cartan_label("A1xG2")
    assert rs == product_root_system([("A", 1), ("G", 2)])
    assert rs.rank == 3 and len(rs.positive_roots) == 7
    assert rs.dim_g == 3 + 14
    assert rs.weyl_order == 24
    assert bilinear(rs, rs.simple_root(1), rs.simple_root(2)) == 0
