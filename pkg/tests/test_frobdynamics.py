import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnbounds.degrees import numerical_invariants, degree_vector, profile_from_invariants, y_vector
from hnbounds.errors import PreconditionError, ResourceError, ValidationError
from hnbounds.frobdynamics import (
    S0Value,
    contradiction_certificate,
    detect_stabilization,
    make_sequence,
    match_facets,
    maps_facet,
    s0_estimate,
    weyl_fan,
    y_norm_expand,
)
from hnbounds.parabolic import Facet, all_standard_facets, make_facet
from hnbounds.rootsystem import bilinear, build_root_system, reduced_word, weyl_element, weyl_group

from conftest import SMALL_SYSTEMS, random_degree_values, rationals, system_id

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)


# ------------------------------------------------------------------ s0


def fan_oracle(rs):
    """Cones of the Weyl fan as generator lists, built straight from W acting on coweights."""
    cones = {}
    G = np.array([[float(x) for x in row] for row in rs.gram])
    for w in weyl_group(rs):
        M = np.array([[float(x) for x in row] for row in w.matrix])
        for k in range(1, rs.rank + 1):
            for I in itertools.combinations(range(rs.rank), k):
                gens = frozenset(tuple(M @ np.array([float(x) for x in rs.fundamental_coweights[i]])) for i in I)
                key = frozenset(tuple(round(x, 9) for x in g) for g in gens)
                cones[key] = [np.array(g) for g in gens]
    return list(cones.items()), G


def sampled_max_cos(rs, steps):
    cones, G = fan_oracle(rs)
    samples = {}
    for key, gens in cones:
        pts = []
        for weights in itertools.product(range(steps + 1), repeat=len(gens)):
            if any(weights):
                pts.append(sum(wt * g for wt, g in zip(weights, gens)))
        P = np.array(pts)
        samples[key] = P / np.sqrt(np.einsum("ij,jk,ik->i", P, G, P))[:, None]
    best = -2.0
    for (k1, _), (k2, _) in itertools.product(cones, repeat=2):
        if k1 & k2:
            continue
        best = max(best, float(np.max(samples[k1] @ G @ samples[k2].T)))
    return best


def test_s0_examples():
    assert s0_estimate(A1) == S0Value(-1, Fraction(1))
    assert s0_estimate(A1).value == -1
    s = s0_estimate(A2)
    assert s.value == Fraction(1, 2) and s.exact
    s = s0_estimate(build_root_system("B", 2))
    assert s.value is None and s.square == Fraction(1, 2) and s.sign == 1


def test_a2_fan_has_twelve_nonzero_cones():
    assert len(weyl_fan(A2)) == 12
    assert len(fan_oracle(A2)[0]) == 12


@pytest.mark.parametrize("datum", SMALL_SYSTEMS, ids=system_id)
def test_s0_below_one_and_exact(datum):
    rs = build_root_system(*datum)
    s = s0_estimate(rs)
    assert s.key < 1
    assert s.exact or rs.rank > 3


@pytest.mark.parametrize("datum,steps", [(("A", 2), 24), (("B", 2), 24), (("G", 2), 24), (("A", 3), 6)], ids=str)
def test_s0_against_sampled_oracle(datum, steps):
    rs = build_root_system(*datum)
    s = float(s0_estimate(rs))
    sampled = sampled_max_cos(rs, steps)
    assert sampled <= s + 1e-9
    assert s - sampled < 0.02


def test_s0_rank_cap():
    with pytest.raises(ResourceError):
        s0_estimate(build_root_system("A", 4), rank_cap=3)


def test_s0_value_arithmetic():
    half = S0Value.from_rational(Fraction(1, 2))
    assert half.times_at_least_one(Fraction(2)) and not half.times_at_least_one(Fraction(19, 10))
    assert not S0Value.from_rational(-1).times_at_least_one(Fraction(100))
    assert str(S0Value(1, Fraction(1, 2))) == "sqrt(1/2)"
    assert S0Value(1, Fraction(1, 4)).key < S0Value(1, Fraction(1, 2)).key
    assert S0Value(-1, Fraction(1, 2)).key < S0Value(0, Fraction(0)).key


# ------------------------------------------------------------------ matching


def test_match_examples():
    f = make_facet(A2, {1})
    assert match_facets(f, f).is_identity
    s2 = weyl_element(A2, [2])
    sigma = match_facets(f, Facet(A2, frozenset({1}), s2))
    assert sigma.word == (2,)
    assert match_facets(f, make_facet(A2, {1, 2})) is None


@pytest.mark.parametrize("datum", [("A", 2), ("B", 2), ("G", 2), ("A", 3)], ids=system_id)
def test_match_against_exhaustive_search(datum):
    rs = build_root_system(*datum)
    group = weyl_group(rs)
    rng = random.Random(1)
    facets = [Facet(rs, f.I, w) for f in all_standard_facets(rs, include_empty=False) for w in rng.sample(group, 4)]
    for fP, fQ in itertools.product(facets, repeat=2):
        exists = any(maps_facet(w, fP, fQ) for w in group)
        sigma = match_facets(fP, fQ)
        assert (sigma is not None) == exists
        if sigma is not None:
            assert maps_facet(sigma, fP, fQ)
            assert sigma.word == reduced_word(rs, sigma)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_SYSTEMS), st.data())
def test_matched_sigma_is_isometry(datum, data):
    rs = build_root_system(*datum)
    word = data.draw(st.lists(st.integers(1, rs.rank), max_size=6))
    I = data.draw(st.sets(st.integers(1, rs.rank), min_size=1))
    fP = make_facet(rs, I)
    fQ = Facet(rs, frozenset(I), weyl_element(rs, word))
    sigma = match_facets(fP, fQ)
    x = data.draw(st.lists(rationals, min_size=rs.rank, max_size=rs.rank))
    y = data.draw(st.lists(rationals, min_size=rs.rank, max_size=rs.rank))
    assert bilinear(rs, sigma.apply(x), sigma.apply(y)) == bilinear(rs, x, y)


# ------------------------------------------------------------------ norms


def test_y_norm_examples():
    assert y_norm_expand(profile_from_invariants(make_facet(A1, {1}), {1: 1})) == Fraction(1, 2)
    assert y_norm_expand(profile_from_invariants(make_facet(A2, {1}), {1: 5})) == Fraction(25, 6)
    assert y_norm_expand(profile_from_invariants(make_facet(A2, {1, 2}), {1: 0, 2: 0})) == 0


def test_y_norm_random(small_rs):
    rng = random.Random(21)
    for _ in range(30):
        I = {i for i in range(1, small_rs.rank + 1) if rng.random() < 0.6} or {1}
        f = make_facet(small_rs, I)
        prof = profile_from_invariants(f, {i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in I})
        y = y_vector(prof)
        assert y_norm_expand(prof) == bilinear(small_rs, y, y)


# ------------------------------------------------------------------ certificates


def _a1_pair(nP=1, nQ=1):
    P = make_facet(A1, {1})
    Q = Facet(A1, frozenset({1}), weyl_element(A1, [1]))
    return profile_from_invariants(P, {1: nP}), profile_from_invariants(Q, {1: nQ}), match_facets(P, Q)


def test_certificate_a1_rejects():
    pP, pQ, sigma = _a1_pair()
    cert = contradiction_certificate(pP, pQ, sigma, Fraction(1, 10), s0_estimate(A1))
    assert cert.verdict == "reject"
    assert "1 <= s0 (1+eps)" in cert.reason
    assert cert.recheck() == "reject"
    assert not cert.star2_holds


def test_certificate_same_facet_accepts():
    f = make_facet(A2, {1, 2})
    prof = numerical_invariants(f, degree_vector(A2, [1, 1]))
    cert = contradiction_certificate(prof, prof, match_facets(f, f), Fraction(1, 100), Fraction(1, 2))
    assert cert.verdict == "accept" and cert.same_facet and cert.star2_holds


def test_certificate_large_epsilon_accepts_with_warning():
    P = make_facet(A2, {1})
    Q = Facet(A2, frozenset({1}), weyl_element(A2, [1]))
    pP, pQ = profile_from_invariants(P, {1: 1}), profile_from_invariants(Q, {1: 1})
    sigma = match_facets(P, Q)
    cert = contradiction_certificate(pP, pQ, sigma, Fraction(3, 2), Fraction(1, 2))
    assert cert.verdict == "accept"
    assert any("too large" in w for w in cert.warnings)
    # threshold eps* = 1/s0 - 1 = 1 is the boundary
    assert contradiction_certificate(pP, pQ, sigma, 1, Fraction(1, 2)).verdict == "accept"
    assert contradiction_certificate(pP, pQ, sigma, Fraction(99, 100), Fraction(1, 2)).verdict == "reject"


def test_certificate_errors():
    pP, pQ, sigma = _a1_pair(nP=3, nQ=1)
    with pytest.raises(ValidationError) as exc:
        contradiction_certificate(pP, pQ, sigma, Fraction(1, 10), -1)
    assert exc.value.location == "vertex 1"
    pP, pQ, sigma = _a1_pair(nP=-1, nQ=1)
    with pytest.raises(PreconditionError):
        contradiction_certificate(pP, pQ, sigma, Fraction(1, 10), -1)
    pP, pQ, _ = _a1_pair()
    with pytest.raises(PreconditionError):
        contradiction_certificate(pP, pQ, weyl_element(A1, []), Fraction(1, 10), -1)
    with pytest.raises(ValidationError):
        contradiction_certificate(pP, pQ, _a1_pair()[2], 0, -1)


@settings(max_examples=80, deadline=None)
@given(
    st.builds(Fraction, st.integers(1, 40), st.integers(1, 20)),
    st.builds(Fraction, st.integers(-20, 20), st.integers(1, 20)).filter(lambda x: -1 <= x < 1),
    st.lists(st.integers(0, 9), min_size=2, max_size=2),
)
def test_certificate_soundness(eps, s0, n):
    P = make_facet(A2, {1, 2})
    Q = Facet(A2, frozenset({1, 2}), weyl_element(A2, [1, 2]))
    nQ = {1: n[0], 2: n[1]}
    nP = {1: n[0], 2: n[1]}
    cert = contradiction_certificate(
        profile_from_invariants(P, nP), profile_from_invariants(Q, nQ), match_facets(P, Q), eps, s0
    )
    assert cert.recheck() == cert.verdict
    assert cert.norm_P <= (1 + cert.epsilon) ** 2 * cert.norm_Q
    if cert.verdict == "reject":
        assert 1 > s0 * (1 + eps)
    else:
        assert 1 <= s0 * (1 + eps)


# ------------------------------------------------------------------ stabilization


def test_stabilization_examples():
    seq = make_sequence(2, [(k, [1, 2], [2**k, 2**k]) for k in range(4)])
    assert detect_stabilization(seq, Fraction(1, 100)) == (0, 1)
    seq = make_sequence(2, [(k, [1, 2], [2**k + 1, 2**k]) for k in range(4)])
    assert detect_stabilization(seq, Fraction(1, 10)) == (0, 1)
    seq = make_sequence(2, [(0, [1], [1]), (1, [2], [1])])
    assert detect_stabilization(seq, Fraction(1, 10)) is None


def test_stabilization_uses_most_frequent_facet():
    entries = [(0, [1], [1]), (1, [2], [8]), (2, [2], [16]), (3, [1], [100]), (4, [2], [64])]
    seq = make_sequence(2, entries)
    # facet {2} occurs three times; normalized values 4, 4, 4
    assert detect_stabilization(seq, Fraction(1, 10)) == (1, 2)


def test_stabilization_growing_sequence_has_no_window():
    seq = make_sequence(3, [(k, [1], [3**k * (k + 1)]) for k in range(5)])
    assert detect_stabilization(seq, Fraction(1, 10)) is None


def test_stabilization_errors():
    with pytest.raises(ValidationError):
        detect_stabilization(make_sequence(2, []), Fraction(1, 10))
    with pytest.raises(ValidationError):
        make_sequence(2, [(1, [1], [1]), (1, [1], [1])])
    with pytest.raises(ValidationError):
        make_sequence(4, [(0, [1], [1])])
    with pytest.raises(ValidationError):
        make_sequence(2, [(0, [1, 2], [1])])
    with pytest.raises(ValidationError):
        detect_stabilization(make_sequence(2, [(0, [1], [1])]), 0)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.builds(Fraction, st.integers(1, 50), st.integers(1, 9)), min_size=1, max_size=3),
    st.builds(Fraction, st.integers(1, 20), st.integers(1, 100)),
    st.booleans(),
)
def test_stabilization_on_convergent_sequences(p, limit, eps, from_above):
    """n~_k = L (1 +- 2^-k) converges to L > 0; a window must appear once 2^-k << eps."""
    n_levels = 12 + int(1 / eps).bit_length()
    entries = []
    for k in range(n_levels):
        tilde = [x * (1 + (1 if from_above else -1) * Fraction(1, 2**k)) for x in limit]
        entries.append((k, list(range(1, len(limit) + 1)), [t * p**k for t in tilde]))
    pair = detect_stabilization(make_sequence(p, entries), eps)
    assert pair is not None
    a, b = pair
    scale_a, scale_b = Fraction(p) ** a, Fraction(p) ** b
    assert all(entries[b][2][i] / scale_b <= (1 + eps) * entries[a][2][i] / scale_a for i in range(len(limit)))
