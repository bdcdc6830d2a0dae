import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypertoric import corpus
from hypertoric.circuits import classify_character, discriminantal, enumerate_circuits, pairing
from hypertoric.errors import BadWallConfiguration, NotOnMomentFibre, ValidationError
from hypertoric.semistab import (CotangentPoint, act, criteria_agree, flop_dimensions,
                                 halfspace_semistable, konno_semistable, moment_zero,
                                 sample_points, wall_inclusion_check, x_coordinates,
                                 zero_pattern_points)
from hypertoric.torusdata import make_character


def P(z, w):
    return CotangentPoint(z, w)


def test_moment_examples():
    a2 = corpus.am(2)
    assert moment_zero(a2, P((1, 2, 3), ("2", 1, "2/3")))
    assert moment_zero(corpus.tpn(3), P((1, 0, 0), (0, 0, 0)))
    assert not moment_zero(corpus.am(1), P((1, 1), (1, 0)))
    with pytest.raises(ValidationError):
        moment_zero(a2, P((1, 2), (0, 0)))


def test_diagonal_semistable_iff_z_nonzero():
    td = corpus.tpn(3)
    ch = td.character("default")
    for p in sample_points(td, 300, seed=2):
        assert konno_semistable(td, ch, p) == any(p.z)
    assert not konno_semistable(td, ch, P((0, 0, 0), (1, -1, 0)))
    assert konno_semistable(td, ch, P((0, 1, 0), (0, 0, 5)))


def test_am_unstable_patterns():
    # lift (1,...,m+1): for i < j the pair (z_j, w_i) may not vanish together
    td = corpus.am(3)
    ch = td.character("default")
    for p in zero_pattern_points(td, seed=1):
        expect = all(p.z[j] or p.w[i] for i in range(4) for j in range(i + 1, 4))
        assert konno_semistable(td, ch, p) == expect


def test_zero_character_is_vacuous():
    td = corpus.ex23()
    ch = make_character(td, (0, 0, 0, 0))
    assert all(konno_semistable(td, ch, p) for p in zero_pattern_points(td))


def test_halfspace_examples():
    td = corpus.tpn(2)
    ch = td.character("default")
    p = P((0, 0), (1, 0))
    assert not halfspace_semistable(td, ch, p)
    assert not konno_semistable(td, ch, p)
    q = P((1, 2), (2, -1))
    assert halfspace_semistable(td, ch, q)
    a1 = corpus.am(1)
    assert halfspace_semistable(a1, a1.character("default"), P((0, 1), (0, 0)))
    assert not halfspace_semistable(a1, a1.character("default"), P((1, 0), (0, 0)))
    with pytest.raises(NotOnMomentFibre):
        halfspace_semistable(a1, a1.character("default"), P((1, 1), (1, 0)))


@pytest.mark.parametrize("name, lifts", [
    ("a2", [(1, 2, 3), (3, 2, 1), (1, 1, 3), (0, 0, 0), (2, 5, -1)]),
    ("diag3", [(1, 0, 0), (-2, 0, 0), (0, 0, 0)]),
    ("ex23", [(1, 1, 0, 0), (2, -1, 3, 1), (1, 0, 0, 0), (0, 0, 0, 0)]),
])
def test_criteria_agree(name, lifts):
    td = {"a2": corpus.am(2), "diag3": corpus.tpn(3), "ex23": corpus.ex23()}[name]
    pts = sample_points(td, 300, seed=11) + zero_pattern_points(td, seed=3)
    for lift in lifts:
        rep = criteria_agree(td, make_character(td, lift), pts)
        assert rep.ok, rep.disagreements[:3]
    assert criteria_agree(td, make_character(td, lifts[0]), []).checked == 0


def test_samples_lie_on_fibre_and_cover_patterns():
    td = corpus.ex23()
    pts = zero_pattern_points(td)
    assert len(pts) == 2 ** 8
    for bits, p in zip(range(256), pts):
        assert moment_zero(td, p)
    for p in sample_points(td, 200, seed=4):
        assert moment_zero(td, p)


nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda x: x != 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(nonzero, min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_torus_action_invariance(seed, s, lift):
    td = corpus.ex23()
    ch = make_character(td, lift)
    for p in sample_points(td, 5, seed=seed):
        q = act(td, s, p)
        assert moment_zero(td, q)
        assert konno_semistable(td, ch, q) == konno_semistable(td, ch, p)
        assert halfspace_semistable(td, ch, q) == halfspace_semistable(td, ch, p)


def _chamber(td, ch, disc):
    return tuple((pairing(ch, disc.circuits[m[0]]) > 0) - (pairing(ch, disc.circuits[m[0]]) < 0)
                 for m in disc.merge)


def test_face_constancy_and_separation():
    for td in (corpus.am(2), corpus.ex23(), corpus.am(3)):
        disc = discriminantal(td)
        rng = random.Random(td.n)
        by_chamber = {}
        while sum(len(v) >= 2 for v in by_chamber.values()) < 5:
            ch = make_character(td, [rng.randint(-6, 6) for _ in range(td.n)])
            if classify_character(td, ch, disc).kind == "regular":
                by_chamber.setdefault(_chamber(td, ch, disc), []).append(ch)
        pts = sample_points(td, 200, seed=9) + zero_pattern_points(td, seed=9)
        verdicts = {}
        for key, chars in by_chamber.items():
            ref = [konno_semistable(td, chars[0], p) for p in pts]
            for other in chars[1:]:
                assert [konno_semistable(td, other, p) for p in pts] == ref
            verdicts[key] = ref
        crossed = 0
        for k1, v1 in verdicts.items():
            for k2, v2 in verdicts.items():
                if sum(a != b for a, b in zip(k1, k2)) == 1:
                    crossed += 1
                    assert v1 != v2, (td.name, k1, k2)
        assert crossed > 0


def test_wall_inclusion_a2():
    td = corpus.am(2)
    eta, theta, eta2 = (make_character(td, l) for l in ((1, 2, 3), (2, 2, 3), (3, 2, 4)))
    pts = sample_points(td, 400, seed=1) + zero_pattern_points(td, seed=2)
    rep = wall_inclusion_check(td, eta, theta, eta2, pts)
    assert rep.ok and rep.checked == len(pts)
    # T*E_C points that are theta-semistable are unstable on both sides
    p = P((0, 0, 1), (0, 0, 0))
    assert konno_semistable(td, theta, p)
    assert not konno_semistable(td, eta, p) and not konno_semistable(td, eta2, p)
    with pytest.raises(BadWallConfiguration):
        wall_inclusion_check(td, eta, eta, eta2, pts)
    with pytest.raises(BadWallConfiguration):
        wall_inclusion_check(td, eta, theta, make_character(td, (3, 2, 1)), pts)


def test_wall_inclusion_ex23_every_wall():
    td = corpus.ex23()
    disc = discriminantal(td)
    pts = sample_points(td, 300, seed=3) + zero_pattern_points(td, seed=3)
    found = 0
    grid = range(-3, 4)
    chars = [make_character(td, (a, b, c, 0)) for a in grid for b in grid for c in grid]
    kinds = [(ch, classify_character(td, ch, disc)) for ch in chars]
    for ch_t, cl in kinds:
        if cl.kind != "subregular":
            continue
        w = cl.walls[0]
        normal = disc.circuits[disc.merge[w][0]]
        sides = {}
        for ch, k in kinds:
            if k.kind == "regular":
                rest = _chamber(td, ch, disc)
                base = _chamber(td, ch_t, disc)
                if all(r == b for i, (r, b) in enumerate(zip(rest, base)) if i != w):
                    sides.setdefault(pairing(ch, normal) > 0, ch)
        if len(sides) == 2:
            rep = wall_inclusion_check(td, sides[True], ch_t, sides[False], pts)
            assert rep.ok
            found += 1
        if found >= 6:
            break
    assert found >= 3


def test_flop_dimensions():
    td = corpus.am(3)
    for c in enumerate_circuits(td):
        f = flop_dimensions(td, c)
        assert (f.dim_M, f.dim_B_theta, f.dim_B_eta_theta, f.fibre_dim) == (2, 0, 1, 0)
    for n in (2, 3, 4, 5):
        td = corpus.tpn(n)
        f = flop_dimensions(td, enumerate_circuits(td)[0])
        assert (f.dim_M, f.dim_B_theta, f.dim_B_eta_theta, f.fibre_dim) == \
            (2 * (n - 1), 0, n - 1, n - 2)
    td = corpus.ex23()
    f = {c.label(): flop_dimensions(td, c) for c in enumerate_circuits(td)}["{1,2,4}"]
    assert (f.dim_M, f.dim_B_theta, f.dim_B_eta_theta, f.fibre_dim) == (4, 0, 2, 1)
    for td in (corpus.am(2), corpus.tpn(4), corpus.ex23()):
        for c in enumerate_circuits(td):
            f = flop_dimensions(td, c)
            assert f.dim_Z0 == f.dim_B_theta + 2 * (f.size - 1)
            assert f.dim_B_eta_theta + f.fibre_dim == f.dim_M - 1


def test_x_coordinates_order():
    td = corpus.am(2)
    from hypertoric.circuits import orient_circuit
    c = enumerate_circuits(td)[0]
    oc = orient_circuit(c, td.character("default"))
    p = P((1, 2, 3), (4, 5, 6))
    assert x_coordinates(oc, p) == (Fraction(2), Fraction(4))
