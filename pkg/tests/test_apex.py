import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from newtonmu.apex import (edge_convenience, edges_at_vertex, find_apex,
                           mu_constant_test, vertex_location_check)
from newtonmu.newton_number import newton_number_set
from newtonmu.polyhedra import SupportError, newton_polyhedron, support_set
from corpus import (boundary_plane_augmentation, bs_base_support,
                    bs_deformed_support, exe2d_augmented, exe2d_support,
                    exe3d_augmented, exe3d_support, random_convenient_support)


def test_bs_vertex_edges_and_apex():
    f_sup, F_sup = bs_base_support(), bs_deformed_support()
    edges = edges_at_vertex(newton_polyhedron(F_sup), (1, 6, 0))
    assert len(edges) == 3
    cert = find_apex(f_sup, F_sup, (1, 6, 0))
    assert cert.good and cert.i == 3 and cert.beta == (0, 7, 1)
    res = mu_constant_test(f_sup, F_sup)
    assert res.verdict and len(res.certificates) == 1
    assert res.nu_s == res.nu_s_prime == 364
    assert vertex_location_check(f_sup, F_sup) is True


def test_two_apexes():
    s = support_set(3, [(2, 0, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 3)])
    sp = s.augment([(0, 0, 2)])
    cert = find_apex(s, sp, (0, 0, 2))
    # both axis directions work; the report keeps every one, smallest axis first
    assert cert.good and cert.i == 1 and cert.beta == (1, 0, 1)
    assert cert.good_pairs == ((1, (1, 0, 1)), (2, (0, 1, 1)))
    res = mu_constant_test(s, sp)
    assert res.verdict and res.nu_s == res.nu_s_prime


def test_2d_sweep_verdicts():
    cases = [(F(1, 4), False, "not"), (F(1, 2), True, "convenient"),
             (F(3, 4), False, "strict")]
    for a, want_verdict, want_cls in cases:
        s, sp = exe2d_support(a), exe2d_augmented(a)
        res = mu_constant_test(s, sp)
        assert res.verdict == want_verdict
        assert res.verdict == (res.nu_s == res.nu_s_prime)
        cert = res.certificates[0]
        ec = edge_convenience(cert.edge, s, (1,), (1, 2))
        assert ec.classification == want_cls and not ec.vacuous
        if a == F(3, 4):
            assert cert.beta == (F(3, 8), F(3, 2)) and not cert.good


def test_3d_sweep_verdicts():
    for a in [F(1, 4), F(1, 2), F(3, 4)]:
        res = mu_constant_test(exe3d_support(a), exe3d_augmented(a))
        assert res.verdict
        assert (3, (0, 0, 1)) in res.certificates[0].good_pairs


def test_equal_supports_trivially_constant():
    f_sup = bs_base_support()
    res = mu_constant_test(f_sup, f_sup)
    assert res.verdict and res.certificates == ()


def test_interior_vertex_drops_nu():
    s = support_set(2, [(3, 0), (0, 3)])
    sp = s.augment([(1, 1)])
    res = mu_constant_test(s, sp)
    assert not res.verdict and res.certificates == ()
    assert res.nu_s_prime < res.nu_s
    with pytest.raises(SupportError):
        vertex_location_check(s, sp)


@given(st.integers(min_value=0, max_value=2 ** 30),
       st.integers(min_value=2, max_value=3))
@settings(deadline=None, max_examples=60)
def test_verdict_tracks_nu_equality(seed, n):
    rng = random.Random(seed)
    s = random_convenient_support(rng, n, max_intercept=5, extra=2)
    sp = boundary_plane_augmentation(rng, s)
    if sp is None:
        return
    res = mu_constant_test(s, sp)
    assert res.verdict == (res.nu_s == res.nu_s_prime)
    assert res.nu_s == newton_number_set(s)
    assert res.nu_s_prime == newton_number_set(sp)
