"""Tests for the closed-form genus and orbit-count formulas."""

from math import gcd

import pytest

from gk2genus import formulas as fm


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_prime_power_and_basic_invariants():
    assert fm.prime_power(8) == (2, 3)
    assert fm.prime_power(25) == (5, 2)
    with pytest.raises(ValueError):
        fm.prime_power(12)
    assert fm.hermitian_genus(4) == 6
    assert fm.hermitian_genus(9) == 36
    assert fm.m_of(4, 5) == 205
    assert fm.m_of(2, 3) == 3
    with pytest.raises(ValueError):
        fm.m_of(4, 2)


def test_total_field_genus():
    # The n = 3 member recovers the classical values of its family.
    assert fm.kn_genus(2, 3) == 10
    assert fm.kn_genus(3, 3) == 99
    assert fm.kn_genus(5, 3) == 1450
    # Trivial subgroup: no quotient at all, ratio m, full orbit count.
    q, n = 4, 5
    g = fm.lift_genus(q, n, fm.hermitian_genus(q), q**3 + 1, 1)
    assert g == fm.kn_genus(q, n)
    assert g <= fm.genus_upper_bound(q, n)


def test_lift_genus_known_chains():
    # Elementary abelian pair of order 2 at q = 4 lifts to 72 through the
    # kernel subgroup of order 41.
    g_quot, n_orb = fm.elementary_abelian_quotient(4, 1, 1)
    assert (g_quot, n_orb) == (2, 33)
    assert fm.lift_genus(4, 5, g_quot, n_orb, 41) == 72
    # A tame group of order 5 with quotient genus 2 lifts to 1532, and the
    # tame rule must agree with the generic rule fed by the orbit identity.
    n_orb = fm.n_orbits_tame(4, 5, 2)
    assert n_orb == 13
    assert fm.lift_genus(4, 5, 2, 13, 1) == 1532
    assert fm.lift_genus_tame(4, 5, 2, 5, 1) == 1532


def test_lift_tame_matches_generic_rule():
    # For tame orders the two lifting routes agree for every admissible
    # kernel order, whatever the quotient genus.
    for q, n in [(2, 3), (4, 5), (5, 3), (9, 7)]:
        m = fm.m_of(q, n)
        p, _ = fm.prime_power(q)
        for order in [1, 3, 5, 7, 15, 21]:
            if order % p == 0:
                continue
            for g_quot in [0, 1, 2, 5]:
                total = (q - 1) * (q + 1) ** 2 - order * (2 * g_quot - 2)
                if total <= 0 or total % order != 0:
                    continue
                n_orb = fm.n_orbits_tame(q, order, g_quot)
                for t in divisors(m):
                    try:
                        lifted = fm.lift_genus(q, n, g_quot, n_orb, t)
                    except ValueError:
                        with pytest.raises(ValueError):
                            fm.lift_genus_tame(q, n, g_quot, order, t)
                        continue
                    assert lifted == fm.lift_genus_tame(q, n, g_quot, order, t)


def test_admissible_cm_orders():
    assert fm.admissible_cm_orders(4, 5, 1) == [1, 5, 41, 205]
    assert fm.admissible_cm_orders(4, 5, 5) == [5, 205]
    assert fm.admissible_cm_orders(2, 3, 3) == [3]
    # When 3 divides both m and q + 1 the small kernel orders drop out.
    assert fm.admissible_cm_orders(5, 3, 3) == [3, 21]
    # Coprime m and q + 1 make every divisor of m admissible for every s.
    for s in divisors(4 + 1):
        assert fm.admissible_cm_orders(4, 7, s) == divisors(fm.m_of(4, 7))


def test_elementary_abelian_quotient_values():
    assert fm.elementary_abelian_quotient(4, 1, 1) == (2, 33)
    assert fm.elementary_abelian_quotient(4, 2, 1) == (0, 17)
    assert fm.elementary_abelian_quotient(4, 1, 5) == (0, 9)
    with pytest.raises(ValueError):
        fm.elementary_abelian_quotient(4, 3, 1)
    with pytest.raises(ValueError):
        fm.elementary_abelian_quotient(4, 1, 3)


def test_sl2_two_quotient_values():
    assert fm.sl2_two_quotient(4, 1) == (0, 12)
    assert fm.sl2_two_quotient(4, 5) == (0, 4)
    assert fm.sl2_two_quotient(8, 1) == (3, 86)
    assert fm.sl2_two_quotient(8, 3) == (0, 32)
    assert fm.sl2_two_quotient(8, 9) == (0, 12)


def test_sl2_two_rejected_variant_disagrees():
    info = fm.ERRATA["sl2_two_orbit_count"]
    q, w = info["witness"]["q"], info["witness"]["w"]
    _, adopted = fm.sl2_two_quotient(q, w)
    rejected = fm.sl2_two_orbit_count_rejected(q, w)
    assert adopted == info["witness"]["adopted_n"]
    assert rejected == info["witness"]["rejected_n"]
    assert adopted != rejected
    # The rejected count is impossible: summing fixed points, the identity
    # contributes q^3 + 1 + q^3 - q and every other element at most q + 1,
    # which caps the orbit count well below the rejected value.
    order = 6 * w
    points = 2 * q**3 + 1 - q
    assert rejected * order > points + (order - 1) * (q + 1)
    assert adopted * order <= points + (order - 1) * (q + 1)


def test_dihedral_quotient_even_values():
    assert fm.dihedral_quotient_even(4, 3, 1) == (0, 12)
    assert fm.dihedral_quotient_even(4, 3, 5) == (0, 4)
    # t = 1 degenerates to the elementary abelian family with f = 1.
    for q in [4, 8, 16]:
        for w in divisors(q + 1):
            assert fm.dihedral_quotient_even(q, 1, w) == fm.elementary_abelian_quotient(
                q, 1, w
            )


def test_alt5_matches_subfield_family():
    for q in [4, 16, 64, 256]:
        for w in divisors(q + 1):
            assert fm.alt5_quotient_even(q, w) == fm.sl2_subfield_quotient_even(q, 2, w)


def test_alt4_matches_elation_semidirect():
    assert fm.alt4_quotient_even(4, 1) == (0, 7)
    for q in [4, 16, 64]:
        for w in divisors(q + 1):
            assert fm.alt4_quotient_even(q, w) == fm.elation_semidirect_quotient(
                q, 2, 3, w
            )


def test_point_stabilizer_subsumes_even_families():
    # With mu = w the point stabilizer family reproduces the elementary
    # abelian one, and with mu = d w the semidirect one.
    for q in [4, 8, 16]:
        _, h = fm.prime_power(q)
        for w in divisors(q + 1):
            for f in range(1, h + 1):
                assert fm.point_stabilizer_quotient(q, w, f) == fm.elementary_abelian_quotient(q, f, w)
                for d in divisors(gcd(2**f - 1, q - 1)):
                    if d > 1:
                        assert fm.point_stabilizer_quotient(
                            q, d * w, f
                        ) == fm.elation_semidirect_quotient(q, f, d, w)


def test_point_stabilizer_quotient_values():
    # Cyclic tame case u = 0: full torus order q^2 - 1 gives genus 0.
    assert fm.point_stabilizer_quotient(9, 80, 0) == (0, 12)
    g, _ = fm.point_stabilizer_quotient(9, 1, 0)
    assert g == fm.hermitian_genus(9)
    with pytest.raises(ValueError):
        fm.point_stabilizer_quotient(9, 7, 0)
    with pytest.raises(ValueError):
        fm.point_stabilizer_quotient(9, 1, 3)


def test_sl2_subfield_quotient_values():
    assert fm.sl2_subfield_quotient(25, 1, 1) == (0, 132)
    assert fm.sl2_subfield_quotient(9, 1, 1) == (0, 32)
    # k = h reproduces the full special subgroup acting with two orbits on
    # the curve points, one on each short orbit of the chord stabilizer.
    g, n = fm.sl2_subfield_quotient(9, 2, 1)
    assert (g, n) == (0, 2)


def test_sl2_split_ext_quotient_values():
    assert fm.sl2_split_ext_quotient(9, 1, 1) == (0, 17)
    g, n = fm.sl2_split_ext_quotient(25, 1, 1)
    assert g == 0 and n > 0


def test_unitary_pm_quotient_values_and_erratum():
    assert fm.unitary_pm_quotient(9, 2, 1) == (0, 2)
    info = fm.ERRATA["unitary_pm_orbit_count"]
    q, k, w = info["witness"]["q"], info["witness"]["k"], info["witness"]["w"]
    _, adopted = fm.unitary_pm_quotient(q, k, w)
    _, rejected = fm.unitary_pm_quotient(q, k, w, orbit_variant="rejected")
    assert adopted == info["witness"]["adopted_n"]
    assert rejected == info["witness"]["rejected_n"]
    # The group contains the full special subgroup, which already acts
    # transitively on both short orbits, so more than two orbits is absurd.
    assert adopted == 2
    assert rejected > 2


def test_sl2_five_quotient_char3_values():
    assert fm.sl2_five_quotient_char3(9, 1) == (0, 7)
    assert fm.sl2_five_quotient_char3(9, 5) == (0, 3)
    with pytest.raises(ValueError):
        fm.sl2_five_quotient_char3(13, 1)
    with pytest.raises(ValueError):
        fm.sl2_five_quotient_char3(5, 1)


def test_sl2_five_erratum():
    info = fm.ERRATA["sl2_five_orbit_count"]
    q, w = info["witness"]["q"], info["witness"]["w"]
    _, adopted = fm.sl2_five_quotient_char3(q, w)
    rejected = fm.sl2_five_orbit_count_rejected(q, w)
    assert adopted == info["witness"]["adopted_n"]
    assert rejected == info["witness"]["rejected_n"]
    # The rejected long-orbit term forgets the order of the special linear
    # factor, so it overcounts whenever the group is nontrivial.
    assert rejected > adopted


def test_triangle_quotient_even_values():
    # t = 1 collapses onto the elementary abelian family with f = 1 since
    # the swap involution is an elation when the characteristic is two.
    for q in [4, 8, 16]:
        for w in divisors(q + 1):
            assert fm.triangle_quotient_even(q, 1, w) == fm.elementary_abelian_quotient(
                q, 1, w
            )
    g, n = fm.triangle_quotient_even(4, 5, 5)
    assert g == 0 and n == 3


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        fm.sl2_two_quotient(5, 1)
    with pytest.raises(ValueError):
        fm.sl2_subfield_quotient_even(8, 2, 1)
    with pytest.raises(ValueError):
        fm.elation_semidirect_quotient(4, 2, 5, 1)
    with pytest.raises(ValueError):
        fm.sl2_subfield_quotient(13, 2, 1)
    with pytest.raises(ValueError):
        fm.sl2_split_ext_quotient(9, 2, 1)
    with pytest.raises(ValueError):
        fm.unitary_pm_quotient(9, 1, 1)
    with pytest.raises(ValueError):
        fm.unitary_pm_quotient(8, 3, 1)


def test_every_even_family_is_integral_in_range():
    # Exhaustive integrality sweep over the advertised parameter ranges.
    for q in [4, 8, 16, 32, 64]:
        _, h = fm.prime_power(q)
        for w in divisors(q + 1):
            for f in range(1, h + 1):
                fm.elementary_abelian_quotient(q, f, w)
                for d in divisors(fm.gcd(2**f - 1, q - 1)):
                    if d > 1:
                        fm.elation_semidirect_quotient(q, f, d, w)
            fm.sl2_two_quotient(q, w)
            for f in divisors(h):
                if f > 1:
                    fm.sl2_subfield_quotient_even(q, f, w)
            for t in divisors(q - 1):
                fm.dihedral_quotient_even(q, t, w)
            for t in divisors(q + 1):
                fm.triangle_quotient_even(q, t, w)


def test_every_odd_family_is_integral_in_range():
    for q in [5, 9, 13, 25, 29, 49]:
        p, h = fm.prime_power(q)
        for w in divisors((q + 1) // 2):
            for k in divisors(h):
                fm.sl2_subfield_quotient(q, k, w)
                if (h // k) % 2 == 0:
                    fm.sl2_split_ext_quotient(q, k, w)
                else:
                    fm.unitary_pm_quotient(q, k, w)
            if p == 3 and (q * q - 1) % 5 == 0:
                fm.sl2_five_quotient_char3(q, w)
        for mu in divisors(q * q - 1):
            for u in range(0, h + 1):
                try:
                    fm.point_stabilizer_quotient(q, mu, u)
                except ValueError:
                    # Non-integral orbit counts mark combinations that no
                    # actual subgroup realizes; they are filtered upstream.
                    pass
