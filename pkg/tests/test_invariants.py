import random
from fractions import Fraction

import pytest

from platlab.braid import ordinary_closure
from platlab.corpus import (hopf_plat, parse_commutator_braid, random_plats, whitehead_plat,
                            whitehead_reference)
from platlab.diagram import from_gauss, linking_matrix, switch, unlink
from platlab.invariants import (ConwayPolynomial, ResourceError, SingularLink, conway,
                                conway_coefficient, finite_type_profile, linking_entry, mu_bar,
                                mu_raw, mu_vanish_through, smooth, unlink_profile, vassiliev_eval)

from oracles import skein_conway

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
FIGURE_EIGHT = "O1- U2- O3+ U4+ O2- U1- O4+ U3+"


def borromean():
    return ordinary_closure(parse_commutator_braid("[A(1,2),A(2,3)]", 3))


def determinant(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    n, det = len(m), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i]), None)
        if p is None:
            return 0
        if p != i:
            m[i], m[p] = m[p], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            m[r] = [a - f * b for a, b in zip(m[r], m[i])]
    return int(det)


def linking_cofactor(lk):
    """Leading Conway coefficient of a link, from its linking numbers alone."""
    n = len(lk)
    lap = [[(sum(lk[i]) if i == j else -lk[i][j]) for j in range(n)] for i in range(n)]
    return determinant([row[1:] for row in lap[1:]]) if n > 1 else 1


# -- Milnor invariants ---------------------------------------------------------

def test_mu_length_two_is_linking_number():
    for _, d in random_plats(40, seed=12):
        lk = linking_matrix(d)
        for i in range(1, d.component_count + 1):
            for j in range(1, d.component_count + 1):
                if i != j:
                    assert mu_raw(d, (i, j)) == lk[i - 1][j - 1]


def test_hopf_mu():
    v = mu_bar(hopf_plat(), (1, 2))
    assert abs(v.value) == 1 and v.delta == 0


def test_whitehead_mu_1122():
    for d in (whitehead_plat(), whitehead_reference()):
        assert mu_bar(d, (1, 2)).value == 0
        assert abs(mu_bar(d, (1, 1, 2, 2)).value) == 1
        assert mu_vanish_through(d, 3)
        assert not mu_vanish_through(d, 4)


def test_borromean_mu_123():
    d = borromean()
    v = mu_bar(d, (1, 2, 3))
    assert abs(v.value) == 1 and v.delta == 0
    assert mu_vanish_through(d, 2) and not mu_vanish_through(d, 3)


def test_mu_bar_reduced_modulo_indeterminacy():
    d = hopf_plat()
    # a length-three invariant of the Hopf link is only defined mod lk = 1
    v = mu_bar(d, (1, 2, 2))
    assert v.delta == 1 and v.value == 0


def test_mu_index_validation():
    with pytest.raises(ValueError):
        mu_bar(hopf_plat(), (1,))
    with pytest.raises(ValueError):
        mu_bar(hopf_plat(), (1, 3))


def test_unlink_mu_vanishes():
    assert mu_vanish_through(unlink(3), 5)


# -- Conway polynomial ----------------------------------------------------------

def test_conway_known_values():
    assert conway(unlink(1)) == ConwayPolynomial((1,))
    assert conway(unlink(2)) == ConwayPolynomial()
    assert conway(from_gauss(TREFOIL)) == ConwayPolynomial((1, 0, 1))
    assert conway(from_gauss(FIGURE_EIGHT)) == ConwayPolynomial((1, 0, -1))
    assert str(conway(whitehead_reference())) in ("z^3", "-z^3")
    assert str(conway(borromean())) == "z^4"


def test_conway_hopf_sign_matches_linking():
    d = hopf_plat()
    lk = linking_matrix(d)[0][1]
    assert conway(d) == ConwayPolynomial((0, lk))


def test_conway_leading_term_from_linking_numbers():
    for _, d in random_plats(40, seed=13, max_crossings=10):
        n = d.component_count
        poly = conway(d, degree=n - 1)
        assert all(poly[k] == 0 for k in range(n - 1))
        assert poly[n - 1] == linking_cofactor(linking_matrix(d))


def test_skein_relation_on_random_crossings():
    rng = random.Random(14)
    for _, d in random_plats(25, seed=15, max_crossings=10):
        if not d.crossing_count:
            continue
        c = rng.randrange(d.crossing_count)
        lhs = conway(d)
        rhs = conway(switch(d, [c])) + conway(smooth(d, c)).shifted(d.signs[c])
        assert lhs == rhs


def test_conway_matches_bare_skein_recursion():
    for _, d in random_plats(30, seed=21, max_crossings=12):
        assert conway(d).coefficients == skein_conway(d)
    assert skein_conway(whitehead_reference()) == conway(whitehead_reference()).coefficients


def test_conway_bound_enforced():
    d = whitehead_plat()
    with pytest.raises(ResourceError):
        conway(d, bound=2)
    assert conway(d, bound=2, degree=1) == ConwayPolynomial()


def test_truncated_conway_agrees_with_full():
    for _, d in random_plats(20, seed=16, max_crossings=10):
        full = conway(d)
        for k in range(4):
            assert conway(d, degree=k)[k] == full[k]


# -- finite type -------------------------------------------------------------

def test_vassiliev_order_bound():
    rng = random.Random(17)
    for m in range(3):
        f = conway_coefficient(m)
        for _, d in random_plats(10, seed=18 + m, max_crossings=10):
            if d.crossing_count < m + 1:
                continue
            pts = rng.sample(range(d.crossing_count), m + 1)
            assert vassiliev_eval(f, SingularLink(d, frozenset(pts))) == 0


def test_linking_is_order_one():
    rng = random.Random(19)
    f = linking_entry(1, 2)
    for _, d in random_plats(15, seed=20, max_crossings=10):
        if d.crossing_count < 2:
            continue
        pts = rng.sample(range(d.crossing_count), 2)
        assert vassiliev_eval(f, SingularLink(d, frozenset(pts))) == 0


def test_singular_link_validation():
    with pytest.raises(ValueError):
        SingularLink(hopf_plat(), frozenset({7}))


def test_profiles():
    assert unlink_profile(1, 2).conway == (1, 0, 0)
    assert unlink_profile(2, 0).linking is None
    assert finite_type_profile(unlink(2), 2).matches_unlink
    assert not finite_type_profile(hopf_plat(), 1).matches_unlink
    assert finite_type_profile(hopf_plat(), 0).matches_unlink
    assert finite_type_profile(whitehead_plat(), 2).matches_unlink
    assert not finite_type_profile(whitehead_plat(), 3).matches_unlink
    with pytest.raises(ValueError):
        finite_type_profile(hopf_plat(), -1)
