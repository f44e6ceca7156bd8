import json

import pytest

from platlab.braid import identity, parse_braid, plat_closure
from platlab.corpus import (brunnian_examples, certificate_corpus, hopf_plat, random_plats,
                            whitehead_plat, whitehead_reference)
from platlab.diagram import from_gauss, linking_matrix, unlink
from platlab.equivalence import (Certificate, Outcome, Target, corollary32_scan,
                                 first_nonvanishing_mu, is_brunnian, load_certificate,
                                 m_equivalence_implies_profile, recognize, search_certificates,
                                 sublinks, theorem1_check, verify_certificate)
from platlab.invariants import finite_type_profile, mu_bar, unlink_profile
from platlab.simplify import simplify

HOPF = "O1+ U2+ | U1+ O2+"
KINKED_UNKNOT = "O1+ U1+ O2- U2-"
# Two clasp pairs of the 5-crossing Whitehead diagram; switching either pair unclasps it.
WHITEHEAD_PAIRS = (frozenset({0, 3}), frozenset({2, 4}))


def whitehead_certificate():
    return Certificate(whitehead_reference(), WHITEHEAD_PAIRS, Target(unlink=2))


# -- certificates ------------------------------------------------------------------

def test_certificate_validation():
    h = from_gauss(HOPF)
    with pytest.raises(ValueError):
        Certificate(h, (), Target(unlink=2))
    with pytest.raises(ValueError):
        Certificate(h, (frozenset(),), Target(unlink=2))
    with pytest.raises(ValueError):
        Certificate(h, (frozenset({0}), frozenset({0, 1})), Target(unlink=2))
    with pytest.raises(ValueError):
        Certificate(h, (frozenset({5}),), Target(unlink=2))
    with pytest.raises(ValueError):
        Certificate(h, (frozenset({0}),), Target(unlink=3))
    with pytest.raises(ValueError):
        Target()


def test_selections_in_binary_counter_order():
    c = whitehead_certificate()
    assert [mask for mask, _ in c.selections()] == [1, 2, 3]
    assert [s for _, s in c.selections()][2] == WHITEHEAD_PAIRS[0] | WHITEHEAD_PAIRS[1]
    assert c.order == 1


def test_verify_kinked_unknot():
    c = Certificate(from_gauss(KINKED_UNKNOT), (frozenset({0}), frozenset({1})), Target(unlink=1))
    assert verify_certificate(c).outcome is Outcome.VERIFIED


def test_verify_hopf_single_crossing():
    c = Certificate(from_gauss(HOPF), (frozenset({0}),), Target(unlink=2))
    report = verify_certificate(c)
    assert report.outcome is Outcome.VERIFIED
    assert m_equivalence_implies_profile(c)


def test_verify_whitehead_one_trivial():
    c = whitehead_certificate()
    assert verify_certificate(c).outcome is Outcome.VERIFIED
    assert m_equivalence_implies_profile(c)
    assert finite_type_profile(c.diagram, 1) == unlink_profile(2, 1)


def test_verify_refutes_wrong_target():
    c = Certificate(whitehead_reference(), (frozenset({0}),), Target(unlink=2))
    report = verify_certificate(c)
    assert report.outcome is Outcome.REFUTED
    assert report.as_dict()["selections"][0]["outcome"] == "refuted"


def test_m_zero_certificates_keep_component_count_only():
    # switching one Hopf crossing changes lk, which order 0 does not see
    c = Certificate(from_gauss(HOPF), (frozenset({0}),), Target(unlink=2))
    assert m_equivalence_implies_profile(c, 0)
    assert not m_equivalence_implies_profile(c, 1)


def test_certificate_json_round_trip():
    c = whitehead_certificate()
    again = load_certificate(c.to_json())
    assert again.collection == c.collection
    assert verify_certificate(again).outcome is Outcome.VERIFIED
    with pytest.raises(ValueError):
        load_certificate(json.dumps({"pd": [], "collection": [[0]]}))
    with pytest.raises(ValueError):
        load_certificate("nope")


def test_verified_is_sound_on_corpus():
    for c in certificate_corpus(6, seed=31):
        report = verify_certificate(c)
        assert report.outcome is Outcome.VERIFIED
        for _, d in c.switched():
            assert linking_matrix(d) == linking_matrix(unlink(d.component_count))
            assert finite_type_profile(d, 3) == unlink_profile(d.component_count, 3)


def test_search_finds_hopf_certificate():
    [c] = search_certificates(from_gauss(HOPF), 0, Target(unlink=2))
    assert verify_certificate(c).outcome is Outcome.VERIFIED


def test_recognize_inconclusive_without_budget():
    d = plat_closure(parse_braid("A(1,2) A(1,2)^-1", 4))
    assert recognize(d, Target(unlink=2), budget=0) is Outcome.INCONCLUSIVE
    assert recognize(d, Target(unlink=2)) is Outcome.VERIFIED


# -- Brunnian links -------------------------------------------------------------

def test_brunnian_examples():
    assert is_brunnian(unlink(3))
    assert is_brunnian(from_gauss(HOPF))
    assert is_brunnian(whitehead_reference())
    assert not is_brunnian(plat_closure(parse_braid("A(1,2) A(4,5)", 6)))
    with pytest.raises(ValueError):
        is_brunnian(unlink(1))


def test_weak_brunnian_checks_one_deletions():
    d = plat_closure(parse_braid("A(2,3)", 6))
    full, weak = is_brunnian(d), is_brunnian(d, weak=True)
    assert not full and not weak
    assert weak.witness is not None


def test_sublinks_count():
    assert len(sublinks(4)) == 2 ** 4 - 2


def test_brunnian_corpus_profiles():
    for name, (_, d) in brunnian_examples().items():
        n = d.component_count
        if n > 4:
            continue
        assert is_brunnian(d), name
        assert finite_type_profile(d, n - 3) == unlink_profile(n, n - 3)


# -- mu vanishing versus profiles ------------------------------------------------

def test_consistency_check_unlink():
    for m in range(3):
        r = theorem1_check(plat_closure(identity(4)), m)
        assert r.mu_vanish_m1 and r.mu_vanish_m2 and r.profile_trivial and r.consistent


def test_consistency_check_whitehead():
    d = whitehead_plat()
    r1 = theorem1_check(d, 1)
    assert r1.mu_vanish_m2 and r1.profile_trivial and r1.consistent
    r2 = theorem1_check(d, 2)
    assert not r2.mu_vanish_m2 and r2.consistent
    assert abs(r2.witness.value) == 1 and r2.witness.length == 4
    assert not finite_type_profile(d, 3).matches_unlink
    assert r2.as_dict()["consistent_b"]


def test_consistency_check_hopf():
    r0 = theorem1_check(hopf_plat(), 0)
    assert r0.mu_vanish_m1 and not r0.mu_vanish_m2 and r0.profile_trivial and r0.consistent
    r1 = theorem1_check(hopf_plat(), 1)
    assert not r1.mu_vanish_m1 and not r1.profile_trivial and r1.consistent


def test_scan_examples():
    assert corollary32_scan(plat_closure(identity(4))).status == "trivial (certified)"
    assert corollary32_scan(hopf_plat()).status == "nontrivial"
    r = corollary32_scan(whitehead_plat())
    assert r.status == "nontrivial" and r.witness.length == 4


def test_first_nonvanishing_mu_survives_simplification():
    for _, d in random_plats(20, seed=41, max_crossings=12):
        if d.component_count < 2:
            continue
        v = first_nonvanishing_mu(d, 4)
        if v is not None:
            assert mu_bar(simplify(d), v.indices, 4).value == v.value


def test_mu_cyclic_symmetry_when_determined():
    for d in [whitehead_plat(), *(d for _, d in brunnian_examples().values())]:
        n = d.component_count
        v = first_nonvanishing_mu(d, min(n, 4) if n > 2 else 4)
        if v is None or v.delta:
            continue
        k = v.length
        for r in range(1, k):
            rot = v.indices[r:] + v.indices[:r]
            assert mu_bar(d, rot, k).value == v.value
