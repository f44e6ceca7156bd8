import json
import random

import pytest

from platlab.braid import parse_braid, plat_closure
from platlab.corpus import WHITEHEAD_PD, random_plats, whitehead_reference
from platlab.diagram import (DiagramError, LinkDiagram, delete_components, from_gauss, from_pd,
                             from_pd_json, linking_matrix, mirror, self_writhe, switch, unlink,
                             writhe, zero_frame)
from platlab.simplify import canonical_key, r1_moves, r2_moves, simplify

HOPF_GAUSS = "O1+ U2+ | U1+ O2+"
TREFOIL_GAUSS = "O1+ U2+ O3+ U1+ O2+ U3+"


def over_only_linking(d, i, j):
    """Sum of signs at crossings where component i passes over component j."""
    return sum(d.signs[c] for c, (o, u) in enumerate(d.crossing_components()) if o == i and u == j)


def test_gauss_round_trip():
    d = from_gauss(HOPF_GAUSS)
    assert d.component_count == 2 and d.crossing_count == 2
    assert from_gauss(d.gauss_code()) == d
    assert linking_matrix(d) == [[0, 1], [1, 0]]


def test_non_planar_gauss_rejected():
    with pytest.raises(DiagramError):
        from_gauss("O1+ O2+ U1+ U2+")


def test_crossing_must_appear_over_and_under():
    with pytest.raises(DiagramError):
        from_gauss("O1+ O1+")
    with pytest.raises(DiagramError):
        LinkDiagram((((0, True), (0, False)),), (2,))


def test_pd_round_trip_whitehead():
    d = whitehead_reference()
    assert d.component_count == 2 and d.crossing_count == 5
    assert sorted(map(tuple, d.pd_code()["crossings"])) == sorted(map(tuple, WHITEHEAD_PD))
    assert linking_matrix(d) == [[0, 0], [0, 0]]
    again = from_pd_json(json.dumps(d.pd_code()))
    assert again.canonical() == d.canonical()


def test_pd_json_errors():
    with pytest.raises(DiagramError):
        from_pd_json("{not json")
    with pytest.raises(DiagramError):
        from_pd_json('{"signs": []}')
    with pytest.raises(DiagramError):
        from_pd([[1, 2, 3]])


def test_linking_matrix_symmetric_and_matches_over_count():
    for _, d in random_plats(40, seed=4):
        lk = linking_matrix(d)
        n = d.component_count
        for i in range(n):
            for j in range(n):
                assert lk[i][j] == lk[j][i]
                if i != j:
                    assert lk[i][j] == over_only_linking(d, i, j) == over_only_linking(d, j, i)


def test_switch_and_mirror():
    d = from_gauss(HOPF_GAUSS)
    assert linking_matrix(switch(d, [0, 1])) == [[0, -1], [-1, 0]]
    assert linking_matrix(mirror(d)) == [[0, -1], [-1, 0]]
    assert switch(switch(d, [1]), [1]) == d


def test_writhe_and_zero_frame():
    t = from_gauss(TREFOIL_GAUSS)
    assert writhe(t) == 3 and self_writhe(t, 0) == 3
    z = zero_frame(t)
    assert self_writhe(z, 0) == 0
    assert z.crossing_count == 6 and z.framing_kinks == (3,)


def test_delete_components():
    d = plat_closure(parse_braid("A(1,2) A(2,3)", 6))
    assert d.component_count == 3
    sub = delete_components(d, [2])
    assert sub.component_count == 2
    assert linking_matrix(sub) == [row[:2] for row in linking_matrix(d)[:2]]
    with pytest.raises(DiagramError):
        delete_components(d, [0, 1, 2])


def test_unlink():
    u = unlink(3)
    assert u.component_count == 3 and u.crossing_count == 0
    assert linking_matrix(u) == [[0] * 3 for _ in range(3)]


# -- simplification -----------------------------------------------------------

def test_r1_and_r2_found():
    kink = from_gauss("O1+ U1+")
    assert list(r1_moves(kink))
    assert simplify(kink).crossing_count == 0
    bigon = from_gauss("O1+ O2- | U1+ U2-")
    assert list(r2_moves(bigon))
    assert simplify(bigon).crossing_count == 0


def test_simplify_keeps_whitehead():
    assert simplify(whitehead_reference()).crossing_count == 5


def test_simplify_trivial_plat():
    d = plat_closure(parse_braid("A(1,2) A(1,2)^-1", 4))
    assert simplify(d).crossing_count == 0


def test_simplify_preserves_linking_and_never_grows():
    for _, d in random_plats(60, seed=8):
        s = simplify(d)
        assert s.crossing_count <= d.crossing_count
        assert s.component_count == d.component_count
        assert linking_matrix(s) == linking_matrix(d)


def test_canonical_key_relabel_invariant():
    d = whitehead_reference()
    rng = random.Random(1)
    perm = list(range(d.crossing_count))
    rng.shuffle(perm)
    relabelled = LinkDiagram(
        tuple(tuple((perm[c], o) for c, o in comp) for comp in d.components),
        tuple(d.signs[perm.index(k)] for k in range(d.crossing_count)))
    assert canonical_key(relabelled) == canonical_key(d)
