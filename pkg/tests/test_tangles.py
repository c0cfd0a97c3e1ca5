import pytest

from fixtures import W, flype_pairs, sandwich
from ravol import validate_diagram, volp
from ravol.diagram import twist_number
from ravol.errors import InvalidParameters
from ravol.tangles import add_kink, mirror_diagram, tangle_sum, twist_insert


def test_twist_insert_counts():
    d = twist_insert(W(3, 4), 0, 3)
    assert d.num_crossings == 10 and validate_diagram(d).ok
    with pytest.raises(InvalidParameters):
        twist_insert(W(3, 4), 0, 0)


def test_twist_orientation_matters_for_twist_number():
    tref = W(2, 3)
    assert twist_number(twist_insert(tref, 0, 3, vertical=False)) == 1
    assert twist_number(twist_insert(tref, 0, 3, vertical=True)) == 2


def test_twist_insert_keeps_mirror():
    d = W(3, 4)
    t = twist_insert(d, 5, 1)
    assert t.map.canonical_code == d.map.canonical_code
    assert t.over[0] == d.over[0]


def test_tangle_sum_shape():
    d = tangle_sum(W(3, 3), 0, W(3, 4), 0)
    assert d.num_crossings == 12 and validate_diagram(d).ok


def test_loop_crossing_rejected():
    with pytest.raises(InvalidParameters):
        tangle_sum(add_kink(W(3, 3), 0), 6, W(3, 3), 0)


def test_flype_pairs_are_distinct_diagrams():
    for a, b in flype_pairs():
        assert a.num_crossings == b.num_crossings
        assert a.map.canonical_code != b.map.canonical_code
        assert validate_diagram(a).ok and validate_diagram(b).ok


def test_mirror_keeps_volume():
    d = twist_insert(W(3, 5), 0, 3)
    assert abs(volp(d).volp - volp(mirror_diagram(d)).volp) < 1e-10


def test_sandwich_validates():
    for twist, cut in [(4, 1), (5, 2), (6, 3)]:
        d = sandwich(twist, cut)
        assert d.num_crossings == 6 + 8 + twist - 4
        assert validate_diagram(d).ok
