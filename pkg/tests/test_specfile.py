import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iidtails.dists import DiscreteDist
from iidtails.specfile import (
    SpecFileError,
    dist_from_jsonable,
    dist_to_jsonable,
    dump_dist,
    load_dist,
    parse_dist,
    parse_rational,
    save_dist,
)
from oracles import coin, dist1d

COIN_DOC = {"dim": 1,
            "atoms": [{"x": ["-1"], "p": "1/2"}, {"x": ["1"], "p": "1/2"}]}


class TestParseRational:
    def test_fraction_string(self):
        assert parse_rational("-3/4") == F(-3, 4)

    def test_integer_string(self):
        assert parse_rational("7") == F(7)

    def test_bare_int(self):
        assert parse_rational(5) == F(5)

    def test_rejects_float_and_garbage(self):
        with pytest.raises(SpecFileError, match="atoms\\[0\\].p"):
            parse_rational(0.5, "atoms[0].p")
        with pytest.raises(SpecFileError, match="not a rational"):
            parse_rational("one half")
        with pytest.raises(SpecFileError):
            parse_rational("1/0")


class TestParse:
    def test_round_trip_coin(self):
        assert dist_from_jsonable(COIN_DOC) == coin()

    def test_round_trip_general(self):
        d = dist1d([(F(-3, 7), F(2, 5)), (F(0), F(1, 5)), (F(4), F(2, 5))])
        assert parse_dist(dump_dist(d)) == d

    def test_multidim_round_trip(self):
        d = DiscreteDist({(F(1), F(-2)): F(1, 3), (F(0), F(5, 2)): F(2, 3)})
        assert parse_dist(dump_dist(d)) == d

    def test_invalid_json_reports_position(self):
        with pytest.raises(SpecFileError, match=r"line 2, column"):
            parse_dist('{"dim": 1,\n "atoms": }')

    def test_missing_keys(self):
        with pytest.raises(SpecFileError, match="missing key"):
            dist_from_jsonable({"dim": 1})

    def test_bad_dim(self):
        with pytest.raises(SpecFileError, match="dim"):
            dist_from_jsonable({"dim": 0, "atoms": COIN_DOC["atoms"]})

    def test_wrong_coordinate_count(self):
        doc = {"dim": 2, "atoms": [{"x": ["1"], "p": "1"}]}
        with pytest.raises(SpecFileError, match=r"atoms\[0\].x"):
            dist_from_jsonable(doc)

    def test_nonpositive_probability_position(self):
        doc = {"dim": 1, "atoms": [{"x": ["0"], "p": "1"},
                                   {"x": ["1"], "p": "0"}]}
        with pytest.raises(SpecFileError, match=r"atoms\[1\].p"):
            dist_from_jsonable(doc)

    def test_duplicate_point_position(self):
        doc = {"dim": 1, "atoms": [{"x": ["2/2"], "p": "1/2"},
                                   {"x": ["1"], "p": "1/2"}]}
        with pytest.raises(SpecFileError, match=r"atoms\[1\].*duplicate"):
            dist_from_jsonable(doc)

    def test_bad_sum(self):
        doc = {"dim": 1, "atoms": [{"x": ["0"], "p": "1/3"},
                                   {"x": ["1"], "p": "1/3"}]}
        with pytest.raises(SpecFileError, match="sum to 2/3"):
            dist_from_jsonable(doc)

    def test_float_probability_rejected(self):
        doc = {"dim": 1, "atoms": [{"x": ["0"], "p": 0.5},
                                   {"x": ["1"], "p": 0.5}]}
        with pytest.raises(SpecFileError, match=r"atoms\[0\].p"):
            dist_from_jsonable(doc)


class TestFiles:
    def test_save_load(self, tmp_path):
        d = dist1d([(F(-1, 2), F(1, 4)), (F(3), F(3, 4))])
        path = tmp_path / "d.json"
        save_dist(d, path)
        assert load_dist(path) == d

    def test_load_prefixes_path_in_errors(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SpecFileError, match="bad.json"):
            load_dist(path)

    def test_dump_is_stable_and_sorted(self):
        d = coin()
        text = dump_dist(d)
        assert text == dump_dist(d)
        doc = json.loads(text)
        assert [a["x"] for a in doc["atoms"]] == [["-1"], ["1"]]
        assert text.endswith("\n")


small_rationals = st.builds(F, st.integers(-20, 20), st.integers(1, 9))


@st.composite
def random_dists(draw):
    dim = draw(st.integers(1, 3))
    n = draw(st.integers(1, 5))
    pts = draw(st.lists(
        st.tuples(*[small_rationals] * dim), min_size=n, max_size=n,
        unique=True))
    weights = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    tot = sum(weights)
    return DiscreteDist({pt: F(w, tot) for pt, w in zip(pts, weights)})


@given(random_dists())
@settings(max_examples=80, deadline=None)
def test_round_trip_property(d):
    assert dist_from_jsonable(dist_to_jsonable(d)) == d
    assert parse_dist(dump_dist(d)) == d
