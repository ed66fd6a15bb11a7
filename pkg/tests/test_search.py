import json
import math
from fractions import Fraction as F

import pytest

from iidtails.dists import DiscreteDist, Norm, delta
from iidtails.search import (
    SOUNDNESS_GUARDS,
    SearchSpace,
    SoundnessViolation,
    _guard,
    probe_necessity,
    ratio_objective,
    ratio_objective_witness,
    search,
    snap_to_space,
)
from oracles import coin, dist1d


class TestRatioObjective:
    def test_pinned_coin_c2_one(self):
        assert ratio_objective(coin(), 1, 2, 1) == 2

    def test_pinned_coin_c2_three_halves(self):
        assert ratio_objective(coin(), 1, 2, F(3, 2)) == 2

    def test_point_mass_at_zero(self):
        assert ratio_objective(delta(0), 1, 2, 1) == 0

    def test_infinite_when_rhs_vanishes_first(self):
        got = ratio_objective(delta(1), 1, 2, F(1, 4))
        assert got == math.inf

    def test_witness_threshold_attains_ratio(self):
        x = dist1d([(-1, F(1, 4)), (0, F(1, 2)), (3, F(1, 4))])
        value, q = ratio_objective_witness(x, 1, 3, 2)
        assert value > 0
        from iidtails.dists import iid_sum, tail
        lhs = tail(x, Norm.ABS1D, q)
        rhs = tail(iid_sum(x, 3), Norm.ABS1D, q / 2)
        assert lhs / rhs == value

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            ratio_objective(coin(), 2, 1, 1)
        with pytest.raises(ValueError):
            ratio_objective(coin(), 1, 2, 0)

    def test_nonincreasing_in_c2(self):
        x = dist1d([(-2, F(1, 3)), (1, F(1, 3)), (2, F(1, 3))])
        grid = [F(1, 2), F(1), F(3, 2), F(2), F(3), F(10)]
        vals = [ratio_objective(x, 1, 2, c2) for c2 in grid]
        for a, b in zip(vals, vals[1:]):
            if a == math.inf:
                continue
            assert b != math.inf and b <= a


class TestSearchSpace:
    def test_validation(self):
        with pytest.raises(ValueError):
            SearchSpace(n_atoms=1, j=1, k=2, c2=F(1))
        with pytest.raises(ValueError):
            SearchSpace(n_atoms=2, j=3, k=2, c2=F(1))
        with pytest.raises(ValueError):
            SearchSpace(n_atoms=2, j=1, k=2, c2=F(0))
        with pytest.raises(ValueError):
            SearchSpace(n_atoms=2, j=1, k=2, c2=F(1),
                        value_lo=F(1), value_hi=F(1))


class TestSnapToSpace:
    SPACE = SearchSpace(n_atoms=3, j=1, k=2, c2=F(1))

    def test_snaps_to_lattice_inside_box(self):
        d = snap_to_space([0.13, -7.9, 7.9, 1.0, 0.5], self.SPACE)
        assert d.dim == 1
        assert sum(d.atoms.values()) == 1
        for (v,), p in d.atoms.items():
            assert self.SPACE.value_lo <= v <= self.SPACE.value_hi
            assert (v * self.SPACE.lattice_denominator).denominator == 1
            assert p > 0

    def test_merges_coincident_atoms(self):
        d = snap_to_space([1.0, 1.0, 1.0, 1.0, 1.0], self.SPACE)
        assert len(d.atoms) == 1
        assert d.atoms[(F(1),)] == 1

    def test_deterministic(self):
        theta = [0.3, -1.2, 2.4, 0.7, 1.3]
        a = snap_to_space(theta, self.SPACE)
        b = snap_to_space(theta, self.SPACE)
        assert a.atoms == b.atoms


class TestSearch:
    def test_coin_ratio_reachable_at_c2_one(self):
        space = SearchSpace(n_atoms=2, j=1, k=2, c2=F(1))
        res = search(space, budget=2000, seed=1)
        assert res.evaluations <= 2000
        if res.achieved_ratio != math.inf:
            assert res.achieved_ratio >= 2

    def test_deterministic_given_seed(self):
        space = SearchSpace(n_atoms=2, j=1, k=2, c2=F(2))
        a = search(space, budget=400, seed=5)
        b = search(space, budget=400, seed=5)
        assert json.dumps(a.to_jsonable(), sort_keys=True) == \
            json.dumps(b.to_jsonable(), sort_keys=True)

    def test_result_rescores_exactly(self):
        space = SearchSpace(n_atoms=3, j=1, k=3, c2=F(2))
        res = search(space, budget=600, seed=3)
        again = ratio_objective(res.best_dist, 1, 3, F(2))
        assert again == res.achieved_ratio

    def test_guarded_scale_stays_below_bound(self):
        space = SearchSpace(n_atoms=3, j=1, k=2, c2=F(10))
        res = search(space, budget=800, seed=2)
        assert res.achieved_ratio != math.inf
        assert res.achieved_ratio <= 2

    def test_rejects_zero_budget(self):
        with pytest.raises(ValueError):
            search(SearchSpace(n_atoms=2, j=1, k=2, c2=F(1)), budget=0)


class TestGuards:
    def test_guard_table_is_fixed(self):
        assert SOUNDNESS_GUARDS == ((F(5), F(4)), (F(7), F(2)), (F(10), F(3)))

    def test_trips_on_forged_ratio(self):
        with pytest.raises(SoundnessViolation):
            _guard(F(7, 2), F(10))
        with pytest.raises(SoundnessViolation):
            _guard(F(5), F(7))
        with pytest.raises(SoundnessViolation):
            _guard(math.inf, F(5))
        # guards cascade: at c2 = 10 the c2 >= 7 bound of 2 binds too
        with pytest.raises(SoundnessViolation):
            _guard(F(3), F(10))

    def test_silent_below_scales(self):
        _guard(F(100), F(1))
        _guard(math.inf, F(4))
        _guard(F(2), F(10))
        _guard(F(4), F(5))


class TestProbeNecessity:
    def test_constant_family_locates_scale_one(self):
        out = probe_necessity("constant")
        assert out["claim"] == "corollary6"
        assert out["induced_c2_lower_bound"] == "1"
        by_c2 = {row["c2"]: row["ratio"] for row in out["rows"]}
        assert by_c2["1/2"] == "inf"

    def test_rare_bernoulli_ratios_are_reciprocal_p(self):
        out = probe_necessity(
            "rare_bernoulli",
            p_values=(F(1, 10), F(1, 100), F(1, 1000)))
        for row in out["rows"]:
            assert F(row["ratio"]) == 1 / F(row["p"])
        assert out["induced_c1_lower_bound"] == "1000"

    def test_pm_one_gives_two(self):
        out = probe_necessity("pm_one")
        assert out["induced_c1_lower_bound"] == "2"

    def test_rejects_unknown_family_and_bad_p(self):
        with pytest.raises(ValueError):
            probe_necessity("cauchy")
        with pytest.raises(ValueError):
            probe_necessity("rare_bernoulli", p_values=(F(2),))
