import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxforms.connectives import chain_primal
from approxforms.decompose import theta_decompose
from approxforms.errors import InvalidCharacteristic, RangeError
from approxforms.lefebvre import (STATES, EnsembleCharacteristic, boolean_readiness, bracket_variant_readiness,
                                  build_psi, choose, golden_root, marginals, pure_ensemble, readiness_f,
                                  realist_area, realist_characteristic, sample_ensemble, theta_impulse,
                                  verify_L_axioms)

from oracles import implies

BITS = list(product((0, 1), repeat=3))
unit = st.floats(0, 1)


def first_example():
    return EnsembleCharacteristic((0.3,) + (0.1,) * 7)


def second_example():
    return EnsembleCharacteristic((0, 0, 0, 0.5, 0, 0.5, 0, 0))


def direct_marginals(p):
    # bookkeeping by decoding each index, independent of the hard-coded sums
    x = [0.0, 0.0, 0.0]
    z = 0.0
    for k, pk in enumerate(p):
        n1, n2, n3 = k >> 2 & 1, k >> 1 & 1, k & 1
        x[0] += n1 * pk
        x[1] += n2 * pk
        x[2] += n3 * pk
        z += implies(implies(n3, n2), n1) * pk
    return x, z


class TestCharacteristic:
    def test_normalization(self):
        with pytest.raises(InvalidCharacteristic):
            EnsembleCharacteristic((0.2,) * 8)
        with pytest.raises(InvalidCharacteristic):
            EnsembleCharacteristic((1.5, -0.5, 0, 0, 0, 0, 0, 0))
        with pytest.raises(InvalidCharacteristic):
            EnsembleCharacteristic((1.0,) * 3)

    def test_parse(self):
        assert EnsembleCharacteristic.parse("0.3,0.1,0.1,0.1,0.1,0.1,0.1,0.1") == first_example()
        with pytest.raises(InvalidCharacteristic):
            EnsembleCharacteristic.parse("a,b")


class TestMarginals:
    def test_first_example(self):
        pt = marginals(first_example())
        assert pt.x1 == pytest.approx(0.4, abs=1e-12) and pt.x2 == pytest.approx(0.4, abs=1e-12)
        assert pt.x3 == pytest.approx(0.4, abs=1e-12) and pt.z == pytest.approx(0.5, abs=1e-12)
        assert pt.X1 == pytest.approx(0.544, abs=1e-12) and pt.gap == pytest.approx(0.044, abs=1e-12)

    def test_second_example(self):
        pt = marginals(second_example())
        assert (pt.x1, pt.x2, pt.x3, pt.z) == pytest.approx((0.5, 0.5, 1.0, 0.5), abs=1e-12)
        assert pt.X1 == pytest.approx(0.75, abs=1e-12) and pt.gap == pytest.approx(0.25, abs=1e-12)

    def test_all_ones(self):
        pt = marginals(EnsembleCharacteristic((0,) * 7 + (1,)))
        assert (pt.x1, pt.x2, pt.x3, pt.z) == (1, 1, 1, 1)

    @given(st.lists(st.floats(0.0, 1.0), min_size=8, max_size=8).filter(lambda v: sum(v) > 0.1))
    def test_double_bookkeeping(self, raw):
        total = math.fsum(raw)
        p = [v / total for v in raw]
        p[-1] = max(0.0, 1.0 - math.fsum(p[:-1]))
        P = EnsembleCharacteristic(tuple(p))
        pt = marginals(P)
        x, z = direct_marginals(P.p)
        assert (pt.x1, pt.x2, pt.x3, pt.z) == pytest.approx((*x, z), abs=1e-12)


class TestReadiness:
    def test_values(self):
        assert readiness_f(0.4, 0.4, 0.4) == pytest.approx(0.544, abs=1e-15)
        assert readiness_f(0.5, 0.5, 1) == 0.75
        assert all(readiness_f(0, 0, t) == t for t in np.linspace(0, 1, 11))

    def test_range(self):
        with pytest.raises(RangeError):
            readiness_f(1.2, 0, 0)

    def test_boolean_corners(self):
        for b in BITS:
            assert readiness_f(*map(float, b)) == boolean_readiness(*b)
            assert boolean_readiness(*b) == implies(implies(b[2], b[1]), b[0])

    def test_boolean_axioms(self):
        assert all(boolean_readiness(1, a, b) == 1 for a in (0, 1) for b in (0, 1))
        assert all(boolean_readiness(0, 1, b) == 0 for b in (0, 1))
        assert boolean_readiness(0, 0, 1) == 1

    def test_l_axioms(self):
        rep = verify_L_axioms(readiness_f)
        assert rep.passed

    def test_bracket_variant_fails_credulity(self):
        rep = verify_L_axioms(bracket_variant_readiness)
        ok, witness = rep.results["L2"]
        assert not ok
        (x1, x2, x3), got, want = witness
        assert (x1, x2) == (0.0, 1.0) and got == pytest.approx(x3 * x3) and want == 0.0
        # agrees with the real formula at the first example, not the second
        assert bracket_variant_readiness(0.4, 0.4, 0.4) == pytest.approx(0.544)
        assert bracket_variant_readiness(0.5, 0.5, 1.0) == pytest.approx(1.0)

    def test_constant_one_fails_free_choice(self):
        assert not verify_L_axioms(lambda a, b, c: 1.0).results["L1"][0]


class TestPure:
    def test_half_half_one(self):
        P = pure_ensemble(0.5, 0.5, 1)
        assert P.p == pytest.approx((0, 0.25, 0, 0.25, 0, 0.25, 0, 0.25))
        assert marginals(P).z == pytest.approx(0.75, abs=1e-15)

    def test_ones(self):
        assert pure_ensemble(1, 1, 1).p == (0, 0, 0, 0, 0, 0, 0, 1)

    def test_point_four(self):
        assert marginals(pure_ensemble(0.4, 0.4, 0.4)).z == pytest.approx(0.544, abs=1e-12)

    @given(unit, unit, unit)
    def test_identity(self, a, b, c):
        pt = marginals(pure_ensemble(a, b, c))
        assert (pt.x1, pt.x2, pt.x3) == pytest.approx((a, b, c), abs=1e-12)
        assert abs(pt.z - readiness_f(a, b, c)) <= 1e-12


def simplex_grid(steps):
    """Characteristics with entries k/steps."""
    def rec(left, slots):
        if slots == 1:
            yield (left,)
            return
        for k in range(left + 1):
            for rest in rec(left - k, slots - 1):
                yield (k,) + rest

    for ks in rec(steps, 8):
        yield EnsembleCharacteristic(tuple(k / steps for k in ks))


class TestBoundary:
    def test_boundary_identity(self):
        checked = 0
        for P in simplex_grid(6):
            pt = marginals(P)
            if pt.x1 == 1 or pt.x2 == 1 or pt.x3 == 0:
                checked += 1
                assert pt.z == pytest.approx(pt.X1, abs=1e-12)
        assert checked > 100

    def test_x2_zero_is_not_a_boundary_case(self):
        P = EnsembleCharacteristic((0, 0.5, 0, 0, 0.5, 0, 0, 0))
        pt = marginals(P)
        assert pt.x2 == 0 and pt.z == 1.0 and pt.X1 == 0.75

    def test_non_identity_gaps(self):
        assert marginals(first_example()).gap == pytest.approx(0.044, abs=1e-12)
        assert marginals(second_example()).gap == pytest.approx(0.25, abs=1e-12)


class TestGolden:
    def test_area(self):
        assert realist_area() == {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 1)}
        assert (0, 1, 1) not in realist_area()

    def test_root(self):
        g = golden_root()
        assert abs(g - (math.sqrt(5) - 1) / 2) <= 1e-12
        assert abs(g**3 - 2 * g + 1) <= 1e-12
        assert 0 < g < 1
        # the other roots of (x - 1)(x^2 + x - 1)
        assert 1**3 - 2 * 1 + 1 == 0 and (-1 - math.sqrt(5)) / 2 < 0

    def test_characteristic(self):
        g = golden_root()
        P = realist_characteristic(g)
        assert P.support() <= realist_area()
        pt = marginals(P)
        assert pt.x1 == pytest.approx(1 - g, abs=1e-12) and pt.x2 == pytest.approx(1 - g, abs=1e-12)
        assert abs(pt.x3 - g) <= 1e-12

    @given(st.floats(0.01, 0.99))
    def test_third_marginal_formula(self, x3):
        pt = marginals(realist_characteristic(x3))
        assert pt.x3 == pytest.approx(x3**3 - x3 + 1, abs=1e-12)
        assert pt.z == pytest.approx(pt.x3, abs=1e-12)  # every agent is a realist

    def test_range(self):
        for bad in (0.0, 1.0, 1.5):
            with pytest.raises(RangeError):
                realist_characteristic(bad)


class TestSampling:
    def test_concentration(self):
        s = sample_ensemble(pure_ensemble(0.5, 0.5, 1), 10**5, seed=123)
        assert abs(s.z_hat - 0.75) <= 3 * s.stderr
        assert s.n == 10**5

    def test_certain(self):
        s = sample_ensemble(EnsembleCharacteristic((0,) * 7 + (1,)), 1000, seed=1)
        assert s.z_hat == 1.0 and s.stderr == 0.0

    def test_deterministic(self):
        P = realist_characteristic(golden_root())
        assert sample_ensemble(P, 150_000, 9) == sample_ensemble(P, 150_000, 9)
        assert sample_ensemble(P, 150_000, 9) != sample_ensemble(P, 150_000, 10)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            sample_ensemble(first_example(), 0, 1)


class TestChoice:
    @pytest.mark.parametrize("i,b,vals", [(2, 1, (0, 1, 1)), (1, 0, (0, 1, 1)), (3, 0, (0, 0, 0)),
                                          (1, 1, (1, 1, 1)), (3, 1, (0, 0, 1))])
    def test_impulses(self, i, b, vals):
        assert theta_impulse(i, b).values == vals

    def test_impulses_monotone(self):
        for i in (1, 2, 3):
            for b in (0, 1):
                v = theta_impulse(i, b).values
                assert list(v) == sorted(v)

    def test_impulse_index(self):
        with pytest.raises(IndexError):
            theta_impulse(4, 0)

    @pytest.mark.parametrize("b,expected", [((0, 1, 1), (0, 0, 1)), ((1, 0, 0), (1, 1, 0)),
                                            ((0, 0, 0), (0, 1, 0))])
    def test_psi_examples(self, b, expected):
        assert tuple(int(v) for v in build_psi(*b).as_tuple()) == expected

    def test_psi_closed_form(self):
        for b in BITS:
            assert tuple(int(v) for v in build_psi(*b).as_tuple()) == (b[0], 1 - b[1], b[2])

    def test_traces(self):
        t = choose(1, 0, 0)
        assert t.stages == (("x1",), ("x1",), ("x1",)) and t.output == 1
        t = choose(0, 1, 1)
        assert t.stages == (("x1", "x2"), ("x2", "x1"), ("x1",)) and t.output == 0
        t = choose(0, 0, 1)
        assert t.stages == (("x1", "x2"), ("x2",), ("x2", "x3")) and t.output == 1

    def test_matches_formula(self):
        for b in BITS:
            t = choose(*b)
            assert t.output == boolean_readiness(*b)
            for path in t.stages:
                idx = [STATES.elements.index(s) for s in path]
                assert all(abs(p - q) == 1 for p, q in zip(idx, idx[1:]))

    def test_theta_bridge(self):
        cs = chain_primal(2)
        for b in BITS:
            thetas = theta_decompose(build_psi(*b), cs)
            assert [t.map.as_tuple() for t in thetas] == [theta_impulse(i, v).as_map().as_tuple()
                                                          for i, v in zip((1, 2, 3), b)]
