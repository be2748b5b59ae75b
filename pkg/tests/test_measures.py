import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trinu import (
    OscillationParams,
    concurrence_fill,
    density,
    ggm,
    gmc,
    make_state,
    negativity,
    one_to_other_concurrences,
    report,
    three_pi,
)
from trinu import linalg, measures
from trinu.measures import (
    ConcurrenceTriangle,
    fill_from_probs,
    ggm_from_probs,
    gmc_from_probs,
    heron_fill,
    measures_from_probs,
    three_pi_from_probs,
    triangle_edges_from_probs,
)

from conftest import w_class_states

W = make_state((1 / np.sqrt(3),) * 3)
BASIS_E = make_state((1.0, 0.0, 0.0))

THREE_PI_W = 4.0 * (math.sqrt(5.0) - 1.0) / 9.0
NEGATIVITY_W = (math.sqrt(5.0) - 1.0) / 3.0


def state_from_probs(p, phases=(0.0, 0.0, 0.0)):
    amps = [math.sqrt(x) * np.exp(1j * ph) for x, ph in zip(p, phases)]
    return make_state(amps)


class TestConcurrenceTriangle:
    def test_w_state_edges(self):
        tri = one_to_other_concurrences(W)
        assert np.allclose(tri.edges(), 8 / 9, atol=1e-12)

    def test_product_state_edges(self):
        assert one_to_other_concurrences(BASIS_E).edges() == (0.0, 0.0, 0.0)

    def test_derived_edges(self):
        tri = one_to_other_concurrences(state_from_probs((0.024, 0.488, 0.488)))
        # 4 P (1 - P) per edge
        assert np.allclose(tri.edges(), (0.093696, 0.999424, 0.999424), atol=1e-12)

    def test_half_perimeter(self):
        tri = ConcurrenceTriangle(0.2, 0.3, 0.4)
        assert tri.half_perimeter == (0.2 + 0.3 + 0.4) / 2.0

    def test_rejects_inequality_violation(self):
        with pytest.raises(ValueError, match="triangle"):
            ConcurrenceTriangle(0.9, 0.1, 0.1)

    @settings(max_examples=150, deadline=None)
    @given(w_class_states())
    def test_triangle_inequality_holds(self, state):
        edges = one_to_other_concurrences(state).edges()
        total = sum(edges)
        for e in edges:
            assert e <= total - e + 1e-10


class TestGgm:
    def test_w_state(self):
        assert ggm(W) == pytest.approx(1 / 3, abs=1e-12)

    def test_basis_state(self):
        assert ggm(BASIS_E) == 0.0

    def test_unbalanced(self):
        assert ggm(state_from_probs((0.77, 0.115, 0.115))) == pytest.approx(
            0.115, abs=1e-12
        )


class TestNegativity:
    def test_product_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        assert negativity(rho) == 0.0

    def test_w_reduction(self):
        rho_ab = linalg.partial_trace(density(W), "AB")
        assert negativity(rho_ab) == pytest.approx(NEGATIVITY_W, abs=1e-12)

    def test_x_block_closed_form(self):
        pe, pm, pt = 0.77, 0.115, 0.115
        rho_ab = linalg.partial_trace(density(state_from_probs((pe, pm, pt))), "AB")
        expected = math.sqrt(pt ** 2 + 4 * pe * pm) - pt
        assert negativity(rho_ab) == pytest.approx(expected, abs=1e-12)
        assert negativity(rho_ab) == pytest.approx(0.491156, abs=1e-6)

    def test_transpose_side_does_not_matter(self):
        rho_ab = linalg.partial_trace(density(W), "AB")
        assert negativity(rho_ab, on=0) == pytest.approx(
            negativity(rho_ab, on=1), abs=1e-12
        )

    def test_rejects_non_psd(self):
        m = np.diag([1.5, -0.5, 0.0, 0.0])
        with pytest.raises(ValueError, match="PSD"):
            negativity(m)


class TestThreePi:
    def test_w_state(self):
        assert three_pi(W) == pytest.approx(THREE_PI_W, abs=1e-12)

    def test_basis_state(self):
        assert three_pi(BASIS_E) == 0.0

    def test_derived_point(self):
        val = three_pi(state_from_probs((0.024, 0.488, 0.488)))
        assert val == pytest.approx(0.090135, abs=1e-6)


class TestGmc:
    def test_w_state(self):
        assert gmc(W) == pytest.approx(8 / 9, abs=1e-12)

    def test_basis_state(self):
        assert gmc(make_state((0.0, 1.0, 0.0))) == 0.0

    def test_shortest_edge(self):
        assert gmc(state_from_probs((0.024, 0.488, 0.488))) == pytest.approx(
            0.093696, abs=1e-6
        )


class TestConcurrenceFill:
    def test_w_state(self):
        assert concurrence_fill(W) == pytest.approx(8 / 9, abs=1e-12)

    def test_basis_state(self):
        assert concurrence_fill(make_state((0.0, 0.0, 1.0))) == 0.0

    def test_derived_point(self):
        val = concurrence_fill(state_from_probs((0.024, 0.488, 0.488)))
        assert val == pytest.approx(0.328648, abs=1e-6)

    def test_degenerate_triangle_clamps_to_zero(self):
        assert heron_fill(np.array([0.5, 0.3, 0.8])) == 0.0
        assert heron_fill(np.array([0.5, 0.3, 0.8000001])) == 0.0


class TestClosedFormInvariants:
    @settings(max_examples=200, deadline=None)
    @given(w_class_states())
    def test_paths_agree(self, state):
        p = np.array(state.probabilities())
        generic = np.array([
            ggm(state), three_pi(state), gmc(state), concurrence_fill(state),
        ])
        closed = measures_from_probs(p)
        assert np.max(np.abs(generic - closed)) <= 1e-10

    @settings(max_examples=200, deadline=None)
    @given(w_class_states())
    def test_monogamy_per_focus(self, state):
        rho = density(state)
        n_sq = {
            pair: negativity(linalg.partial_trace(rho, pair)) ** 2
            for pair in ("AB", "AC", "BC")
        }
        tri = one_to_other_concurrences(state)
        assert tri.edge_a - n_sq["AB"] - n_sq["AC"] >= -1e-10
        assert tri.edge_b - n_sq["AB"] - n_sq["BC"] >= -1e-10
        assert tri.edge_c - n_sq["AC"] - n_sq["BC"] >= -1e-10

    @settings(max_examples=150, deadline=None)
    @given(w_class_states(), st.permutations([0, 1, 2]))
    def test_permutation_invariance(self, state, perm):
        amps = state.amplitudes()
        permuted = make_state(tuple(amps[i] for i in perm))
        for f in (ggm, three_pi, gmc, concurrence_fill):
            assert f(state) == pytest.approx(f(permuted), abs=1e-12)

    @settings(max_examples=150, deadline=None)
    @given(st.permutations([0, 1, 2]))
    def test_closed_form_permutation_invariance(self, perm):
        p = np.array([0.61, 0.28, 0.11])
        q = p[list(perm)]
        assert np.allclose(measures_from_probs(p), measures_from_probs(q), atol=1e-12)

    @pytest.mark.parametrize("p", [
        (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0),
    ])
    def test_zero_law(self, p):
        assert np.all(measures_from_probs(np.array(p)) == 0.0)

    def test_equilateral_law(self):
        p = np.full(3, 1 / 3)
        assert gmc_from_probs(p) == pytest.approx(8 / 9, abs=1e-12)
        assert fill_from_probs(p) == pytest.approx(8 / 9, abs=1e-12)

    def test_gmc_value_stable_under_edge_ties(self):
        p = np.array([0.25, 0.25, 0.5])
        edges = triangle_edges_from_probs(p)
        assert edges[0] == edges[1]
        assert gmc_from_probs(p) == edges.min()


class TestReport:
    def test_all_zero_at_origin(self, params):
        for path in ("closed-form", "generic"):
            rep = report(params, "e", 0.0, path=path)
            assert rep.measures() == (0.0, 0.0, 0.0, 0.0)

    def test_electron_fill_near_equipartition(self, params):
        rep = report(params, "e", 10830.0, path="closed-form")
        assert rep.fill == pytest.approx(0.89, abs=0.01)

    def test_paths_agree_at_quoted_points(self, params):
        for flavor, le in (("e", 10830.0), ("mu", 513.4), ("mu", 262.2)):
            closed = report(params, flavor, le, path="closed-form")
            generic = report(params, flavor, le, path="generic")
            assert np.allclose(closed.measures(), generic.measures(), atol=1e-10)
            assert np.allclose(closed.triangle.edges(), generic.triangle.edges(),
                               atol=1e-10)

    def test_rejects_unknown_path(self, params):
        with pytest.raises(ValueError, match="path"):
            report(params, "e", 1.0, path="magic")

    def test_boundedness_on_electron_sweep(self, params):
        from trinu.oscillation import probability_array

        le = np.linspace(0.0, 40000.0, 4001)
        p = probability_array(params, "e", le)
        assert np.all(ggm_from_probs(p) <= 1 / 3 + 1e-10)
        assert np.all(fill_from_probs(p) <= 8 / 9 + 1e-10)
        assert np.all(three_pi_from_probs(p) <= 1.0 + 1e-10)

    def test_measure_ranges(self, params):
        rep = report(params, "mu", 777.0, path="closed-form")
        assert 0.0 <= rep.ggm <= 0.5
        assert 0.0 <= rep.three_pi <= 1.0
        assert 0.0 <= rep.gmc <= 1.0
        assert 0.0 <= rep.fill <= 1.0
