import pytest

from crossres import (GroupRingElt, ModuleElt, abelianise, apply_map,
                      boundary2, build_state, compute_delta3, export_json,
                      extend_resolution, fox_matrix_map, homotopy_eval,
                      import_json, kernel_lattice, level3_candidates,
                      order_candidates, parse_word, reduce_level,
                      render_crossed, render_tables, span_of_orbit, unit,
                      verify_state)
from crossres.syzygy_engine import ResolutionState
from conftest import s3_config


def fresh_state(**kw):
    return build_state(s3_config(**kw))


class TestDelta3:
    def test_frozen_crossed_forms(self, s3_state):
        # generator rows of the worked example, in its own tree and h1
        assert render_crossed(compute_delta3(s3_state, 2, "r")) \
            == "r^-1@1 r^+1@x"
        assert render_crossed(compute_delta3(s3_state, 1, "r")) \
            == "r^-1@1 r^+1@x^-1"
        assert render_crossed(compute_delta3(s3_state, 0, "r")) == "1"

    def test_every_tag_is_an_identity(self, s3_state):
        pres = s3_state.presentation
        for g in range(s3_state.graph.order):
            for rname in pres.relator_names():
                c = compute_delta3(s3_state, g, rname)
                assert boundary2(c, pres).is_empty()

    def test_candidate_list_order(self, s3_state):
        cands = level3_candidates(s3_state)
        assert len(cands) == 18
        assert [c.tag for c in cands[:4]] \
            == [(0, "r"), (0, "s"), (0, "t"), (1, "r")]
        for c in cands:
            assert abelianise(c.crossed_form, s3_state.graph) == c.form


class TestOrdering:
    def test_explicit_prefix(self, s3_state):
        cands = level3_candidates(s3_state)
        ordered = order_candidates(cands, explicit=[(2, "r"), (3, "s")])
        assert [c.tag for c in ordered[:2]] == [(2, "r"), (3, "s")]
        assert len(ordered) == 18

    def test_explicit_errors(self, s3_state):
        cands = level3_candidates(s3_state)
        with pytest.raises(ValueError):
            order_candidates(cands, explicit=[(99, "r")])
        with pytest.raises(ValueError):
            order_candidates(cands, explicit=[(2, "r"), (2, "r")])
        with pytest.raises(ValueError):
            order_candidates(cands, policy="frequency")

    def test_support_policy(self):
        state = fresh_state(order="support", tree="bfs", h1="search")
        assert {n: len(state.levels[n].basis) for n in state.levels} \
            == {3: 4, 4: 5}
        ok, _ = verify_state(state, samples=5)
        assert ok


class TestReduction:
    def test_fixture_state_shape(self, s3_state):
        graph = s3_state.graph
        lvl3, lvl4 = s3_state.levels[3], s3_state.levels[4]
        assert [(graph.elt_name(t[0]), t[1]) for _, t in lvl3.basis] \
            == [("x^2", "r"), ("y", "s"), ("x^2", "s"), ("x", "t")]
        assert [(graph.elt_name(t[0]), t[1]) for _, t in lvl4.basis] \
            == [("x^2", "b3_1"), ("y", "b3_2"), ("y x", "b3_3"),
                ("x^2", "b3_4"), ("y", "b3_4")]

    def test_certificates_replay(self, s3_state):
        graph = s3_state.graph
        for n, level in s3_state.levels.items():
            for cand in level.candidates:
                got = apply_map(graph, level.boundary, level.xi[cand.tag])
                assert got == cand.form

    def test_accepted_tags_map_to_units(self, s3_state):
        for level in s3_state.levels.values():
            for sym, tag in level.basis:
                assert level.xi[tag] == unit(sym)

    def test_bogus_pin_rejected(self, s3_state):
        cands = order_candidates(level3_candidates(s3_state))
        scratch = ResolutionState(s3_state.presentation, s3_state.graph,
                                  s3_state.tree, s3_state.contraction,
                                  s3_state.h1)
        # in declared order (x, r) is accepted, so (x^2, r) is rejected
        bad = {(2, "r"): [(1, "b3_1", parse_word("1"))]}
        with pytest.raises(ValueError, match="replay"):
            reduce_level(scratch, 3, cands, bad)

    def test_pin_for_accepted_tag_rejected(self, s3_state):
        cands = order_candidates(level3_candidates(s3_state))
        scratch = ResolutionState(s3_state.presentation, s3_state.graph,
                                  s3_state.tree, s3_state.contraction,
                                  s3_state.h1)
        # (x, r) is the first nonzero candidate in declared order
        bad = {(1, "r"): [(1, "b3_1", parse_word("1"))]}
        with pytest.raises(ValueError, match="not rejected"):
            reduce_level(scratch, 3, cands, bad)

    def test_pin_for_unknown_tag_rejected(self, s3_state):
        cands = order_candidates(level3_candidates(s3_state))
        scratch = ResolutionState(s3_state.presentation, s3_state.graph,
                                  s3_state.tree, s3_state.contraction,
                                  s3_state.h1)
        bad = {(0, "nope"): [(1, "b3_1", parse_word("1"))]}
        with pytest.raises(ValueError, match="not rejected"):
            reduce_level(scratch, 3, cands, bad)


class TestHomotopyEval:
    def test_additive_in_chain(self, s3_state):
        graph = s3_state.graph
        xi = s3_state.levels[3].xi
        a = unit("r", 2) - unit("s", 3, 2)
        b = unit("t", 1)
        for g in range(graph.order):
            assert homotopy_eval(graph, xi, g, a + b) \
                == homotopy_eval(graph, xi, g, a) \
                + homotopy_eval(graph, xi, g, b)

    def test_action_killing_rule(self, s3_state):
        # h(g . g', e_prev . g') depends only on g
        graph = s3_state.graph
        xi = s3_state.levels[3].xi
        for g in range(graph.order):
            for gp in range(graph.order):
                chain = ModuleElt({"r": GroupRingElt({gp: 1})})
                assert homotopy_eval(graph, xi, graph.mult(g, gp), chain) \
                    == xi[(g, "r")]


class TestVerifyAndSerialize:
    def test_verify_fixture(self, s3_state):
        ok, rows = verify_state(s3_state)
        assert ok
        checks = {r[0] for r in rows}
        assert checks == {"retr2", "retr3", "consistency", "dd", "retr32",
                          "retr4", "retr5", "exactness"}

    def test_export_import_round_trip(self, s3_state):
        text = export_json(s3_state)
        state2 = import_json(text)
        assert export_json(state2) == text
        ok, _ = verify_state(state2, samples=5)
        assert ok

    def test_import_rejects_corruption(self, s3_state):
        text = export_json(s3_state)
        with pytest.raises(ValueError):
            import_json(text.replace("crossres-state/1", "crossres-state/9"))
        with pytest.raises(ValueError):
            import_json(text.replace('"x y"', '"y^2 x"', 1))

    def test_render_tables_mentions_every_tag(self, s3_state):
        out = render_tables(s3_state)
        graph = s3_state.graph
        for level in s3_state.levels.values():
            for cand in level.candidates:
                g, name = cand.tag
                assert f"[{graph.elt_name(g)}, {name}]" in out


class TestFaultInjection:
    def test_single_perturbation_detected(self):
        state = fresh_state()
        level = state.levels[4]
        sym = level.basis[0][0]
        original = level.boundary[sym]
        level.boundary[sym] = original + unit(level.codomain[0], 2)
        ok, rows = verify_state(state, samples=2)
        assert not ok
        assert any(r[0] == "dd" and not r[3] and r[2] == sym for r in rows)


def test_exactness_of_deeper_levels():
    state = fresh_state(max_level=5)
    assert {n: len(state.levels[n].basis) for n in state.levels} \
        == {3: 4, 4: 5, 5: 6}
    graph = state.graph
    for n in (3, 4):
        hi, lo = state.levels[n + 1], state.levels[n]
        image = span_of_orbit(graph, [s for s, _ in lo.basis],
                              [hi.boundary[s] for s, _ in hi.basis])
        kern = kernel_lattice(graph, [s for s, _ in lo.basis],
                              lo.codomain, lo.boundary)
        assert image == kern
