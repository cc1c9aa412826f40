import pytest
from hypothesis import given, strategies as st

from crossres import (Contraction0, DEFAULT_LIMITS, FillError, FillLimits,
                      H1Table, bfs_tree, boundary2, build_h1, fill_loop,
                      h1_eval, mult, parse_word, tree_from_file, word)
from conftest import data_path

letters = st.sampled_from([("x", 1), ("x", -1), ("y", 1), ("y", -1)])
raw_words = st.lists(letters, max_size=6).map(
    lambda ls: parse_word(" ".join(f"{n}^{s}" for n, s in ls)))


class TestFillLoop:
    def test_fills_relator_loops(self, s3_presentation, s3_graph):
        for _, wr in s3_presentation.relators:
            c = fill_loop(s3_presentation, wr)
            assert boundary2(c, s3_presentation) == wr

    def test_fills_conjugated_products(self, s3_presentation, s3_graph):
        w = (parse_word("x^-1") * parse_word("x^3") * parse_word("x")
             * parse_word("y^2"))
        assert s3_graph.eval_word(w, 0) == 0
        c = fill_loop(s3_presentation, w)
        assert boundary2(c, s3_presentation) == w

    def test_empty_loop(self, s3_presentation):
        c = fill_loop(s3_presentation, parse_word("1"))
        assert c.is_trivial()

    def test_deterministic(self, s3_presentation):
        w = parse_word("y x y x")
        assert fill_loop(s3_presentation, w) == fill_loop(s3_presentation, w)

    def test_limits_raise(self, s3_presentation):
        # x^3 y^2 needs two consequence factors; depth 1 cannot reach it
        w = parse_word("x^3 y^2")
        tiny = FillLimits(max_depth=1, max_length_factor=4, node_budget=1000)
        with pytest.raises(FillError):
            fill_loop(s3_presentation, w, tiny)

    def test_non_loop_rejected(self, s3_presentation):
        with pytest.raises(FillError):
            fill_loop(s3_presentation, parse_word("x"),
                      FillLimits(node_budget=2000))


class TestBuildH1:
    def test_search_covers_non_tree_edges(self, s3_contraction, s3_graph):
        h1 = build_h1(s3_contraction, "search")
        non_tree = {(g, k) for g in range(s3_graph.order)
                    for k in range(len(s3_graph.gens))
                    if (g, k) not in s3_contraction.tree.edges}
        assert set(h1.entries) == non_tree
        for (g, k), c in h1.entries.items():
            loop = s3_contraction.rho(g, word(s3_graph.gens[k]))
            assert boundary2(c, s3_contraction.graph.presentation) == loop

    def test_file_fixture(self, s3_graph):
        con = Contraction0(s3_graph,
                           tree_from_file(data_path("s3.tree"), s3_graph))
        h1 = build_h1(con, data_path("s3.h1"))
        assert len(h1.entries) == 7

    def test_file_errors(self, s3_graph, tmp_path):
        con = Contraction0(s3_graph,
                           tree_from_file(data_path("s3.tree"), s3_graph))
        bad = tmp_path / "bad.h1"

        bad.write_text("x x = r^+1@1\n")  # missing :=
        with pytest.raises(ValueError):
            build_h1(con, str(bad))

        bad.write_text("x x := s^+1@1\n")  # wrong consequence boundary
        with pytest.raises(ValueError):
            build_h1(con, str(bad))

        # duplicate entry
        good_line = "x x := r^+1@1\n"
        bad.write_text(good_line + good_line)
        with pytest.raises(ValueError):
            build_h1(con, str(bad))

    def test_table_validation(self, s3_contraction, s3_presentation):
        h1 = build_h1(s3_contraction, "search")
        entries = dict(h1.entries)
        (g, k), c = next(iter(entries.items()))
        entries[(g, k)] = mult(c, c)  # breaks the boundary condition
        with pytest.raises(ValueError):
            H1Table(s3_contraction, entries)
        entries.pop((g, k))
        with pytest.raises(ValueError):  # missing coverage
            H1Table(s3_contraction, entries)


class TestH1Eval:
    @given(st.integers(0, 5), raw_words, raw_words)
    def test_morphism_law(self, s3_h1, s3_graph, g, u, v):
        lhs = h1_eval(s3_h1, g, u * v)
        rhs = mult(h1_eval(s3_h1, g, u),
                   h1_eval(s3_h1, s3_graph.eval_word(u, g), v))
        assert lhs == rhs

    @given(st.integers(0, 5), raw_words)
    def test_boundary_is_contracted_path(self, s3_h1, s3_graph,
                                         s3_contraction, g, u):
        # boundary2(h1(g, u)) == sigma(g) u sigma(g . u)^-1
        got = boundary2(h1_eval(s3_h1, g, u), s3_graph.presentation)
        want = (s3_contraction.sigma[g] * u
                * s3_contraction.sigma[s3_graph.eval_word(u, g)].inv())
        assert got == want

    def test_tree_edges_lift_trivially(self, s3_h1, s3_graph, s3_contraction):
        for (g, k) in s3_contraction.tree.edges:
            c = h1_eval(s3_h1, g, word(s3_graph.gens[k]))
            assert c.is_trivial()
