import pytest

from plumbcalc.errors import DomainError
from plumbcalc.intmat import is_perfect_square
from plumbcalc.ledger import (
    STATUS_BOUNDS,
    STATUS_OBSTRUCTED,
    STATUS_UNKNOWN,
    Construction,
    evaluate_descriptor,
    evaluate_graph,
    evaluate_word,
    format_entry,
    parse_construction,
)
from plumbcalc.plumbing import (
    PlumbingGraph,
    boundary_homology,
    cycle_plumbing_from_word,
    format_graph,
)
from plumbcalc.sl2 import MonodromyWord

from conftest import family_parameter_space


def path_graph(weights):
    names = [chr(ord("a") + i) for i in range(len(weights))]
    vertices = tuple(zip(names, weights))
    edges = tuple((names[i], names[i + 1], 1) for i in range(len(weights) - 1))
    return PlumbingGraph(vertices, edges)


SEED_PATH = path_graph([-1, -2, -2, -1])


class TestWordEvaluation:
    def test_negative_parabolic_bounds(self):
        entry = evaluate_word(MonodromyWord((-5, 0)))  # exact -T^5
        assert entry.status == STATUS_BOUNDS
        assert entry.reason == "negative-parabolic"

    def test_family_member_bounds(self):
        entry = evaluate_word(MonodromyWord((3,)))
        assert entry.status == STATUS_BOUNDS
        assert entry.reason.startswith("hyperbolic-family")

    def test_torsion_three_obstructed(self):
        entry = evaluate_word(MonodromyWord((2, 2, 3)))
        assert entry.status == STATUS_OBSTRUCTED
        assert entry.reason == "torsion-not-square(3)"

    def test_trace_two_unknown(self):
        entry = evaluate_word(MonodromyWord((2, 2)))
        assert entry.status == STATUS_UNKNOWN
        assert entry.reason == "trace-2-degenerate"

    def test_descriptor_is_rotation_canonical(self):
        a = evaluate_word(MonodromyWord((4, 2)))
        b = evaluate_word(MonodromyWord((2, 4)))
        assert a.descriptor == b.descriptor == "word:2,4"

    def test_square_but_uncertified_is_unknown(self):
        # (4,5): trace 18, torsion 16 is a square, but an even number of
        # entries >= 3 can never be a family string
        entry = evaluate_word(MonodromyWord((4, 5)))
        assert entry.status == STATUS_UNKNOWN
        assert "square-condition-holds(16)" in entry.reason


class TestGraphEvaluation:
    def test_parabolic_cycle_bounds(self):
        g = cycle_plumbing_from_word(MonodromyWord((2, 2, 2, 2, 2), -1))
        entry = evaluate_graph(g)
        assert entry.status == STATUS_BOUNDS
        assert entry.reason == "negative-parabolic"

    def test_family_cycle_bounds(self):
        g = cycle_plumbing_from_word(MonodromyWord((4, 2)))
        entry = evaluate_graph(g)
        assert entry.status == STATUS_BOUNDS
        assert entry.reason.startswith("hyperbolic-family")

    def test_obstructed_cycle(self):
        g = cycle_plumbing_from_word(MonodromyWord((2, 2, 3)))
        assert evaluate_graph(g).status == STATUS_OBSTRUCTED

    def test_seed_tree_bounds(self):
        entry = evaluate_graph(SEED_PATH)
        assert entry.status == STATUS_BOUNDS
        assert entry.reason == "s1xs2-base(homology-level)"

    def test_qs3_tree_is_unknown_or_obstructed(self):
        entry = evaluate_graph(path_graph([-2, -2, -2]))
        assert entry.status in (STATUS_UNKNOWN, STATUS_OBSTRUCTED)


class TestConstruction:
    def test_self_join_certified(self):
        build = Construction()
        build.add_tree("X", SEED_PATH)
        build.add_self_join("G", "X", "a", "d", -1)
        entry = build.evaluate("G")
        assert entry.status == STATUS_BOUNDS
        assert entry.reason.startswith("self-join-nonsingular(det=")
        assert "<-s1xs2-base" in entry.reason

    def test_join_transfer_certified(self):
        build = Construction()
        build.add_tree("X", SEED_PATH)
        build.add_tree("Y", SEED_PATH)
        build.add_join("H", "X", "b", "Y", "a")
        entry = build.evaluate("H")
        assert entry.status == STATUS_BOUNDS
        assert entry.reason.startswith("join-transfer(")

    def test_singular_self_join_not_certified(self):
        # joining the two middle -2 vertices makes a graph with det 0
        build = Construction()
        build.add_tree("X", path_graph([-1, -2, -2, -1]))
        build.add_self_join("G", "X", "b", "c", 1)
        entry = build.evaluate("G")
        assert entry.status != STATUS_BOUNDS or "self-join" not in entry.reason

    def test_monotone_under_extension(self):
        build = Construction()
        build.add_tree("X", SEED_PATH)
        build.add_self_join("G", "X", "a", "d", -1)
        before = build.evaluate("G")
        build.add_tree("Y", path_graph([-2, -2]))
        build.add_join("H", "X", "b", "Y", "a")
        after = build.evaluate("G")
        assert before == after

    def test_duplicate_name_rejected(self):
        build = Construction()
        build.add_tree("X", SEED_PATH)
        with pytest.raises(DomainError):
            build.add_tree("X", SEED_PATH)

    def test_unknown_name_rejected(self):
        with pytest.raises(DomainError):
            Construction().evaluate("missing")


class TestMutualExclusivity:
    def test_certified_descriptors_have_square_torsion(self):
        # family words and parabolic words across a corpus
        words = [MonodromyWord((-n, 0)) for n in range(0, 13)]
        words += [MonodromyWord((n, 0)) for n in range(2, 13)]
        for params in family_parameter_space(2, 2):
            from plumbcalc.strings import family_string

            words.append(MonodromyWord(family_string(params)))
        for w in words:
            entry = evaluate_word(w)
            if entry.status != STATUS_BOUNDS:
                continue
            from plumbcalc.sl2 import word_to_matrix

            t = word_to_matrix(w).trace
            assert t != 2
            assert is_perfect_square(abs(t - 2))

    def test_certified_graphs_have_square_torsion(self):
        build = Construction()
        build.add_tree("X", SEED_PATH)
        build.add_self_join("G", "X", "a", "d", -1)
        entry = build.evaluate("G")
        assert entry.status == STATUS_BOUNDS
        torsion = boundary_homology(build.graph("G")).torsion_order
        assert is_perfect_square(torsion)


class TestDescriptorParsing:
    def test_word_descriptor(self):
        entry = evaluate_descriptor("word:2,2,3")
        assert entry.status == STATUS_OBSTRUCTED

    def test_parabolic_sugar(self):
        plus = evaluate_descriptor("-T^5")
        minus = evaluate_descriptor("-T^-5")
        assert plus.status == minus.status == STATUS_BOUNDS
        assert plus.descriptor == "word:-5,0"
        assert minus.descriptor == "word:0,5"

    def test_graph_descriptor(self, tmp_path):
        (tmp_path / "g.graph").write_text(format_graph(SEED_PATH) + "\n")
        entry = evaluate_descriptor("graph:g.graph", tmp_path)
        assert entry.status == STATUS_BOUNDS

    def test_build_descriptor(self, tmp_path):
        (tmp_path / "seed.graph").write_text(format_graph(SEED_PATH) + "\n")
        (tmp_path / "c.build").write_text(
            "tree X seed.graph\nselfjoin G X a d -\ntarget G\n"
        )
        entry = evaluate_descriptor("build:c.build", tmp_path)
        assert entry.status == STATUS_BOUNDS
        assert entry.reason.startswith("self-join-nonsingular")

    def test_bad_descriptor(self):
        with pytest.raises(DomainError) as err:
            evaluate_descriptor("nonsense")
        assert err.value.code == "descriptor-syntax"

    def test_report_line_shape(self):
        line = format_entry(evaluate_word(MonodromyWord((3,))))
        assert line.startswith("descriptor=word:3 status=bounds-QSB reason=")
        assert " " not in line.split("reason=", 1)[1]


class TestConstructionParsing:
    def test_parse_and_default_target(self, tmp_path):
        (tmp_path / "seed.graph").write_text(format_graph(SEED_PATH) + "\n")
        build, target = parse_construction(
            "tree X seed.graph\nselfjoin G X a d -\n", tmp_path
        )
        assert target == "G"
        assert build.names() == ("X", "G")

    def test_bad_line(self, tmp_path):
        with pytest.raises(DomainError) as err:
            parse_construction("frobnicate\n", tmp_path)
        assert err.value.code == "build-syntax"

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(DomainError):
            parse_construction("# nothing\n", tmp_path)
