from fractions import Fraction

import networkx as nx
import pytest

from iso4d.data import spectral_corpus as corpus
from iso4d.errors import SizeConsistencyError, SpectralParseError, SpectralValidationError
from iso4d.models.spectral_models import RefiningSequence


# ---------- 局部谱型 ----------

@pytest.mark.parametrize("text, levels", [
    ("((22)(2))((31))((1)(1))", [[6, 4, 2], [4, 2, 4, 1, 1], [2, 2, 2, 3, 1, 1, 1]]),
    ("111", [[1, 1, 1]]),
    ("((11))((1))", [[2, 1], [2, 1], [1, 1, 1]]),
    ("(2)(1)", [[2, 1], [2, 1]]),
])
def test_parse_local(spectral, text, levels):
    r = spectral.parse_local(text)
    assert r.as_lists() == levels
    assert spectral.print_local(r) == text


def test_print_local_from_lists(spectral):
    assert spectral.print_local(RefiningSequence.from_lists([[1, 1, 1]])) == "111"
    assert spectral.print_local(RefiningSequence.from_lists([[2, 1], [2, 1], [1, 1, 1]])) == "((11))((1))"
    r = RefiningSequence.from_lists([[6, 4, 2], [4, 2, 4, 1, 1], [2, 2, 2, 3, 1, 1, 1]])
    assert spectral.print_local(r) == "((22)(2))((31))((1)(1))"


@pytest.mark.parametrize("text", ["((1)(1", "(1)1", "((1))(1)", "", "(a)"])
def test_parse_local_rejects_bad_nesting(spectral, text):
    with pytest.raises(SpectralParseError):
        spectral.parse_local(text)


def test_refinement_violation():
    with pytest.raises(SpectralValidationError):
        RefiningSequence.from_lists([[2, 1], [1, 2]])


def test_poincare_rank(spectral):
    assert spectral.poincare_rank(spectral.parse_local("111")) == 0
    assert spectral.poincare_rank(spectral.parse_local("((11))((1))")) == 2
    assert spectral.poincare_rank(spectral.parse_local("(2)(1)")) == 1


# ---------- 谱型 ----------

def test_parse_spectral(spectral):
    s = spectral.parse_spectral("21,21,111,111")
    assert len(s.locals) == 4 and s.m == 3
    s = spectral.parse_spectral("(2)(2),(2)(11)")
    assert len(s.locals) == 2 and s.m == 4


def test_size_inconsistent_string_is_flagged(spectral):
    with pytest.raises(SizeConsistencyError) as info:
        spectral.parse_spectral("(11)(11),31,21")
    assert info.value.sizes == [4, 4, 3]


def test_flagged_strings_are_rejected(spectral):
    kinds = spectral.flagged_strings()
    assert set(kinds) == set(corpus.FLAGGED_STRINGS)
    assert "accepted" not in kinds.values()
    assert kinds["(11)(11),31,21"] == "size"


def test_corpus_round_trip(spectral):
    assert spectral.corpus_round_trip() == []


def test_multiset_equality_ignores_order(spectral):
    a = spectral.parse_spectral("21,111,12")
    b = spectral.parse_spectral("111,21,21")
    assert a.eq_multiset(b)
    assert not a.eq_ordered(b)


# ---------- 奇点型 ----------

def test_pattern_of_spectral_type(spectral):
    s = spectral.parse_spectral("((11))((1)),111")
    assert spectral.print_pattern(spectral.singularity_pattern_of(s)) == "3+1"
    s = spectral.parse_spectral("(1)(1),11,11,11")
    assert spectral.print_pattern(spectral.singularity_pattern_of(s)) == "2+1+1+1"


def test_ramified_patterns(spectral):
    p = spectral.parse_pattern("5/2+1+1")
    assert p.entries == (Fraction(5, 2), Fraction(1), Fraction(1))
    assert p.ramified
    assert not spectral.parse_pattern("3+2").ramified
    assert spectral.print_pattern(p) == "5/2+1+1"


# ---------- 合流 ----------

def test_confluence_admissible(spectral):
    assert spectral.confluence_admissible(spectral.parse_local("21"), spectral.parse_local("111"))
    assert not spectral.confluence_admissible(spectral.parse_local("22"), spectral.parse_local("31"))
    r = spectral.parse_local("(11)(1)")
    assert spectral.confluence_admissible(r, r)


def test_confluence_size_mismatch(spectral):
    with pytest.raises(SizeConsistencyError):
        spectral.confluence_admissible(spectral.parse_local("21"), spectral.parse_local("11"))


def test_merge_locals(spectral):
    merged = spectral.merge_locals(spectral.parse_local("21"), spectral.parse_local("111"))
    assert spectral.print_local(merged) == "(11)(1)"
    merged = spectral.merge_locals(spectral.parse_local("(11)(11)"), spectral.parse_local("22"))
    assert spectral.print_local(merged) == "((11))((11))"
    with pytest.raises(SpectralValidationError):
        spectral.merge_locals(spectral.parse_local("22"), spectral.parse_local("31"))


# ---------- 退化图 ----------

def test_garnier_graph(spectral):
    g = spectral.degeneration_graph("Garnier")
    assert len(g.nodes) == 7
    patterns = {n.pattern_text for n in g.nodes.values()}
    assert {"1+1+1+1+1", "5"} <= patterns


def test_matrix_graph_terminal_node(spectral):
    g = spectral.degeneration_graph("Matrix")
    dg = spectral.to_networkx(g)
    sinks = [n for n in dg.nodes if dg.out_degree(n) == 0]
    assert sinks == ["Mat:(((2)))(((11)))"]
    assert g.nodes["Mat:(((2)))(((11)))"].hamiltonian_id == "Mat:II"


def test_sasano_rank_three_box_is_empty(spectral):
    g = spectral.degeneration_graph("Sasano")
    node = g.nodes["Ss:4"]
    assert node.spectral is None and node.hamiltonian_id is None
    box = [n.spectral_text for n in g.nodes.values() if n.pattern_text == "2+1+1"]
    assert sorted(box) == sorted(["(11)(11),31,22", "(2)(2),31,1111", "(111)(1),22,22"])


@pytest.mark.parametrize("family", corpus.FAMILIES)
def test_graphs_are_acyclic_and_layered(spectral, family):
    g = spectral.degeneration_graph(family)
    dg = spectral.to_networkx(g)
    assert nx.is_directed_acyclic_graph(dg)
    for a, b in g.edges:
        assert g.nodes[b].level == g.nodes[a].level + 1


@pytest.mark.parametrize("family", ["Garnier", "FS", "Sasano", "Matrix"])
def test_edges_follow_confluence_rule(spectral, family):
    assert spectral.edge_consistency(spectral.degeneration_graph(family)) == []


@pytest.mark.parametrize("family", ["Garnier", "FS", "Sasano", "Matrix"])
def test_partition_count_matches_pattern(spectral, family):
    for node in spectral.degeneration_graph(family).nodes.values():
        if node.spectral is None:
            continue
        assert spectral.singularity_pattern_of(node.spectral).sorted_key() == node.pattern.sorted_key()


def test_classical_ramified_boxes_are_labels(spectral):
    g = spectral.degeneration_graph("Classical")
    ramified = [n for n in g.nodes.values() if n.pattern.ramified]
    assert len(ramified) == 5
    assert all(n.spectral is None for n in ramified)


def test_dot_export(spectral):
    g = spectral.degeneration_graph("FS")
    dot = spectral.to_dot(g)
    assert dot.startswith('digraph "FS"')
    levels = {n.level for n in g.nodes.values()}
    assert dot.count("rank=same") == len(levels)
    for a, b in g.edges:
        assert f'"{a}" -> "{b}";' in dot


def test_graph_json(spectral):
    data = spectral.degeneration_graph("Matrix").to_dict()
    assert data["family"] == "Matrix"
    assert len(data["edges"]) == 10


def test_unknown_family(spectral):
    from iso4d.errors import UnknownSystemError

    with pytest.raises(UnknownSystemError):
        spectral.degeneration_graph("Nope")
