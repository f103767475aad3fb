"""
谱型解析、打印、合流判定与退化图服务
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import pyparsing as pp

from ..data import spectral_corpus as corpus
from ..errors import (
    SizeConsistencyError,
    SpectralParseError,
    SpectralValidationError,
    UnknownSystemError,
)
from ..models.spectral_models import (
    DegenerationGraph,
    GraphNode,
    RefiningSequence,
    SingularityPattern,
    SpectralType,
    contiguous_grouping,
)


def _build_grammar():
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")
    digit = pp.Word(pp.nums, exact=1).set_parse_action(lambda t: int(t[0]))
    braced = (pp.Suppress("{") + pp.Word(pp.nums) + pp.Suppress("}")).set_parse_action(lambda t: int(t[0]))
    group = pp.Forward()
    item = braced | digit | group
    group <<= pp.Group(lpar + pp.OneOrMore(item) + rpar)
    local = pp.Group(pp.OneOrMore(item))
    spectral = pp.DelimitedList(local, delim=",")
    pattern_entry = pp.Regex(r"\d+(/\d+)?").set_parse_action(lambda t: Fraction(t[0]))
    pattern = pp.DelimitedList(pattern_entry, delim="+")
    return local, spectral, pattern


LOCAL_GRAMMAR, SPECTRAL_GRAMMAR, PATTERN_GRAMMAR = _build_grammar()


def _leaf_depths(node, depth=0):
    for child in node:
        if isinstance(child, list):
            yield from _leaf_depths(child, depth + 1)
        else:
            yield depth


def _tree_sum(node) -> int:
    return sum(_tree_sum(c) if isinstance(c, list) else c for c in node)


def _tree_levels(root, depth: int) -> List[Tuple[int, ...]]:
    levels, frontier = [], list(root)
    for _ in range(depth + 1):
        levels.append(tuple(_tree_sum(c) if isinstance(c, list) else c for c in frontier))
        nxt = []
        for c in frontier:
            if isinstance(c, list):
                nxt.extend(c)
        frontier = nxt
    return levels


def _part_text(p: int) -> str:
    return str(p) if p < 10 else "{" + str(p) + "}"


def _refines(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    """多重集意义下 fine 是否加细 coarse（回溯分组）"""
    if sum(fine) != sum(coarse):
        return False
    fine = sorted(fine, reverse=True)
    bins = sorted(coarse, reverse=True)

    def place(i: int, remaining: List[int]) -> bool:
        if i == len(fine):
            return all(r == 0 for r in remaining)
        tried = set()
        for j, r in enumerate(remaining):
            if r >= fine[i] and r not in tried:
                tried.add(r)
                remaining[j] -= fine[i]
                if place(i + 1, remaining):
                    remaining[j] += fine[i]
                    return True
                remaining[j] += fine[i]
        return False

    return place(0, list(bins))


def _split(value: int, pool: List[int]) -> Optional[List[List[int]]]:
    """从 pool 中选出和为 value 的所有子多重集（按降序）"""
    results = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            results.append(list(chosen))
            return
        prev = None
        for k in range(start, len(pool)):
            if pool[k] == prev or pool[k] > remaining:
                continue
            prev = pool[k]
            chosen.append(pool[k])
            rec(k + 1, remaining - pool[k], chosen)
            chosen.pop()

    rec(0, value, [])
    return results


def _assign(values: List[int], pool: List[int]) -> Optional[List[List[int]]]:
    """把 pool 分成若干组，第 i 组之和为 values[i]"""
    if not values:
        return [] if not pool else None
    head, rest = values[0], values[1:]
    for choice in _split(head, sorted(pool, reverse=True)):
        remaining = list(pool)
        for c in choice:
            remaining.remove(c)
        tail = _assign(rest, remaining)
        if tail is not None:
            return [choice] + tail
    return None


def _tree_key(node):
    if not isinstance(node, list):
        return (node, ())
    return (_tree_sum(node), tuple(sorted((_tree_key(c) for c in node), reverse=True)))


class SpectralService:
    """谱型服务"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self._graphs: Dict[str, DegenerationGraph] = {}

    # ---- 解析与打印 ----

    def _parse_tree(self, text: str):
        try:
            result = LOCAL_GRAMMAR.parse_string(text.strip(), parse_all=True)
        except pp.ParseException as e:
            raise SpectralParseError(f"无法解析局部谱型 {text!r}: {e}") from e
        return result.as_list()[0]

    def _tree_to_sequence(self, root, text: str) -> RefiningSequence:
        depths = set(_leaf_depths(root))
        if len(depths) != 1:
            raise SpectralParseError(f"{text!r} 的括号嵌套深度不一致")
        depth = depths.pop()
        return RefiningSequence.from_lists(_tree_levels(root, depth))

    def parse_local(self, text: str) -> RefiningSequence:
        if not text or not text.strip():
            raise SpectralParseError("局部谱型为空")
        return self._tree_to_sequence(self._parse_tree(text), text)

    def print_local(self, r: RefiningSequence) -> str:
        chunks = [_part_text(p) for p in r.partitions[-1].parts]
        for k in range(r.depth - 1, -1, -1):
            groups = contiguous_grouping(r.partitions[k + 1].parts, r.partitions[k].parts)
            chunks = ["(" + "".join(chunks[i] for i in grp) + ")" for grp in groups]
        return "".join(chunks)

    def parse_spectral(self, text: str) -> SpectralType:
        if not text or not text.strip():
            raise SpectralParseError("谱型为空")
        locals_ = tuple(self.parse_local(piece) for piece in text.split(","))
        sizes = [r.m for r in locals_]
        if len(set(sizes)) != 1:
            raise SizeConsistencyError(sizes, text)
        return SpectralType(locals_)

    def print_spectral(self, s: SpectralType) -> str:
        return ",".join(self.print_local(r) for r in s.locals)

    def parse_pattern(self, text: str) -> SingularityPattern:
        try:
            entries = PATTERN_GRAMMAR.parse_string(text.strip(), parse_all=True).as_list()
        except pp.ParseException as e:
            raise SpectralParseError(f"无法解析奇点型 {text!r}: {e}") from e
        return SingularityPattern(tuple(entries))

    def print_pattern(self, p: SingularityPattern) -> str:
        return "+".join(str(e) for e in p.entries)

    # ---- 局部数据 ----

    def poincare_rank(self, r: RefiningSequence) -> int:
        return len(r.partitions) - 1

    def singularity_pattern_of(self, s: SpectralType) -> SingularityPattern:
        entries = sorted((Fraction(len(r.partitions)) for r in s.locals), reverse=True)
        return SingularityPattern(tuple(entries))

    def confluence_admissible(self, a: RefiningSequence, b: RefiningSequence) -> bool:
        """两奇点可合流当且仅当最细分拆之一加细另一"""
        if a.m != b.m:
            raise SizeConsistencyError([a.m, b.m])
        fa, fb = a.partitions[-1].parts, b.partitions[-1].parts
        return _refines(fa, fb) or _refines(fb, fa)

    def merge_locals(self, a: RefiningSequence, b: RefiningSequence) -> RefiningSequence:
        """合流后的局部谱型：两条加细链按粗细合并成一条链"""
        if not self.confluence_admissible(a, b):
            raise SpectralValidationError("两个局部谱型不可合流")
        levels = sorted(
            [p.sorted_key() for p in a.partitions + b.partitions],
            key=lambda parts: (len(parts), parts),
        )
        for coarse, fine in zip(levels, levels[1:]):
            if not _refines(fine, coarse):
                raise SpectralValidationError(f"合流后 {fine} 不加细 {coarse}")
        return self._sequence_from_levels(levels)

    def _sequence_from_levels(self, levels: List[Tuple[int, ...]]) -> RefiningSequence:
        """由各层（多重集）分拆逐层分配子节点，重建一棵加细树"""
        # 节点：[值, 子节点列表]
        roots = [[v, []] for v in levels[0]]
        frontier = list(roots)
        for fine in levels[1:]:
            values = [node[0] for node in frontier]
            groups = _assign(values, list(fine))
            if groups is None:
                raise SpectralValidationError(f"无法把 {fine} 分配到 {values}")
            new_frontier = []
            for node, grp in zip(frontier, groups):
                node[1] = [[v, []] for v in grp]
                new_frontier.extend(node[1])
            frontier = new_frontier

        def finalize(node):
            if not node[1]:
                return node[0]
            children = [finalize(c) for c in node[1]]
            children.sort(key=_tree_key, reverse=True)
            return children

        tree = [finalize(n) for n in roots]
        tree.sort(key=_tree_key, reverse=True)
        return RefiningSequence.from_lists(_tree_levels(tree, len(levels) - 1))

    def merge_result_matches(self, source: SpectralType, target: SpectralType) -> bool:
        """是否存在两个局部谱型合流后恰好得到 target"""
        key = target.multiset_key()
        for i, j in combinations(range(len(source.locals)), 2):
            a, b = source.locals[i], source.locals[j]
            try:
                if not self.confluence_admissible(a, b):
                    continue
                merged = self.merge_locals(a, b)
            except SpectralValidationError:
                continue
            rest = [r for k, r in enumerate(source.locals) if k not in (i, j)]
            candidate = SpectralType(tuple(rest + [merged]))
            if candidate.multiset_key() == key:
                return True
        return False

    # ---- 退化图 ----

    def degeneration_graph(self, family: str) -> DegenerationGraph:
        if family not in corpus.GRAPH_NODES:
            raise UnknownSystemError(family, "族")
        if family not in self._graphs:
            nodes = {}
            for node_id, pattern, spectral, ham, level in corpus.GRAPH_NODES[family]:
                nodes[node_id] = GraphNode(
                    node_id=node_id,
                    pattern=self.parse_pattern(pattern),
                    pattern_text=pattern,
                    spectral=self.parse_spectral(spectral) if spectral else None,
                    spectral_text=spectral,
                    hamiltonian_id=ham,
                    level=level,
                )
            graph = DegenerationGraph(family, nodes, list(corpus.GRAPH_EDGES[family]))
            self._validate_graph(graph)
            self._graphs[family] = graph
        return self._graphs[family]

    def _validate_graph(self, graph: DegenerationGraph) -> None:
        g = self.to_networkx(graph)
        if not nx.is_directed_acyclic_graph(g):
            raise SpectralValidationError(f"{graph.family} 退化图含有环")
        for a, b in graph.edges:
            if graph.nodes[b].level != graph.nodes[a].level + 1:
                raise SpectralValidationError(f"{graph.family} 中边 {a}→{b} 跨越了非相邻层级")

    def to_networkx(self, graph: DegenerationGraph) -> nx.DiGraph:
        g = nx.DiGraph(family=graph.family)
        for node in graph.nodes.values():
            g.add_node(node.node_id, label=node.label, level=node.level)
        g.add_edges_from(graph.edges)
        return g

    def edge_consistency(self, graph: DegenerationGraph) -> List[Tuple[str, str]]:
        """返回不能由合流规则解释的边（非分歧节点之间）"""
        bad = []
        for a, b in graph.edges:
            na, nb = graph.nodes[a], graph.nodes[b]
            if na.spectral is None or nb.spectral is None:
                continue
            if not self.merge_result_matches(na.spectral, nb.spectral):
                bad.append((a, b))
        return bad

    def to_dot(self, graph: DegenerationGraph) -> str:
        """DOT 文本；节点标签为 奇点型\\n谱型\\n哈密顿量"""
        lines = [f'digraph "{graph.family}" {{', "  rankdir=LR;", "  node [shape=box];"]
        g = self.to_networkx(graph)
        for level in sorted({n.level for n in graph.nodes.values()}):
            members = [n for n in graph.nodes.values() if n.level == level]
            ids = " ".join(f'"{n.node_id}";' for n in members)
            lines.append(f"  {{ rank=same; {ids} }}")
        for node_id, data in g.nodes(data=True):
            label = data["label"].replace('"', '\\"').replace("\n", "\\n")
            lines.append(f'  "{node_id}" [label="{label}"];')
        for a, b in g.edges():
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def corpus_round_trip(self) -> List[str]:
        """返回往返失败的语料字符串"""
        failures = []
        for text in corpus.SPECTRAL_CORPUS:
            try:
                parsed = self.parse_spectral(text)
                if not self.parse_spectral(self.print_spectral(parsed)).eq_ordered(parsed):
                    failures.append(text)
                elif self.print_spectral(parsed) != text:
                    failures.append(text)
            except Exception as e:
                self.logger.error(f"❌ 语料 {text!r} 解析失败: {e}")
                failures.append(text)
        for text in corpus.PATTERN_CORPUS:
            if self.print_pattern(self.parse_pattern(text)) != text:
                failures.append(text)
        return failures

    def flagged_strings(self) -> Dict[str, str]:
        """检查语料中自相矛盾的字符串确实被拒绝；返回 字符串 → 实际错误类别"""
        out = {}
        for text in corpus.FLAGGED_STRINGS:
            try:
                self.parse_spectral(text)
                out[text] = "accepted"
            except SizeConsistencyError:
                out[text] = "size"
            except SpectralParseError:
                out[text] = "nesting"
            except SpectralValidationError:
                out[text] = "refinement"
        return out


_spectral_service: Optional[SpectralService] = None


def get_spectral_service() -> SpectralService:
    """获取谱型服务单例"""
    global _spectral_service
    if _spectral_service is None:
        _spectral_service = SpectralService()
    return _spectral_service
