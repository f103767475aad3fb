"""
谱型、奇点型与 Riemann 图式的数据模型
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..errors import SizeConsistencyError, SpectralValidationError


def contiguous_grouping(finer: Tuple[int, ...], coarser: Tuple[int, ...]) -> List[List[int]]:
    """按书写顺序把 finer 的各部分连续分组，使各组之和依次等于 coarser"""
    groups, i = [], 0
    for c in coarser:
        acc, grp = 0, []
        while acc < c and i < len(finer):
            acc += finer[i]
            grp.append(i)
            i += 1
        if acc != c:
            raise SpectralValidationError(f"{finer} 不是 {coarser} 的加细")
        groups.append(grp)
    if i != len(finer):
        raise SpectralValidationError(f"{finer} 不是 {coarser} 的加细")
    return groups


@dataclass(frozen=True)
class Partition:
    """m 的有序分拆（保持书写顺序）"""
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p <= 0 for p in self.parts):
            raise SpectralValidationError(f"分拆必须非空且各部分为正: {self.parts}")

    @property
    def m(self) -> int:
        return sum(self.parts)

    def sorted_key(self) -> Tuple[int, ...]:
        return tuple(sorted(self.parts, reverse=True))


@dataclass(frozen=True)
class RefiningSequence:
    """加细分拆序列 [p_0, …, p_r]，p_{i+1} 加细 p_i"""
    partitions: Tuple[Partition, ...]

    def __post_init__(self):
        if not self.partitions:
            raise SpectralValidationError("加细序列至少包含一个分拆")
        sizes = {p.m for p in self.partitions}
        if len(sizes) != 1:
            raise SizeConsistencyError([p.m for p in self.partitions])
        for coarse, fine in zip(self.partitions, self.partitions[1:]):
            contiguous_grouping(fine.parts, coarse.parts)

    @classmethod
    def from_lists(cls, lists) -> "RefiningSequence":
        return cls(tuple(Partition(tuple(p)) for p in lists))

    @property
    def m(self) -> int:
        return self.partitions[0].m

    @property
    def depth(self) -> int:
        return len(self.partitions) - 1

    def as_lists(self) -> List[List[int]]:
        return [list(p.parts) for p in self.partitions]

    def eq_ordered(self, other: "RefiningSequence") -> bool:
        return self.partitions == other.partitions

    def multiset_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(p.sorted_key() for p in self.partitions)

    def eq_multiset(self, other: "RefiningSequence") -> bool:
        return self.multiset_key() == other.multiset_key()


@dataclass(frozen=True)
class SpectralType:
    """各奇点的加细序列（逗号分隔）"""
    locals: Tuple[RefiningSequence, ...]

    def __post_init__(self):
        if not self.locals:
            raise SpectralValidationError("谱型至少包含一个奇点")
        sizes = [r.m for r in self.locals]
        if len(set(sizes)) != 1:
            raise SizeConsistencyError(sizes)

    @property
    def m(self) -> int:
        return self.locals[0].m

    def eq_ordered(self, other: "SpectralType") -> bool:
        return self.locals == other.locals

    def multiset_key(self):
        return tuple(sorted(r.multiset_key() for r in self.locals))

    def eq_multiset(self, other: "SpectralType") -> bool:
        return self.multiset_key() == other.multiset_key()


@dataclass(frozen=True)
class SingularityPattern:
    """各奇点的 Poincaré 秩 + 1"""
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries or any(e <= 0 for e in self.entries):
            raise SpectralValidationError(f"奇点型各项必须为正: {self.entries}")

    @property
    def ramified(self) -> bool:
        return any(e.denominator != 1 for e in self.entries)

    def sorted_key(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self.entries, reverse=True))


@dataclass
class SchemeColumn:
    """Riemann 图式中的一列：奇点位置与指数表（行 = 特征指数，列 = T_0…T_r）"""
    location: str
    local: RefiningSequence
    table: List[List[str]]

    def __post_init__(self):
        if len(self.table) != self.local.m:
            raise SpectralValidationError(f"{self.location} 处指数表行数 {len(self.table)} ≠ m={self.local.m}")
        widths = {len(row) for row in self.table}
        if widths != {self.local.depth + 1}:
            raise SpectralValidationError(f"{self.location} 处指数表列数与 Poincaré 秩不符")


@dataclass
class RiemannScheme:
    """Riemann 图式"""
    columns: List[SchemeColumn] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "columns": [
                {"location": c.location, "local": c.local.as_lists(), "table": c.table}
                for c in self.columns
            ]
        }


@dataclass
class GraphNode:
    """退化图节点"""
    node_id: str
    pattern: SingularityPattern
    pattern_text: str
    spectral: Optional[SpectralType]
    spectral_text: Optional[str]
    hamiltonian_id: Optional[str]
    level: int

    @property
    def label(self) -> str:
        return "\n".join([self.pattern_text, self.spectral_text or "∅", self.hamiltonian_id or "∅"])

    def to_dict(self) -> Dict:
        return {
            "id": self.node_id,
            "pattern": self.pattern_text,
            "spectral": self.spectral_text,
            "hamiltonian": self.hamiltonian_id,
            "level": self.level,
        }


@dataclass
class DegenerationGraph:
    """某一族的退化图"""
    family: str
    nodes: Dict[str, GraphNode]
    edges: List[Tuple[str, str]]

    def to_dict(self) -> Dict:
        return {
            "family": self.family,
            "nodes": [n.to_dict() for n in self.nodes.values()],
            "edges": [list(e) for e in self.edges],
        }
