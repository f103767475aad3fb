"""
验证报告模型（JSON 输出）
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


class CheckRecord(BaseModel):
    """单项检验记录"""
    check_id: str
    kind: str
    subject: str
    verdict: str = PASS
    reason: str = ""
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


class VerificationReport(BaseModel):
    """一次验证运行的完整报告；相同版本、种子与选项给出相同内容"""
    schema_version: str
    toolkit_version: str
    seed: int
    samples: int
    flags: Dict[str, Any] = Field(default_factory=dict)
    records: List[CheckRecord] = Field(default_factory=list)
    discrepancies: Dict[str, str] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.verdict == PASS for r in self.records)

    def summary(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.records:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        return counts

    def to_json(self, timings: bool = False) -> str:
        """timings=False 时去掉耗时字段，保证输出逐字节可复现"""
        exclude = None if timings else {"records": {"__all__": {"wall_time"}}}
        return self.model_dump_json(indent=2, exclude=exclude)
