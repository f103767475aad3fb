"""
验证编排服务

把各服务的检验展开成相互独立的任务，用线程池并行执行，
结果按检验编号排序后写入报告，保证相同种子与选项给出相同输出。
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..config.toolkit_config import REPORT_SCHEMA_VERSION, TOOLKIT_VERSION, ToolkitConfig
from ..errors import Iso4dError, ResampleSignal, UnknownSystemError
from ..models.flow_models import COMPLETED
from ..models.report_models import FAIL, PASS, SKIPPED, CheckRecord, VerificationReport
from .catalog_service import CatalogService, get_catalog_service
from .degeneration_service import DegenerationService, get_degeneration_service
from .flow_service import FlowService, get_flow_service
from .laxpair_service import LaxPairService, get_laxpair_service
from .linear_analysis_service import LinearAnalysisService, get_linear_analysis_service
from .spectral_service import SpectralService, get_spectral_service

CHECK_KINDS = ("compat", "degeneration", "integrability", "greek", "laplace", "localform", "corpus", "flows")

# 检验结果：(结论, 原因, 诊断信息)
Outcome = Tuple[str, str, Dict[str, Any]]


@dataclass
class _Task:
    check_id: str
    kind: str
    subject: str
    run: Callable[[], Outcome]


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


class VerificationService:
    """验证编排服务"""

    def __init__(
        self,
        lax: Optional[LaxPairService] = None,
        catalog: Optional[CatalogService] = None,
        degeneration: Optional[DegenerationService] = None,
        spectral: Optional[SpectralService] = None,
        analysis: Optional[LinearAnalysisService] = None,
        flows: Optional[FlowService] = None,
        workers: Optional[int] = None,
    ):
        self.logger = logging.getLogger(__name__)
        self.lax = lax or get_laxpair_service()
        self.catalog = catalog or get_catalog_service()
        self.degeneration = degeneration or get_degeneration_service()
        self.spectral = spectral or get_spectral_service()
        self.analysis = analysis or get_linear_analysis_service()
        self.flows = flows or get_flow_service()
        self.workers = workers or ToolkitConfig.WORKERS

    # ---------- 任务展开 ----------

    def _wanted(self, subjects: Optional[Sequence[str]], *names: str) -> bool:
        if not subjects:
            return True
        return any(n in subjects for n in names)

    def _resolve_subjects(self, subjects: Optional[Sequence[str]]) -> Optional[List[str]]:
        """系统编号与别名统一成线性问题编号，同时保留输入写法"""
        if not subjects:
            return None
        out = []
        for s in subjects:
            out.append(s)
            try:
                out.append(self.lax.resolve_id(s))
            except UnknownSystemError:
                pass
        return out

    def _compat_tasks(self, samples: int, seed: int, subjects) -> Iterable[_Task]:
        for pid in self.lax.list_linear_problems():
            problem = self.lax.build_lax(pid)
            if not self._wanted(subjects, pid, problem.system_id):
                continue
            for index, t in enumerate(problem.times):
                def run(pid=pid, index=index) -> Outcome:
                    reports = self.lax.check_compatibility(pid, time=index, samples=samples, seed=seed)
                    failed = [r for r in reports if not r.zero]
                    diag = {"samples": len(reports), "failed": len(failed)}
                    if failed:
                        diag["first_failure"] = failed[0].to_dict()
                    return _verdict(not failed), "", diag

                yield _Task(f"compat:{pid}/{t.name}", "compat", pid, run)
            if len(problem.times) == 2:
                def cross(pid=pid) -> Outcome:
                    reports = self.lax.check_cross(pid, samples=samples, seed=seed)
                    failed = [r for r in reports if not r.zero]
                    return _verdict(not failed), "", {"samples": len(reports), "failed": len(failed)}

                yield _Task(f"compat:{pid}/cross", "compat", pid, cross)

    def _degeneration_tasks(self, samples: int, seed: int, subjects) -> Iterable[_Task]:
        for rule in self.degeneration.list_rules(include_no_data=False):
            if not self._wanted(subjects, rule.rule_id, rule.source_id, rule.target_id):
                continue

            def run(rule=rule) -> Outcome:
                verdict = self.degeneration.verify_limit(
                    rule, symbolic=rule.family == "Garnier", samples=samples, seed=seed,
                )
                return _verdict(verdict.passed), "", verdict.to_dict()

            yield _Task(f"degeneration:{rule.rule_id}", "degeneration", rule.rule_id, run)
        if not subjects:
            def graph() -> Outcome:
                report = self.degeneration.graph_consistency()
                return _verdict(report.consistent), "", report.to_dict()

            yield _Task("degeneration:graph", "degeneration", "graph", graph)

    def _integrability_tasks(self, subjects) -> Iterable[_Task]:
        for sid in self.catalog.list_systems():
            system = self.catalog.get_system(sid)
            if not system.two_time or not self._wanted(subjects, sid, system.linear_problem or sid):
                continue

            def run(sid=sid) -> Outcome:
                report = self.catalog.integrability_identity(sid)
                return _verdict(report.holds), "", report.to_dict()

            yield _Task(f"integrability:{sid}", "integrability", sid, run)

    def _greek_tasks(self, subjects) -> Iterable[_Task]:
        for sid in self.catalog.list_systems():
            system = self.catalog.get_system(sid)
            # 没有线性问题的辅助系统不在这一检验范围内
            if system.linear_problem is None or not self._wanted(subjects, sid, system.linear_problem):
                continue

            def run(system=system) -> Outcome:
                check = self.catalog.greek_consistency(system.linear_problem)
                return _verdict(check.passed), "", check.to_dict()

            yield _Task(f"greek:{sid}", "greek", sid, run)

    def _laplace_tasks(self, seed: int, subjects) -> Iterable[_Task]:
        for c in self.analysis.list_correspondences():
            if not self._wanted(subjects, c.pair_id, c.left, c.right):
                continue

            def run(c=c) -> Outcome:
                verdict = self.analysis.verify_correspondence(c.pair_id, seed=seed)
                diag = verdict.to_dict()
                if c.printed:
                    diag["printed"] = c.printed
                return _verdict(verdict.passed), "", diag

            yield _Task(f"laplace:{c.pair_id}", "laplace", c.pair_id, run)

    def _localform_tasks(self, seed: int, subjects) -> Iterable[_Task]:
        for pid in self.lax.list_linear_problems():
            if not self._wanted(subjects, pid, self.lax.build_lax(pid).system_id):
                continue

            def run(pid=pid) -> Outcome:
                report = self.analysis.check_problem(pid, seed=seed)
                return _verdict(report.passed), "", report.to_dict()

            yield _Task(f"localform:{pid}", "localform", pid, run)

    def _corpus_tasks(self, subjects) -> Iterable[_Task]:
        if subjects:
            return

        def round_trip() -> Outcome:
            failures = self.spectral.corpus_round_trip()
            return _verdict(not failures), "", {"failures": failures}

        def flagged() -> Outcome:
            kinds = self.spectral.flagged_strings()
            accepted = sorted(t for t, k in kinds.items() if k == "accepted")
            return _verdict(not accepted), "", {"flagged": dict(sorted(kinds.items()))}

        def edges() -> Outcome:
            broken = {}
            for family in ("Garnier", "FS", "Sasano", "Matrix"):
                bad = self.spectral.edge_consistency(self.spectral.degeneration_graph(family))
                if bad:
                    broken[family] = [list(e) for e in bad]
            return _verdict(not broken), "", {"inconsistent_edges": broken}

        yield _Task("corpus:round-trip", "corpus", "spectral", round_trip)
        yield _Task("corpus:flagged", "corpus", "spectral", flagged)
        yield _Task("corpus:edges", "corpus", "graph", edges)

    def _flow_tasks(self, seed: int, subjects) -> Iterable[_Task]:
        for sid in self.catalog.list_systems():
            system = self.catalog.get_system(sid)
            if not self._wanted(subjects, sid, system.linear_problem or sid):
                continue

            def drift(sid=sid) -> Outcome:
                result = self.flows.energy_drift(self.flows.standard_spec(sid, seed), tol=1e-9)
                if result.reason != COMPLETED:
                    return SKIPPED, f"积分终止: {result.reason}", result.to_dict()
                return _verdict(result.passed), "", result.to_dict()

            def symplectic(sid=sid) -> Outcome:
                deviation = self.flows.symplectic_check(self.flows.standard_spec(sid, seed), 1e-2)
                return _verdict(deviation < 1e-5), "", {"deviation": deviation, "h": 1e-2}

            yield _Task(f"flows:{sid}/drift", "flows", sid, drift)
            yield _Task(f"flows:{sid}/symplectic", "flows", sid, symplectic)
            if system.two_time:
                def commute(sid=sid) -> Outcome:
                    spec = self.flows.standard_spec(sid, seed)
                    t1, t2 = spec.span[0], 0.6
                    result = self.flows.commutativity_check(
                        sid, spec.params, spec.initial, (t1, t2, 0.1, 0.1), tol=1e-6,
                    )
                    if result.inconclusive:
                        return SKIPPED, result.reason, result.to_dict()
                    return _verdict(result.passed), "", result.to_dict()

                yield _Task(f"flows:{sid}/commute", "flows", sid, commute)

    def plan(
        self,
        kinds: Sequence[str],
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        subjects: Optional[Sequence[str]] = None,
    ) -> List[_Task]:
        """按检验类别与对象展开任务列表"""
        unknown = [k for k in kinds if k not in CHECK_KINDS]
        if unknown:
            raise UnknownSystemError(", ".join(unknown), kind="检验类别")
        samples = ToolkitConfig.SAMPLES if samples is None else samples
        seed = ToolkitConfig.SEED if seed is None else seed
        wanted = self._resolve_subjects(subjects)
        builders = {
            "compat": lambda: self._compat_tasks(samples, seed, wanted),
            "degeneration": lambda: self._degeneration_tasks(samples, seed, wanted),
            "integrability": lambda: self._integrability_tasks(wanted),
            "greek": lambda: self._greek_tasks(wanted),
            "laplace": lambda: self._laplace_tasks(seed, wanted),
            "localform": lambda: self._localform_tasks(seed, wanted),
            "corpus": lambda: self._corpus_tasks(wanted),
            "flows": lambda: self._flow_tasks(seed, wanted),
        }
        tasks = [task for kind in kinds for task in builders[kind]()]
        if subjects and not tasks:
            raise UnknownSystemError(", ".join(subjects), kind="检验对象")
        return tasks

    # ---------- 执行 ----------

    def _execute(self, task: _Task) -> CheckRecord:
        start = time.perf_counter()
        try:
            verdict, reason, diagnostics = task.run()
        except ResampleSignal as e:
            verdict, reason, diagnostics = SKIPPED, f"重采样次数用尽: {e}", {}
        except Iso4dError as e:
            verdict, reason, diagnostics = FAIL, f"{type(e).__name__}: {e}", {}
        except Exception as e:
            self.logger.error(f"❌ {task.check_id} 执行失败: {e}")
            verdict, reason, diagnostics = FAIL, f"{type(e).__name__}: {e}", {}
        return CheckRecord(
            check_id=task.check_id,
            kind=task.kind,
            subject=task.subject,
            verdict=verdict,
            reason=reason,
            diagnostics=diagnostics,
            wall_time=round(time.perf_counter() - start, 3),
        )

    def run(
        self,
        kinds: Sequence[str] = CHECK_KINDS,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        subjects: Optional[Sequence[str]] = None,
        progress: Optional[Callable[[CheckRecord], None]] = None,
    ) -> VerificationReport:
        """执行检验并汇总为报告；记录按检验编号排序"""
        samples = ToolkitConfig.SAMPLES if samples is None else samples
        seed = ToolkitConfig.SEED if seed is None else seed
        tasks = self.plan(kinds, samples, seed, subjects)
        self.logger.info(f"开始 {len(tasks)} 项检验（{self.workers} 个线程，种子 {seed}）")

        records: List[CheckRecord] = []
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(self._execute, task): task for task in tasks}
            for future in as_completed(futures):
                record = future.result()
                records.append(record)
                if progress is not None:
                    progress(record)

        records.sort(key=lambda r: r.check_id)
        report = VerificationReport(
            schema_version=REPORT_SCHEMA_VERSION,
            toolkit_version=TOOLKIT_VERSION,
            seed=seed,
            samples=samples,
            flags={"kinds": list(kinds), "subjects": list(subjects or [])},
            records=records,
            discrepancies=self.discrepancies(),
        )
        counts = report.summary()
        status = "✅" if report.passed else "❌"
        self.logger.info(f"{status} 检验完成: 通过 {counts[PASS]}，失败 {counts[FAIL]}，跳过 {counts[SKIPPED]}")
        return report

    def discrepancies(self) -> Dict[str, str]:
        """数据表中需要更正的字符串及处理方式"""
        out = {}
        for text, kind in sorted(self.spectral.flagged_strings().items()):
            out[text] = f"被校验拒绝（{kind}）"
        for c in self.analysis.list_correspondences():
            if c.printed:
                out[c.printed] = f"按 {c.left_text} ↔ {c.right_text} 核对"
        return out


_verification_service: Optional[VerificationService] = None


def get_verification_service() -> VerificationService:
    """获取验证编排服务单例"""
    global _verification_service
    if _verification_service is None:
        _verification_service = VerificationService()
    return _verification_service
