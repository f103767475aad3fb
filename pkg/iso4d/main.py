"""
iso4d 命令行入口

退出码：0 全部通过，1 有检验失败，2 用法错误或未知编号。
"""
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import click
import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .config import REPORT_SCHEMA_VERSION, ToolkitConfig, setup_logging
from .errors import Iso4dError, PreconditionError, SpectralParseError, SpectralValidationError, UnknownSystemError
from .models.flow_models import FlowSpec
from .models.report_models import FAIL, PASS, CheckRecord, VerificationReport

console = Console()
logger = logging.getLogger(__name__)

app = typer.Typer(name="iso4d", help="四维 Painlevé 型方程工具包", add_completion=False, no_args_is_help=True)
spectral_app = typer.Typer(help="谱型的解析与打印", no_args_is_help=True)
check_app = typer.Typer(help="可复现的验证检验", no_args_is_help=True)
laplace_app = typer.Typer(help="Laplace 变换对应", no_args_is_help=True)
app.add_typer(spectral_app, name="spectral")
app.add_typer(check_app, name="check")
app.add_typer(laplace_app, name="laplace")

USAGE_ERRORS = (UnknownSystemError, SpectralParseError, SpectralValidationError)

VERDICT_STYLE = {PASS: "green", FAIL: "red"}


def _emit_json(payload) -> None:
    """机器可读输出：键排序，不带颜色"""
    typer.echo(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True))


def _exit(ok: bool) -> None:
    raise typer.Exit(code=0 if ok else 1)


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="输出调试日志"),
):
    setup_logging("DEBUG" if verbose else None)


# ---------- 目录 ----------

@app.command("list")
def list_command(
    problems: bool = typer.Option(False, "--problems", help="列出线性问题而不是哈密顿系统"),
    rules: bool = typer.Option(False, "--rules", help="列出退化规则"),
    as_json: bool = typer.Option(False, "--json", help="JSON 输出"),
):
    """列出哈密顿系统、线性问题或退化规则"""
    from .services.catalog_service import RESTRICTED_ID, get_catalog_service
    from .services.degeneration_service import get_degeneration_service
    from .services.laxpair_service import get_laxpair_service

    if rules:
        entries = [
            {"id": r.rule_id, "family": r.family, "has_data": r.has_data}
            for r in get_degeneration_service().list_rules()
        ]
        columns = ("id", "family", "has_data")
    elif problems:
        lax = get_laxpair_service()
        entries = []
        for pid in lax.list_linear_problems():
            p = lax.build_lax(pid)
            entries.append({"id": pid, "system": p.system_id, "size": p.size, "times": [t.name for t in p.times]})
        columns = ("id", "system", "size", "times")
    else:
        catalog = get_catalog_service()
        entries = []
        for sid in catalog.list_systems(include_auxiliary=True):
            s = catalog.get_system(sid)
            entries.append({
                "id": sid,
                "family": s.family,
                "pattern": s.pattern_text,
                "spectral": s.spectral_text,
                "times": [t.name for t in s.times],
                "auxiliary": sid == RESTRICTED_ID,
            })
        columns = ("id", "family", "pattern", "spectral", "times")

    if as_json:
        _emit_json(entries)
        return
    table = Table(title=f"共 {len(entries)} 项")
    for c in columns:
        table.add_column(c)
    for e in entries:
        table.add_row(*[", ".join(e[c]) if isinstance(e[c], list) else str(e[c]) for c in columns])
    console.print(table)


@app.command("show")
def show_command(
    item_id: str = typer.Argument(..., help="系统编号或线性问题编号"),
    as_json: bool = typer.Option(False, "--json", help="JSON 输出"),
):
    """显示一个系统（哈密顿量、参数、规范方程）或线性问题（A、B、Riemann 图式）"""
    from .services.catalog_service import RESTRICTED_ID, get_catalog_service
    from .services.laxpair_service import get_laxpair_service

    catalog = get_catalog_service()
    if item_id in catalog.list_systems() or item_id == RESTRICTED_ID:
        payload = catalog.get_system(item_id).to_dict()
    else:
        payload = get_laxpair_service().build_lax(item_id).to_dict()
    if as_json:
        _emit_json(payload)
        return
    body = "\n".join(f"[bold]{k}[/bold]: {v}" for k, v in payload.items())
    console.print(Panel(body, title=item_id, expand=False))


# ---------- 谱型 ----------

@spectral_app.command("parse")
def spectral_parse(
    text: str = typer.Argument(..., help="谱型字符串，例如 ((22)(2))((31))((1)(1))"),
    as_json: bool = typer.Option(False, "--json", help="JSON 输出"),
):
    """解析谱型：每个奇点的加细分拆序列、奇点型与 Poincaré 秩"""
    from .services.spectral_service import get_spectral_service

    service = get_spectral_service()
    s = service.parse_spectral(text)
    payload = {
        "spectral": service.print_spectral(s),
        "m": s.m,
        "locals": [r.as_lists() for r in s.locals],
        "pattern": service.print_pattern(service.singularity_pattern_of(s)),
        "poincare_ranks": [service.poincare_rank(r) for r in s.locals],
    }
    if as_json:
        _emit_json(payload)
        return
    table = Table(title=f"{payload['spectral']}  (m={s.m}, {payload['pattern']})")
    table.add_column("奇点")
    table.add_column("加细序列")
    table.add_column("Poincaré 秩")
    for k, r in enumerate(s.locals):
        table.add_row(str(k), " ⊃ ".join(str(p) for p in r.as_lists()), str(service.poincare_rank(r)))
    console.print(table)


@spectral_app.command("pattern")
def spectral_pattern(
    text: str = typer.Argument(..., help="谱型字符串"),
):
    """打印谱型对应的奇点型"""
    from .services.spectral_service import get_spectral_service

    service = get_spectral_service()
    typer.echo(service.print_pattern(service.singularity_pattern_of(service.parse_spectral(text))))


# ---------- 检验 ----------

def _print_report(report: VerificationReport) -> None:
    table = Table(title=f"iso4d {report.toolkit_version} · seed {report.seed}")
    table.add_column("检验")
    table.add_column("结论")
    table.add_column("说明", overflow="fold")
    for r in report.records:
        style = VERDICT_STYLE.get(r.verdict, "yellow")
        table.add_row(r.check_id, f"[{style}]{r.verdict}[/{style}]", r.reason)
    console.print(table)
    counts = report.summary()
    console.print(f"通过 {counts[PASS]} · 失败 {counts[FAIL]} · 跳过 {counts['SKIPPED']}")


def _run_checks(
    kinds: List[str],
    subjects: Optional[List[str]],
    samples: Optional[int],
    seed: Optional[int],
    as_json: bool,
    report_path: Optional[Path],
    timings: bool,
) -> None:
    from .services.verification_service import get_verification_service

    service = get_verification_service()

    def progress(record: CheckRecord) -> None:
        if not as_json and record.verdict == FAIL:
            console.print(f"[red]✗ {record.check_id}[/red] {record.reason}")

    report = service.run(kinds, samples=samples, seed=seed, subjects=subjects or None, progress=progress)
    text = report.to_json(timings=timings)
    if report_path is not None:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(text + "\n", encoding="utf-8")
    if as_json:
        typer.echo(text)
    else:
        _print_report(report)
        if report_path is not None:
            console.print(f"报告已写入 {report_path}")
    _exit(report.passed)


SUBJECTS = typer.Argument(None, help="只检验这些编号（系统、线性问题或规则）")
SAMPLES = typer.Option(None, "--samples", help="每项随机样本数（默认取 ISO4D_SAMPLES）")
SEED = typer.Option(None, "--seed", help="基础随机种子（默认取 ISO4D_SEED）")
JSON = typer.Option(False, "--json", help="JSON 输出")
REPORT = typer.Option(None, "--report", help="报告写入路径")
TIMINGS = typer.Option(False, "--timings", help="报告中保留耗时")


@check_app.command("compat")
def check_compat(subjects: Optional[List[str]] = SUBJECTS, samples: Optional[int] = SAMPLES,
                 seed: Optional[int] = SEED, as_json: bool = JSON, report: Optional[Path] = REPORT,
                 timings: bool = TIMINGS):
    """Lax 对的等单值相容性 ∂_t A − ∂_x B + [A, B] = 0"""
    _run_checks(["compat"], subjects, samples, seed, as_json, report, timings)


@check_app.command("degeneration")
def check_degeneration(subjects: Optional[List[str]] = SUBJECTS, samples: Optional[int] = SAMPLES,
                       seed: Optional[int] = SEED, as_json: bool = JSON, report: Optional[Path] = REPORT,
                       timings: bool = TIMINGS):
    """退化规则的 ε→0 极限"""
    _run_checks(["degeneration"], subjects, samples, seed, as_json, report, timings)


@check_app.command("integrability")
def check_integrability(subjects: Optional[List[str]] = SUBJECTS, as_json: bool = JSON,
                        report: Optional[Path] = REPORT, timings: bool = TIMINGS):
    """两时间系统的可积性恒等式"""
    _run_checks(["integrability"], subjects, None, None, as_json, report, timings)


@check_app.command("greek")
def check_greek(subjects: Optional[List[str]] = SUBJECTS, as_json: bool = JSON,
                report: Optional[Path] = REPORT, timings: bool = TIMINGS):
    """希腊字母形式与 θ 形式哈密顿量一致"""
    _run_checks(["greek"], subjects, None, None, as_json, report, timings)


@check_app.command("flows")
def check_flows(subjects: Optional[List[str]] = SUBJECTS, seed: Optional[int] = SEED, as_json: bool = JSON,
                report: Optional[Path] = REPORT, timings: bool = TIMINGS):
    """能量漂移、辛性与两时间流的交换性"""
    _run_checks(["flows"], subjects, None, seed, as_json, report, timings)


@check_app.command("all")
def check_all(samples: Optional[int] = SAMPLES, seed: Optional[int] = SEED, as_json: bool = JSON,
              report: Optional[Path] = REPORT, timings: bool = TIMINGS,
              skip_flows: bool = typer.Option(False, "--skip-flows", help="跳过数值积分检验")):
    """完整检验矩阵"""
    from .services.verification_service import CHECK_KINDS

    kinds = [k for k in CHECK_KINDS if not (skip_flows and k == "flows")]
    _run_checks(kinds, None, samples, seed, as_json, report, timings)


@app.command("localform")
def localform_command(
    problem_id: str = typer.Argument(..., help="线性问题编号或系统编号"),
    draws: Optional[int] = typer.Option(None, "--draws", help="随机参数点个数"),
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
):
    """数值约化各奇点的局部形式并复现谱型与 Riemann 图式"""
    from .services.linear_analysis_service import get_linear_analysis_service

    service = get_linear_analysis_service()
    result = service.check_problem(problem_id, draws=draws, seed=seed)
    if as_json:
        payload = result.to_dict()
        _, analysis = service.analyzed_point(result.problem_id, seed)
        payload["analysis"] = analysis.to_dict()
        _emit_json(payload)
    else:
        style = "green" if result.passed else "red"
        console.print(Panel(
            f"谱型: {', '.join(sorted(set(result.spectral)))}\n最大指数偏差: {result.max_deviation:.3g}\n"
            + "\n".join(result.failures),
            title=f"[{style}]{result.problem_id}[/{style}]",
            expand=False,
        ))
    _exit(result.passed)


# ---------- Laplace ----------

@laplace_app.command("check")
def laplace_check(
    pair_id: str = typer.Argument("all", help="对应编号（L1…L7）或 all"),
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
):
    """对两侧线性问题做 Laplace 变换并复现对偶谱型"""
    from .services.linear_analysis_service import get_linear_analysis_service

    service = get_linear_analysis_service()
    if pair_id == "all":
        verdicts = service.verify_all_correspondences(seed=seed)
    else:
        verdicts = [service.verify_correspondence(pair_id, seed=seed)]
    if as_json:
        _emit_json([v.to_dict() for v in verdicts])
    else:
        table = Table(title="Laplace 对应")
        table.add_column("编号")
        table.add_column("对应")
        table.add_column("结论")
        for v in verdicts:
            c = service.get_correspondence(v.pair_id)
            mark = "[green]PASS[/green]" if v.passed else "[red]FAIL[/red]"
            table.add_row(c.pair_id, f"{c.left_text} ↔ {c.right_text}", mark)
        console.print(table)
    _exit(all(v.passed for v in verdicts))


@laplace_app.command("list")
def laplace_list(as_json: bool = JSON):
    """列出对应表、幂零构造备注与三点 Fuchs 型分类表"""
    from .services.linear_analysis_service import get_linear_analysis_service

    tables = get_linear_analysis_service().laplace_tables()
    if as_json:
        _emit_json(tables)
        return
    for name, rows in tables.items():
        console.print(f"[bold]{name}[/bold]")
        for row in rows:
            console.print(f"  {row}")


# ---------- 数值积分 ----------

def _parse_floats(text: str, sep: str, label: str) -> List[float]:
    try:
        return [float(v) for v in text.split(sep)]
    except ValueError as e:
        raise typer.BadParameter(f"{label} 格式错误: {text}") from e


@app.command("integrate")
def integrate_command(
    system_id: str = typer.Argument(..., help="系统编号，或 P:<kind> 表示经典 Painlevé 方程"),
    time_index: int = typer.Option(0, "--time-index", help="沿第几个时间变量积分"),
    params_file: Optional[Path] = typer.Option(None, "--params", help="参数取值 JSON 文件"),
    param: Optional[List[str]] = typer.Option(None, "--param", help="单个参数 name=value，可重复"),
    init: Optional[str] = typer.Option(None, "--init", help="初始点 q1,p1,q2,p2"),
    span: Optional[str] = typer.Option(None, "--span", help="时间区间 a:b"),
    out: Optional[Path] = typer.Option(None, "--out", help="轨道 CSV 输出路径"),
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
):
    """沿一个时间变量数值积分哈密顿系统，遇到可动极点时停止"""
    from .services.flow_service import get_flow_service

    service = get_flow_service()
    base = service.standard_spec(system_id, seed, time_index=time_index)
    params: Dict[str, float] = dict(base.params)
    if params_file is not None:
        params.update({k: float(v) for k, v in json.loads(params_file.read_text(encoding="utf-8")).items()})
    for item in param or []:
        name, _, value = item.partition("=")
        if not value:
            raise typer.BadParameter(f"--param 需要 name=value 形式: {item}")
        params[name] = float(value)
    initial = tuple(_parse_floats(init, ",", "--init")) if init else base.initial
    bounds = _parse_floats(span, ":", "--span") if span else list(base.span)
    if len(bounds) != 2:
        raise typer.BadParameter(f"--span 需要 a:b 形式: {span}")
    spec = FlowSpec(system_id, initial, (bounds[0], bounds[1]), params, time_index, base.tolerances)

    traj = service.integrate(spec)
    if out is not None:
        service.export_csv(traj, out)
    if as_json:
        payload = traj.to_dict()
        payload["spec"] = spec.to_dict()
        _emit_json(payload)
    else:
        style = "green" if traj.completed else "yellow"
        console.print(Panel(
            f"终止原因: [{style}]{traj.reason}[/{style}]\n步数: {len(traj.times) - 1}\n"
            f"终点 t={traj.times[-1]:.6g}: {', '.join(f'{v:.10g}' for v in traj.final_state)}\n"
            f"H: {traj.energies[0]:.10g} → {traj.energies[-1]:.10g}",
            title=system_id,
            expand=False,
        ))
        if out is not None:
            console.print(f"轨道已写入 {out}")
    _exit(traj.completed)


# ---------- 退化图 ----------

@app.command("graph")
def graph_command(
    family: str = typer.Option(..., "--family", help="Garnier、FS、Sasano、Matrix 或 Classical"),
    dot: Optional[Path] = typer.Option(None, "--dot", help="DOT 输出路径"),
    as_json: bool = JSON,
):
    """导出一族的退化图（DOT 或 JSON）"""
    from .services.spectral_service import get_spectral_service

    service = get_spectral_service()
    graph = service.degeneration_graph(family)
    if dot is not None:
        dot.parent.mkdir(parents=True, exist_ok=True)
        dot.write_text(service.to_dot(graph), encoding="utf-8")
    if as_json:
        _emit_json(graph.to_dict())
        return
    levels: Dict[int, List[str]] = {}
    for node in graph.nodes.values():
        levels.setdefault(node.level, []).append(node.pattern_text)
    table = Table(title=f"{family}: {len(graph.nodes)} 个节点, {len(graph.edges)} 条边")
    table.add_column("层级")
    table.add_column("奇点型")
    for level in sorted(levels):
        table.add_row(str(level), "  ".join(levels[level]))
    console.print(table)
    if dot is not None:
        console.print(f"DOT 已写入 {dot}")


@app.command("config")
def config_command(as_json: bool = JSON):
    """打印生效的配置"""
    if as_json:
        payload = ToolkitConfig.as_dict()
        payload["schema_version"] = REPORT_SCHEMA_VERSION
        _emit_json(payload)
        return
    ToolkitConfig.print_config()


def run(argv: Optional[List[str]] = None) -> int:
    """执行命令并返回退出码"""
    command = typer.main.get_command(app)
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = command.main(args=args, prog_name="iso4d", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        e.show()
        return 2
    except click.Abort:
        console.print("[yellow]已中断[/yellow]")
        return 1
    except USAGE_ERRORS as e:
        console.print(f"[red]错误:[/red] {e}")
        return 2
    except PreconditionError as e:
        console.print(f"[red]前提条件不满足:[/red] {e}")
        return 2
    except Iso4dError as e:
        console.print(f"[red]{type(e).__name__}:[/red] {e}")
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
