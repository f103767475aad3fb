"""
初始化模型包
"""
from .symexpr import MatrixExpr, RationalExpr
from .spectral_models import Partition, RefiningSequence, SingularityPattern, SpectralType
from .system_models import HamiltonianSystem, ParameterSet
from .lax_models import LinearProblem, ResidualReport
from .degeneration_models import DegenerationRule, LimitVerdict
from .analysis_models import LocalData, LocalSeries, OkuboData, SpectralAnalysis
from .flow_models import FlowSpec, FlowTolerances, Trajectory
from .report_models import CheckRecord, VerificationReport

__all__ = [
    "MatrixExpr", "RationalExpr",
    "Partition", "RefiningSequence", "SingularityPattern", "SpectralType",
    "HamiltonianSystem", "ParameterSet",
    "LinearProblem", "ResidualReport",
    "DegenerationRule", "LimitVerdict",
    "LocalData", "LocalSeries", "OkuboData", "SpectralAnalysis",
    "FlowSpec", "FlowTolerances", "Trajectory",
    "CheckRecord", "VerificationReport",
]
