"""
初始化服务包
"""
from .spectral_service import SpectralService, get_spectral_service
from .laxpair_service import LaxPairService, get_laxpair_service
from .catalog_service import CatalogService, get_catalog_service
from .degeneration_service import DegenerationService, get_degeneration_service
from .linear_analysis_service import LinearAnalysisService, get_linear_analysis_service
from .flow_service import FlowService, get_flow_service
from .verification_service import VerificationService, get_verification_service

__all__ = [
    "SpectralService", "get_spectral_service",
    "LaxPairService", "get_laxpair_service",
    "CatalogService", "get_catalog_service",
    "DegenerationService", "get_degeneration_service",
    "LinearAnalysisService", "get_linear_analysis_service",
    "FlowService", "get_flow_service",
    "VerificationService", "get_verification_service",
]
