"""
工具包运行配置
"""

import os

TOOLKIT_VERSION = "0.3.1"
REPORT_SCHEMA_VERSION = "1.1"


class ToolkitConfig:
    """工具包配置（环境变量 > 默认值）"""

    # 随机检验
    SEED = int(os.getenv("ISO4D_SEED", "7"))
    SAMPLES = int(os.getenv("ISO4D_SAMPLES", "20"))
    MAX_RESAMPLE = int(os.getenv("ISO4D_MAX_RESAMPLE", "50"))

    # 局部约化
    CLUSTER_TOL = float(os.getenv("ISO4D_CLUSTER_TOL", "1e-6"))
    EXPONENT_TOL = float(os.getenv("ISO4D_EXPONENT_TOL", "1e-8"))
    SERIES_MARGIN = int(os.getenv("ISO4D_SERIES_MARGIN", "5"))

    # 数值积分
    RTOL = float(os.getenv("ISO4D_RTOL", "1e-10"))
    ATOL = float(os.getenv("ISO4D_ATOL", "1e-12"))
    POLE_NORM = float(os.getenv("ISO4D_POLE_NORM", "1e8"))
    MIN_STEP = float(os.getenv("ISO4D_MIN_STEP", "1e-14"))

    # 并行与日志
    WORKERS = int(os.getenv("ISO4D_WORKERS", "4"))
    LOG_LEVEL = os.getenv("ISO4D_LOG_LEVEL", "WARNING").upper()

    @classmethod
    def get_sampling_config(cls):
        """获取随机采样配置对象"""
        from ..services.sampling import SamplingConfig

        return SamplingConfig(
            seed=cls.SEED,
            samples=cls.SAMPLES,
            max_resample=cls.MAX_RESAMPLE,
        )

    @classmethod
    def get_analysis_config(cls):
        """获取数值局部分析配置对象"""
        from ..models.analysis_models import AnalysisConfig

        return AnalysisConfig(
            cluster_tol=cls.CLUSTER_TOL,
            exponent_tol=cls.EXPONENT_TOL,
            series_margin=cls.SERIES_MARGIN,
        )

    @classmethod
    def get_flow_config(cls):
        """获取积分器配置对象"""
        from ..models.flow_models import FlowTolerances

        return FlowTolerances(
            rtol=cls.RTOL,
            atol=cls.ATOL,
            pole_norm=cls.POLE_NORM,
            min_step=cls.MIN_STEP,
        )

    @classmethod
    def as_dict(cls) -> dict:
        return {
            "version": TOOLKIT_VERSION,
            "seed": cls.SEED,
            "samples": cls.SAMPLES,
            "max_resample": cls.MAX_RESAMPLE,
            "cluster_tol": cls.CLUSTER_TOL,
            "exponent_tol": cls.EXPONENT_TOL,
            "series_margin": cls.SERIES_MARGIN,
            "rtol": cls.RTOL,
            "atol": cls.ATOL,
            "pole_norm": cls.POLE_NORM,
            "min_step": cls.MIN_STEP,
            "workers": cls.WORKERS,
            "log_level": cls.LOG_LEVEL,
        }

    @classmethod
    def print_config(cls):
        """打印当前配置"""
        print("iso4d 配置:")
        print(f"  版本: {TOOLKIT_VERSION}")
        print(f"  随机种子: {cls.SEED}")
        print(f"  每项样本数: {cls.SAMPLES}")
        print(f"  最大重采样次数: {cls.MAX_RESAMPLE}")
        print(f"  特征值聚类容差: {cls.CLUSTER_TOL}")
        print(f"  指数比较容差: {cls.EXPONENT_TOL}")
        print(f"  积分容差: rtol={cls.RTOL}, atol={cls.ATOL}")
        print(f"  极点范数: {cls.POLE_NORM}, 步长下限: {cls.MIN_STEP}")
        print(f"  并行线程: {cls.WORKERS}")
        print(f"  日志级别: {cls.LOG_LEVEL}")
