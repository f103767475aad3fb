"""
测试公共夹具：服务实例共享（构造代价较高），随机源按固定种子创建
"""
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from iso4d.services.catalog_service import get_catalog_service  # noqa: E402
from iso4d.services.degeneration_service import get_degeneration_service  # noqa: E402
from iso4d.services.flow_service import get_flow_service  # noqa: E402
from iso4d.services.laxpair_service import get_laxpair_service  # noqa: E402
from iso4d.services.linear_analysis_service import get_linear_analysis_service  # noqa: E402
from iso4d.services.spectral_service import get_spectral_service  # noqa: E402

SEED = 7


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def spectral():
    return get_spectral_service()


@pytest.fixture(scope="session")
def catalog():
    return get_catalog_service()


@pytest.fixture(scope="session")
def lax_service():
    return get_laxpair_service()


@pytest.fixture(scope="session")
def degeneration_service():
    return get_degeneration_service()


@pytest.fixture(scope="session")
def analysis():
    return get_linear_analysis_service()


@pytest.fixture(scope="session")
def flows():
    return get_flow_service()
