"""
测试公共配置：项目根目录入路径、hypothesis 配置、slow 标记、常用预设夹具
"""
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from src.services.catalog_service import preset_super_a11, preset_taft, preset_uqsl2  # noqa: E402
from src.services.nichols_service import BraidedDiagonalSpace, build_nichols  # noqa: E402
from src.services.smash_service import smash_product  # noqa: E402

settings.register_profile(
    "nichols",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "nichols"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 耗时较长的验收用例（默认仍会运行）")


def nichols_of(preset):
    bichar = preset.bicharacter()
    return build_nichols(BraidedDiagonalSpace.standard(bichar))


@pytest.fixture(scope="session")
def taft3():
    preset = preset_taft(3)
    return preset, nichols_of(preset)


@pytest.fixture(scope="session")
def taft3_smash(taft3):
    return smash_product(taft3[1])


@pytest.fixture(scope="session")
def uqsl2_3():
    preset = preset_uqsl2(3)
    return preset, nichols_of(preset)


@pytest.fixture(scope="session")
def super1():
    preset = preset_super_a11(1)
    return preset, nichols_of(preset)
