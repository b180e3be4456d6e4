from fractions import Fraction as F

import pytest

from qracah_krall.krall import MassConfig
from qracah_krall.qracah import QRacahFamily, RacahParams

CANONICAL_NS = (3, 4, 5, 6)
CANONICAL_MASSES = MassConfig(F(1, 10), F(1, 20))


def params_for(truncation: str, N: int) -> RacahParams:
    """Canonical values, with gamma = 1/11 when gamma is not the truncated one."""
    kw = dict(alpha=F(1, 5), beta=F(1, 7), gamma=F(1, 11), delta=F(1, 3))
    kw.pop({"gamma": "gamma", "alpha": "alpha", "betadelta": "beta"}[truncation])
    return RacahParams.build(F(1, 2), N=N, truncation=truncation, **kw)


@pytest.fixture(params=CANONICAL_NS, ids=lambda n: f"N{n}")
def canonical(request) -> RacahParams:
    return RacahParams.canonical(request.param)


@pytest.fixture(params=["alpha", "betadelta", "gamma"])
def any_truncation(request) -> RacahParams:
    return params_for(request.param, 4)


@pytest.fixture
def p4() -> RacahParams:
    return RacahParams.canonical(4)


@pytest.fixture
def fam4(p4) -> QRacahFamily:
    return QRacahFamily(p4)


@pytest.fixture
def masses() -> MassConfig:
    return CANONICAL_MASSES
