"""Pytest configuration and shared fixtures."""

from pathlib import Path
from unittest.mock import patch

import pytest

from gpdlab.core.groupoid import FinGroupoid, GFunctor, cyclic_group, discrete, unit
from gpdlab.models import SuiteConfig
from gpdlab.span import Endpoint, Span


@pytest.fixture
def disc2() -> FinGroupoid:
    return discrete(2)


@pytest.fixture
def bz2() -> FinGroupoid:
    """One object with automorphism group Z/2."""
    return cyclic_group(2)


@pytest.fixture
def two_point_span() -> Span:
    """``𝟙 ← Disc(2) → 𝟙``."""
    one = unit()
    apex = discrete(2)
    leg = GFunctor(apex, one, (0, 0), (0, 0))
    return Span(Endpoint.gpd(one), Endpoint.gpd(one), apex, leg, leg)


@pytest.fixture
def suite_cfg() -> SuiteConfig:
    return SuiteConfig(seed=7, instance_count=1, bang_bound=2)


@pytest.fixture
def isolated_config(tmp_path: Path):
    """Point the config layer at an empty temporary directory."""
    with (
        patch("gpdlab.config._CONFIG_FILE", tmp_path / "config.toml"),
        patch("gpdlab.config._CONFIG_DIR", tmp_path),
        patch.dict("os.environ", {}, clear=False) as env,
    ):
        env.pop("GPDLAB_BUDGET", None)
        yield tmp_path
