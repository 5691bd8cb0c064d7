import importlib.util
import math
from pathlib import Path

import pytest

from green_bounds.bounds.green_assembly import BoundParams, kim_sarnak_eta
from green_bounds.core.modular_group import Family, GroupSpec, admissible_epsilons

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def gamma0_11() -> GroupSpec:
    return GroupSpec(Family.GAMMA0, 11)


@pytest.fixture
def full_group() -> GroupSpec:
    return GroupSpec(Family.FULL)


def make_params(spec: GroupSpec, **overrides) -> BoundParams:
    """Worked example parameters with the published constants."""
    values = dict(
        delta=2.0,
        eta=kim_sarnak_eta(),
        A=-3.00e4,
        B=1.58e4,
        C=137.0,
        sup_F_Y=25.7,
        sup_F_X=25.7,
        genus=1,
        volume=2.0 * math.pi,
        zeta=25.7,
        minus_one_count=2,
        cusps=tuple(admissible_epsilons(spec, 2.0)),
        level=spec.level,
    )
    values.update(overrides)
    return BoundParams(**values)


@pytest.fixture
def paper_params(gamma0_11) -> BoundParams:
    return make_params(gamma0_11)


@pytest.fixture(scope="session")
def cli():
    """The command-line script loaded as a module."""
    spec = importlib.util.spec_from_file_location("green_bounds_cli", ROOT / "green_bounds.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module
