import math

import pytest
from hypothesis import given, strategies as st

from internodal.core import (
    ConfigError,
    Dimension,
    InnerExceedsOuter,
    NetworkConfig,
    NonFiniteInput,
    NonPositiveRadius,
    PlacementKind,
    Scenario,
    all_configs,
    make_config,
    validate_config,
)


def test_scenario_node_models():
    assert Scenario.S1.inner_node_model() is PlacementKind.RWP
    assert Scenario.S1.outer_node_model() is PlacementKind.UNIFORM
    assert Scenario.S2.inner_node_model() is PlacementKind.UNIFORM
    assert Scenario.S2.outer_node_model() is PlacementKind.RWP
    assert {Scenario.S3.inner_node_model(), Scenario.S3.outer_node_model()} == {PlacementKind.RWP}
    assert {Scenario.S4.inner_node_model(), Scenario.S4.outer_node_model()} == {PlacementKind.UNIFORM}


@pytest.mark.parametrize("text", ["s1", "S1", Scenario.S1])
def test_scenario_parse(text):
    assert Scenario.parse(text) is Scenario.S1


def test_dimension_parse():
    assert Dimension.parse(3) is Dimension.SPATIAL_3D
    with pytest.raises(ConfigError):
        Dimension.parse(4)


def test_derived_quantities():
    cfg = make_config(2, "s1", 1.0, 2.0)
    assert cfg.r_minus == 1.0
    assert cfg.r_plus == 3.0
    assert cfg.support == (0.0, 3.0)
    assert cfg.breakpoints == (1.0, 2.0)
    assert not cfg.equal_radius
    eq = make_config(3, "s4", 1.5, 1.5)
    assert eq.equal_radius and eq.breakpoints == ()


@pytest.mark.parametrize("r1, r2, exc", [
    (0.0, 1.0, NonPositiveRadius),
    (-1.0, 1.0, NonPositiveRadius),
    (2.0, 1.0, InnerExceedsOuter),
    (math.nan, 1.0, NonFiniteInput),
    (1.0, math.inf, NonFiniteInput),
])
def test_invalid_configs_rejected(r1, r2, exc):
    with pytest.raises(exc):
        make_config(2, "s1", r1, r2)


def test_all_configs_enumeration():
    cfgs = all_configs()
    assert len(cfgs) == 8
    assert len({(c.dim, c.scenario) for c in cfgs}) == 8


@given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.1, 10))
def test_scaling_preserves_ratio(a, b, c):
    r1, r2 = sorted((a, b))
    cfg = validate_config(NetworkConfig(Dimension.PLANAR_2D, Scenario.S3, r1, r2))
    sc = cfg.scaled(c)
    assert sc.r1 == pytest.approx(c * r1)
    assert sc.r2 == pytest.approx(c * r2)
    assert sc.scenario is cfg.scenario


def test_as_dict_round_trip():
    cfg = make_config(3, "s2", 1.0, 2.0)
    d = cfg.as_dict()
    assert d == {"dim": 3, "scenario": "s2", "r1": 1.0, "r2": 2.0}
    assert make_config(**d) == cfg
