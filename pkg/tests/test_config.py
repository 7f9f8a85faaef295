"""Configuration documents, round trips, and the built-in presets."""

import math

import pytest

from ductwave.config import (
    ConfigDocument,
    builtin_scenarios,
    parse_config,
    scenario_from_config,
    serialize_config,
)
from ductwave.errors import ConfigError
from ductwave.signals import MultiHarmonicSignal, SineSignal

MINIMAL = """
# minimal runnable document
grid.length = 1.0
grid.cells = 50
geometry.h = 0.005
geometry.symmetry = axisymmetric
inflow.kind = velocity
inflow.shape = sine
inflow.amplitude = 0.5
inflow.frequency_hz = 440.0
run.losses = on
run.duration_periods = 2.0
"""


class TestParsing:
    def test_minimal_document(self):
        doc = parse_config(MINIMAL)
        assert doc.get("grid.cells") == 50
        assert doc.get("run.losses") is True
        assert doc.get("geometry.symmetry") == "axisymmetric"

    def test_comments_and_blanks_ignored(self):
        doc = parse_config("# only a comment\n\n   \ngrid.length = 2.0 # inline\n")
        assert doc.get("grid.length") == 2.0

    def test_unknown_key_reports_line(self):
        text = "grid.length = 1.0\ngrid.wibble = 3\n"
        with pytest.raises(ConfigError, match="line 2.*wibble"):
            parse_config(text)

    def test_duplicate_key_reports_line(self):
        text = "grid.length = 1.0\ngrid.length = 2.0\n"
        with pytest.raises(ConfigError, match="line 2.*duplicate"):
            parse_config(text)

    def test_bad_value_reports_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("grid.cells = many\n")
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("run.losses = maybe\n")

    def test_missing_equals_reports_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("grid.length 1.0\n")

    def test_harmonics_parsing(self):
        doc = parse_config(
            "inflow.harmonics = 1:100.0:0.0, 2:50.0:1.5708\n")
        assert doc.get("inflow.harmonics") == ((1, 100.0, 0.0),
                                               (2, 50.0, 1.5708))
        with pytest.raises(ConfigError):
            parse_config("inflow.harmonics = 1:100.0\n")

    def test_truncate_forms(self):
        assert parse_config("run.truncate = unbounded\n").get("run.truncate") is None
        assert parse_config("run.truncate = 250\n").get("run.truncate") == 250
        with pytest.raises(ConfigError):
            parse_config("run.truncate = -3\n")


class TestRoundTrip:
    def test_parse_serialize_is_identity(self):
        doc = parse_config(MINIMAL)
        text = serialize_config(doc)
        again = parse_config(text)
        assert again.values == doc.values
        # canonical form is a fixed point of serialize . parse
        assert serialize_config(again) == text

    def test_presets_round_trip(self):
        for name, doc in builtin_scenarios().items():
            text = serialize_config(doc)
            again = parse_config(text)
            assert again.values == doc.values, name

    def test_full_precision_floats_survive(self):
        doc = ConfigDocument({"grid.length": 1.425310887140203,
                              "grid.cells": 397})
        again = parse_config(serialize_config(doc))
        assert again.get("grid.length") == 1.425310887140203


class TestScenarioConstruction:
    def test_minimal_scenario(self):
        sc = scenario_from_config(parse_config(MINIMAL))
        assert sc.grid.cells == 50
        assert sc.geom.beta == 2
        assert isinstance(sc.inflow, SineSignal)
        assert sc.inflow.omega0 == pytest.approx(2.0 * math.pi * 440.0,
                                                 rel=1e-12)
        assert sc.probes == (1.0,)    # defaults to the outlet
        assert sc.kernel_mode == "consistent"
        assert sc.m_max is None

    def test_missing_required_key(self):
        with pytest.raises(ConfigError, match="grid.cells"):
            scenario_from_config(parse_config("grid.length = 1.0\n"))

    def test_duration_exclusivity(self):
        text = MINIMAL + "run.duration_s = 0.1\n"
        with pytest.raises(ConfigError, match="not both"):
            scenario_from_config(parse_config(text))

    def test_overrides(self):
        doc = parse_config(MINIMAL)
        over = doc.with_overrides(**{"run.losses": False, "run.cfl": 0.5})
        sc = scenario_from_config(over)
        assert sc.losses is False
        assert sc.cfl == 0.5


class TestPresets:
    def test_four_presets_exist(self):
        assert sorted(builtin_scenarios()) == [
            "coupled", "kirchhoff", "simple-wave", "trombone"]

    def test_all_presets_build_scenarios(self):
        for name, doc in builtin_scenarios().items():
            sc = scenario_from_config(doc)
            assert sc.duration > 0.0, name

    def test_trombone_geometry(self):
        sc = scenario_from_config(builtin_scenarios()["trombone"])
        assert sc.grid.length == 1.5
        assert sc.geom.h == 0.007
        assert sc.geom.beta == 2
        assert isinstance(sc.inflow, MultiHarmonicSignal)
        assert len(sc.inflow.components) == 4

    def test_kirchhoff_preset_is_acoustic(self):
        sc = scenario_from_config(builtin_scenarios()["kirchhoff"])
        assert sc.inflow.peak() / sc.gas.c0 <= 1e-4
        assert sc.losses is True

    def test_simple_wave_station_scaled_abscissa(self):
        from ductwave.oracles import shock_distance
        sc = scenario_from_config(builtin_scenarios()["simple-wave"])
        l_shock = shock_distance(sc.inflow.peak(), sc.inflow.omega0, sc.gas)
        assert sc.grid.length / l_shock == pytest.approx(0.8, abs=1e-6)
        assert sc.losses is False
