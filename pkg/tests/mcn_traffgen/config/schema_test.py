# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for settings schema."""

import pytest
from pydantic import ValidationError

from mcn_traffgen.config.schema import Settings


class TestSettingsSchema:
    """Tests for Settings schema validation."""

    def test_defaults(self):
        """Test default settings."""
        settings = Settings()
        assert settings.ThetaF == 5.0
        assert settings.ThetaN == 1000
        assert settings.UnknownTacPolicy == "reject"
        assert settings.AdReplicates == 10000
        assert settings.VtScales[0] == 1.0
        assert settings.VtScales[-1] == 1000.0
        assert settings.LogLevel == "INFO"

    def test_extra_fields_forbidden(self):
        """Test that extra fields are not allowed."""
        with pytest.raises(ValidationError) as exc_info:
            Settings(Colour="red")
        assert "Extra inputs are not permitted" in str(exc_info.value)

    def test_feature_thresholds(self):
        """Test per-feature threshold overrides."""
        settings = Settings(FeatureThresholds={"sd_idle_s": 60.0})
        assert settings.FeatureThresholds == {"sd_idle_s": 60.0}
        with pytest.raises(ValidationError, match="Unknown feature"):
            Settings(FeatureThresholds={"n_ho": 1.0})
        with pytest.raises(ValidationError, match="must be positive"):
            Settings(FeatureThresholds={"n_srv_req": 0.0})

    def test_unknown_tac_policy(self):
        """Test unknown-TAC policies."""
        assert Settings(UnknownTacPolicy="TABLET").UnknownTacPolicy == "TABLET"
        with pytest.raises(ValidationError, match="Invalid policy"):
            Settings(UnknownTacPolicy="guess")

    def test_vt_scales(self):
        """Test that window sizes are sorted, deduplicated and bounded."""
        assert Settings(VtScales=[10, 1, 10]).VtScales == [1.0, 10.0]
        with pytest.raises(ValidationError):
            Settings(VtScales=[0.5])
        with pytest.raises(ValidationError):
            Settings(VtScales=[])

    @pytest.mark.parametrize(
        "field,value",
        [
            ("ThetaF", 0),
            ("ThetaN", 0),
            ("Alpha", 1.0),
            ("AdReplicates", 100),
            ("Threads", 0),
            ("LogLevel", "TRACE"),
            ("UtcOffsetMinutes", 15 * 60),
        ],
    )
    def test_invalid_values(self, field, value):
        """Test out-of-range values."""
        with pytest.raises(ValidationError):
            Settings(**{field: value})

    def test_field_metadata(self):
        """Test field descriptions and metadata."""
        assert "quadtree" in Settings.get_field_description("ThetaF")
        assert Settings.get_field_description("Missing") == ""
        metadata = {m["name"]: m for m in Settings.get_all_fields_metadata()}
        assert metadata["ThetaN"]["default"] == 1000
        assert metadata["ThetaN"]["type_hint"] == "int"
        assert metadata["LogLevel"]["type_hint"].startswith("one of:")
        assert metadata["VtScales"]["type_hint"] == "list"
