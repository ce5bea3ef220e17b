# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for template rendering."""

import yaml

from mcn_traffgen.rendering import render_template, to_yaml


def test_render_template():
    """Test rendering a packaged template."""
    text = render_template(
        "fit-summary.txt.j2",
        generation="LTE",
        ue_count=2,
        event_count=13,
        output="model.yaml",
        key_count=1,
        baseline=False,
        insufficient=0,
        clusters=[("PHONE", "00h=1")],
    )
    assert text.startswith("✓ Fitted LTE model\n")
    assert "Baseline: no" in text
    assert "States without transitions" not in text
    assert "    PHONE: 00h=1\n" in text


def test_to_yaml():
    """Test block YAML for scalars, lists and mappings."""
    assert to_yaml(5.0, "ThetaF") == "ThetaF: 5.0"
    assert yaml.safe_load(to_yaml([1.0, 2.0], "VtScales")) == {"VtScales": [1.0, 2.0]}
    assert to_yaml({}, "FeatureThresholds") == "FeatureThresholds: {}"


def test_render_config_template():
    """Test that each field gets a comment line followed by its value."""
    fields = [
        dict(name="ThetaN", description="Cluster size", type_hint="int", default=7),
        dict(name="LogLevel", description="Level", type_hint="str", default="INFO"),
    ]
    text = render_template("config.yaml.j2", fields=fields)
    assert text == (
        "# MCN Traffgen settings\n"
        "\n"
        "# Cluster size (int)\n"
        "ThetaN: 7\n"
        "\n"
        "# Level (str)\n"
        "LogLevel: INFO\n"
    )
