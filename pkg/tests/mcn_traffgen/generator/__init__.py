# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Tests for generator package."""
