# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""Commands package for MCN Traffgen."""
