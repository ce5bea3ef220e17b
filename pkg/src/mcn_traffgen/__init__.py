# Copyright (c) 2026, Giacomo Marciani
# Licensed under the MIT License

"""MCN Traffgen - Model and synthesize mobile core control-plane traffic"""
