"""Sweeps, figure data and the verification suite built on the core numerics."""
