from . import evaluate, fit, grid, landscape, optimize, render, roundtrip, simulate

COMMANDS = (grid, simulate, fit, optimize, landscape, evaluate, render, roundtrip)

__all__ = ["COMMANDS"]
