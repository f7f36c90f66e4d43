"""RIP constants, norm estimates, tail bounds and theorem formulas."""
