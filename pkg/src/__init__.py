"""zeroone-lab src package."""
