"""Screen-to-texture maps and the ways of evaluating them along a row."""
