"""Planar electrical reduction: curves, plane graphs, and move searches."""
