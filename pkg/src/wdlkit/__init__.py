"""Finite lattices, formal concept analysis and weakly dicomplemented lattices."""
