"""Linking disjoint segments into simple polygons: exact solver, gadget transforms and checks."""
