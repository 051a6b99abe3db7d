"""
Basis layer: simple types, terms and the unification engine.
"""
