"""Auslander-Reiten quivers of submodule categories over commutative uniserial rings.

Modules: ring_core (rings, Smith form, linear systems), module_core
(finite modules and maps), poset_repr (poset-indexed submodule systems),
decomp (endomorphism rings, decomposition, isomorphism), ar_machinery
(almost split sequences), knitting (translation quivers from slices) and
catalog_cli (presets, enumeration oracle, command line).
"""

__version__ = "0.1.0"
