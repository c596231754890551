"""Exact invariants of virtual knots and classical links.

Modules:

* :mod:`virtlink.poly` — Laurent polynomials, unit normalization, Magnus series
* :mod:`virtlink.gauss` — Gauss diagrams, crossing index, Reidemeister moves
* :mod:`virtlink.seifert` — Seifert matrices, Alexander polynomials
* :mod:`virtlink.milnor` — triple linking numbers
* :mod:`virtlink.braid` — braid closures, homogenization, fiber stabilization
* :mod:`virtlink.cli` — the ``virtlink`` command
"""
from .errors import VirtlinkError

__version__ = "0.1.0"
__all__ = ["VirtlinkError", "__version__"]
