"""Finite point-free topology of modules: submodule idioms, spectra, nuclei, Ler and Ψ."""

from .audit import TheoremReport, theorem_audit
from .catalog import build_instance, catalog_get, parse_instance
from .finalg import (FiniteModule, FiniteRing, abelian_module, direct_sum, matrix_ring,
                     product_ring, regular_module, upper_triangular, zn)
from .theory import ModuleAnalysis, analyze

__version__ = "0.1.0"
