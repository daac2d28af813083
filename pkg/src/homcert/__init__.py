"""Exact homological algebra over Z, Z/n and F_p.

Finitely presented modules, complexes of finite-rank frees, compact
generator packages, flatness certificates, and build-tree
decompositions, all with machine-checkable witnesses.
"""

from .rings import Fp, RingDescriptor, Zmod, ZZ
from .matrices import Mat, MatrixError
from .modules import FPModule, ModuleMap
from .complexes import ChainMap, Complex, Homotopy, PeriodicTail
from .verdicts import Verdict

__all__ = [
    "ChainMap", "Complex", "FPModule", "Fp", "Homotopy", "Mat", "MatrixError",
    "ModuleMap", "PeriodicTail", "RingDescriptor", "Verdict", "Zmod", "ZZ",
]
