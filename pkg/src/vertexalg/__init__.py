"""vertexalg: exact computations for topological vertex algebra structures.

Everything is exact rational (or polynomial-in-c) arithmetic: mode algebras
on Fock-type modules, the Virasoro vacuum module, the bc-ghost system of
semi-infinite forms, the BRST complex with its cohomology and Gerstenhaber/
BV structure, the N=2 Neveu-Schwarz algebra and its topological twist, and
the order-by-order sewing calculus on the genus-zero moduli space.
"""

__version__ = "0.1.0"

from .fock import (ALL_GRADES, BracketRule, BracketTable, FockModule,
                   ModeSymbol, NotHomogeneous, UnknownSymbol)
from .virasoro import VacuumModule
from .ghost import GhostModule
from .brst import TensorComplex
from .tvoa import TvoaInstance, build_tensor_instance, check_axioms
from .n2twist import N2Module, twist

__all__ = [
    "ALL_GRADES", "BracketRule", "BracketTable", "FockModule", "ModeSymbol",
    "NotHomogeneous", "UnknownSymbol", "VacuumModule", "GhostModule",
    "TensorComplex", "TvoaInstance", "build_tensor_instance", "check_axioms",
    "N2Module", "twist", "__version__",
]
