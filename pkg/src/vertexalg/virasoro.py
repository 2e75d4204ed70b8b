"""The Virasoro mode algebra and its vacuum module M(c).

M(c) is realized algebraically as the quotient of the lowest-weight-zero
Verma module by L(-1)1: the vacuum is killed by L(n) for n >= -1, so the
canonical basis is L(-j_1)...L(-j_k)1 with j_1 >= ... >= j_k >= 2 and the
weight-w dimension is the number of partitions of w into parts >= 2.

The central charge may be a rational number or the symbol c (a CPoly), in
which case every coefficient is carried as an exact polynomial in c.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import BracketRule, BracketTable, FockModule, ModeSymbol
from .scalars import Q1
from .vertex import VertexOps


def virasoro_rule():
    """[L(m), L(n)] = (m-n) L(m+n) + (c/12)(m^3-m) delta_{m+n,0}."""
    return BracketRule(
        terms=[(lambda m, n: Fraction(m - n), "L", 1, 1, 0)],
        central=(lambda m, n: Fraction(m ** 3 - m, 12), 0),
    )


def virasoro_table(central_charge):
    table = BracketTable(
        [ModeSymbol("L", 0, 2, 0, annihilation_min=-1)],
        central_value=central_charge,
    )
    table.set_bracket("L", "L", virasoro_rule())
    return table


class VacuumModule:
    """The Virasoro vacuum module M(c) with its vertex operator map."""

    def __init__(self, central_charge):
        self.central_charge = central_charge
        self.module = FockModule(virasoro_table(central_charge))
        self.vertex = VertexOps(self.module)

    @property
    def vacuum(self):
        return {(): Q1}

    @property
    def omega(self):
        return {(("L", -2),): Q1}

    def act(self, n, v):
        """L(n) applied to a vector in the vacuum module."""
        return self.module.apply_mode(("L", n), v)

    def weight_dimension(self, w):
        """Number of partitions of w into parts >= 2."""
        if w < 0:
            raise ValueError("negative weight")
        return len(self.module.basis(w))

    def basis(self, w):
        return self.module.basis(w)

    def vertex_modes(self, u, v, window):
        """Modes u_n v for n in the window, by the standard recursion."""
        return self.vertex.modes(u, v, window)


def partitions_with_min_part(w, min_part):
    """Independent partition counter (enumeration oracle for tests)."""
    def rec(remaining, largest):
        if remaining == 0:
            return 1
        return sum(rec(remaining - p, p)
                   for p in range(min_part, min(largest, remaining) + 1))
    return rec(w, w)
