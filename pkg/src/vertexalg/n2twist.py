"""The N=2 Neveu-Schwarz superalgebra and its topological twist.

Mode conventions: G+_{n+1/2} and G-_{n-1/2} are stored by the integer n
with index offsets +1/2 and -1/2, so wt G+(n) = -n-1/2, wt G-(n) = -n+1/2.
The bracket table is Def 5.2's eight relation families verbatim:

    [L(m), L(n)]            = (m-n)L(m+n) + (c/12)(m^3-m) delta
    [J(m), J(n)]            = (c/3) m delta
    [L(m), J(n)]            = -n J(m+n)
    [L(m), G+-_{n+-1/2}]    = (m/2 - (n+-1/2)) G+-_{m+n+-1/2}
    [J(m), G+-_{n+-1/2}]    = +- G+-_{m+n+-1/2}
    [G+_{m+1/2}, G-_{n-1/2}] = 2L(m+n) + (m-n+1)J(m+n) + (c/3)(m^2+m) delta
    [G+-, G+-]              = 0

The free carrier module has vacuum killed by L(n) n>=-1, J(n) n>=0,
G+_{n+1/2} n>=-1, G-_{n-1/2} n>=0; it is bigraded by (L(0)-weight,
J(0)-charge).

The twist replaces omega by omega_T = omega + (1/2) J(-2)1, whose modes are
L_T(n) = L(n) - ((n+1)/2) J(n); this formula is derived from the recursion-
computed modes of omega_T and cross-checked, never hard-coded into the
algebra.  The twisted data (omega_T, f = h, q = tau+, g = tau-/2) is a
strong topological structure with twisted central charge exactly 0; the
1/2 on g normalizes Qg = omega_T under the bracket conventions above.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import (BracketRule, BracketTable, FockModule, ModeSymbol,
                   ZERO_RULE, vadd_into, vscale, vsub)
from .scalars import Q1
from .tvoa import TvoaInstance
from .vertex import VertexOps


def n2_symbols():
    half = Fraction(1, 2)
    return [
        ModeSymbol("Gminus", 1, Fraction(3, 2), -1, annihilation_min=0,
                   index_offset=-half),
        ModeSymbol("Gplus", 1, Fraction(3, 2), 1, annihilation_min=-1,
                   index_offset=half),
        ModeSymbol("J", 0, 1, 0, annihilation_min=0),
        ModeSymbol("L", 0, 2, 0, annihilation_min=-1),
    ]


def n2_table(central_charge):
    """Def 5.2's Neveu-Schwarz relations as a bracket table."""
    table = BracketTable(n2_symbols(), central_value=central_charge)
    table.set_bracket("L", "L", BracketRule(
        terms=[(lambda m, n: Fraction(m - n), "L", 1, 1, 0)],
        central=(lambda m, n: Fraction(m ** 3 - m, 12), 0)))
    table.set_bracket("J", "J", BracketRule(
        central=(lambda m, n: Fraction(m, 3), 0)))
    table.set_bracket("L", "J", BracketRule(
        terms=[(lambda m, n: Fraction(-n), "J", 1, 1, 0)]))
    table.set_bracket("L", "Gplus", BracketRule(
        terms=[(lambda m, n: Fraction(m, 2) - (n + Fraction(1, 2)),
                "Gplus", 1, 1, 0)]))
    table.set_bracket("L", "Gminus", BracketRule(
        terms=[(lambda m, n: Fraction(m, 2) - (n - Fraction(1, 2)),
                "Gminus", 1, 1, 0)]))
    table.set_bracket("J", "Gplus", BracketRule(
        terms=[(lambda m, n: Q1, "Gplus", 1, 1, 0)]))
    table.set_bracket("J", "Gminus", BracketRule(
        terms=[(lambda m, n: -Q1, "Gminus", 1, 1, 0)]))
    table.set_bracket("Gplus", "Gminus", BracketRule(
        terms=[(lambda m, n: Fraction(2), "L", 1, 1, 0),
               (lambda m, n: Fraction(m - n + 1), "J", 1, 1, 0)],
        central=(lambda m, n: Fraction(m ** 2 + m, 3), 0)))
    table.set_bracket("Gplus", "Gplus", ZERO_RULE)
    table.set_bracket("Gminus", "Gminus", ZERO_RULE)
    return table


def ns_bracket(table, mode_a, mode_b):
    """[A, B] evaluated from the table: (mode terms, central coefficient)."""
    return table.bracket(mode_a, mode_b)


class N2Module:
    """Free lowest-weight module for the N=2 algebra."""

    def __init__(self, central_charge):
        self.central_charge = central_charge
        self.module = FockModule(n2_table(central_charge))
        self.vertex = VertexOps(self.module)

    @property
    def vacuum(self):
        return {(): Q1}

    @property
    def omega(self):
        return {(("L", -2),): Q1}

    @property
    def h(self):
        return {(("J", -1),): Q1}

    @property
    def tau_plus(self):
        return {(("Gplus", -2),): Q1}   # the state G+_{-3/2} 1

    @property
    def tau_minus(self):
        return {(("Gminus", -1),): Q1}  # the state G-_{-3/2} 1

    def twisted_grade(self, mono):
        """(L_T(0)-weight, J(0)-charge): wt - charge/2, charge."""
        w, q = self.module.monomial_grade(mono)
        return (w - Fraction(q, 2), q)


def twisted_virasoro_closed_form(n2, n, v):
    """L_T(n) = L(n) - ((n+1)/2) J(n), the expected closed form."""
    out = n2.module.apply_mode(("L", n), v)
    vadd_into(out, n2.module.apply_mode(("J", n), v), -Fraction(n + 1, 2))
    return out


def twist(n2, max_check_weight=4, index_range=3):
    """Build the twisted topological data from an N2Module.

    The twisted Virasoro modes are computed from omega_T by the vertex
    recursion and verified against L(n) - ((n+1)/2) J(n) on all blocks up
    to ``max_check_weight``; a mismatch raises AssertionError.

    Returns a TvoaInstance graded by (twisted weight, J(0)-charge) with
    f = h, q = tau+, g = tau-/2.
    """
    mod = n2.module
    omega_t = dict(n2.omega)
    vadd_into(omega_t, mod.canonicalize([("J", -2)]), Fraction(1, 2))

    # derive L_T(n) from the recursion and check the closed form
    w = mod.weight_floor
    while w <= max_check_weight:
        for mono in mod.basis(w):
            v = {mono: Q1}
            for n in range(-index_range, index_range + 1):
                derived = n2.vertex.weight_mode(omega_t, n, v)
                closed = twisted_virasoro_closed_form(n2, n, v)
                if vsub(derived, closed):
                    raise AssertionError(
                        f"L_T({n}) disagrees with closed form on {mono}")
        w += Fraction(1, 2)

    instance = TvoaInstance(
        mod, n2.vacuum, omega_t,
        f=dict(n2.h),
        q=dict(n2.tau_plus),
        g=vscale(n2.tau_minus, Fraction(1, 2)),
        strong=True,
        type_k=None,
        grade_fn=n2.twisted_grade,
        floor=Fraction(0),   # every creation mode has twisted weight >= 1
        name="n2-twist",
    )
    return instance
