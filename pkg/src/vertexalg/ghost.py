"""The bc-ghost system: semi-infinite forms for the Virasoro algebra.

Modes and conventions (all brackets are graded, both symbols odd):

    [c(i), b(j)] = delta_{i+j,0},   [b(i), b(j)] = [c(i), c(j)] = 0,
    b(x) = sum b(j) x^{-j-2},       c(x) = sum c(j) x^{-j+1},

so b has field weight 2 and fermion charge -1, c has field weight -1 and
fermion charge +1; wt b(j) = wt c(j) = -j.  The vacuum is killed by b(j)
for j >= -1 and by c(j) for j >= 2, giving the canonical basis
b(j_1)...b(j_n) c(i_1)...c(i_m) 1 with distinct j's <= -2 and distinct
i's <= 1.  Weight spaces vanish below -1 (the single weight -1 creation
mode is c(1)).

L_wedge(j) = sum_i (i - j) :c(-i) b(i+j): realizes the Virasoro action on
forms with central charge -26; (i - j) is the Witt bracket coefficient,
taken relative to the center.  The contributing i on a weight-w vector
satisfy |i| <= w + |j| + 2; this bound is asserted on an outer margin, not
assumed.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import (BracketRule, BracketTable, FockModule, ModeSymbol,
                   vadd_into, ZERO_RULE)
from .scalars import Q0, Q1
from .vertex import VertexOps


def ghost_symbols():
    return [
        ModeSymbol("b", 1, 2, -1, annihilation_min=-1),
        ModeSymbol("c", 1, -1, 1, annihilation_min=2),
    ]


def ghost_table():
    table = BracketTable(ghost_symbols(), central_value=Q1)
    table.set_bracket("b", "b", ZERO_RULE)
    table.set_bracket("c", "c", ZERO_RULE)
    table.set_bracket("c", "b",
                      BracketRule(central=(lambda m, n: Q1, 0, False)))
    return table


def normal_order_pair(c_index, b_index):
    """Normal order :c(i) b(j): per the defining case split on j.

    Returns (sign, word) where word is the ordered mode pair; the b mode is
    moved left exactly when it is a creation mode (j < -1).
    """
    if b_index < -1:
        return -1, (("b", b_index), ("c", c_index))
    return 1, (("c", c_index), ("b", b_index))


def normal_order(modes, module):
    """Normal order a word of modes: creation left, annihilation right.

    Relative order within each group is kept; the sign is the parity of the
    permutation restricted to odd modes (all ghost modes are odd).
    """
    creation = []
    annihilation = []
    sign = 1
    odd_seen_ann = 0
    for mode in modes:
        odd = module.table.parity(mode[0])
        if module.is_annihilator(mode):
            annihilation.append(mode)
            if odd:
                odd_seen_ann += 1
        else:
            # moving this creation mode past the annihilators already seen
            if odd and odd_seen_ann % 2:
                sign = -sign
            creation.append(mode)
    return sign, tuple(creation) + tuple(annihilation)


def apply_normal_ordered(module, modes, v, coeff=Q1):
    """Apply sign * (normal-ordered word of modes) to a vector."""
    sign, word = normal_order(modes, module)
    scaled = {m: c * coeff * sign for m, c in v.items()}
    return module.apply_word(list(word), scaled)


class GhostModule:
    """The ghost vertex operator algebra Lambda with its operators."""

    def __init__(self):
        self.module = FockModule(ghost_table())
        self.vertex = VertexOps(self.module)

    @property
    def vacuum(self):
        return {(): Q1}

    def omega_wedge(self):
        """The Virasoro element 2 c(0)b(-2)1 + c(1)b(-3)1 in canonical form."""
        out = {}
        vadd_into(out, self.module.canonicalize([("c", 0), ("b", -2)]),
                  Fraction(2))
        vadd_into(out, self.module.canonicalize([("c", 1), ("b", -3)]), Q1)
        return out

    def apply_normal_ordered(self, modes, v, coeff=Q1):
        """Apply sign * (normal-ordered word) to a vector."""
        return apply_normal_ordered(self.module, modes, v, coeff)

    def _l_wedge_range(self, j, v):
        """Contributing i for L_wedge(j) on v, with a 2-wide assert margin."""
        wmax = max((self.module.monomial_grade(m)[0] for m in v),
                   default=Fraction(0))
        bound = int(wmax) + abs(j) + 2
        return bound

    def l_wedge(self, j, v, check_margin=True):
        """L_wedge(j) v = sum_i (i-j) :c(-i) b(i+j): v (finite sum)."""
        if not v:
            return {}
        bound = self._l_wedge_range(j, v)
        out = {}
        for i in range(-bound, bound + 1):
            coeff = Fraction(i - j)
            if not coeff:
                continue
            term = self.apply_normal_ordered(
                [("c", -i), ("b", i + j)], v, coeff)
            vadd_into(out, term)
        if check_margin:
            for i in list(range(-bound - 2, -bound)) + list(range(bound + 1, bound + 3)):
                coeff = Fraction(i - j)
                if not coeff:
                    continue
                extra = self.apply_normal_ordered(
                    [("c", -i), ("b", i + j)], v, coeff)
                assert not extra, (
                    f"L_wedge support bound violated at i={i}, j={j}")
        return out

    def u_operator(self, v):
        """Apply the fermion/ghost number operator U to a vector."""
        if not v:
            return {}
        wmax = max((self.module.monomial_grade(m)[0] for m in v),
                   default=Fraction(0))
        bound = int(wmax) + 3
        out = {}
        for j in range(-bound, bound + 1):
            vadd_into(out, self.apply_normal_ordered(
                [("c", -j), ("b", j)], v))
        return out

    def weight_dims(self, max_weight):
        """dim of each weight space (all fermion numbers), from -1 up."""
        dims = {}
        w = Fraction(-1)
        while w <= max_weight:
            dims[int(w)] = len(self.module.basis(w))
            w += 1
        return dims


def tower_dimensions(max_weight):
    """Graded dimension oracle: two fermionic towers by direct expansion.

    Coefficient of q^w in prod_{j>=2}(1+q^j) * prod_{w'>=-1}(1+q^{w'})
    restricted to the finitely many factors that can contribute, where the
    second product runs over the c-mode weights -i for creation indices
    i <= 1.  Returns {weight: dim} for weights in [-1, max_weight].
    """
    coeffs = {0: 1}
    # b tower: weights 2, 3, ..., each at most once
    for wt in range(2, max_weight + 2):
        new = dict(coeffs)
        for w, cnt in coeffs.items():
            if w + wt <= max_weight + 1:
                new[w + wt] = new.get(w + wt, 0) + cnt
        coeffs = new
    # c tower: weights -1, 0, 1, 2, ... each at most once
    for wt in range(-1, max_weight + 2):
        new = dict(coeffs)
        for w, cnt in coeffs.items():
            if w + wt <= max_weight + 1:
                new[w + wt] = new.get(w + wt, 0) + cnt
        coeffs = new
    return {w: c for w, c in coeffs.items() if -1 <= w <= max_weight}
