"""Vertex operator maps defined by the standard mode recursion.

For a canonical monomial ``u = X(mu) w`` (leading creation mode peeled off)
the field is built by the two-sided residue recursion

    Y(u, x) = Res_{x1} (x1-x)^p X(x1) Y(w, x)
              - (-1)^{|X||w|} Res_{x1} (-x+x1)^p Y(w, x) X(x1)

with ``p = mu + h_X - 1`` where ``h_X`` is the field weight of the symbol
(so p = i-2 for c-insertions, i+1 for b- and Virasoro insertions, i for
weight-one currents).  ``(x1-x)^p`` is expanded in nonnegative powers of x,
``(-x+x1)^p`` in nonnegative powers of x1.  Y(vacuum, x) = Id, and the
creation property Y(v, x)1|_{x->0} = v follows.

Everything is computed coefficient-by-coefficient: ``y_coeff(u, p, v)`` is
the x^p coefficient of Y(u, x)v, a finite sum because the module's weight
floor truncates both residue expansions.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import vadd_into
from .scalars import Q1, smul


def binomial(p, k):
    """C(p, k) for integer p (possibly negative), k >= 0."""
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(p - i, i + 1)
    return out


class VertexOps:
    """Recursion-defined vertex operator map on a FockModule."""

    def __init__(self, module):
        self.module = module
        self._memo = {}

    def _mono_parity(self, mono):
        par = 0
        for mode in mono:
            par ^= self.module.table.parity(mode[0])
        return par

    def _power_floor(self, mono_u, mono_v):
        """Lower bound for powers p with [Y(u,x)v]_p possibly nonzero.

        wt([Y(u,x)v]_{x^p}) = wt u + wt v + p must be >= the module floor.
        """
        wu, _ = self.module.monomial_grade(mono_u)
        wv, _ = self.module.monomial_grade(mono_v)
        lo = self.module.weight_floor - wu - wv
        # powers are integers even when weights are half-integral
        import math
        return math.ceil(lo)

    def y_coeff_mono(self, mono_u, power, mono_v):
        """x^power coefficient of Y(mono_u, x) mono_v, as a vector."""
        if not mono_u:
            return {mono_v: Q1} if power == 0 else {}
        key = (mono_u, power, mono_v)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        mod = self.module
        head, rest = mono_u[0], mono_u[1:]
        sym = mod.table.symbols[head[0]]
        mu = head[1] + sym.index_offset
        # residue power exponent; integral for all supported symbols
        p_exp = mu + sym.field_weight - 1
        assert p_exp.denominator == 1, "residue exponent must be integral"
        p_exp = int(p_exp)
        sign_uw = -Q1 if (sym.parity and self._mono_parity(rest)) else Q1

        out = {}
        # term 1: sum_k C(p,k) (-1)^k X(mu - k) [Y(rest,x)v]_{power-k}
        lo = self._power_floor(rest, mono_v)
        k = 0
        while power - k >= lo:
            coeff = binomial(p_exp, k) * (-1) ** (k % 2)
            if coeff:
                inner = self.y_coeff_mono(rest, power - k, mono_v)
                if inner:
                    mode = (head[0], head[1] - k)
                    vadd_into(out, mod.apply_mode(mode, inner), coeff)
            k += 1

        # term 2: -(-1)^{|X||rest|} sum_k C(p,k) (-1)^{p-k}
        #             [Y(rest,x) (X(k - h + 1 + offset') v)]_{power-p+k}
        # the inserted mode has true index k - h + 1, i.e. stored index
        # k - h + 1 - offset
        k = 0
        while True:
            stored = k - sym.field_weight + 1 - sym.index_offset
            assert stored.denominator == 1
            mode = (head[0], int(stored))
            # X(true index k-h+1) annihilates v once its weight drops the
            # result below the floor; then all larger k vanish too
            wv, _ = mod.monomial_grade(mono_v)
            if wv + mod.mode_weight(mode) < mod.weight_floor:
                break
            coeff = binomial(p_exp, k) * (-1) ** ((p_exp - k) % 2)
            if coeff:
                xv = mod.apply_mode(mode, {mono_v: Q1})
                for m2, c2 in xv.items():
                    inner = self.y_coeff_mono(rest, power - p_exp + k, m2)
                    if inner:
                        vadd_into(out, inner, -sign_uw * coeff * c2)
            k += 1

        self._memo[key] = out
        return out

    def y_coeff(self, u, power, v):
        """x^power coefficient of Y(u, x)v for vectors u, v."""
        out = {}
        for mono_u, cu in u.items():
            for mono_v, cv in v.items():
                part = self.y_coeff_mono(mono_u, power, mono_v)
                if part:
                    vadd_into(out, part, smul(cu, cv))
        return out

    def y_mode(self, u, n, v):
        """u_n v in the convention Y(u, x) = sum_n u_n x^{-n-1}."""
        return self.y_coeff(u, -n - 1, v)

    def modes(self, u, v, n_range):
        """Map n -> u_n v over a finite window of mode indices."""
        return {n: self.y_mode(u, n, v) for n in n_range}

    def weight_mode(self, u, shift, v):
        """The mode of Y(u,x) shifting weight by ``-shift``.

        For a weight-h element u this is u(shift) := u_{shift+h-1}; e.g.
        weight_mode(omega, n, v) = L(n) v, weight_mode(g, n, v) = g(n) v.
        """
        mod = self.module
        h = None
        for mono in u:
            w, _ = mod.monomial_grade(mono)
            if h is None:
                h = w
            elif h != w:
                raise ValueError("weight_mode needs weight-homogeneous u")
        if h is None:
            return {}
        n = shift + h - 1
        assert Fraction(n).denominator == 1
        return self.y_mode(u, int(n), v)
