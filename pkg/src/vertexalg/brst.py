"""The BRST complex V (x) Lambda: differential, cohomology, BV structure.

The complex is realized as a single Fock module over the symbols L, b, c
(matter Virasoro commutes with the ghosts), so tensor monomials are
canonical words L(...)b(...)c(...) applied to the double vacuum.

The differential is

    delta = sum_j L(j) c(-j)
            - 1/2 sum_{i,j} (i-j) :b(i+j) c(-i) c(-j):

(the trilinear bracket inside iota is the Witt part only, relative to the
center).  delta raises ghost number by one and preserves weight; delta^2
vanishes exactly when the matter central charge is 26, and with symbolic c
every matrix entry of delta^2 is divisible by (c - 26).

Contributing indices in the infinite sums are bounded: an annihilator in a
normal-ordered term must contract inside the argument vector, so on ghost
weight w all indices lie in [-w-2, 2w+3]; the bound gets a 2-wide assert
margin rather than being assumed.

Cohomology is computed blockwise by exact rank over Q; the dot product
u.v = Res_x x^{-1} Y(u, x)v, the BV operator Delta = b(0) (the zero mode of
g = 1 (x) b), and its defect bracket give the Gerstenhaber structure on
classes.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .fock import (BracketTable, FockModule, ModeSymbol, ZERO_RULE,
                   vadd_into, vscale, vsub)
from .ghost import apply_normal_ordered, ghost_symbols, ghost_table
from .scalars import CPoly, Q0, Q1
from .vertex import VertexOps
from .virasoro import virasoro_rule


class NotACochainComplex(Exception):
    """delta^2 != 0 on a requested block (the central charge is not 26)."""


class NotClosed(Exception):
    """An operation on cohomology received a non-closed representative."""


class NotEigenvector(Exception):
    """ghost number was requested for a non-homogeneous vector."""


class NotStrong(Exception):
    """g(0)^2 != 0, so the BV structure is unavailable."""


def tensor_table(central_charge):
    """Bracket table for M(c) (x) Lambda as one mode algebra."""
    symbols = [ModeSymbol("L", 0, 2, 0, annihilation_min=-1)] + ghost_symbols()
    table = BracketTable(symbols, central_value=central_charge)
    table.set_bracket("L", "L", virasoro_rule())
    gh = ghost_table()
    table.set_bracket("b", "b", gh.entries[("b", "b")])
    table.set_bracket("c", "c", gh.entries[("c", "c")])
    table.set_bracket("c", "b", gh.entries[("c", "b")])
    table.set_bracket("L", "b", ZERO_RULE)
    table.set_bracket("L", "c", ZERO_RULE)
    return table


class TensorComplex:
    """The BRST complex for the Virasoro vacuum module at central charge c."""

    def __init__(self, central_charge):
        self.central_charge = central_charge
        self.module = FockModule(tensor_table(central_charge))
        self.vertex = VertexOps(self.module)
        self._delta_matrix_memo = {}

    # -- grading helpers --------------------------------------------------

    @property
    def vacuum(self):
        return {(): Q1}

    def sector_weights(self, mono):
        """(matter weight, ghost weight) of a tensor monomial."""
        wm = Fraction(0)
        wg = Fraction(0)
        for mode in mono:
            wt = self.module.mode_weight(mode)
            if mode[0] == "L":
                wm += wt
            else:
                wg += wt
        return wm, wg

    def basis(self, weight, ghost=None):
        return self.module.basis(weight, ghost)

    def ghost_numbers_at_weight(self, weight):
        return self.module.fermions_at_weight(weight)

    # -- the differential --------------------------------------------------

    def delta_monomial(self, mono, check_margin=False):
        """delta applied to one canonical monomial."""
        wm, wg = self.sector_weights(mono)
        v = {mono: Q1}
        out = {}
        # sum_j L(j) c(-j): L(j) needs matter weight wm - j >= 0 and the
        # ghost factor needs wg + j >= -1
        lo = int(-1 - wg)
        hi = int(wm)
        for j in range(lo, hi + 1):
            term = self.module.apply_mode(("c", -j), v)
            term = self.module.apply_mode(("L", j), term)
            vadd_into(out, term)
        if check_margin:
            for j in (lo - 1, hi + 1):
                term = self.module.apply_mode(("c", -j), v)
                term = self.module.apply_mode(("L", j), term)
                assert not term, f"delta linear-term bound violated at j={j}"
        # -1/2 sum_{i,j} (i-j) :b(i+j) c(-i) c(-j):
        half = Fraction(-1, 2)
        lo = int(-wg - 2)
        hi = int(2 * wg + 3)
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                coeff = Fraction(i - j)
                if not coeff:
                    continue
                term = apply_normal_ordered(
                    self.module, [("b", i + j), ("c", -i), ("c", -j)],
                    v, half * coeff)
                vadd_into(out, term)
        if check_margin:
            ring = list(range(lo - 2, lo)) + list(range(hi + 1, hi + 3))
            for i in ring:
                for j in range(lo - 2, hi + 3):
                    for (a, b) in ((i, j), (j, i)):
                        coeff = Fraction(a - b)
                        if not coeff:
                            continue
                        extra = apply_normal_ordered(
                            self.module, [("b", a + b), ("c", -a), ("c", -b)],
                            v, half * coeff)
                        assert not extra, (
                            f"delta trilinear bound violated at ({a},{b})")
        return out

    def delta(self, v, check_margin=False):
        """The BRST differential (fermion number +1, weight preserved)."""
        out = {}
        for mono, coeff in v.items():
            vadd_into(out, self.delta_monomial(mono, check_margin), coeff)
        return out

    def u_operator(self, v):
        """Ghost number operator U = sum_j :c(-j) b(j): on the complex."""
        if not v:
            return {}
        wmax = max(self.sector_weights(m)[1] for m in v)
        bound = int(wmax) + 3
        out = {}
        for j in range(-bound, bound + 1):
            vadd_into(out, apply_normal_ordered(
                self.module, [("c", -j), ("b", j)], v))
        return out

    def ghost_number(self, v):
        """The U eigenvalue; raises NotEigenvector when mixed."""
        if not v:
            return 0
        values = set()
        for mono in v:
            img = self.u_operator({mono: Q1})
            if not img:
                values.add(0)
            elif set(img) == {mono}:
                values.add(Fraction(img[mono]))
            else:
                raise NotEigenvector(mono)
        if len(values) != 1:
            raise NotEigenvector(sorted(values))
        return int(values.pop())

    # -- block matrices and the dual differential ---------------------------

    def delta_matrix(self, weight, ghost):
        """Columns of delta: block (weight, ghost) -> (weight, ghost+1)."""
        key = (Fraction(weight), ghost)
        cached = self._delta_matrix_memo.get(key)
        if cached is not None:
            return cached
        src = self.basis(weight, ghost)
        dst = self.basis(weight, ghost + 1)
        cols = self.module.matrix_of(lambda v: self.delta(v), src, dst)
        result = (src, dst, cols)
        self._delta_matrix_memo[key] = result
        return result

    def dual_differential(self, phi, weight, ghost):
        """d(phi) = phi o delta for phi supported on block (weight, ghost).

        Returns the functional on block (weight, ghost-1) as {monomial:
        coeff}; the transpose of the delta block matrix.
        """
        src, dst, cols = self.delta_matrix(weight, ghost - 1)
        dst_index = {m: i for i, m in enumerate(dst)}
        out = {}
        phi_vec = [phi.get(m, Q0) for m in dst]
        for j, mono in enumerate(src):
            val = sum((phi_vec[i] * cols[j][i] for i in range(len(dst))), Q0)
            if val:
                out[mono] = val
        return out

    def pairing(self, phi, v):
        return sum((phi.get(m, Q0) * c for m, c in v.items()), Q0)

    # -- cohomology ----------------------------------------------------------

    def _require_cochain(self, weight, ghost):
        # canary: delta^2 b(-2)1 = ((c-26)/2) c(-2)1, so any c != 26 is
        # caught even on blocks whose own delta^2 happens to vanish
        canary = (("b", -2),)
        src = (canary,) + self.basis(weight, ghost)
        for mono in src:
            sq = self.delta(self.delta({mono: Q1}))
            if sq:
                raise NotACochainComplex(
                    {"weight": weight, "ghost": ghost, "monomial": mono,
                     "delta_squared": sq})

    def cohomology(self, weight, ghost):
        """(dimension, representative vectors) of H^{weight, ghost}.

        Exact rank computation; representatives are kernel vectors whose
        classes form a basis of ker/im.
        """
        self._require_cochain(weight, ghost - 1)
        self._require_cochain(weight, ghost)
        src, dst, cols = self.delta_matrix(weight, ghost)
        if not src:
            return 0, []
        rows = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
        kernel = linalg.nullspace(rows, len(src))
        _, _, img_cols = self.delta_matrix(weight, ghost - 1)
        image = [list(col) for col in img_cols]
        dim = len(kernel) - linalg.column_rank(image)
        reps = []
        span = list(image)
        for vec in kernel:
            if not linalg.in_span(span, vec):
                span.append(list(vec))
                reps.append(self._from_coords(vec, src))
        assert len(reps) == dim
        return dim, reps

    def _from_coords(self, coords, basis):
        return {m: c for m, c in zip(basis, coords) if c}

    def is_exact(self, v):
        """True iff v = delta(u) for some u (v must be bihomogeneous)."""
        if not v:
            return True
        grade = self.module.grade_of(v)
        weight, ghost = grade
        src, dst, cols = self.delta_matrix(weight, ghost - 1)
        vec = [v.get(m, Q0) for m in dst]
        leftovers = set(v) - set(dst)
        if leftovers:
            raise AssertionError(f"vector outside block basis: {leftovers}")
        return linalg.in_span([list(c) for c in cols], vec)

    def is_closed(self, v):
        return not self.delta(v)

    def euler_check(self, weight):
        """Rank-nullity: sum (-1)^g dim H = sum (-1)^g dim C at a weight."""
        ghosts = self.ghost_numbers_at_weight(weight)
        if not ghosts:
            return True
        lo, hi = min(ghosts) - 1, max(ghosts) + 1
        chi_c = 0
        chi_h = 0
        for g in range(lo, hi + 1):
            chi_c += (-1) ** (g % 2) * len(self.basis(weight, g))
            dim, _ = self.cohomology(weight, g)
            chi_h += (-1) ** (g % 2) * dim
        return chi_c == chi_h

    # -- products on cohomology ----------------------------------------------

    def dot(self, u, v):
        """Res_x x^{-1} Y(u, x)v = u_{-1} v on closed representatives."""
        if not self.is_closed(u):
            raise NotClosed("left factor")
        if not self.is_closed(v):
            raise NotClosed("right factor")
        return self.vertex.y_mode(u, -1, v)

    def bv_operator(self, u):
        """Delta = g(0) = b(0), the BV operator, on a closed representative."""
        sq = self.module.apply_mode(("b", 0), self.module.apply_mode(("b", 0), u))
        if sq:
            raise NotStrong(u)
        if not self.is_closed(u):
            raise NotClosed(u)
        out = self.module.apply_mode(("b", 0), u)
        if not self.is_closed(out):
            raise NotClosed("bv image not closed (nonzero weight class?)")
        return out

    def gerstenhaber_bracket(self, u, v):
        """[u, v] as the BV defect of Delta against the dot product.

        [u, v] = (-1)^{|u|} (Delta(u.v) - (Delta u).v - (-1)^{|u|} u.(Delta v))
        with |u| the ghost number of u.
        """
        gu = self.ghost_number(u)
        sign_u = (-1) ** (gu % 2)
        term1 = self.bv_operator(self.dot(u, v))
        term2 = self.dot(self.bv_operator(u), v)
        term3 = vscale(self.dot(u, self.bv_operator(v)), Fraction(sign_u))
        out = vsub(vsub(term1, term2), term3)
        return vscale(out, Fraction(sign_u))
