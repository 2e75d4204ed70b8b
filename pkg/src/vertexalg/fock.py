"""Exact kernel for mode algebras on Fock-type modules.

A *mode* is a pair ``(symbol, index)``; a *monomial* is a normal-ordered word
of creation modes applied to a vacuum; a *vector* is a finite rational linear
combination of monomials, stored as ``{monomial: coefficient}``.

Mode convention
---------------
For a field of weight ``h`` expanded ``Y(v, x) = sum_mu v(mu) x^{-mu-h}``, the
mode ``v(mu)`` has weight ``-mu``.  Symbols whose modes carry a half-integer
index (the N=2 supercurrents) store the integer ``n`` of ``G^{\\pm}_{n\\pm1/2}``
and declare an ``index_offset`` of ``+1/2`` or ``-1/2``; the true index is
``stored + offset``.

Canonical order on modes: sort by symbol name, then by index descending
(most-negative last).  Odd modes square to zero unless their self-bracket
says otherwise; repeated even modes are allowed.

The rewriting of an arbitrary word into the canonical basis terminates: each
step either shortens the word (a bracket contraction) or moves a mode one
position toward its sorted slot / toward annihilating the vacuum.  A depth
guard asserts this.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import CPoly, Q0, Q1, smul


class UnknownSymbol(KeyError):
    """A bracket or symbol lookup was requested for an undeclared symbol."""


class NotHomogeneous(Exception):
    """A vector spans several bigrades where a single one was required."""


#: distinguished grade of the zero vector
ALL_GRADES = object()

_MAX_REWRITE_DEPTH = 10000


class ModeSymbol:
    """Metadata for one family of modes."""

    __slots__ = ("name", "parity", "field_weight", "fermion_charge",
                 "index_offset", "annihilation_min")

    def __init__(self, name, parity, field_weight, fermion_charge,
                 annihilation_min, index_offset=Fraction(0)):
        self.name = name
        self.parity = parity  # 0 even, 1 odd
        self.field_weight = Fraction(field_weight)
        self.fermion_charge = fermion_charge
        # stored index >= annihilation_min kills the vacuum
        self.annihilation_min = annihilation_min
        self.index_offset = Fraction(index_offset)
        if parity != fermion_charge % 2:
            raise ValueError(f"parity of {name} does not match fermion charge")


class BracketRule:
    """The graded bracket [A(m), B(n)] as structure-constant data.

    ``terms`` is a list of ``(poly, symbol, am, bn, shift)`` entries meaning
    ``poly(m, n) * symbol(am*m + bn*n + shift)``; ``poly`` maps ``(m, n)`` to
    a scalar.  ``central`` is ``None`` or ``(poly, delta_shift, uses_center)``
    meaning ``poly(m, n) * delta_{m+n+delta_shift, 0}`` times the table's
    central value when ``uses_center`` (else times the identity scalar 1);
    the anticommutator [c(i), b(j)] = delta is an identity term, not a
    multiple of the Virasoro center.
    """

    __slots__ = ("terms", "central")

    def __init__(self, terms=(), central=None):
        self.terms = list(terms)
        if central is not None and len(central) == 2:
            central = (central[0], central[1], True)
        self.central = central

    def eval(self, m, n, central_value):
        """Return (list[(coeff, mode)], central_coeff) at integer indices."""
        modes = []
        for poly, symbol, am, bn, shift in self.terms:
            coeff = poly(m, n)
            if coeff:
                modes.append((coeff, (symbol, am * m + bn * n + shift)))
        central = Q0
        if self.central is not None:
            poly, delta_shift, uses_center = self.central
            if m + n + delta_shift == 0:
                coeff = poly(m, n)
                if coeff:
                    central = smul(coeff, central_value) if uses_center else coeff
        return modes, central


ZERO_RULE = BracketRule()


class BracketTable:
    """Symbols plus structure constants [A(m), B(n)] with a central value.

    Entries are stored for ordered pairs; a missing ``(B, A)`` is derived from
    ``(A, B)`` by graded antisymmetry
    ``[A(m), B(n)] = -(-1)^{|A||B|} [B(n), A(m)]``.
    """

    def __init__(self, symbols, central_value=Q0):
        self.symbols = {s.name: s for s in symbols}
        self.central_value = central_value
        self.entries = {}

    def set_bracket(self, name_a, name_b, rule):
        if name_a not in self.symbols or name_b not in self.symbols:
            raise UnknownSymbol(f"bracket ({name_a},{name_b})")
        self.entries[(name_a, name_b)] = rule

    def bracket(self, mode_a, mode_b):
        """[A(m), B(n)] -> (mode terms, central coefficient)."""
        (sa, m), (sb, n) = mode_a, mode_b
        if sa not in self.symbols or sb not in self.symbols:
            raise UnknownSymbol(f"bracket ({sa},{sb})")
        rule = self.entries.get((sa, sb))
        if rule is not None:
            return rule.eval(m, n, self.central_value)
        rule = self.entries.get((sb, sa))
        if rule is None:
            raise UnknownSymbol(f"no bracket rule for ({sa},{sb})")
        modes, central = rule.eval(n, m, self.central_value)
        sign = -1 if not (self.symbols[sa].parity and self.symbols[sb].parity) else 1
        if sign == -1:
            modes = [(-c, md) for c, md in modes]
            central = -central
        return modes, central

    def parity(self, name):
        return self.symbols[name].parity

    def mode_weight(self, mode):
        sym = self.symbols[mode[0]]
        return -(mode[1] + sym.index_offset)

    def mode_fermion(self, mode):
        return self.symbols[mode[0]].fermion_charge


def mode_key(mode):
    """Canonical total order: symbol name, then index descending."""
    return (mode[0], -mode[1])


# ---------------------------------------------------------------------------
# vector arithmetic on {monomial: coeff} dicts
# ---------------------------------------------------------------------------

def vzero():
    return {}

def vadd_into(target, source, factor=Q1):
    for mono, coeff in source.items():
        w = target.get(mono, Q0) + smul(factor, coeff)
        if w:
            target[mono] = w
        else:
            target.pop(mono, None)
    return target

def vadd(a, b):
    out = dict(a)
    return vadd_into(out, b)

def vsub(a, b):
    out = dict(a)
    return vadd_into(out, b, -Q1)

def vscale(v, factor):
    if not factor:
        return {}
    return {mono: smul(factor, coeff) for mono, coeff in v.items()}

def veq(a, b):
    return vsub(a, b) == {}


class FockModule:
    """A lowest-weight module: canonical monomials over a bracket table.

    The vacuum is the empty word; ``symbol.annihilation_min`` declares which
    modes kill it.  Everything is immutable after construction; apply/basis
    results are memoized.
    """

    def __init__(self, table, weight_floor=None):
        self.table = table
        self._apply_memo = {}
        self._basis_memo = {}
        # weight_floor: proven lower bound for weights of nonzero vectors,
        # used to truncate mode sums.  Computed from creation-mode weights
        # when not supplied.
        self.weight_floor = (self._computed_floor() if weight_floor is None
                             else Fraction(weight_floor))

    # -- structure ------------------------------------------------------

    def _computed_floor(self):
        # Even symbols must create with strictly positive weight (else weight
        # blocks are infinite-dimensional).  Odd symbols may have finitely
        # many nonpositive-weight creation modes; their distinct indices bound
        # the total deficit.
        floor = Fraction(0)
        for sym in self.table.symbols.values():
            top = sym.annihilation_min - 1  # largest creation index
            wt_top = -(top + sym.index_offset)
            if sym.parity == 0:
                if wt_top <= 0:
                    raise ValueError(
                        f"even symbol {sym.name} has nonpositive creation weight")
            else:
                idx = top
                deficit = Fraction(0)
                while -(idx + sym.index_offset) <= 0:
                    deficit += -(idx + sym.index_offset)
                    idx -= 1
                floor += deficit
        return floor

    def is_annihilator(self, mode):
        sym = self.table.symbols.get(mode[0])
        if sym is None:
            raise UnknownSymbol(mode[0])
        return mode[1] >= sym.annihilation_min

    def mode_weight(self, mode):
        return self.table.mode_weight(mode)

    def mode_fermion(self, mode):
        return self.table.mode_fermion(mode)

    def monomial_grade(self, mono):
        w = Fraction(0)
        f = 0
        for mode in mono:
            w += self.mode_weight(mode)
            f += self.mode_fermion(mode)
        return (w, f)

    def grade_of(self, vector):
        """Shared (weight, fermion) of a vector, ALL_GRADES for 0.

        Raises NotHomogeneous when the terms disagree.
        """
        if not vector:
            return ALL_GRADES
        grades = {self.monomial_grade(m) for m in vector}
        if len(grades) > 1:
            raise NotHomogeneous(sorted(grades))
        return grades.pop()

    # -- rewriting ------------------------------------------------------

    def apply_mode(self, mode, vector):
        """Linear action of one mode on a vector."""
        out = {}
        for mono, coeff in vector.items():
            vadd_into(out, self._apply(mode, mono), coeff)
        return out

    def apply_word(self, word, vector=None):
        """Apply a word of modes (leftmost acts last) to a vector/vacuum."""
        if vector is None:
            vector = {(): Q1}
        for mode in reversed(word):
            vector = self.apply_mode(mode, vector)
        return vector

    def canonicalize(self, word):
        """Expansion of ``word`` applied to the vacuum in the canonical basis."""
        return self.apply_word(word)

    def _apply(self, mode, mono, depth=0):
        if depth > _MAX_REWRITE_DEPTH:
            raise AssertionError("mode rewriting failed to terminate")
        key = (mode, mono)
        cached = self._apply_memo.get(key)
        if cached is not None:
            return cached
        sym = self.table.symbols.get(mode[0])
        if sym is None:
            raise UnknownSymbol(mode[0])
        if not mono:
            result = {} if self.is_annihilator(mode) else {(mode,): Q1}
            self._apply_memo[key] = result
            return result
        head, rest = mono[0], mono[1:]
        if not self.is_annihilator(mode):
            mk, hk = mode_key(mode), mode_key(head)
            if mk < hk:
                result = {(mode,) + mono: Q1}
                self._apply_memo[key] = result
                return result
            if mk == hk:
                if sym.parity == 0:
                    result = {(mode,) + mono: Q1}
                else:
                    # odd square: m*m = (1/2)[m, m]
                    modes, central = self.table.bracket(mode, head)
                    result = self._apply_expression(modes, central, rest, depth)
                    result = vscale(result, Fraction(1, 2))
                self._apply_memo[key] = result
                return result
        # commute the mode past the head:
        # m h = (-1)^{|m||h|} h m + [m, h]
        sign = -Q1 if (sym.parity and self.table.parity(head[0])) else Q1
        moved = self._apply(mode, rest, depth + 1)
        result = {}
        for sub_mono, coeff in moved.items():
            vadd_into(result, self._apply(head, sub_mono, depth + 1),
                      smul(sign, coeff))
        modes, central = self.table.bracket(mode, head)
        vadd_into(result, self._apply_expression(modes, central, rest, depth))
        self._apply_memo[key] = result
        return result

    def _apply_expression(self, modes, central, mono, depth):
        result = {}
        for coeff, md in modes:
            vadd_into(result, self._apply(md, mono, depth + 1), coeff)
        if central:
            vadd_into(result, {mono: Q1}, central)
        return result

    # -- basis enumeration -----------------------------------------------

    def _symbol_deficit(self, sym):
        """Total weight of the nonpositive-weight creation modes of a symbol.

        An odd symbol may create with weight <= 0 (e.g. the c tower); each
        such index can appear at most once, so words of the symbol have
        weight >= this (nonpositive) number.  Even symbols create with
        positive weight only.
        """
        if sym.parity == 0:
            return Fraction(0)
        deficit = Fraction(0)
        idx = sym.annihilation_min - 1
        while -(idx + sym.index_offset) <= 0:
            deficit += idx + sym.index_offset  # = |creation weight|
            idx -= 1
        return deficit

    def _symbol_words(self, sym, budget):
        """All creation words of one symbol with weight <= budget.

        Returns a list of (word tuple in canonical order, weight, fermion).
        Odd symbols use strictly decreasing indices, even ones weakly.
        """
        key = (sym.name, budget)
        cached = self._basis_memo.get(key)
        if cached is not None:
            return cached
        out = []

        def rec(start_idx, word, weight, fermion):
            out.append((tuple(word), weight, fermion))
            i = start_idx
            while True:
                wt = -(i + sym.index_offset)
                if wt > 0 and weight + wt > budget:
                    break  # weights grow as i decreases; nothing more fits
                rec(i - 1 if sym.parity else i,
                    word + [(sym.name, i)], weight + wt,
                    fermion + sym.fermion_charge)
                i -= 1

        rec(sym.annihilation_min - 1, [], Fraction(0), 0)
        self._basis_memo[key] = out
        return out

    def basis(self, weight, fermion=None):
        """Canonical monomials of the given weight (and fermion number)."""
        weight = Fraction(weight)
        names = sorted(self.table.symbols)
        syms = [self.table.symbols[n] for n in names]
        deficits = [self._symbol_deficit(s) for s in syms]
        total_deficit = sum(deficits, Fraction(0))
        monos = [((), Fraction(0), 0)]
        for pos, sym in enumerate(syms):
            # other symbols contribute at least -(their deficits)
            others = total_deficit - deficits[pos]
            words = self._symbol_words(sym, weight + others)
            remaining = sum(deficits[pos + 1:], Fraction(0))
            new = []
            for mono, wt, fm in monos:
                for word, wwt, wfm in words:
                    if wt + wwt > weight + remaining:
                        continue
                    new.append((mono + word, wt + wwt, fm + wfm))
            monos = new
        out = [m for (m, wt, fm) in monos
               if wt == weight and (fermion is None or fm == fermion)]
        out.sort()
        return tuple(out)

    def fermions_at_weight(self, weight):
        """Sorted fermion numbers occupied at the given weight."""
        seen = set()
        for mono in self.basis(weight):
            seen.add(self.monomial_grade(mono)[1])
        return sorted(seen)

    # -- operators as block matrices --------------------------------------

    def matrix_of(self, op, src_basis, dst_basis):
        """Columns of ``op`` on src monomials in dst coordinates.

        Raises if the image leaves the span of ``dst_basis``.
        """
        index = {mono: i for i, mono in enumerate(dst_basis)}
        cols = []
        for mono in src_basis:
            image = op({mono: Q1})
            col = [Q0] * len(dst_basis)
            for m, coeff in image.items():
                if m not in index:
                    raise AssertionError(f"image leaves block: {m}")
                col[index[m]] = coeff
            cols.append(col)
        return cols
