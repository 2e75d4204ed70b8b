"""Kernel tests: rewriting, grading, bracket-table laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vertexalg.fock import (ALL_GRADES, NotHomogeneous, UnknownSymbol,
                            vadd_into, vsub)
from vertexalg.ghost import GhostModule, ghost_table
from vertexalg.scalars import Q1
from vertexalg.virasoro import VacuumModule, virasoro_table


def vac_module():
    return VacuumModule(Fraction(26)).module


def test_canonicalize_spec_examples():
    M = vac_module()
    assert M.canonicalize([("L", -2)]) == {(("L", -2),): Q1}

    G = GhostModule().module
    # one anticommutator rewrite: c(2) b(-2) 1 = 1
    assert G.canonicalize([("c", 2), ("b", -2)]) == {(): Q1}
    # odd mode squared
    assert G.canonicalize([("b", -2), ("b", -2)]) == {}


def test_apply_mode_spec_examples():
    V = VacuumModule(Fraction(26))
    v = V.module.canonicalize([("L", -2)])
    # [L(1), L(-2)] = 3 L(-1), then L(-1)1 = 0 by the quotient rule
    assert V.act(1, v) == {}
    assert V.act(0, v) == {(("L", -2),): Fraction(2)}
    assert V.module.apply_mode(("L", 5), {}) == {}


def test_grade_of():
    G = GhostModule()
    m = G.module
    assert m.grade_of(m.canonicalize([("b", -2)])) == (2, -1)
    assert m.grade_of({(): Q1}) == (0, 0)
    assert m.grade_of({}) is ALL_GRADES
    # differing fermion numbers
    mixed = vadd_into(m.canonicalize([("b", -2)]),
                      m.canonicalize([("c", -2)]))
    with pytest.raises(NotHomogeneous):
        m.grade_of(mixed)


def test_unknown_symbol():
    M = vac_module()
    with pytest.raises(UnknownSymbol):
        M.apply_mode(("X", 1), {(): Q1})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["b", "c"]),
                          st.integers(-4, 4)), max_size=5))
def test_canonicalize_projection(word):
    """Re-applying the canonical words reproduces the same vector."""
    G = GhostModule().module
    out = G.canonicalize(word)
    again = {}
    for mono, coeff in out.items():
        vadd_into(again, G.canonicalize(list(mono)), coeff)
    assert vsub(out, again) == {}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["b", "c"]), st.integers(-4, 4),
       st.lists(st.tuples(st.sampled_from(["b", "c"]),
                          st.integers(-3, 3)), max_size=3))
def test_grading_additivity(symbol, index, word):
    G = GhostModule().module
    v = G.canonicalize(word)
    if not v:
        return
    mode = (symbol, index)
    image = G.apply_mode(mode, v)
    if not image:
        return
    try:
        gw, gf = G.grade_of(v)
        iw, ifm = G.grade_of(image)
    except NotHomogeneous:
        return
    assert iw == gw + G.mode_weight(mode)
    assert ifm == gf + G.mode_fermion(mode)


def _table_antisymmetry(table, rng):
    for a in table.symbols:
        for b in table.symbols:
            pa, pb = table.parity(a), table.parity(b)
            sign = -1 if not (pa and pb) else 1
            for m in range(-rng, rng + 1):
                for n in range(-rng, rng + 1):
                    lhs_modes, lhs_c = table.bracket((a, m), (b, n))
                    rhs_modes, rhs_c = table.bracket((b, n), (a, m))
                    acc = {}
                    for coeff, md in lhs_modes:
                        acc[md] = acc.get(md, 0) + coeff
                    for coeff, md in rhs_modes:
                        acc[md] = acc.get(md, 0) - sign * coeff
                    assert all(not v for v in acc.values())
                    assert lhs_c - sign * rhs_c == 0


def test_bracket_antisymmetry_virasoro_and_ghost():
    _table_antisymmetry(virasoro_table(Fraction(26)), 4)
    _table_antisymmetry(ghost_table(), 4)


def test_jacobi_on_operators():
    """Graded Jacobi as an operator identity on a test monomial."""
    G = GhostModule()
    m = G.module
    v = m.canonicalize([("b", -3), ("c", 1)])

    def op(mode):
        return lambda x: m.apply_mode(mode, x)

    for ma in [("c", 1), ("b", -2), ("c", -1)]:
        for mb in [("b", 1), ("c", 2), ("b", -2)]:
            for mc in [("c", 0), ("b", -3)]:
                pa = m.table.parity(ma[0])
                pb = m.table.parity(mb[0])

                def brk(f, g, pf, pg):
                    sign = Fraction((-1) ** (pf * pg))
                    return lambda x: vsub(f(g(x)),
                                          {k: sign * c for k, c in
                                           g(f(x)).items()})

                A, B, C = op(ma), op(mb), op(mc)
                lhs = brk(A, brk(B, C, pb, m.table.parity(mc[0])),
                          pa, pb ^ m.table.parity(mc[0]))(v)
                t1 = brk(brk(A, B, pa, pb), C,
                         pa ^ pb, m.table.parity(mc[0]))(v)
                t2 = brk(B, brk(A, C, pa, m.table.parity(mc[0])),
                         pb, pa ^ m.table.parity(mc[0]))(v)
                rhs = vadd_into(t1, {k: Fraction((-1) ** (pa * pb)) * c
                                     for k, c in t2.items()})
                assert vsub(lhs, rhs) == {}


def test_basis_partition_count():
    V = VacuumModule(Fraction(1, 3))
    # partitions into parts >= 2: 1, 0, 1, 1, 2, 2, 4, 4, 7
    dims = [V.weight_dimension(w) for w in range(9)]
    assert dims == [1, 0, 1, 1, 2, 2, 4, 4, 7]
