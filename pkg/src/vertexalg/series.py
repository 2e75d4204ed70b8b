"""Weighted multivariate series and formal maps for the sewing calculus.

Variables are string tokens:

    ``A0.j``, ``A1.j``, ``B0.j``, ``B1.j``  -- sequence coordinates, j >= 1,
        with weights -j, +j, -j, +j (degree-counted, class A or B);
    ``a0``, ``b0``  -- units, weight 0, Laurent exponents allowed, uncapped;
    ``s``           -- the b0-perturbation (b0 = 1+s), weight 0, class B;
    ``u...``        -- fit unknowns, weight 0, always capped at degree 1.

A WeightedSeries is ``{monomial: Fraction}`` where a monomial is a sorted
tuple of (token, exponent).  Truncation is by total degree in the A/B
classes (``Caps.total``) with an optional tighter bound on the B class
(перturbation directions are kept first-order).

A FormalMap is a tangent-to-identity series x + f_2 x^2 + ... stored as
``{k: WeightedSeries}``; with finitely many variables and a degree cap its
support is finite, so composition, inversion and the exponential of a
vector field are exact.  Laurent series in x are ``{power: WeightedSeries}``
with finite support for the same reason.
"""

from __future__ import annotations

from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)

ONE = ()


_VAR_WEIGHT = {}
_VAR_CLASS = {}
_MONO_STATS = {}


def var_weight(token):
    w = _VAR_WEIGHT.get(token)
    if w is None:
        if token in ("a0", "b0", "s") or token.startswith("u"):
            w = 0
        else:
            family, j = token.split(".")
            j = int(j)
            w = -j if family in ("A0", "B0") else j
        _VAR_WEIGHT[token] = w
    return w


def var_class(token):
    c = _VAR_CLASS.get(token)
    if c is None:
        if token in ("a0", "b0"):
            c = "unit"
        elif token == "s" or token.startswith("B"):
            c = "B"
        elif token.startswith("u"):
            c = "u"
        else:
            c = "A"
        _VAR_CLASS[token] = c
    return c


def mono_stats(mono):
    """(A+B degree, B degree, u degree), cached per monomial."""
    st = _MONO_STATS.get(mono)
    if st is None:
        deg = bdeg = udeg = 0
        for token, e in mono:
            cls = var_class(token)
            if cls == "A":
                deg += e
            elif cls == "B":
                deg += e
                bdeg += e
            elif cls == "u":
                udeg += e
        st = (deg, bdeg, udeg)
        _MONO_STATS[mono] = st
    return st


class Caps:
    """Degree caps: total over A+B classes, optional B-class bound."""

    __slots__ = ("total", "b_cap")

    def __init__(self, total, b_cap=None):
        self.total = total
        self.b_cap = b_cap

    def admits(self, mono):
        deg, bdeg, udeg = mono_stats(mono)
        if deg > self.total or udeg > 1:
            return False
        if self.b_cap is not None and bdeg > self.b_cap:
            return False
        return True

    def admits_stats(self, deg, bdeg, udeg):
        if deg > self.total or udeg > 1:
            return False
        if self.b_cap is not None and bdeg > self.b_cap:
            return False
        return True


def mono_weight(mono):
    return sum(e * var_weight(t) for t, e in mono)


def mono_mul(m1, m2):
    out = dict(m1)
    for t, e in m2:
        n = out.get(t, 0) + e
        if n:
            out[t] = n
        else:
            out.pop(t, None)
    return tuple(sorted(out.items()))


def ws_const(value):
    value = Fraction(value)
    return {ONE: value} if value else {}


def ws_var(token, exponent=1):
    return {((token, exponent),): Q1}


def ws_add(a, b, factor=Q1):
    out = dict(a)
    for m, v in b.items():
        w = out.get(m, Q0) + factor * v
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


def ws_scale(a, factor):
    factor = Fraction(factor)
    if not factor:
        return {}
    return {m: v * factor for m, v in a.items()}


_MONO_MUL = {}


def ws_mul(a, b, caps):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    mul_memo = _MONO_MUL
    for m1, v1 in a.items():
        d1, b1, u1 = mono_stats(m1)
        for m2, v2 in b.items():
            d2, b2, u2 = mono_stats(m2)
            if not caps.admits_stats(d1 + d2, b1 + b2, u1 + u2):
                continue
            key = (m1, m2)
            m = mul_memo.get(key)
            if m is None:
                m = mono_mul(m1, m2)
                mul_memo[key] = m
            w = out.get(m, Q0) + v1 * v2
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return out


def ws_is_unit(a):
    """True for a single monomial in unit-class variables only."""
    if len(a) != 1:
        return False
    (mono, coeff), = a.items()
    return all(var_class(t) == "unit" for t, e in mono) and coeff != 0


def ws_inverse_unit(a):
    """Inverse of u*(1 + nilpotent): all non-lead terms must have degree>0."""
    lead = None
    for m, v in a.items():
        if all(var_class(t) == "unit" for t, _ in m):
            if lead is not None:
                raise ValueError("series has two unit-class terms")
            lead = (m, v)
    if lead is None:
        raise ValueError("series has no unit-class lead term")
    return lead


def ws_reciprocal(a, caps):
    """1/a for a = unit-monomial * (1 + terms of positive degree)."""
    (lm, lv) = ws_inverse_unit(a)
    inv_lead = {tuple((t, -e) for t, e in lm): Q1 / lv}
    rest = ws_mul(ws_add(a, {lm: lv}, -Q1), inv_lead, caps)  # degree >= 1
    out = ws_const(1)
    term = ws_const(1)
    for _ in range(caps.total):
        term = ws_scale(ws_mul(term, rest, caps), -1)
        if not term:
            break
        out = ws_add(out, term)
    return ws_mul(out, inv_lead, caps)


def ws_exp(a, caps):
    """exp(a) for a with no constant/unit term (nilpotent under the caps)."""
    for m in a:
        if all(var_class(t) == "unit" for t, _ in m):
            raise ValueError("exp needs a degree >= 1 argument")
    out = ws_const(1)
    term = ws_const(1)
    k = 1
    while True:
        term = ws_mul(term, a, caps)
        if not term:
            break
        out = ws_add(out, ws_scale(term, Fraction(1, k)))
        k += 1
    return out


def ws_pow_unit(a, n, caps):
    """a**n for integer n (negative allowed when a has a unit lead)."""
    if n == 0:
        return ws_const(1)
    base = a if n > 0 else ws_reciprocal(a, caps)
    out = ws_const(1)
    for _ in range(abs(n)):
        out = ws_mul(out, base, caps)
    return out


def ws_diff(a, token):
    """Partial derivative; the token may carry negative exponents."""
    out = {}
    for m, v in a.items():
        md = dict(m)
        e = md.get(token, 0)
        if not e:
            continue
        if e == 1:
            md.pop(token)
        else:
            md[token] = e - 1
        mono = tuple(sorted(md.items()))
        w = out.get(mono, Q0) + v * e
        if w:
            out[mono] = w
    return out


def ws_linear_part(a, token):
    """Coefficient of token^1 with the token removed, other vars kept."""
    out = {}
    for m, v in a.items():
        md = dict(m)
        if md.get(token, 0) != 1:
            continue
        md.pop(token)
        out[tuple(sorted(md.items()))] = v
    return out


def ws_without(a, tokens):
    """Restriction to monomials free of the given tokens."""
    tokens = set(tokens)
    return {m: v for m, v in a.items()
            if not any(t in tokens for t, _ in m)}


def ws_subs(a, values):
    """Substitute rational values for variables (all must be covered)."""
    out = Q0
    for m, v in a.items():
        term = v
        for t, e in m:
            term *= Fraction(values[t]) ** e
        out += term
    return out


def ws_weights(a):
    return {mono_weight(m) for m in a}


def ws_is_homogeneous(a, weight):
    return all(mono_weight(m) == weight for m in a)


# ---------------------------------------------------------------------------
# formal maps x + f_2 x^2 + ... and Laurent series in x
# ---------------------------------------------------------------------------

def map_identity():
    return {1: ws_const(1)}


def map_from_sequence(seq, caps, order=None):
    """exp(sum_j seq[j] x^{j+1} d/dx) x, computed term by term.

    ``seq`` maps j >= 1 to a WeightedSeries coefficient.  Each application
    of the derivation raises the x-order by at least one and, for variable
    coefficients, the degree, so the sum truncates; for constant
    coefficients an explicit x-order must be supplied.
    """
    if order is None and any(
            c and all(not m for m in c) for c in seq.values()):
        raise ValueError("constant sequence entries need an explicit order")
    out = {1: ws_const(1)}
    term = {1: ws_const(1)}   # T^k x / k!
    k = 1
    while True:
        term = _derivation(seq, term, caps, order)
        term = {p: ws_scale(c, Fraction(1, k)) for p, c in term.items()}
        if not term:
            break
        out = _poly_add(out, term)
        k += 1
        if k > 8 * (caps.total + 2) * (max(seq) if seq else 1) + (order or 0) + 8:
            raise AssertionError("vector-field exponential failed to truncate")
    return {p: c for p, c in out.items() if c}


def _derivation(seq, poly, caps, order=None):
    out = {}
    for p, coeff in poly.items():
        for j, a in seq.items():
            if not a:
                continue
            target = p + j
            if order is not None and target > order:
                continue
            c = ws_scale(ws_mul(a, coeff, caps), p)
            if c:
                out[target] = ws_add(out.get(target, {}), c)
    return {p: c for p, c in out.items() if c}


def _poly_add(a, b, factor=Q1):
    out = dict(a)
    for p, c in b.items():
        merged = ws_add(out.get(p, {}), c, factor)
        if merged:
            out[p] = merged
        else:
            out.pop(p, None)
    return out


def map_compose(f, g, caps, order=None):
    """f(g(x)) for tangent-to-identity maps (finite exact supports)."""
    out = {}
    powers = {1: dict(g)}
    kmax = max(f) if f else 1
    for k in range(2, kmax + 1):
        powers[k] = _laurent_mul(powers[k - 1], g, caps)
    for k, coeff in f.items():
        if not coeff:
            continue
        for p, c in powers[k].items():
            if order is not None and p > order:
                continue
            term = ws_mul(coeff, c, caps)
            if term:
                out[p] = ws_add(out.get(p, {}), term)
    return {p: c for p, c in out.items() if c}


def _laurent_mul(a, b, caps):
    out = {}
    for p1, c1 in a.items():
        for p2, c2 in b.items():
            c = ws_mul(c1, c2, caps)
            if c:
                p = p1 + p2
                merged = ws_add(out.get(p, {}), c)
                if merged:
                    out[p] = merged
                else:
                    out.pop(p, None)
    return {p: c for p, c in out.items() if c}


def map_scale_argument(f, s, caps):
    """The map x -> f(s x)/s for a unit series s; rescales f_k by s^{k-1}."""
    out = {}
    spow = {0: ws_const(1)}
    kmax = max(f)
    for k in range(1, kmax):
        spow[k] = ws_mul(spow[k - 1], s, caps)
    for k, coeff in f.items():
        c = ws_mul(coeff, spow[k - 1], caps)
        if c:
            out[k] = c
    return out


def map_log_sequence(f, caps, jmax, partial=False):
    """The sequence C with exp(sum C_j x^{j+1} d/dx) x = f, solved by order.

    ``jmax`` bounds the sequence indices recovered.  The system is
    triangular (C_j is fixed by the x^{j+1} coefficient given lower C's),
    so with ``partial`` the tail beyond jmax is simply not computed and the
    residual is checked only through order jmax+1; otherwise the full
    residual must vanish.
    """
    order = jmax + 1 if partial else None
    seq = {}
    for j in range(1, jmax + 1):
        current = map_from_sequence(seq, caps, order=order)
        residual = _poly_add(f, current, -Q1)
        coeff = residual.get(j + 1, {})
        if coeff:
            seq[j] = coeff
    current = map_from_sequence(seq, caps, order=order)
    residual = _poly_add(f, current, -Q1)
    bad = [p for p in residual if (not partial) or p <= jmax + 1]
    if bad:
        raise AssertionError(
            f"map log did not converge below order {jmax + 1}: "
            f"powers {sorted(bad)}")
    return seq


def map_inverse(f, caps, order=None):
    """Compositional inverse, solved order by order.

    ``f`` must be tangent to the identity.  Without an explicit x-order the
    supports must be finite (variable coefficients); the round trip
    f(g(x)) = x is verified exactly at the truncation either way.
    """
    if f.get(1) != ws_const(1):
        raise ValueError("leading coefficient must be 1")
    kmax = max(f)
    if order is None:
        if any(c and all(not m for m in c) for k, c in f.items() if k > 1):
            raise ValueError("constant coefficients need an explicit order")
        bound = 2 + (kmax - 1) * (caps.total + 1)
    else:
        bound = order
    g = {1: ws_const(1)}
    for k in range(2, bound + 1):
        comp = map_compose(f, g, caps, order=bound)
        extra = comp.get(k, {})
        if extra:
            g[k] = ws_scale(extra, -1)
    comp = map_compose(f, g, caps, order=bound)
    residual = _poly_add(comp, {1: ws_const(1)}, -Q1)
    if residual:
        raise AssertionError("compositional inverse did not close")
    return g


def seq_negate(seq):
    return {j: ws_scale(c, -1) for j, c in seq.items()}


def seq_rescale(seq, s, caps):
    """B(s): the sequence {B_j s^j}."""
    out = {}
    spow = {0: ws_const(1)}
    jmax = max(seq) if seq else 0
    for j in range(1, jmax + 1):
        spow[j] = ws_mul(spow[j - 1], s, caps)
    for j, c in seq.items():
        r = ws_mul(c, spow[j], caps)
        if r:
            out[j] = r
    return out
