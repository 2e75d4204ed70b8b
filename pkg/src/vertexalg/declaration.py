"""Instance declaration files: a JSON schema for mode algebras.

Schema ``tvoa-instance/1``:

    {
      "schema": "tvoa-instance/1",
      "name": "...",
      "central_charge": "26",          // exact rational or "c" for symbolic
      "symbols": [
        {"name": "L", "parity": "even", "field_weight": "2",
         "fermion_charge": 0, "annihilation_min": -1, "index_offset": "0"},
        ...],
      "brackets": [
        {"a": "L", "b": "L",
         "terms": [{"symbol": "L", "index": [1, 1, 0],
                    "poly": [[1, 0, "1"], [0, 1, "-1"]]}],
         "central": {"poly": [[3, 0, "1/12"], [1, 0, "-1/12"]],
                     "delta_shift": 0, "uses_center": true}},
        ...],
      "elements": {"vacuum": [...], "omega": [...], "f": [...], "q": [...],
                   "g": [...]},     // [coeff, [[symbol, index], ...]] lists
      "flags": {"strong": true, "type_k": -1}
    }

``poly`` entries [i, j, "r"] mean r * m^i * n^j; ``index`` [am, bn, s] means
the result mode index am*m + bn*n + s.  All numbers are exact
"numerator/denominator" strings; no floats appear anywhere in the format.

Every bracket pair must be declared (possibly with empty terms); grades of
the distinguished elements are recomputed by the checker, never trusted.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fock import BracketRule, BracketTable, FockModule, ModeSymbol
from .scalars import CPoly, parse_rational, format_rational
from .tvoa import TvoaInstance

SCHEMA = "tvoa-instance/1"


class DeclarationError(ValueError):
    """Invalid declaration, with a JSON-path diagnostic."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"at {path}: {message}")


def _rational(value, path):
    try:
        return parse_rational(str(value))
    except (ValueError, TypeError) as exc:
        raise DeclarationError(path, f"not an exact rational: {value!r}") from exc


def _poly_fn(entries, path):
    terms = []
    for k, entry in enumerate(entries):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise DeclarationError(f"{path}[{k}]", "expected [i, j, 'rat']")
        i, j, r = entry
        terms.append((int(i), int(j), _rational(r, f"{path}[{k}]")))

    def poly(m, n):
        return sum((r * Fraction(m) ** i * Fraction(n) ** j
                    for i, j, r in terms), Fraction(0))
    return poly


def parse_declaration(text):
    """Parse declaration text into (TvoaInstance, metadata dict).

    Syntax errors surface as json.JSONDecodeError (line/column included);
    structural errors as DeclarationError with a JSON path.
    """
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise DeclarationError("$.schema", f"expected {SCHEMA!r}")
    raw_c = str(data.get("central_charge", "0"))
    central = CPoly.sym() if raw_c == "c" else _rational(raw_c, "$.central_charge")

    symbols = []
    for k, spec in enumerate(data.get("symbols", [])):
        path = f"$.symbols[{k}]"
        try:
            parity = {"even": 0, "odd": 1}[spec["parity"]]
        except KeyError as exc:
            raise DeclarationError(path, "parity must be 'even' or 'odd'") from exc
        try:
            symbols.append(ModeSymbol(
                spec["name"], parity,
                _rational(spec["field_weight"], path + ".field_weight"),
                int(spec["fermion_charge"]),
                annihilation_min=int(spec["annihilation_min"]),
                index_offset=_rational(spec.get("index_offset", "0"),
                                       path + ".index_offset")))
        except (KeyError, ValueError) as exc:
            raise DeclarationError(path, str(exc)) from exc

    table = BracketTable(symbols, central_value=central)
    declared_pairs = set()
    for k, spec in enumerate(data.get("brackets", [])):
        path = f"$.brackets[{k}]"
        a, b = spec.get("a"), spec.get("b")
        if a not in table.symbols or b not in table.symbols:
            raise DeclarationError(path, f"unknown symbol pair ({a}, {b})")
        terms = []
        for t, term in enumerate(spec.get("terms", [])):
            tpath = f"{path}.terms[{t}]"
            sym = term.get("symbol")
            if sym not in table.symbols:
                raise DeclarationError(tpath, f"unknown symbol {sym!r}")
            index = term.get("index", [1, 1, 0])
            if not (isinstance(index, list) and len(index) == 3):
                raise DeclarationError(tpath, "index must be [am, bn, shift]")
            poly = _poly_fn(term.get("poly", []), tpath + ".poly")
            terms.append((poly, sym, int(index[0]), int(index[1]),
                          int(index[2])))
        central_spec = spec.get("central")
        central_rule = None
        if central_spec is not None:
            central_rule = (
                _poly_fn(central_spec.get("poly", []), path + ".central.poly"),
                int(central_spec.get("delta_shift", 0)),
                bool(central_spec.get("uses_center", True)))
        table.set_bracket(a, b, BracketRule(terms, central_rule))
        declared_pairs.add(frozenset((a, b)))
    for a in table.symbols:
        for b in table.symbols:
            if frozenset((a, b)) not in declared_pairs:
                raise DeclarationError(
                    "$.brackets", f"missing bracket rule for ({a}, {b})")

    module = FockModule(table)
    elements = {}
    element_specs = data.get("elements", {})
    for name in ("vacuum", "omega", "f", "q", "g"):
        if name not in element_specs:
            raise DeclarationError("$.elements", f"missing element {name!r}")
        vec = {}
        for k, item in enumerate(element_specs[name]):
            path = f"$.elements.{name}[{k}]"
            if not (isinstance(item, list) and len(item) == 2):
                raise DeclarationError(path, "expected [coeff, word]")
            coeff = _rational(item[0], path)
            word = []
            for mode in item[1]:
                if not (isinstance(mode, list) and len(mode) == 2
                        and mode[0] in table.symbols):
                    raise DeclarationError(path, f"bad mode {mode!r}")
                word.append((mode[0], int(mode[1])))
            expansion = module.canonicalize(word)
            for mono, c in expansion.items():
                from .scalars import smul
                merged = vec.get(mono, Fraction(0)) + smul(coeff, c)
                if merged:
                    vec[mono] = merged
                else:
                    vec.pop(mono, None)
        elements[name] = vec

    flags = data.get("flags", {})
    instance = TvoaInstance(
        module, elements["vacuum"], elements["omega"], elements["f"],
        elements["q"], elements["g"],
        strong=bool(flags.get("strong", False)),
        type_k=flags.get("type_k"),
        name=data.get("name", "instance"))
    return instance, data


def builtin_tensor26_text():
    """The built-in declaration for the M(26) (x) Lambda instance."""
    doc = {
        "schema": SCHEMA,
        "name": "tensor-26",
        "central_charge": "26",
        "symbols": [
            {"name": "L", "parity": "even", "field_weight": "2",
             "fermion_charge": 0, "annihilation_min": -1},
            {"name": "b", "parity": "odd", "field_weight": "2",
             "fermion_charge": -1, "annihilation_min": -1},
            {"name": "c", "parity": "odd", "field_weight": "-1",
             "fermion_charge": 1, "annihilation_min": 2},
        ],
        "brackets": [
            {"a": "L", "b": "L",
             "terms": [{"symbol": "L", "index": [1, 1, 0],
                        "poly": [[1, 0, "1"], [0, 1, "-1"]]}],
             "central": {"poly": [[3, 0, "1/12"], [1, 0, "-1/12"]],
                         "delta_shift": 0, "uses_center": True}},
            {"a": "b", "b": "b", "terms": []},
            {"a": "c", "b": "c", "terms": []},
            {"a": "c", "b": "b", "terms": [],
             "central": {"poly": [[0, 0, "1"]], "delta_shift": 0,
                         "uses_center": False}},
            {"a": "L", "b": "b", "terms": []},
            {"a": "L", "b": "c", "terms": []},
        ],
        "elements": {
            "vacuum": [["1", []]],
            "omega": [["1", [["L", -2]]],
                      ["2", [["c", 0], ["b", -2]]],
                      ["1", [["c", 1], ["b", -3]]]],
            "f": [["1", [["c", 1], ["b", -2]]]],
            "q": [["1", [["L", -2], ["c", 1]]],
                  ["1", [["b", -2], ["c", 1], ["c", 0]]],
                  ["3", [["c", -1]]]],
            "g": [["1", [["b", -2]]]],
        },
        "flags": {"strong": True, "type_k": -1},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
