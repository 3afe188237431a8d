"""The JSON document format for split complexes.

Documents are small and meant to be audited by hand, so coefficients are
rational strings ("3", "-1/2"), never numbers: a float can survive a JSON
round-trip only approximately, which would silently corrupt exact ranks.

Canonical form: generators sorted by name, operators sorted by order with
row-major sorted entries and only nonzero orders present, the unit always in
chain form sorted by generator.  Parsing canonicalizes, so
parse . emit . parse == parse and emitted bytes are stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .complexes import Generator, S1Complex, FilteredPlusComplex
from .dilation import PLUS_PART, ZERO_PART, SplitS1Complex
from .linalg import SparseMatrix, Vector

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """A structural problem in a complex document, with a JSON-path position."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise DocumentError(path, message)


def _parse_coeff(x: Any, path: str) -> Fraction:
    _expect(isinstance(x, str), path, "coefficient must be a rational string, not a number")
    try:
        q = Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(path, f"bad rational literal {x!r}") from exc
    return q


def document_to_split_complex(doc: Any) -> SplitS1Complex:
    """Parse a document dict into a split complex (structural checks only).

    Graded relations and the splitting axioms are verified separately by
    `verify_s1_relations` / `verify_splitting` so that a structurally sound
    but mathematically invalid document can be reported rather than rejected.
    """
    _expect(isinstance(doc, dict), "$", "document must be a JSON object")
    _expect(doc.get("schema_version") == SCHEMA_VERSION,
            "$.schema_version", f"expected {SCHEMA_VERSION!r}")
    n_tr = doc.get("truncation")
    _expect(isinstance(n_tr, int) and not isinstance(n_tr, bool) and n_tr >= 0,
            "$.truncation", "expected a non-negative integer")

    raw_gens = doc.get("generators")
    _expect(isinstance(raw_gens, list) and raw_gens,
            "$.generators", "expected a non-empty array")
    seen = set()
    parsed = []
    for i, g in enumerate(raw_gens):
        path = f"$.generators[{i}]"
        _expect(isinstance(g, dict), path, "expected an object")
        name = g.get("name")
        _expect(isinstance(name, str) and name, f"{path}.name", "expected a non-empty string")
        _expect(name not in seen, f"{path}.name", f"duplicate generator {name!r}")
        seen.add(name)
        deg = g.get("degree")
        _expect(isinstance(deg, int) and not isinstance(deg, bool),
                f"{path}.degree", "expected an integer")
        part = g.get("part")
        _expect(part in (ZERO_PART, PLUS_PART), f"{path}.part",
                f"expected '{ZERO_PART}' or '{PLUS_PART}'")
        parsed.append((name, deg, part))
    parsed.sort(key=lambda t: t[0])
    gens = tuple(Generator(n, d) for n, d, _ in parsed)
    parts = tuple(p for _, _, p in parsed)
    index = {g.name: i for i, g in enumerate(gens)}
    n = len(gens)

    raw_ops = doc.get("operators", [])
    _expect(isinstance(raw_ops, list), "$.operators", "expected an array")
    mats: dict[int, list] = {}
    for i, op in enumerate(raw_ops):
        path = f"$.operators[{i}]"
        _expect(isinstance(op, dict), path, "expected an object")
        r = op.get("order")
        _expect(isinstance(r, int) and not isinstance(r, bool) and 0 <= r <= n_tr,
                f"{path}.order", f"expected an integer in [0, {n_tr}]")
        _expect(r not in mats, f"{path}.order", f"duplicate operator order {r}")
        mats[r] = []
        raw_ent = op.get("entries", [])
        _expect(isinstance(raw_ent, list), f"{path}.entries", "expected an array")
        for j, e in enumerate(raw_ent):
            epath = f"{path}.entries[{j}]"
            _expect(isinstance(e, dict), epath, "expected an object")
            frm, to = e.get("from"), e.get("to")
            _expect(isinstance(frm, str) and frm in index, f"{epath}.from",
                    f"unknown generator {frm!r}")
            _expect(isinstance(to, str) and to in index, f"{epath}.to",
                    f"unknown generator {to!r}")
            coeff = _parse_coeff(e.get("coeff"), f"{epath}.coeff")
            mats[r].append((index[to], index[frm], coeff))
    deltas = tuple(SparseMatrix.from_entries(n, n, mats.get(r, []))
                   for r in range(n_tr + 1))

    raw_unit = doc.get("unit")
    unit: Vector = {}
    if isinstance(raw_unit, str):
        _expect(raw_unit in index, "$.unit", f"unknown generator {raw_unit!r}")
        unit = {index[raw_unit]: Fraction(1)}
    elif isinstance(raw_unit, list):
        _expect(bool(raw_unit), "$.unit", "unit chain must be non-empty")
        for j, term in enumerate(raw_unit):
            path = f"$.unit[{j}]"
            _expect(isinstance(term, dict), path, "expected an object")
            gname = term.get("gen")
            _expect(isinstance(gname, str) and gname in index, f"{path}.gen",
                    f"unknown generator {gname!r}")
            coeff = _parse_coeff(term.get("coeff"), f"{path}.coeff")
            if coeff:
                unit[index[gname]] = unit.get(index[gname], Fraction(0)) + coeff
        unit = {i: x for i, x in unit.items() if x}
        _expect(bool(unit), "$.unit", "unit chain sums to zero")
    else:
        raise DocumentError("$.unit", "expected a generator name or a chain array")

    cplx = S1Complex(gens, n_tr, deltas)
    return SplitS1Complex(cplx, parts, unit)


def split_complex_to_document(s: SplitS1Complex) -> dict:
    """Emit the canonical document of a split complex."""
    c = s.complex
    order = sorted(range(c.n), key=lambda i: c.generators[i].name)
    gens = [{"name": c.generators[i].name,
             "degree": c.generators[i].degree,
             "part": s.parts[i]} for i in order]
    ops = []
    for r in range(c.truncation + 1):
        ent = []
        for i, j, v in c.deltas[r].entries:
            ent.append({"from": c.generators[j].name,
                        "to": c.generators[i].name,
                        "coeff": str(v)})
        if ent:
            ent.sort(key=lambda e: (e["from"], e["to"]))
            ops.append({"order": r, "entries": ent})
    unit = [{"gen": c.generators[i].name, "coeff": str(x)}
            for i, x in sorted(s.unit.items(),
                               key=lambda t: c.generators[t[0]].name)]
    return {
        "schema_version": SCHEMA_VERSION,
        "truncation": c.truncation,
        "generators": gens,
        "operators": ops,
        "unit": unit,
    }


def dumps(s: SplitS1Complex) -> str:
    return json.dumps(split_complex_to_document(s), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> SplitS1Complex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"not valid JSON: {exc}") from exc
    return document_to_split_complex(doc)


# ---------------------------------------------------------------------------
# morphism documents (component schema mirrors the operator schema)


def document_to_morphism(doc: Any) -> "S1MorphismPair":
    """Parse a morphism document: embedded source/target plus components."""
    from .morphisms import S1Morphism

    _expect(isinstance(doc, dict), "$", "document must be a JSON object")
    _expect(doc.get("schema_version") == SCHEMA_VERSION,
            "$.schema_version", f"expected {SCHEMA_VERSION!r}")
    _expect(doc.get("kind") == "morphism", "$.kind", "expected 'morphism'")
    src = document_to_split_complex(_field(doc, "source"))
    dst = document_to_split_complex(_field(doc, "target"))
    n_tr = src.truncation
    _expect(dst.truncation == n_tr, "$.target.truncation",
            "source and target truncations differ")
    src_index = {g.name: i for i, g in enumerate(src.complex.generators)}
    dst_index = {g.name: i for i, g in enumerate(dst.complex.generators)}
    raw = doc.get("components", [])
    _expect(isinstance(raw, list), "$.components", "expected an array")
    mats: dict[int, list] = {}
    for i, comp in enumerate(raw):
        path = f"$.components[{i}]"
        _expect(isinstance(comp, dict), path, "expected an object")
        r = comp.get("order")
        _expect(isinstance(r, int) and not isinstance(r, bool) and 0 <= r <= n_tr,
                f"{path}.order", f"expected an integer in [0, {n_tr}]")
        _expect(r not in mats, f"{path}.order", f"duplicate component order {r}")
        mats[r] = []
        for j, e in enumerate(comp.get("entries", [])):
            epath = f"{path}.entries[{j}]"
            frm, to = e.get("from"), e.get("to")
            _expect(isinstance(frm, str) and frm in src_index, f"{epath}.from",
                    f"unknown source generator {frm!r}")
            _expect(isinstance(to, str) and to in dst_index, f"{epath}.to",
                    f"unknown target generator {to!r}")
            coeff = _parse_coeff(e.get("coeff"), f"{epath}.coeff")
            mats[r].append((dst_index[to], src_index[frm], coeff))
    phis = tuple(SparseMatrix.from_entries(dst.complex.n, src.complex.n,
                                           mats.get(r, []))
                 for r in range(n_tr + 1))
    return S1MorphismPair(src, dst, S1Morphism(src.complex, dst.complex, phis))


def _field(doc: dict, key: str) -> Any:
    _expect(key in doc, f"$.{key}", "missing field")
    return doc[key]


class S1MorphismPair:
    """A parsed morphism with the split complexes it connects."""

    def __init__(self, source, target, morphism):
        self.source = source
        self.target = target
        self.morphism = morphism


def morphism_to_document(source: SplitS1Complex, target: SplitS1Complex,
                         morphism) -> dict:
    comps = []
    src_gens = morphism.source.generators
    dst_gens = morphism.target.generators
    for r in range(morphism.truncation + 1):
        ent = [{"from": src_gens[j].name, "to": dst_gens[i].name, "coeff": str(v)}
               for i, j, v in morphism.phis[r].entries]
        if ent:
            ent.sort(key=lambda e: (e["from"], e["to"]))
            comps.append({"order": r, "entries": ent})
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "morphism",
        "source": split_complex_to_document(source),
        "target": split_complex_to_document(target),
        "components": comps,
    }


# ---------------------------------------------------------------------------
# result serialization helpers


def chain_terms(c: S1Complex, v: Vector) -> list[dict]:
    return [{"gen": c.generators[i].name, "coeff": str(x)}
            for i, x in sorted(v.items())]


def filtered_chain_terms(f: FilteredPlusComplex, v: Vector) -> list[dict]:
    out = []
    for idx, x in sorted(v.items()):
        g, p = f.basis[idx]
        out.append({"gen": f.source.generators[g].name, "power": p, "coeff": str(x)})
    return out
