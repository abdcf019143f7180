"""Input file parsing and the versioned structured output documents.

Input formats (plain text, UTF-8, newline terminated):

* Presentations: a ``generators: a b c`` line followed by one relation per
  line in the word grammar (``b a = c``, bare words are relators, ``1`` is
  the empty word).  ``#`` starts a comment.
* Multiplication tables: a JSON object ``{"elements": [names],
  "table": [[...]]}`` with row-major entries given as names or 1-based
  indices; the first element must be the identity.

Structured output is a single versioned JSON document per run; stage
commands consume the documents produced by construct runs.
"""

from __future__ import annotations

import json

from .cayley import CayleyTable, CayleyValidationError, make_cayley_table
from .constructions import CensusReport, LabelMatrix, StructureReport
from .presentations import GroupPresentation, TriangularPresentation
from .semigroups import FiniteSemigroup, greens
from .squares import UNIT, GridPresentation, MatrixMatch
from .transforms import RowColMap, Transformation
from .verify import (
    CayleyPipeline,
    RectBandPipeline,
    TriangularPipeline,
    VerificationReport,
)
from .words import WordSyntaxError, parse_relation, word_to_tokens

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "SchemaError",
    "parse_presentation_text",
    "parse_cayley_json",
    "dump_document",
    "load_document",
    "semigroup_from_json",
    "triangular_document",
    "cayley_document",
    "rectband_document",
    "render_text",
]

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


class SchemaError(ValueError):
    pass


def parse_presentation_text(text: str) -> GroupPresentation:
    names: list[str] | None = None
    relations = []
    gen_ids: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            if not line.startswith("generators:"):
                raise ParseError("expected a 'generators:' line first", lineno)
            names = line[len("generators:") :].split()
            if not names:
                raise ParseError("no generator names given", lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate generator names", lineno)
            for name in names:
                if name == "1" or "^" in name or "=" in name:
                    raise ParseError(f"invalid generator name {name!r}", lineno)
            gen_ids = {n: i for i, n in enumerate(names)}
            continue
        try:
            relations.append(parse_relation(line, gen_ids))
        except WordSyntaxError as exc:
            raise ParseError(str(exc), lineno) from exc
    if names is None:
        raise ParseError("empty presentation file")
    return GroupPresentation(tuple(names), tuple(relations))


def parse_cayley_json(text: str) -> CayleyTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("multiplication table file must be a JSON object")
    unknown = set(doc) - {"elements", "table"}
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    if "elements" not in doc or "table" not in doc:
        raise ParseError("need 'elements' and 'table' fields")
    names = doc["elements"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError("'elements' must be a list of names")
    index = {n: i for i, n in enumerate(names)}
    rows = doc["table"]
    if not isinstance(rows, list):
        raise ParseError("'table' must be a list of rows")
    table = []
    for row in rows:
        if not isinstance(row, list):
            raise ParseError("'table' rows must be lists")
        out = []
        for entry in row:
            if isinstance(entry, bool):
                raise ParseError(f"bad table entry {entry!r}")
            if isinstance(entry, int):
                if not 1 <= entry <= len(names):
                    raise ParseError(f"table index {entry} out of range (1-based)")
                out.append(entry - 1)
            elif isinstance(entry, str):
                if entry not in index:
                    raise ParseError(f"table entry {entry!r} is not an element")
                out.append(index[entry])
            else:
                raise ParseError(f"bad table entry {entry!r}")
        table.append(out)
    return make_cayley_table(list(names), table)


# ---------------------------------------------------------------------------
# JSON stage serialization


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise SchemaError(
            f"unsupported document version {doc.get('version')!r}, "
            f"expected {FORMAT_VERSION}"
        )
    return doc


def _matrix_json(matrix: LabelMatrix) -> dict:
    return {
        "unit": matrix.unit,
        "entries": [list(row) for row in matrix.entries],
    }


def _map_json(elem: RowColMap) -> list:
    return [list(elem.left.images), list(elem.right.images)]


def _semigroup_json(s: FiniteSemigroup) -> dict:
    return {
        "ambient": list(s.ambient),
        "size": s.size,
        "num_idempotents": len(s.idempotents()),
        "generators": list(s.generators),
        "elements": [_map_json(e) for e in s.elements],
    }


def semigroup_from_json(doc: dict) -> FiniteSemigroup:
    ambient = tuple(doc["ambient"])
    elements = [
        RowColMap(Transformation(tuple(left)), Transformation(tuple(right)))
        for left, right in doc["elements"]
    ]
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise SchemaError("duplicate semigroup elements in document")
    return FiniteSemigroup(
        ambient=ambient,
        elements=elements,
        generators=list(doc["generators"]),
        _index=index,
    )


def squares_json(gp: GridPresentation) -> dict:
    return {
        "count": len(gp.squares),
        "distinct_tuples": len(gp.distinct_square_tuples()),
        "items": [
            {
                "i": sq.i,
                "k": sq.k,
                "j": sq.j,
                "l": sq.l,
                "kind": sq.kind,
                "witness": sq.witness,
                "shape": sq.shape,
            }
            for sq in gp.squares
        ],
    }


def _identification_json(gp: GridPresentation, match: MatrixMatch) -> dict:
    assert gp.identification is not None
    classes = []
    for cls in gp.identification.classes:
        root = gp.identification.root_of[cls[0]]
        label = match.symbol_of_root.get(root)
        classes.append(
            {
                "root": "1" if root == UNIT else list(root),
                "label": label,
                "size": len(cls),
                "positions": [list(p) for p in cls],
            }
        )
    return {
        "exact_match": match.ok,
        "refines": match.refines,
        "mismatches": list(match.mismatches),
        "classes": classes,
    }


def _presentation_json(pres: GroupPresentation) -> dict:
    return {
        "generators": list(pres.generators),
        "relations": [
            {
                "lhs": word_to_tokens(lhs, pres.generators),
                "rhs": word_to_tokens(rhs, pres.generators),
            }
            for lhs, rhs in pres.relations
        ],
    }


def _h1_counts_json(gp: GridPresentation) -> dict:
    return {
        "generators": gp.generator_count,
        "unit_relations": gp.unit_relation_count,
        "square_relations": len(gp.distinct_square_tuples()),
    }


def _census_json(census: CensusReport) -> dict:
    return {
        "ok": census.ok,
        "failures": list(census.failures),
        "band_size": census.band_size,
        "extra_idempotents": census.extra_idempotents,
        "idempotent_count": census.idempotent_count,
        "semigroup_size": census.semigroup_size,
        "non_idempotent_pairs": [list(p) for p in census.non_idempotent_pairs],
    }


def _structure_json(report: StructureReport) -> dict:
    return {
        "ok": report.ok,
        "failures": list(report.failures),
        "boundary": report.boundary,
        "generated_closure_size": report.generated_closure_size,
        "d_class_size": report.d_class_size,
        "idempotents_outside_band": report.idempotents_outside_band,
        "regular": report.regular,
        "eggbox_rows": report.eggbox_rows,
        "eggbox_cols": report.eggbox_cols,
        "h_class_size": report.h_class_size,
        "idempotent_free_cells": report.idempotent_free_cells,
    }


def _report_json(report: VerificationReport) -> dict:
    return {
        "kind": report.kind,
        "soundness_ok": report.soundness_ok,
        "soundness_violations": list(report.soundness_violations),
        "completeness_ok": report.completeness_ok,
        "completeness_missing": list(report.completeness_missing),
        "identification_ok": report.identification_ok,
        "identification_exact": report.identification_exact,
        "census_ok": report.census_ok,
        "census_failures": list(report.census_failures),
        "order_mode": report.order_mode,
        "order_status": report.order_status,
        "order_expected": report.order_expected,
        "order_found": report.order_found,
        "order_hit_cap": report.order_hit_cap,
        "abelian_expected": list(report.abelian_expected),
        "abelian_found": list(report.abelian_found),
        "abelian_ok": report.abelian_ok,
        "unverified": list(report.unverified),
        "passed": report.passed,
    }


def _params_json(closure_cap: int, coset_cap: int, tietze_passes: int) -> dict:
    return {
        "closure_cap": closure_cap,
        "coset_cap": coset_cap,
        "tietze_passes": tietze_passes,
    }


def triangular_input_json(tri: TriangularPresentation) -> dict:
    return {
        "kind": "triangular",
        "generators": list(tri.names),
        "triples": [
            [tri.names[b], tri.names[c], tri.names[d]] for b, c, d in tri.triples
        ],
    }


def triangular_from_input_json(doc: dict) -> TriangularPresentation:
    names = tuple(doc["generators"])
    ids = {n: i for i, n in enumerate(names)}
    triples = tuple(
        (ids[b], ids[c], ids[d]) for b, c, d in doc["triples"]
    )
    return TriangularPresentation(names=names, triples=triples)


def cayley_input_json(table: CayleyTable) -> dict:
    return {
        "kind": "cayley",
        "elements": list(table.names),
        "table": [[x + 1 for x in row] for row in table.table],
    }


def cayley_from_input_json(doc: dict) -> CayleyTable:
    try:
        return make_cayley_table(
            list(doc["elements"]),
            [[x - 1 for x in row] for row in doc["table"]],
        )
    except CayleyValidationError as exc:
        raise SchemaError(f"embedded table invalid: {exc}") from exc


def triangular_document(
    pipeline: TriangularPipeline,
    closure_cap: int,
    coset_cap: int,
    tietze_passes: int,
) -> dict:
    con = pipeline.construction
    return {
        "version": FORMAT_VERSION,
        "command": "construct1",
        "params": _params_json(closure_cap, coset_cap, tietze_passes),
        "input": triangular_input_json(con.presentation),
        "stages": {
            "construction": {
                "rows": con.m,
                "cols": con.n,
                "matrix": _matrix_json(con.matrix),
                "row_maps": [
                    {"row": u + 2, "map": _map_json(e)}
                    for u, e in enumerate(con.row_maps)
                ],
                "relation_maps": [
                    {"relation": u + 1, "map": _map_json(e)}
                    for u, e in enumerate(con.relation_maps)
                ],
                "census": _census_json(con.census),
            },
            "semigroup": _semigroup_json(con.semigroup),
            "squares": squares_json(pipeline.grid),
            "presentation": _h1_counts_json(pipeline.grid),
            "identification": _identification_json(pipeline.grid, pipeline.match),
            "residue": _presentation_json(pipeline.residue),
            "verification": _report_json(pipeline.report),
        },
        "verdict": "pass" if pipeline.report.passed else "fail",
    }


def cayley_document(
    pipeline: CayleyPipeline,
    closure_cap: int,
    coset_cap: int,
    tietze_passes: int,
) -> dict:
    con = pipeline.construction
    gs = greens(con.semigroup)
    return {
        "version": FORMAT_VERSION,
        "command": "construct2",
        "params": _params_json(closure_cap, coset_cap, tietze_passes),
        "input": cayley_input_json(con.table),
        "stages": {
            "construction": {
                "order": con.table.order,
                "cols": con.n,
                "matrix": _matrix_json(con.matrix),
                "pattern_maps": [
                    {"index": u + 1, "map": _map_json(e)}
                    for u, e in enumerate(con.pattern_maps)
                ],
                "derived_maps": [
                    {"index": u + 7, "map": _map_json(e)}
                    for u, e in enumerate(con.derived_maps)
                ],
                "structure": _structure_json(con.report),
            },
            "semigroup": _semigroup_json(con.semigroup),
            "greens": {
                "d_class_sizes": [len(d) for d in gs.d_classes],
            },
            "squares": squares_json(pipeline.grid),
            "presentation": _h1_counts_json(pipeline.grid),
            "identification": _identification_json(pipeline.grid, pipeline.match),
            "residue": _presentation_json(pipeline.residue),
            "regular_biorder": pipeline.regular_biorder,
            "verification": _report_json(pipeline.report),
        },
        "verdict": "pass" if pipeline.report.passed else "fail",
    }


def rectband_document(
    pipeline: RectBandPipeline,
    nrows: int,
    ncols: int,
    closure_cap: int,
    coset_cap: int,
    tietze_passes: int,
) -> dict:
    return {
        "version": FORMAT_VERSION,
        "command": "rectband",
        "params": _params_json(closure_cap, coset_cap, tietze_passes),
        "input": {"kind": "rectband", "rows": nrows, "cols": ncols},
        "stages": {
            "squares": squares_json(pipeline.grid),
            "presentation": _h1_counts_json(pipeline.grid),
            "simplified": {
                "generators": pipeline.rank,
                "relations": len(pipeline.simplified.presentation.relations),
                "exhausted": pipeline.simplified.exhausted,
            },
            "expected_rank": pipeline.expected_rank,
        },
        "verdict": "pass" if pipeline.passed else "fail",
    }


# ---------------------------------------------------------------------------
# Text rendering


def render_text(doc: dict) -> str:
    """Human-readable rendering of a structured document."""
    out = [f"command: {doc['command']}"]
    if "recheck" in doc:
        for key, value in doc["recheck"].items():
            out.append(f"recheck {key}: {value}")
    if "verification" in doc:
        out.append("verification:")
        out.extend("  " + line for line in _render_report_dict(doc["verification"]))
    stages = doc.get("stages", {})
    if "construction" in stages:
        con = stages["construction"]
        if doc["command"] == "construct1":
            out.append(f"grid: {con['rows']} rows x {con['cols']} cols")
        else:
            out.append(
                f"group order {con['order']}, grid: 3 rows x {con['cols']} cols"
            )
        out.append("label matrix:")
        matrix = con["matrix"]
        width = max(len(e) for row in matrix["entries"] for e in row)
        for row in matrix["entries"]:
            out.append("  " + " ".join(e.rjust(width) for e in row))
    if "semigroup" in stages:
        sg = stages["semigroup"]
        out.append(
            f"semigroup: {sg['size']} elements, {sg['num_idempotents']} idempotents"
        )
    if "squares" in stages:
        sq = stages["squares"]
        out.append(
            f"singular squares: {sq['count']} ({sq['distinct_tuples']} distinct tuples)"
        )
    if "identification" in stages:
        ident = stages["identification"]
        out.append(
            f"identification: {len(ident['classes'])} classes,"
            f" exact={ident['exact_match']}"
        )
    if "residue" in stages:
        res = stages["residue"]
        out.append(f"residue ({len(res['relations'])} relations):")
        for rel in res["relations"]:
            lhs = " ".join(rel["lhs"]) or "1"
            rhs = " ".join(rel["rhs"]) or "1"
            out.append(f"  {lhs} = {rhs}")
    if "simplified" in stages:
        simp = stages["simplified"]
        out.append(
            f"simplified presentation: {simp['generators']} generators, "
            f"{simp['relations']} relations"
            f" (expected free rank {stages['expected_rank']})"
        )
    if "regular_biorder" in stages:
        out.append(f"regular biorder: {stages['regular_biorder']}")
    if "verification" in stages:
        out.append("verification:")
        out.extend("  " + line for line in _render_report_dict(stages["verification"]))
    out.append(f"verdict: {doc['verdict']}")
    return "\n".join(out) + "\n"


def _render_report_dict(rep: dict) -> list[str]:
    lines = [
        f"soundness:      {rep['soundness_ok']}",
        f"completeness:   {rep['completeness_ok']}",
        f"identification: ok={rep['identification_ok']} exact={rep['identification_exact']}",
        f"census:         {rep['census_ok']}",
        f"order:          {rep['order_status']} ({rep['order_mode']},"
        f" expected={rep['order_expected']}, found={rep['order_found']})",
        f"abelian:        {rep['abelian_found']} (expected {rep['abelian_expected']})",
    ]
    if rep["unverified"]:
        lines.append(f"unverified:     {rep['unverified']}")
    for key in (
        "soundness_violations",
        "completeness_missing",
        "census_failures",
    ):
        for item in rep[key]:
            lines.append(f"  ! {item}")
    return lines
