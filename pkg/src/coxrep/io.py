"""JSON schemas for diagrams, parameters, scalars and matrices.

Exact scalars serialize as rational coordinate vectors over a denominator,
with the conductor carried in the enclosing document; an "approx" float is
attached for human readability but never parsed back.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .construction import ParameterSystem, ReflectionRep, geometric_parameters
from .cyclotomic import FieldContext, FieldElement, field_context
from .graph import Diagram, SpanningTree, spanning_tree, spanning_tree_from_edges, validate


class InputError(ValueError):
    """Malformed input document."""


def scalar_to_json(x: FieldElement) -> dict:
    top = x.effective_degree
    return {
        "num": list(x.num[:top + 1]),
        "den": x.den,
        "approx": float(x),
    }


def _fraction_from(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise InputError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {value!r}") from exc
    raise InputError(f"cannot read a rational from {value!r}")


def scalar_from_json(ctx: FieldContext, obj: Any) -> FieldElement:
    """Scalar from an int, a "p/q" string, a coefficient list, or a
    {"num": [...], "den": d} record (power-basis coordinates)."""
    if isinstance(obj, Mapping):
        num = obj.get("num")
        den = obj.get("den", 1)
        if not isinstance(num, Sequence) or isinstance(num, str):
            raise InputError('scalar record needs a "num" list')
        coeffs = [_fraction_from(v) / _fraction_from(den) for v in num]
        return ctx.from_coeffs(coeffs)
    if isinstance(obj, Sequence) and not isinstance(obj, str):
        return ctx.from_coeffs([_fraction_from(v) for v in obj])
    return ctx.from_rational(_fraction_from(obj))


def matrix_to_json(m) -> list:
    return [[scalar_to_json(x) for x in row] for row in m]


def matrix_from_json(ctx: FieldContext, obj: Any) -> list[list[FieldElement]]:
    if not isinstance(obj, Sequence):
        raise InputError("matrix must be a list of rows")
    return [[scalar_from_json(ctx, v) for v in row] for row in obj]


def diagram_to_json(diagram: Diagram) -> dict:
    return {"rank": diagram.rank,
            "m": [list(row) for row in diagram.m],
            "labels": list(diagram.labels)}


def diagram_from_json(obj: Any) -> Diagram:
    if not isinstance(obj, Mapping) or "m" not in obj:
        raise InputError('diagram document needs an "m" matrix')
    rows = obj["m"]
    rank = obj.get("rank", len(rows))
    if rank != len(rows):
        raise InputError("declared rank does not match the matrix")
    labels = obj.get("labels")
    return validate(rows, labels=labels)


def load_diagram(path: str) -> Diagram:
    with open(path) as fh:
        return diagram_from_json(json.load(fh))


def tree_from_json(diagram: Diagram, root: int, obj: Any) -> SpanningTree:
    if not isinstance(obj, Mapping) or "edges" not in obj:
        raise InputError('tree document needs an "edges" list')
    edges = []
    for pair in obj["edges"]:
        if len(pair) != 2:
            raise InputError(f"bad edge {pair!r}")
        s, t = pair
        s = diagram.vertex_index(s) if isinstance(s, str) else int(s)
        t = diagram.vertex_index(t) if isinstance(t, str) else int(t)
        edges.append((s, t))
    try:
        return spanning_tree_from_edges(diagram, root, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _edge_from_key(diagram: Diagram, key: str) -> tuple[int, int]:
    parts = key.split("-")
    if len(parts) != 2:
        raise InputError(f"bad edge key {key!r}; expected 'label-label'")
    try:
        s, t = (diagram.vertex_index(p) for p in parts)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    if not diagram.is_edge(s, t):
        raise InputError(f"{key!r} is not an edge of the diagram")
    return (s, t) if s < t else (t, s)


def params_from_json(tree: SpanningTree, obj: Any) -> ParameterSystem:
    """Parameter system from {"alpha": {...}, "chords": {...}}; entries not
    present fall back to the geometric values."""
    diagram = tree.diagram
    base = geometric_parameters(tree)
    if obj is None:
        return base
    if not isinstance(obj, Mapping):
        raise InputError("parameter document must be an object")
    params = base
    for key, k in (obj.get("alpha") or {}).items():
        edge = _edge_from_key(diagram, key)
        if not isinstance(k, int):
            raise InputError(f"alpha index for {key!r} must be an integer")
        params = params.with_alpha(edge, k)
    for key, spec in (obj.get("chords") or {}).items():
        edge = _edge_from_key(diagram, key)
        if edge not in tree.chords:
            raise InputError(f"{key!r} is not a chord of the chosen tree")
        params = params.with_chord(edge, scalar_from_json(params.ctx, spec))
    return params


def load_params(tree: SpanningTree, path: str | None) -> ParameterSystem:
    if path is None:
        return geometric_parameters(tree)
    with open(path) as fh:
        return params_from_json(tree, json.load(fh))


def params_to_json(diagram: Diagram, params: ParameterSystem) -> dict:
    labels = diagram.labels
    alpha = {f"{labels[s]}-{labels[t]}": k
             for (s, t), k in sorted(params.alpha_index.items())}
    chords = {f"{labels[s]}-{labels[t]}": scalar_to_json(l)
              for (s, t), l in sorted(params.chord_l.items())}
    return {"alpha": alpha, "chords": chords}


def rep_to_json(rep: ReflectionRep) -> dict:
    labels = rep.diagram.labels
    return {
        "conductor": rep.ctx.N,
        "rank": rep.rank,
        "basis": list(labels),
        "root": labels[rep.root],
        "tree_edges": [[labels[s], labels[t]]
                       for s, t in sorted(rep.tree.tree_edges)],
        "chords": [[labels[s], labels[t]] for s, t in rep.tree.chords],
        "parameters": params_to_json(rep.diagram, rep.params),
        "generators": {labels[s]: matrix_to_json(rep.generators[s])
                       for s in range(rep.rank)},
    }


def rep_matrices_from_json(obj: Mapping) -> dict[str, list[list[FieldElement]]]:
    """Parse the generator matrices of a serialized representation back into
    exact elements (round-trip support)."""
    ctx = field_context(int(obj["conductor"]))
    return {name: matrix_from_json(ctx, mat)
            for name, mat in obj["generators"].items()}
