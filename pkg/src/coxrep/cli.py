"""Batch command line front end.

    coxrep build  --diagram F --root S [--tree F] [--params F] [--format ...]
    coxrep verify --diagram F --root S [--tree F] [--params F]
    coxrep form   --diagram F --root S [--theta J] [...]
    coxrep equiv  --diagram F --root S [--root2 S] [--params2 F] [...]
    coxrep dual   --diagram F --root S [...]

--diagram takes a path or the name of a bundled example (a3, b3, bc3, h3,
affine_triangle, k4).  Exit codes: 0 success, 2 input validation, 3
verification failure, 4 internal consistency error.  COXREP_MAX_ORDER
bounds the order-classification search (default 60).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import io as cio
from . import linalg
from .analysis import (
    EquivalenceViolation,
    OrderMismatch,
    characters_distinguish,
    commutant_dimension,
    product_analysis,
    rep_reflection,
    verify_good_morphism,
)
from .construction import build, cartan_matrix, root_change_intertwiner
from .cyclotomic import NotCoprime
from .forms import (
    Automorphism,
    build_form,
    dual_chord_coefficients_match,
    dual_representation,
    form_exists,
    form_space_dimension,
    gram_cartan_relation,
    verify_invariance,
)
from .graph import spanning_tree

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_INTERNAL = 4

BUNDLED = ("a3", "b3", "bc3", "h3", "affine_triangle", "k4")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _resolve_diagram(spec: str):
    if spec in BUNDLED:
        ref = resources.files("coxrep.data").joinpath(f"{spec}.json")
        return cio.diagram_from_json(json.loads(ref.read_text()))
    if not os.path.exists(spec):
        raise CliError(f"no such diagram file or bundled name: {spec}")
    try:
        return cio.load_diagram(spec)
    except (cio.InputError, ValueError, json.JSONDecodeError) as exc:
        raise CliError(f"bad diagram: {exc}") from exc


def _job_rep(args, suffix: str = ""):
    diagram_spec = getattr(args, "diagram2", None) if suffix else None
    diagram = _resolve_diagram(diagram_spec or args.diagram)
    root_label = getattr(args, "root" + suffix, None) or args.root
    try:
        root = diagram.vertex_index(root_label) if isinstance(root_label, str) \
            else int(root_label)
    except KeyError as exc:
        raise CliError(str(exc)) from exc
    tree_path = getattr(args, "tree" + suffix, None)
    try:
        if tree_path:
            with open(tree_path) as fh:
                tree = cio.tree_from_json(diagram, root, json.load(fh))
        else:
            tree = spanning_tree(diagram, root)
        params = cio.load_params(tree, getattr(args, "params" + suffix, None))
        return build(tree, params)
    except (cio.InputError, ValueError, json.JSONDecodeError, OSError) as exc:
        raise CliError(f"bad job input: {exc}") from exc


def _emit(args, document: dict, text: str) -> None:
    if args.format == "json":
        json.dump(document, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text + "\n")


def _matrix_text(m) -> str:
    cells = [[str(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  [" + "  ".join(c.rjust(width) for c in row) + "]"
                     for row in cells)


def cmd_build(args) -> int:
    rep = _job_rep(args)
    data = cartan_matrix(rep)
    document = cio.rep_to_json(rep)
    document["cartan"] = cio.matrix_to_json(data.entries)
    document["discriminant"] = cio.scalar_to_json(data.discriminant)
    lines = [str(rep), f"conductor N = {rep.ctx.N}",
             "Cartan matrix:", _matrix_text(data.entries),
             f"discriminant = {data.discriminant}"]
    for s in range(rep.rank):
        lines.append(f"generator {rep.diagram.labels[s]}:")
        lines.append(_matrix_text(rep.generators[s]))
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = _job_rep(args)
    report = verify_good_morphism(rep, max_order=args.max_order)
    char_ok = True
    pair_records = []
    for s in range(rep.rank):
        for t in range(s + 1, rep.rank):
            analysis = product_analysis(rep_reflection(rep, s),
                                        rep_reflection(rep, t), args.max_order)
            pair_records.append({
                "pair": [rep.diagram.labels[s], rep.diagram.labels[t]],
                "char_poly_closed_form": analysis.closed_form_matches,
            })
            if analysis.closed_form_matches is False:
                char_ok = False
    dim = commutant_dimension(rep)
    passed = report.passed and char_ok and dim == 1
    document = {
        "passed": passed,
        "good_morphism": report.as_dict(),
        "char_poly_checks": pair_records,
        "commutant_dimension": dim,
    }
    lines = [f"good morphism: {'pass' if report.passed else 'FAIL'}"]
    for check in report.checks:
        labels = rep.diagram.labels
        lines.append(f"  {labels[check.s]},{labels[check.t]}: expected "
                     f"{check.expected}, computed {check.computed}"
                     f" -> {'ok' if check.passed else 'FAIL'}")
    lines.append(f"char poly closed form: {'pass' if char_ok else 'FAIL'}")
    lines.append(f"commutant dimension: {dim}")
    _emit(args, document, "\n".join(lines))
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_form(args) -> int:
    rep = _job_rep(args)
    try:
        theta = Automorphism.from_index(rep.ctx, args.theta)
    except NotCoprime as exc:
        raise CliError(str(exc)) from exc
    existence = form_exists(rep, theta)
    dimension = form_space_dimension(rep, theta)
    document = {
        "theta": theta.index,
        "exists": bool(existence),
        "obstruction": existence.obstruction,
        "obstruction_detail": list(existence.detail) if existence.detail else None,
        "dimension": dimension,
    }
    lines = [f"theta = galois index {theta.index}",
             f"invariant form exists: {bool(existence)} (dimension {dimension})"]
    if existence:
        gram = build_form(rep, theta)
        invariant = verify_invariance(rep, gram)
        document["gram"] = cio.matrix_to_json(gram.entries)
        document["invariance_verified"] = invariant
        lines.append("Gram matrix (root diagonal normalized to 2):")
        lines.append(_matrix_text(gram.entries))
        lines.append(f"invariance verified: {invariant}")
        if theta.is_identity:
            factorized = gram_cartan_relation(rep, gram)
            document["diag_cartan_factorization"] = factorized
            lines.append(f"diag * Cartan factorization: {factorized}")
        if not invariant:
            raise CliError("constructed form failed invariance", EXIT_INTERNAL)
    else:
        lines.append(f"obstruction: {existence.obstruction} at {existence.detail}")
    if bool(existence) != (dimension == 1):
        raise CliError("form criterion and nullspace dimension disagree",
                       EXIT_INTERNAL)
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def cmd_equiv(args) -> int:
    rep1 = _job_rep(args)
    rep2 = _job_rep(args, suffix="2")
    if rep1.diagram != rep2.diagram:
        raise CliError("the two jobs must share a diagram")
    document: dict = {}
    lines: list[str] = []
    same_tree = rep1.tree.tree_edges == rep2.tree.tree_edges
    if same_tree and rep1.root != rep2.root and \
            dict(rep1.params.alpha_index) == dict(rep2.params.alpha_index):
        moved = root_change_intertwiner(rep1, rep2.root)
        if moved.target.params == rep2.params and moved.verify():
            g = moved.matrix
            return _emit_equivalent(args, rep1, g, document, lines)
    verdict = characters_distinguish(rep1, rep2)
    if verdict.kind == "distinct":
        labels = rep1.diagram.labels
        word = [labels[s] for s in verdict.word]
        t1, t2 = verdict.traces
        document.update({
            "verdict": "distinct",
            "separating_word": word,
            "traces": [cio.scalar_to_json(t1), cio.scalar_to_json(t2)],
        })
        lines.append("verdict: distinct")
        lines.append(f"separating word: {' '.join(word)}")
        lines.append(f"traces: {t1}  vs  {t2}")
        _emit(args, document, "\n".join(lines))
        return EXIT_OK
    if verdict.kind == "equivalent":
        return _emit_equivalent(args, rep1, verdict.intertwiner, document, lines)
    document["verdict"] = "inconclusive"
    _emit(args, document, "verdict: inconclusive")
    return EXIT_OK


def _normalize_integral(rep, g):
    """Scale an intertwiner to primitive integral form when possible."""
    import math
    from fractions import Fraction

    den = 1
    content = 0
    for row in g:
        for x in row:
            den = math.lcm(den, x.den)
            for v in x.num:
                content = math.gcd(content, v)
    if content:
        g = linalg.mat_scale(g, Fraction(den, content))
    for row in g:
        for x in row:
            if not x.is_zero():
                if x.num[x.effective_degree] < 0:
                    return linalg.mat_scale(g, -1)
                return g
    return g


def _emit_equivalent(args, rep, g, document, lines) -> int:
    g = _normalize_integral(rep, g)
    ginv = linalg.inverse(rep.ctx, g)
    integral = all(x.is_integral() for row in g for x in row)
    inv_integral = all(x.is_integral() for row in ginv for x in row)
    document.update({
        "verdict": "equivalent",
        "intertwiner": cio.matrix_to_json(g),
        "intertwiner_inverse": cio.matrix_to_json(ginv),
        "intertwiner_integral": integral,
        "inverse_integral": inv_integral,
    })
    lines.append("verdict: equivalent")
    lines.append("intertwiner g:")
    lines.append(_matrix_text(g))
    lines.append(f"g integral: {integral}; g^-1 integral: {inv_integral}")
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def cmd_dual(args) -> int:
    rep = _job_rep(args)
    dual = dual_representation(rep)
    document = {
        "discriminant": cio.scalar_to_json(dual.discriminant),
        "degenerate": dual.degenerate,
        "dual_generators": {rep.diagram.labels[s]: cio.matrix_to_json(m)
                            for s, m in enumerate(dual.dual_generators)},
        "adapted_row_rank": dual.adapted_rank(),
    }
    lines = [f"discriminant = {dual.discriminant}",
             f"degenerate: {dual.degenerate}",
             f"adapted row rank: {dual.adapted_rank()} of {rep.rank}"]
    if not dual.degenerate:
        document["adapted_generators"] = {
            rep.diagram.labels[s]: cio.matrix_to_json(m)
            for s, m in enumerate(dual.adapted_generators)}
        chords_ok = dual_chord_coefficients_match(dual)
        document["chord_coefficients_match"] = chords_ok
        lines.append(f"chord coefficient formula: {chords_ok}")
        if not chords_ok:
            raise CliError("dual chord coefficients disagree with the formula",
                           EXIT_INTERNAL)
    _emit(args, document, "\n".join(lines))
    return EXIT_OK


def _add_job_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--diagram", required=True,
                        help="diagram JSON path or bundled name "
                             f"({', '.join(BUNDLED)})")
    parser.add_argument("--root", required=True, help="root vertex label")
    parser.add_argument("--tree", help="spanning tree JSON (edge list) path")
    parser.add_argument("--params", help="parameter JSON path")
    parser.add_argument("--format", choices=("json", "text"), default="text")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxrep",
        description="exact reflection representations of 2-spherical "
                    "Coxeter systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("build", "verify", "form", "equiv", "dual"):
        p = sub.add_parser(name)
        _add_job_arguments(p)
        p.add_argument("--max-order", type=int,
                       default=int(os.environ.get("COXREP_MAX_ORDER", "60")))
        if name == "form":
            p.add_argument("--theta", type=int, default=1,
                           help="galois index of the twisting automorphism")
        if name == "equiv":
            p.add_argument("--diagram2", help="second diagram (defaults to first)")
            p.add_argument("--root2", help="second root (defaults to first)")
            p.add_argument("--tree2", help="second tree file")
            p.add_argument("--params2", help="second parameter file")
    return parser


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "form": cmd_form,
    "equiv": cmd_equiv,
    "dual": cmd_dual,
}


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OrderMismatch, EquivalenceViolation) as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
