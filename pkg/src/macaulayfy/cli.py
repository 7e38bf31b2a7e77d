"""Command-line front end.

Input format::

    char 32003
    vars x y u v
    weights 1 1 1 1        # optional
    ideal
    x*u, x*v
    y*u
    y*v
    elements seq           # optional, any number of named blocks
    x - u
    y - v

Exit status: 0 success or verdict true, 1 verdict false, 2 input error,
3 resource abort.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .blowup import ChartError, blowup_charts, rees_presentation
from .groebner import ResourceLimitError
from .homology import ZeroRingError, cm_certificate, depth, noncm_data
from .ideals import RingPresentation
from .macaulay import (
    RECIPES,
    ConstructionUndefined,
    ParameterSelectionError,
    PipelineConfig,
    center_charts,
    center_ideal,
    macaulayfy,
    select_parameters,
)
from .poly import DEFAULT_PRIME, FieldSpec, MonomialOrder, PolynomialSyntaxError, PolyRing
from .sequences import (
    BoundError,
    ZeroDivisorError,
    chart_regular_sequence,
    is_d_sequence,
    is_usd_sequence_bounded,
    product_colon_identity,
    parameter_colon_identity,
    b_transform_identity,
    parameter_battery,
    transform_inclusion,
    verify_transform_identity,
)

SCHEMA = "macaulayfy-report/1"
COMMANDS = ("gb", "dim", "depth", "cm", "noncm", "dseq", "usd", "identities", "rees", "charts", "macaulayfy")

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class InputDocument:
    characteristic: int
    variables: list
    weights: list | None
    ideal: list  # Polynomial
    elements: dict = field(default_factory=dict)  # name -> list of Polynomial

    def presentation(self, name: str = "") -> RingPresentation:
        ring = PolyRing.make(self.variables, self.characteristic)
        gens = [g.change_ring(ring) if g.ring is not ring else g for g in self.ideal]
        weights = self.weights
        if weights is None:
            standard = [1] * len(self.variables)
            weights = standard if all(g.is_homogeneous(standard) for g in gens) else None
        return RingPresentation(ring, gens, weights, name=name)

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return serialize_input(self) == serialize_input(other)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_input(text: str, characteristic: int | None = None) -> InputDocument:
    """Parse the ring-presentation format; errors carry line and column."""
    lines = text.splitlines()
    p = None
    names = None
    weights = None
    ideal_lines: list = []
    blocks: dict = {}
    current = None
    for ln, raw in enumerate(lines, start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        head, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        if head == "char":
            try:
                p = int(rest)
            except ValueError:
                raise InputError(f"bad characteristic {rest!r}", ln) from None
            current = None
        elif head == "vars":
            names = rest.replace(",", " ").split()
            if not names:
                raise InputError("empty variable list", ln)
            if len(set(names)) != len(names):
                raise InputError("repeated variable name", ln)
            current = None
        elif head == "weights":
            try:
                weights = [int(w) for w in rest.replace(",", " ").split()]
            except ValueError:
                raise InputError("weights must be integers", ln) from None
            current = None
        elif head == "ideal" and not rest:
            current = ideal_lines
        elif head == "elements":
            if not rest or " " in rest:
                raise InputError("elements block needs a single name", ln)
            if rest in blocks:
                raise InputError(f"duplicate elements block {rest!r}", ln)
            blocks[rest] = []
            current = blocks[rest]
        else:
            if current is None:
                raise InputError(f"unexpected line {line.strip()!r}", ln, 1)
            offset = len(raw) - len(raw.lstrip())
            for piece in _split_commas(line):
                start, chunk = piece
                if chunk.strip():
                    current.append((ln, offset + start + (len(chunk) - len(chunk.lstrip())), chunk.strip()))
    if characteristic is not None:
        p = characteristic
    if p is None:
        p = DEFAULT_PRIME
    try:
        FieldSpec(p)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if names is None:
        raise InputError("missing 'vars' line")
    if weights is not None and len(weights) != len(names):
        raise InputError("one weight per variable required")
    ring = PolyRing.make(names, p)

    def convert(entries):
        out = []
        for ln, col, chunk in entries:
            try:
                out.append(ring.parse(chunk))
            except PolynomialSyntaxError as exc:
                msg = str(exc).rsplit(" at position", 1)[0]
                raise InputError(msg, ln, col + exc.pos + 1) from None
        return out

    ideal = [g for g in convert(ideal_lines) if g]
    elements = {k: convert(v) for k, v in blocks.items()}
    doc = InputDocument(p, names, weights, ideal, elements)
    if weights is not None:
        for g in ideal:
            if not g.is_homogeneous(weights):
                raise InputError(f"generator {g} is not homogeneous for the given weights")
    return doc


def _split_commas(line: str):
    pos = 0
    for chunk in line.split(","):
        yield pos, chunk
        pos += len(chunk) + 1


def serialize_input(doc: InputDocument) -> str:
    out = [f"char {doc.characteristic}", "vars " + " ".join(doc.variables)]
    if doc.weights is not None:
        out.append("weights " + " ".join(map(str, doc.weights)))
    out.append("ideal")
    out += [str(g) for g in doc.ideal]
    for name, polys in doc.elements.items():
        out.append(f"elements {name}")
        out += [str(g) for g in polys]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# commands


def _sequence(doc: InputDocument, name: str | None):
    if name is not None:
        if name not in doc.elements:
            raise InputError(f"no elements block named {name!r}")
        return doc.elements[name]
    if not doc.elements:
        raise InputError("this command needs an 'elements' block")
    return next(iter(doc.elements.values()))


def _cmd_gb(R, doc, args):
    gb = R.ideal.groebner(MonomialOrder(args.order, R.nvars))
    return True, {"order": args.order, "basis": [str(g) for g in gb]}


def _cmd_dim(R, doc, args):
    return True, {"dim": R.dim()}


def _cmd_depth(R, doc, args):
    return True, {"depth": depth(R), "dim": R.dim()}


def _cmd_cm(R, doc, args):
    cert = cm_certificate(R)
    return cert.cohen_macaulay, cert.to_dict()


def _cmd_noncm(R, doc, args):
    return True, noncm_data(R).to_dict()


def _cmd_dseq(R, doc, args):
    seq = _sequence(doc, args.sequence)
    modulo = doc.elements.get(args.modulo, []) if args.modulo else []
    rep = is_d_sequence(R, seq, modulo)
    return rep.verdict, {"sequence": [str(f) for f in seq], **rep.to_dict()}


def _cmd_usd(R, doc, args):
    seq = _sequence(doc, args.sequence)
    modulo = doc.elements.get(args.modulo, []) if args.modulo else []
    rep = is_usd_sequence_bounded(R, seq, args.exp_bound, modulo)
    return rep.verdict, {"sequence": [str(f) for f in seq], **rep.to_dict()}


def _cmd_identities(R, doc, args):
    ps = select_parameters(R, seed=args.seed)
    s, xs = ps.split, ps.elements
    reports = [parameter_battery(R, xs, s, args.exp_bound, args.power_bound),
               parameter_colon_identity(R, xs),
               parameter_colon_identity(R, xs, [1 + (k % 2) for k in range(ps.d)])]
    if s >= 1:
        tail = xs[s:]
        reports.append(verify_transform_identity(R, ps.x(s), tail, args.power_bound))
        reports.append(product_colon_identity(R, ps.x(s), tail, args.power_bound))
        reports.append(chart_regular_sequence(R, ps.x(s), tail))
    if s >= 2:
        reports.append(b_transform_identity(R, xs, s, min(args.power_bound, 2)))
        reports.append(transform_inclusion(R, xs, s, min(args.power_bound, 2)))
    ok = all(r.verdict for r in reports)
    return ok, {"parameters": ps.to_dict(), "reports": [r.to_dict() for r in reports]}


def _cmd_rees(R, doc, args):
    gens = _sequence(doc, args.sequence)
    S = rees_presentation(R, gens)
    return True, {"variables": list(S.variables), "weights": list(S.weights or ()),
                  "ideal": [str(g) for g in S.ideal.groebner()]}


def _cmd_charts(R, doc, args):
    if doc.elements:
        charts = blowup_charts(R, _sequence(doc, args.sequence))
        return True, {"charts": [c.to_dict() for c in charts]}
    ps = select_parameters(R, seed=args.seed)
    recipe = RECIPES[min(ps.split, 2)]
    if args.transform:
        recipe = RECIPES[ps.split - 1] if ps.split >= 1 else None
        if recipe is None:
            raise ConstructionUndefined("transform variants need s >= 1")
    center = center_ideal(ps, recipe, args.transform)
    charts = center_charts(center, args.use_reduction)
    return True, {"parameters": ps.to_dict(), "center": center.to_dict(),
                  "charts": [c.to_dict() for c in charts]}


def _cmd_macaulayfy(R, doc, args):
    cfg = PipelineConfig(seed=args.seed, use_reduction=args.use_reduction, transform=args.transform,
                         stage_limit=args.stage_limit, exp_bound=args.exp_bound,
                         power_bound=args.power_bound)
    rep = macaulayfy(R, cfg)
    return rep.verdict, rep.to_dict(with_presentation=True)


HANDLERS = {
    "gb": _cmd_gb, "dim": _cmd_dim, "depth": _cmd_depth, "cm": _cmd_cm, "noncm": _cmd_noncm,
    "dseq": _cmd_dseq, "usd": _cmd_usd, "identities": _cmd_identities, "rees": _cmd_rees,
    "charts": _cmd_charts, "macaulayfy": _cmd_macaulayfy,
}


def run_command(cmd: str, doc: InputDocument, args) -> tuple:
    """``(exit_status, report)`` for one command on a parsed document."""
    R = doc.presentation()
    start = time.perf_counter()
    verdict, result = HANDLERS[cmd](R, doc, args)
    report = {
        "schema": SCHEMA,
        "command": cmd,
        "config": {
            "characteristic": doc.characteristic,
            "order": args.order,
            "seed": args.seed,
            "exp_bound": args.exp_bound,
            "power_bound": args.power_bound,
            "use_reduction": args.use_reduction,
            "transform": args.transform,
        },
        "input": serialize_input(doc).splitlines(),
        "verdict": verdict,
        "result": result,
        "timings": {"seconds": round(time.perf_counter() - start, 6)},
    }
    return (EXIT_OK if verdict else EXIT_FALSE), report


def comparable(report: dict) -> dict:
    """The report without its timing section."""
    return {k: v for k, v in report.items() if k != "timings"}


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return "\n".join(lines)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="macaulayfy", description="Cohen-Macaulay certification of blowup charts")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", help="ring file (default: stdin)")
    ap.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    ap.add_argument("--char", type=int, dest="char", help="override the characteristic")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--power-bound", type=int, default=3)
    ap.add_argument("--exp-bound", type=int, default=2)
    ap.add_argument("--use-reduction", action="store_true")
    ap.add_argument("--transform", action="store_true")
    ap.add_argument("--stage-limit", type=int, default=1)
    ap.add_argument("--sequence", help="elements block to use (default: the first)")
    ap.add_argument("--modulo", help="elements block generating an ideal to work modulo")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--out", "-o", help="write the report here instead of stdout")
    return ap


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        doc = parse_input(text, args.char)
        status, report = run_command(args.command, doc, args)
    except (InputError, OSError, ConstructionUndefined, ZeroRingError, ZeroDivisorError, BoundError,
            ChartError, ParameterSelectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        if exc.diagnostic:
            print(json.dumps(exc.diagnostic, sort_keys=True), file=sys.stderr)
        return EXIT_RESOURCE
    if args.json:
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(render_text(report) + "\n", args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
