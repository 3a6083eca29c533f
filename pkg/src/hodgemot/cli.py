"""Command line front end.

Every command first builds a JSON-compatible report dictionary; the human
readable text is rendered from that dictionary, so ``--json`` output and
text output always describe the same computation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .complexes import (
    SimplicialCohomologyDatum,
    assemble_total,
    cohomology_mhs,
    motivic_square_check,
    weight_graded,
)
from .descent import FIXTURES, GluingSpec, cech_two_gluing, fixture_path, mv_cohomology
from .exact.scalar import from_components
from .errors import InconsistentData, InvalidInput, ParseError, UnsupportedInput
from .io import Document, _enc_vec, load, serialize
from .mhs import MixedHodgeStructure, graded_piece, hodge_numbers
from .motive import HodgeMotive, OneMotive, hodge_motive, point_order, realize_one_motive

REPORT_SCHEMA = 1
OUTPUT_ENV = "HODGEMOT_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3
EXIT_PARSE = 4


# ----------------------------------------------------------------------------
# report builders


def _hodge_table(h: MixedHodgeStructure) -> list:
    return [[p, q, n] for (p, q), n in sorted(hodge_numbers(h).items())]


def _describe(h: MixedHodgeStructure) -> dict:
    graded = {}
    for k in h.weights():
        g = graded_piece(h, k)
        graded[str(k)] = {"rank": g.rank, "hodge_numbers": _hodge_table(g)}
    out = {"rank": h.rank, "weights": h.weights(), "graded": graded}
    if h.torsion:
        out["torsion"] = list(h.torsion)
    return out


def _order(t, v):
    o = point_order(t, v)
    return "inf" if o == math.inf else o


def _motive_section(hm: HodgeMotive) -> dict:
    m = hm.motive
    return {
        "level": hm.p,
        "mode": hm.mode,
        "hodge_classes": hm.classes.rank,
        "lattice_rank": hm.lattice_rank,
        "abelian_rank": hm.abelian_rank,
        "torus_dim": m.torus.dim,
        "image_rank": hm.image_rank,
        "strict_kernel_rank": hm.strict_kernel.rank,
        "lattice_basis": [list(b) for b in m.lattice.basis],
        "u": [{"value": _enc_vec(v.rep), "order": _order(m.torus, v)} for v in m.u],
    }


def _graded_section(graded: dict) -> dict:
    return {str(t): {"rank": h.rank, "hodge_numbers": _hodge_table(h)}
            for t, h in sorted(graded.items())}


def _lambda_section(lam) -> dict:
    return {
        "degree": lam.degree,
        "basis": [list(b) for b in lam.basis],
        "values": [{"value": _enc_vec(v.rep), "order": _order(lam.torus, v)} for v in lam.values],
        "image_rank": lam.image_rank(),
        "all_zero": all(v.is_zero() for v in lam.values),
    }


def _square_section(sq) -> dict:
    return {
        "commutes": sq.commutes,
        "kernel_rank_lambda": sq.kernel_rank_lambda,
        "kernel_rank_extension": sq.kernel_rank_extension,
        "image_rank": sq.image_rank,
        "witnesses": [{"cycle": list(w["cycle"]), "lambda": _enc_vec(w["lambda"]),
                       "extension": _enc_vec(w["extension"])} for w in sq.witnesses],
    }


def _datum_of(doc: Document) -> SimplicialCohomologyDatum:
    if doc.kind == "gluing":
        return cech_two_gluing(doc.payload)
    if doc.kind == "simplicial-datum":
        return doc.payload
    raise UnsupportedInput(f"this command needs a gluing or simplicial-datum document, got {doc.kind}")


def cmd_validate(doc: Document, args) -> dict:
    out = {"status": "ok"}
    obj = doc.payload
    if doc.kind == "mhs":
        out["structure"] = _describe(obj)
    elif doc.kind == "gluing":
        out["degrees"] = sorted(obj.pieces)
        out["cycles"] = obj.cycles is not None
    elif doc.kind == "simplicial-datum":
        out["levels"] = obj.levels
        out["degrees"] = obj.degrees()
    elif doc.kind == "complex":
        out["degrees"] = [s for s, _ in obj.terms]
    elif doc.kind == "one-motive":
        out["lattice_rank"] = obj.lattice.rank
        out["torus_rank"] = obj.torus.rank
    return out


def cmd_hodge_numbers(doc: Document, args) -> dict:
    obj = doc.payload
    if doc.kind == "mhs":
        return {"structure": _describe(obj)}
    if doc.kind == "complex":
        return {"cohomology": {str(s): _describe(cohomology_mhs(obj, s)) for s, _ in obj.terms}}
    if doc.kind in ("gluing", "simplicial-datum"):
        d = _datum_of(doc)
        rows = {}
        for t in d.degrees():
            for i in range(d.levels):
                h = weight_graded(d, t, i)
                if h.rank:
                    rows[f"{t},{i}"] = {"degree": t + i, "weight": t, "rank": h.rank,
                                        "hodge_numbers": _hodge_table(h)}
        return {"graded": rows}
    raise UnsupportedInput("hodge-numbers is not defined for one-motive documents; use realize")


def cmd_motive(doc: Document, args) -> dict:
    p, mode = args.p, args.mode
    n = args.n if args.n is not None else 2 * p
    out = {"level": p, "degree": n}
    if doc.kind == "gluing":
        b = mv_cohomology(doc.payload, n, p)
        out["graded"] = _graded_section(b.graded)
        out["rank"] = b.rank
        out["mv_rank"] = b.mv_rank
        if b.betti is not None:
            out["betti"] = b.betti
        hm = b.motive if mode == "isogeny" else hodge_motive(b.H_e, p, mode)
        if b.lam is not None:
            out["lambda"] = _lambda_section(b.lam)
        if b.square is not None:
            out["square"] = _square_section(b.square)
        if b.notes:
            out["notes"] = list(b.notes)
    elif doc.kind == "simplicial-datum":
        h, lam = assemble_total(doc.payload, p, n - 2 * p)
        out["structure"] = _describe(h)
        out["rank"] = h.rank
        out["lambda"] = _lambda_section(lam)
        hm = hodge_motive(h, p, mode)
    elif doc.kind == "mhs":
        out["structure"] = _describe(doc.payload)
        out["rank"] = doc.payload.rank
        hm = hodge_motive(doc.payload, p, mode)
    elif doc.kind == "one-motive":
        h = realize_one_motive(doc.payload, p)
        out["structure"] = _describe(h)
        out["rank"] = h.rank
        hm = hodge_motive(h, p, mode)
    else:
        raise UnsupportedInput("motive needs an mhs, gluing, simplicial-datum or one-motive document")
    out["motive"] = _motive_section(hm)
    return out


def cmd_glue(doc: Document, args) -> dict:
    if doc.kind != "gluing":
        raise UnsupportedInput(f"glue needs a gluing document, got {doc.kind}")
    g: GluingSpec = doc.payload
    degrees = sorted(set(g.pieces) | {t + 1 for t in g.pieces})
    out = {}
    for n in degrees:
        b = mv_cohomology(g, n)
        if not b.rank and b.betti is None:
            continue
        entry = {"rank": b.rank, "mv_rank": b.mv_rank, "graded": _graded_section(b.graded),
                 "restriction_ranks": {str(t): r for t, r in sorted(b.restriction_ranks.items())}}
        if b.betti is not None:
            entry["betti"] = b.betti
            entry["betti_match"] = b.betti == b.rank
        out[str(n)] = entry
    return {"cohomology": out}


def cmd_square_check(doc: Document, args) -> dict:
    d = _datum_of(doc)
    sq = motivic_square_check(d, args.p, args.i)
    return {"level": args.p, "degree": args.i, "square": _square_section(sq)}


def cmd_realize(doc: Document, args) -> dict:
    if doc.kind != "one-motive":
        raise UnsupportedInput(f"realize needs a one-motive document, got {doc.kind}")
    m: OneMotive = doc.payload
    h = realize_one_motive(m, args.p)
    real = Document("mhs", h, doc.d)
    return {"level": args.p, "structure": _describe(h), "document": serialize(real)}


COMMANDS = {
    "validate": cmd_validate,
    "hodge-numbers": cmd_hodge_numbers,
    "motive": cmd_motive,
    "glue": cmd_glue,
    "square-check": cmd_square_check,
    "realize": cmd_realize,
}


# ----------------------------------------------------------------------------
# text rendering


def _fmt_vec(v, d: int = 1) -> str:
    def one(x):
        if isinstance(x, list):
            return str(from_components(*(Fraction(c) for c in x), d=d))
        return str(x)
    return "(" + ", ".join(one(x) for x in v) + ")"


def _fmt_hodge(table) -> str:
    return ", ".join(f"h^{{{p},{q}}}={n}" for p, q, n in table) or "none"


def _render_structure(s: dict, indent: str = "") -> list[str]:
    lines = [f"{indent}rank {s['rank']}, weights {s['weights']}"]
    for k, g in s["graded"].items():
        lines.append(f"{indent}  gr_{k}: rank {g['rank']}, {_fmt_hodge(g['hodge_numbers'])}")
    if s.get("torsion"):
        lines.append(f"{indent}  torsion {s['torsion']}")
    return lines


def _render_points(label: str, pts: list, d: int) -> list[str]:
    return [f"  {label}[{j}] = {_fmt_vec(pt['value'], d)}  order {pt['order']}"
            for j, pt in enumerate(pts)]


def render(report: dict) -> str:
    cmd = report["command"]
    r = report["result"]
    lines = [f"{cmd}: {report['source']} ({report['kind']})"]
    if cmd == "validate":
        lines.append("OK")
        if "structure" in r:
            lines += _render_structure(r["structure"], "  ")
    elif cmd == "hodge-numbers":
        if "structure" in r:
            lines += _render_structure(r["structure"])
        for s, st in r.get("cohomology", {}).items():
            lines.append(f"H^{s}:")
            lines += _render_structure(st, "  ")
        for key, g in r.get("graded", {}).items():
            lines.append(f"gr_{g['weight']} H^{g['degree']}: rank {g['rank']}, "
                         f"{_fmt_hodge(g['hodge_numbers'])}")
    elif cmd == "motive":
        n, p = r["degree"], r["level"]
        lines.append(f"H^{n}: rank {r['rank']}")
        for t, g in r.get("graded", {}).items():
            lines.append(f"  gr_{t}: rank {g['rank']}, {_fmt_hodge(g['hodge_numbers'])}")
        if "structure" in r:
            lines += _render_structure(r["structure"], "  ")
        if "betti" in r:
            lines.append(f"  Betti number {r['betti']}, Mayer-Vietoris rank {r['mv_rank']}")
        if "lambda" in r:
            lam = r["lambda"]
            state = "zero" if lam["all_zero"] else f"image rank {lam['image_rank']}"
            lines.append(f"lambda^{lam['degree']}: {state}")
            lines += _render_points("lambda", lam["values"], report["d"])
        if "square" in r:
            sq = r["square"]
            lines.append("square: " + ("commutes" if sq["commutes"] else "does not commute"))
        m = r["motive"]
        lines.append(f"Hodge 1-motive at level {p} ({m['mode']}): "
                     f"lattice rank {m['lattice_rank']} → {m['abelian_rank']}")
        lines.append(f"lattice rank {m['lattice_rank']}, abelian part {m['abelian_rank']}, "
                     f"full Hodge classes {m['hodge_classes']}")
        lines.append(f"extension image rank {m['image_rank']}")
        lines += _render_points("u", m["u"], report["d"])
        for note in r.get("notes", []):
            lines.append(f"note: {note}")
    elif cmd == "glue":
        for n, e in r["cohomology"].items():
            line = f"H^{n}: rank {e['rank']} (Mayer-Vietoris {e['mv_rank']})"
            if "betti" in e:
                line += f", Betti {e['betti']} " + ("matches" if e["betti_match"] else "MISMATCH")
            lines.append(line)
            for t, g in e["graded"].items():
                lines.append(f"  gr_{t}: rank {g['rank']}, {_fmt_hodge(g['hodge_numbers'])}")
    elif cmd == "square-check":
        sq = r["square"]
        lines.append("square " + ("commutes" if sq["commutes"] else "does not commute")
                     + f" at level {r['level']}, degree {r['degree']}")
        lines.append(f"kernel ranks: lambda {sq['kernel_rank_lambda']}, "
                     f"extension {sq['kernel_rank_extension']}; image rank {sq['image_rank']}")
        for w in sq["witnesses"]:
            lines.append(f"  cycle {w['cycle']}: lambda {_fmt_vec(w['lambda'], report['d'])} "
                         f"vs extension {_fmt_vec(w['extension'], report['d'])}")
    elif cmd == "realize":
        lines += _render_structure(r["structure"])
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# entry point


def _resolve(name: str) -> Path:
    path = Path(name)
    if not path.exists() and name in FIXTURES:
        return Path(str(fixture_path(name)))
    return path


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hodgemot", description="Exact mixed Hodge structure computations.")
    ap.add_argument("--version", action="version", version=f"hodgemot {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="document path, or a shipped fixture name (bloch, srinivas)")
        sp.add_argument("--json", action="store_true", help="print the machine-readable report")
        sp.add_argument("--output-dir", help=f"also write the JSON report here (default ${OUTPUT_ENV})")
        return sp

    add("validate", "load and validate a document")
    add("hodge-numbers", "Hodge numbers of a structure or of weight-graded pieces")
    sp = add("motive", "Hodge 1-motive at level p")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-n", type=int, default=None, help="cohomological degree (default 2p)")
    sp.add_argument("--mode", choices=("strict", "isogeny"), default="isogeny")
    add("glue", "Mayer-Vietoris analysis of a two-piece gluing")
    sp = add("square-check", "compare lambda with the extension class")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-i", type=int, default=0)
    sp = add("realize", "Hodge realization of a 1-motive")
    sp.add_argument("-p", type=int, required=True)
    return ap


def run(argv: Optional[list] = None) -> tuple[int, str, str]:
    """Run a command; returns (exit code, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    path = _resolve(args.file)
    try:
        doc = load(path)
        result = COMMANDS[args.command](doc, args)
    except ParseError as e:
        return EXIT_PARSE, "", f"parse error: {path}: {e}\n"
    except (InvalidInput, InconsistentData) as e:
        return EXIT_INVALID, "", f"invalid: {path}: {e}\n"
    except UnsupportedInput as e:
        return EXIT_UNSUPPORTED, "", f"unsupported: {path}: {e}\n"
    report = {"report_schema": REPORT_SCHEMA, "command": args.command, "source": path.name,
              "kind": doc.kind, "d": doc.d, "result": result}
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    outdir = args.output_dir or os.environ.get(OUTPUT_ENV)
    if outdir:
        target = Path(outdir)
        target.mkdir(parents=True, exist_ok=True)
        (target / f"{path.stem}.{args.command}.json").write_text(text)
    return EXIT_OK, text if args.json else render(report), ""


def main(argv: Optional[list] = None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
