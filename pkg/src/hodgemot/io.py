"""On-disk documents: JSON with exact scalars.

Layout::

    {"schema": 1, "d": 2, "kind": "mhs", "payload": {...}, "annotations": {...}}

Rationals are JSON integers or strings ``"a/b"``.  Elements of
Q(i, sqrt d) are 4-lists over the basis {1, i, sqrt d, i sqrt d}.
Floating point literals are rejected wherever they appear.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .complexes import CycleData, MHSComplex, SimplicialCohomologyDatum
from .descent import GluingCycles, GluingPiece, GluingSpec
from .errors import InvalidInput, ParseError
from .exact.lattice import LatticeBasis, lattice_basis, rational_lattice, snf_int
from .exact.matrix import span
from .exact.scalar import ExactScalar, _check_squarefree, from_components
from .mhs import MixedHodgeStructure, PureHodgeStructure, quotient_structure, require_valid
from .motive import OneMotive, TorusPresentation

__all__ = ["SCHEMA", "KINDS", "Document", "load", "loads", "dump", "dumps", "serialize"]

SCHEMA = 1
KINDS = ("mhs", "complex", "simplicial-datum", "gluing", "one-motive")

_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


@dataclass
class Document:
    kind: str
    payload: Any
    d: int = 1
    annotations: dict = field(default_factory=dict)
    schema: int = SCHEMA


# ----------------------------------------------------------------------------
# float detection


def _float_positions(text: str):
    """Yield (line, literal) for every JSON number literal with '.', 'e' or 'E'."""
    in_str = esc = False
    line = 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
        if in_str:
            if esc:
                esc = False
            elif ch == "\\":
                esc = True
            elif ch == '"':
                in_str = False
            i += 1
            continue
        if ch == '"':
            in_str = True
            i += 1
            continue
        if ch == "-" or ch.isdigit():
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] in ".eE+-"):
                j += 1
            lit = text[i:j]
            if any(c in lit for c in ".eE"):
                yield line, lit
            i = j
            continue
        if text.startswith(("NaN", "Infinity"), i):
            yield line, "NaN" if text.startswith("NaN", i) else "Infinity"
        i += 1


def _reject_float(lit):
    raise ParseError(f"exact rationals required, found float {lit}")


# ----------------------------------------------------------------------------
# decoding


class _Ctx:
    def __init__(self, d: int):
        self.d = d


def _fail(where: str, msg: str):
    raise ParseError(f"{where}: {msg}")


def _scalar(x, ctx: _Ctx, where: str):
    if isinstance(x, bool):
        _fail(where, "booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        _fail(where, "exact rationals required")
    if isinstance(x, str):
        if not _RATIONAL.match(x):
            _fail(where, f"expected a rational 'a/b', got {x!r}")
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            _fail(where, "zero denominator")
    if isinstance(x, list):
        if len(x) != 4:
            _fail(where, f"extended scalars are 4-lists over (1, i, sqrt d, i sqrt d), got {len(x)} entries")
        comps = [_scalar(c, ctx, f"{where}[{k}]") for k, c in enumerate(x)]
        if (comps[2] or comps[3]) and ctx.d == 1:
            _fail(where, "sqrt d component given but the document has d = 1")
        return from_components(*comps, ctx.d)
    _fail(where, f"expected a scalar, got {type(x).__name__}")


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, float):
            _fail(where, "exact rationals required")
        _fail(where, f"expected an integer, got {x!r}")
    return x


def _vector(v, ctx, where: str, n: int | None = None) -> tuple:
    if not isinstance(v, list):
        _fail(where, "expected a list")
    if n is not None and len(v) != n:
        _fail(where, f"expected length {n}, got {len(v)}")
    return tuple(_scalar(x, ctx, f"{where}[{k}]") for k, x in enumerate(v))


def _vectors(vs, ctx, where: str, n: int) -> list[tuple]:
    if not isinstance(vs, list):
        _fail(where, "expected a list of vectors")
    return [_vector(v, ctx, f"{where}[{k}]", n) for k, v in enumerate(vs)]


def _int_matrix(m, where: str) -> tuple:
    if not isinstance(m, list):
        _fail(where, "expected a matrix (list of rows)")
    out = []
    for r, row in enumerate(m):
        if not isinstance(row, list):
            _fail(f"{where}[{r}]", "expected a row")
        out.append(tuple(_int(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)))
    return tuple(out)


def _levels(obj, ctx, where: str, n: int) -> dict[int, list]:
    if not isinstance(obj, dict):
        _fail(where, "expected an object {level: [vectors]}")
    out = {}
    for k, vs in obj.items():
        try:
            level = int(k)
        except ValueError:
            _fail(where, f"level {k!r} is not an integer")
        out[level] = _vectors(vs, ctx, f"{where}.{k}", n)
    return out


def _mhs(obj, ctx, where: str, pure: bool = False) -> MixedHodgeStructure:
    if not isinstance(obj, dict):
        _fail(where, "expected an object")
    n = _int(obj.get("rank"), f"{where}.rank")
    if n < 0:
        _fail(f"{where}.rank", "must be non-negative")
    weights = _levels(obj.get("weights", {}), ctx, f"{where}.weights", n)
    hodge = _levels(obj.get("hodge", {}), ctx, f"{where}.hodge", n)
    torsion = [_int(t, f"{where}.torsion") for t in obj.get("torsion", [])]
    cls = PureHodgeStructure if pure else MixedHodgeStructure
    relations = obj.get("relations")
    h = cls.build(n, weights, hodge, torsion)
    if relations:
        # H_Z = Z^n / R: keep Z^n / sat(R) and record the finite part sat(R) / R
        rel = [tuple(_int(x, f"{where}.relations") for x in r) for r in relations]
        for r in rel:
            if len(r) != n:
                _fail(f"{where}.relations", f"relation of length {len(r)} in rank {n}")
        gens = lattice_basis(rel, n)
        sat = rational_lattice(span([tuple(Fraction(x) for x in v) for v in gens], n), n)
        a = [[v[i] for v in gens] for i in range(n)]
        smat, _, _ = snf_int(a, len(gens))
        tors = [smat[k][k] for k in range(len(gens)) if abs(smat[k][k]) > 1]
        q = quotient_structure(h, sat.basis, tuple(torsion) + tuple(tors)).structure
        h = cls(q.rank, q.weight_filtration, q.hodge_filtration, q.torsion)
    return h


def _cycle_data(obj, ctx, where: str) -> CycleData:
    p = _int(obj.get("p"), f"{where}.p")
    ranks = {int(s): _int(r, f"{where}.ranks.{s}") for s, r in obj.get("ranks", {}).items()}
    faces = {int(s): [_int_matrix(m, f"{where}.faces.{s}[{k}]") for k, m in enumerate(ms)]
             for s, ms in obj.get("faces", {}).items()}
    classes = {int(s): _int_matrix(m, f"{where}.classes.{s}") for s, m in obj.get("classes", {}).items()}
    aj = {}
    for s, per_face in obj.get("aj", {}).items():
        aj[int(s)] = [[_vector(v, ctx, f"{where}.aj.{s}[{k}][{j}]") for j, v in enumerate(vs)]
                      for k, vs in enumerate(per_face)]
    return CycleData(p, ranks, faces, classes, aj)


def _gluing(obj, ctx, ann: dict, where: str) -> GluingSpec:
    pieces = {}
    for k, pc in enumerate(obj.get("pieces", [])):
        w = f"{where}.pieces[{k}]"
        t = _int(pc.get("t"), f"{w}.t")
        y = _mhs(pc.get("Y"), ctx, f"{w}.Y", pure=True)
        z = _mhs(pc.get("Z"), ctx, f"{w}.Z", pure=True)
        pieces[t] = GluingPiece(y, z, _int_matrix(pc.get("restriction", []), f"{w}.restriction"))
    cyc = None
    c = obj.get("cycles")
    if c is not None:
        w = f"{where}.cycles"
        cyc = GluingCycles(
            _int(c.get("p"), f"{w}.p"), _int(c.get("ns_Y"), f"{w}.ns_Y"), _int(c.get("ns_Z"), f"{w}.ns_Z"),
            _int_matrix(c.get("class_Y", []), f"{w}.class_Y"),
            _int_matrix(c.get("class_Z", []), f"{w}.class_Z"),
            _int_matrix(c.get("restriction", []), f"{w}.restriction"),
            tuple(_vector(v, ctx, f"{w}.aj[{j}]") for j, v in enumerate(c.get("aj", []))),
        )
    betti = {int(k): _int(v, f"annotations.betti.{k}") for k, v in ann.get("betti", {}).items()}
    notes = list(ann.get("notes", []))
    return GluingSpec(pieces, cyc, betti, notes)


def _datum(obj, ctx, where: str) -> SimplicialCohomologyDatum:
    levels = _int(obj.get("levels"), f"{where}.levels")
    terms, faces = {}, {}
    for k, e in enumerate(obj.get("terms", [])):
        w = f"{where}.terms[{k}]"
        terms[(_int(e.get("s"), f"{w}.s"), _int(e.get("t"), f"{w}.t"))] = \
            _mhs(e.get("structure"), ctx, f"{w}.structure", pure=True)
    for k, e in enumerate(obj.get("faces", [])):
        w = f"{where}.faces[{k}]"
        faces[(_int(e.get("s"), f"{w}.s"), _int(e.get("t"), f"{w}.t"))] = \
            [_int_matrix(m, f"{w}.maps[{j}]") for j, m in enumerate(e.get("maps", []))]
    cyc = _cycle_data(obj["cycles"], ctx, f"{where}.cycles") if obj.get("cycles") else None
    return SimplicialCohomologyDatum(levels, terms, faces, cyc, dict(obj.get("coniveau", {})))


def _complex(obj, ctx, where: str) -> MHSComplex:
    terms = {int(s): _mhs(h, ctx, f"{where}.terms.{s}") for s, h in obj.get("terms", {}).items()}
    diffs = {int(s): _int_matrix(m, f"{where}.differentials.{s}")
             for s, m in obj.get("differentials", {}).items()}
    return MHSComplex(tuple(sorted(terms.items())), tuple(sorted(diffs.items())))


def _one_motive(obj, ctx, where: str) -> OneMotive:
    lat = obj.get("lattice", {})
    amb = _int(lat.get("ambient"), f"{where}.lattice.ambient")
    basis = tuple(tuple(_int(x, f"{where}.lattice.basis") for x in v) for v in lat.get("basis", []))
    t = obj.get("torus", {})
    m = _int(t.get("ambient"), f"{where}.torus.ambient")
    tl = tuple(tuple(_int(x, f"{where}.torus.lattice") for x in v) for v in t.get("lattice", []))
    sub = span(_vectors(t.get("subspace", []), ctx, f"{where}.torus.subspace", m), m)
    torus = TorusPresentation(m, tl, sub, str(t.get("provenance", "")), bool(t.get("level_one", False)))
    u = tuple(torus.point(_vector(v, ctx, f"{where}.u[{j}]", m)) for j, v in enumerate(obj.get("u", [])))
    return OneMotive(LatticeBasis(amb, basis), torus, u)


def _validate(doc: Document) -> None:
    kind, obj = doc.kind, doc.payload
    if kind == "mhs":
        require_valid(obj)
    elif kind == "complex":
        obj.check()
    elif kind == "simplicial-datum":
        obj.check()
    elif kind == "gluing":
        obj.check()
    elif kind == "one-motive":
        if obj.torus.lattice:
            obj.torus.check()


def loads(text: str, validate: bool = True) -> Document:
    """Parse a document from text; validation failures raise InvalidInput."""
    for line, lit in _float_positions(text):
        raise ParseError(f"line {line}: exact rationals required, found float literal {lit}")
    try:
        raw = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    schema = raw.get("schema")
    if schema != SCHEMA:
        raise ParseError(f"schema: unsupported version {schema!r} (expected {SCHEMA})")
    d = raw.get("d", 1)
    if isinstance(d, bool) or not isinstance(d, int):
        raise ParseError("d: expected a positive square-free integer")
    try:
        _check_squarefree(d)
    except InvalidInput as e:
        raise ParseError(f"d: {e}") from None
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ParseError(f"kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    ann = raw.get("annotations", {}) or {}
    if not isinstance(ann, dict):
        raise ParseError("annotations: expected an object")
    payload = raw.get("payload")
    if not isinstance(payload, dict):
        raise ParseError("payload: expected an object")
    ctx = _Ctx(d)
    try:
        if kind == "mhs":
            obj = _mhs(payload, ctx, "payload")
        elif kind == "complex":
            obj = _complex(payload, ctx, "payload")
        elif kind == "simplicial-datum":
            obj = _datum(payload, ctx, "payload")
        elif kind == "gluing":
            obj = _gluing(payload, ctx, ann, "payload")
        else:
            obj = _one_motive(payload, ctx, "payload")
    except (AttributeError, KeyError, TypeError) as e:
        raise ParseError(f"payload: malformed {kind} document ({e})") from None
    doc = Document(kind, obj, d, ann)
    if validate:
        _validate(doc)
    return doc


def load(path, validate: bool = True) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, validate)


# ----------------------------------------------------------------------------
# encoding


def _enc_scalar(x):
    if isinstance(x, ExactScalar):
        if x.is_rational():
            x = x.a
        else:
            return [_enc_scalar(c) for c in x.components()]
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _enc_vec(v):
    return [_enc_scalar(x) for x in v]


def _enc_matrix(m):
    return [[int(x) for x in r] for r in m]


def _enc_mhs(h: MixedHodgeStructure) -> dict:
    out = {
        "rank": h.rank,
        "weights": {str(k): [_enc_vec(v) for v in b] for k, b in h.weight_filtration},
        "hodge": {str(p): [_enc_vec(v) for v in b] for p, b in h.hodge_filtration},
    }
    if h.torsion:
        out["torsion"] = list(h.torsion)
    return out


def _enc_cycles(c: CycleData) -> dict:
    return {
        "p": c.p,
        "ranks": {str(s): r for s, r in c.ns_ranks.items()},
        "faces": {str(s): [_enc_matrix(m) for m in ms] for s, ms in c.ns_faces.items()},
        "classes": {str(s): _enc_matrix(m) for s, m in c.cycle_class.items()},
        "aj": {str(s): [[_enc_vec(v) for v in vs] for vs in per] for s, per in c.aj.items()},
    }


def _enc_payload(doc: Document) -> dict:
    obj = doc.payload
    if doc.kind == "mhs":
        return _enc_mhs(obj)
    if doc.kind == "complex":
        return {"terms": {str(s): _enc_mhs(h) for s, h in obj.terms},
                "differentials": {str(s): _enc_matrix(m) for s, m in obj.diffs}}
    if doc.kind == "simplicial-datum":
        return {
            "levels": obj.levels,
            "terms": [{"s": s, "t": t, "structure": _enc_mhs(h)} for (s, t), h in sorted(obj.terms.items())],
            "faces": [{"s": s, "t": t, "maps": [_enc_matrix(m) for m in ms]}
                      for (s, t), ms in sorted(obj.faces.items())],
            "cycles": _enc_cycles(obj.cycles) if obj.cycles else None,
            "coniveau": obj.coniveau,
        }
    if doc.kind == "gluing":
        out = {"pieces": [{"t": t, "Y": _enc_mhs(pc.Y), "Z": _enc_mhs(pc.Z),
                           "restriction": _enc_matrix(pc.restriction)}
                          for t, pc in sorted(obj.pieces.items())]}
        c = obj.cycles
        if c is not None:
            out["cycles"] = {"p": c.p, "ns_Y": c.ns_Y, "ns_Z": c.ns_Z,
                             "class_Y": _enc_matrix(c.class_Y), "class_Z": _enc_matrix(c.class_Z),
                             "restriction": _enc_matrix(c.restriction),
                             "aj": [_enc_vec(v) for v in c.aj]}
        return out
    if doc.kind == "one-motive":
        t = obj.torus
        return {
            "lattice": {"ambient": obj.lattice.ambient, "basis": [list(v) for v in obj.lattice.basis]},
            "torus": {"ambient": t.ambient, "lattice": [list(v) for v in t.lattice],
                      "subspace": [_enc_vec(v) for v in t.subspace],
                      "provenance": t.provenance, "level_one": t.level_one},
            "u": [_enc_vec(pt.rep) for pt in obj.u],
        }
    raise InvalidInput(f"unknown kind {doc.kind!r}")


def serialize(doc: Document) -> dict:
    ann = dict(doc.annotations)
    if doc.kind == "gluing":
        if doc.payload.betti:
            ann["betti"] = {str(k): v for k, v in sorted(doc.payload.betti.items())}
        if doc.payload.notes:
            ann["notes"] = list(doc.payload.notes)
    return {"schema": doc.schema, "d": doc.d, "kind": doc.kind,
            "payload": _enc_payload(doc), "annotations": ann}


def dumps(doc: Document) -> str:
    return json.dumps(serialize(doc), sort_keys=True, indent=1) + "\n"


def dump(doc: Document, path) -> None:
    Path(path).write_text(dumps(doc))
