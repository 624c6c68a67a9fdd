"""JSON documents for triples, and the small text formats of the CLI.

A triple document is a plain dict with keys

  algebra         list of {"label", "kind": "C"|"H"|"Mn", "n"}
  hilbert_dim     integer
  representation  per component, a list of matrices, one per basis element
                  of that component (self-adjoint part first)
  dirac           matrix
  grading         matrix, or the string "odd"
  real_structure  {"unitary": matrix}, absent for no real structure
  kr_dim          integer in 0..7

where a matrix is a list of rows and every entry is an [re, im] pair.
State specs on the command line are "k:v1,v2,..." with complex literals
written "a+bi".
"""
from __future__ import annotations

import json

import numpy as np

from .algebra import PureState, Representation, make_algebra
from .triple import FiniteSpectralTriple

__all__ = [
    "ParseError",
    "parse_complex",
    "parse_state_spec",
    "triple_to_document",
    "document_to_triple",
    "load_triple",
    "save_triple",
]

TripleDocument = dict


class ParseError(ValueError):
    """Invalid document or spec string; the message carries the path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def parse_complex(text: str, path: str = "value") -> complex:
    """Parse "a+bi" (also plain "a" and pure-imaginary "bi")."""
    s = text.strip().replace("i", "j")
    if not s:
        raise ParseError(path, "empty complex literal")
    try:
        z = complex(s)
    except ValueError:
        raise ParseError(path, f"invalid complex literal {text!r}") from None
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ParseError(path, f"non-finite complex literal {text!r}")
    return z


def parse_state_spec(text: str, path: str = "state") -> PureState:
    """Parse "k:v1,v2,..."; the vector is normalized."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise ParseError(path, "expected 'component:entries'")
    try:
        k = int(head)
    except ValueError:
        raise ParseError(path, f"component index {head!r} is not an integer") from None
    if k < 0:
        raise ParseError(path, "component index must be nonnegative")
    parts = tail.split(",")
    v = np.array([parse_complex(p, f"{path}[{i}]") for i, p in enumerate(parts)])
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ParseError(path, "state vector must be nonzero")
    return PureState(k, v / nrm)


def _matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(obj, path: str, shape: tuple[int, int] | None = None) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(path, "expected a list of rows")
    width = len(obj[0])
    out = np.zeros((len(obj), width), dtype=complex)
    for i, row in enumerate(obj):
        if len(row) != width:
            raise ParseError(f"{path}[{i}]", f"row length {len(row)} != {width}")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, (int, float)) for x in entry)):
                raise ParseError(f"{path}[{i}][{j}]", "expected an [re, im] pair")
            out[i, j] = complex(entry[0], entry[1])
    if shape is not None and out.shape != shape:
        raise ParseError(path, f"expected shape {shape}, got {out.shape}")
    return out


def triple_to_document(t: FiniteSpectralTriple) -> TripleDocument:
    doc: TripleDocument = {
        "algebra": [{"label": c.label, "kind": c.kind, "n": c.n}
                    for c in t.algebra.components],
        "hilbert_dim": t.hilbert_dim,
        "representation": [[_matrix_to_json(m) for m in imgs] for imgs in t.rep.images],
        "dirac": _matrix_to_json(t.dirac),
        "grading": "odd" if t.grading is None else _matrix_to_json(t.grading),
        "kr_dim": t.kr_dim,
    }
    if t.real_structure is not None:
        doc["real_structure"] = {"unitary": _matrix_to_json(t.real_structure)}
    return doc


def _require(doc: dict, key: str, path: str):
    if key not in doc:
        raise ParseError(path, f"missing key {key!r}")
    return doc[key]


def document_to_triple(doc: TripleDocument) -> FiniteSpectralTriple:
    if not isinstance(doc, dict):
        raise ParseError("$", "document must be a JSON object")
    alg_spec = _require(doc, "algebra", "$")
    if not isinstance(alg_spec, list) or not alg_spec:
        raise ParseError("$.algebra", "expected a nonempty list of components")
    specs = []
    for i, comp in enumerate(alg_spec):
        path = f"$.algebra[{i}]"
        if not isinstance(comp, dict):
            raise ParseError(path, "expected an object")
        kind = _require(comp, "kind", path)
        n = _require(comp, "n", path)
        if not isinstance(n, int):
            raise ParseError(f"{path}.n", "expected an integer")
        specs.append((kind, n, comp.get("label")))
    try:
        algebra = make_algebra(*specs)
    except ValueError as exc:
        raise ParseError("$.algebra", str(exc)) from None

    dim = _require(doc, "hilbert_dim", "$")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("$.hilbert_dim", "expected a positive integer")

    rep_spec = _require(doc, "representation", "$")
    if not isinstance(rep_spec, list) or len(rep_spec) != len(algebra.components):
        raise ParseError("$.representation", "expected one list of images per component")
    images = []
    for k, (comp, mats) in enumerate(zip(algebra.components, rep_spec)):
        path = f"$.representation[{k}]"
        if not isinstance(mats, list) or len(mats) != comp.alg_dim:
            raise ParseError(path, f"component {comp.label} needs {comp.alg_dim} matrices")
        images.append([_matrix_from_json(m, f"{path}[{i}]", (dim, dim))
                       for i, m in enumerate(mats)])

    dirac = _matrix_from_json(_require(doc, "dirac", "$"), "$.dirac", (dim, dim))
    grading_spec = _require(doc, "grading", "$")
    if grading_spec == "odd":
        grading = None
    else:
        grading = _matrix_from_json(grading_spec, "$.grading", (dim, dim))
    unitary = None
    if "real_structure" in doc:
        rs = doc["real_structure"]
        if not isinstance(rs, dict):
            raise ParseError("$.real_structure", "expected an object with key 'unitary'")
        unitary = _matrix_from_json(_require(rs, "unitary", "$.real_structure"),
                                    "$.real_structure.unitary", (dim, dim))
    kr = _require(doc, "kr_dim", "$")
    if not isinstance(kr, int):
        raise ParseError("$.kr_dim", "expected an integer")

    try:
        rep = Representation(algebra=algebra, hilbert_dim=dim, images=images)
        return FiniteSpectralTriple(rep=rep, dirac=dirac, grading=grading,
                                    real_structure=unitary, kr_dim=kr)
    except ValueError as exc:
        raise ParseError("$", str(exc)) from None


def load_triple(path: str) -> FiniteSpectralTriple:
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return document_to_triple(doc)


def _emit(x, indent: str) -> str:
    flat = json.dumps(x)
    if len(flat) <= 100 or not isinstance(x, (list, dict)):
        return flat
    inner = indent + " "
    if isinstance(x, list):
        body = ",\n".join(inner + _emit(v, inner) for v in x)
        return "[\n" + body + "\n" + indent + "]"
    body = ",\n".join(f"{inner}{json.dumps(k)}: {_emit(v, inner)}" for k, v in x.items())
    return "{\n" + body + "\n" + indent + "}"


def save_triple(t: FiniteSpectralTriple, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(_emit(triple_to_document(t), ""))
        f.write("\n")
