"""JSON encoding of matrices, polynomials, fields, loops and reports.

Complex numbers are two-element arrays ``[re, im]``.  Floats are written with
Python's shortest round-trip representation, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

import numpy as np

from .errors import ParseError
from .poly_vf import MultiPoly, PolyVectorField

SCHEMA_VERSION = "1.0"


# -- primitives -----------------------------------------------------------

def _clean(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0.0 else x


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [_clean(z.real), _clean(z.imag)]


def decode_complex(obj) -> complex:
    if isinstance(obj, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
        return complex(obj[0], obj[1])
    raise ParseError(f"expected a number or [re, im], got {obj!r}")


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[encode_complex(v) for v in row] for row in m]


def decode_matrix(obj, n: int | None = None) -> np.ndarray:
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise ParseError("object has no 'matrix' entry")
        obj = obj["matrix"]
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError("matrix must be a nested list")
    rows = [[decode_complex(v) for v in r] for r in obj]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ParseError("matrix must be square")
    if n is not None and size != n:
        raise ParseError(f"expected a {n}x{n} matrix")
    m = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix has non-finite entries")
    return m


def encode_vector(v) -> list:
    return [encode_complex(c) for c in np.asarray(v, dtype=complex).ravel()]


# -- polynomials and fields ----------------------------------------------

def encode_poly(p: MultiPoly) -> dict:
    terms = [{"exp": list(e), "coef": encode_complex(c)} for e, c in sorted(p.items())]
    return {"vars": list(p.vars), "terms": terms}


def decode_poly(obj) -> MultiPoly:
    try:
        vars = obj["vars"]
        terms = {}
        for t in obj["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            terms[exp] = terms.get(exp, 0j) + decode_complex(t["coef"])
        return MultiPoly(terms, vars)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed polynomial: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def encode_field(X: PolyVectorField) -> dict:
    return {"chart": X.chart_id, "components": [encode_poly(c) for c in X.components]}


def decode_field(obj) -> PolyVectorField:
    if isinstance(obj, dict) and "field" in obj:
        obj = obj["field"]
    try:
        comps = tuple(decode_poly(c) for c in obj["components"])
        return PolyVectorField(obj.get("chart", "cp2"), comps)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed vector field: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- loops ----------------------------------------------------------------

def encode_loop(loop) -> dict:
    from .holonomy.loops import Arc

    segs = []
    for s in loop.segments:
        if isinstance(s, Arc):
            segs.append({"kind": "arc", "center": encode_complex(s.center),
                         "radius": float(s.radius), "theta0": float(s.theta0),
                         "theta1": float(s.theta1)})
        else:
            segs.append({"kind": "segment", "start": encode_complex(s.start),
                         "end": encode_complex(s.end)})
    return {"base_point": encode_complex(loop.base_point), "segments": segs}


def decode_loop(obj):
    from .holonomy.loops import Arc, LoopPath, Segment

    try:
        segs = []
        for s in obj["segments"]:
            if s["kind"] == "arc":
                segs.append(Arc(decode_complex(s["center"]), float(s["radius"]),
                                float(s["theta0"]), float(s["theta1"])))
            elif s["kind"] == "segment":
                segs.append(Segment(decode_complex(s["start"]), decode_complex(s["end"])))
            else:
                raise ParseError(f"unknown segment kind {s['kind']!r}")
        return LoopPath(tuple(segs), decode_complex(obj["base_point"]),
                        float(obj.get("clearance", 0.0)))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed loop: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- reports --------------------------------------------------------------

def classification_report(c) -> dict:
    fl = c.fixed_locus
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "classification",
        "jordan_case": c.jordan_case,
        "paper_type": c.paper_type,
        "fixed_points": [encode_vector(p) for p in fl.points],
        "fixed_lines": [encode_vector(ell) for ell in fl.lines],
        "is_all": bool(fl.is_all),
        "normal_form": encode_matrix(c.normal_form.matrix),
        "conjugator": encode_matrix(c.conjugator),
        "near_threshold": bool(c.near_threshold),
    }


def _encode_form(form) -> dict:
    from .normal_form import RiccatiCnForm

    if isinstance(form, RiccatiCnForm):
        return {"p": encode_poly(form.p),
                "q": [[encode_poly(c) for c in triple] for triple in form.q]}
    return {k: encode_poly(v) for k, v in form.coefficients().items()}


def fiber_label(value) -> Any:
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return encode_complex(value)


def check_report(result, fibers=None, target: str = "cp2") -> dict:
    rej = result.rejection
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "check",
        "target": target,
        "accepted": result.accepted,
        "form": _encode_form(result.form) if result.accepted else None,
        "rejection": None if rej is None else {
            "constraint": rej.constraint,
            "witness_monomial": list(rej.witness_monomial),
            "component": rej.component,
            "possibility": rej.possibility,
            "message": rej.message,
        },
        "fibers": None,
    }
    if fibers is not None:
        out["fibers"] = {
            "finite": [encode_complex(r) for r in fibers.finite_fibers],
            "multiplicities": list(fibers.multiplicities),
            "infinity": bool(fibers.infinity_invariant),
            "all_invariant": bool(fibers.all_invariant),
        }
    return out


def holonomy_entry(res) -> dict:
    return {
        "fiber": fiber_label(res.fiber),
        "matrix": encode_matrix(res.map.normalized()),
        "residual": float(res.residual),
        "n_samples": int(res.n_samples),
        "stats": res.stats.as_dict(),
        "loop": encode_loop(res.loop) if res.loop is not None else None,
    }


def holonomy_report(results, product_error: float | None = None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "holonomy",
        "generators": [holonomy_entry(r) for r in results],
    }
    if product_error is not None:
        out["product_error"] = float(product_error)
    return out


def synthesis_report(rep) -> dict:
    gens = []
    for g in rep.generators:
        gens.append({
            "index": g.index,
            "jordan_case": g.jordan_case,
            "paper_type": g.paper_type,
            "model": {"case": g.model.case_tag, "center": encode_complex(g.model.center),
                      "params": {k: encode_complex(v) for k, v in g.model.params().items()}},
            "normal_form": encode_matrix(g.normal_form),
            "conjugator": encode_matrix(g.conjugator),
            "analytic_error": float(g.analytic_error),
            "numeric_error": None if g.numeric_error is None else float(g.numeric_error),
            "passed": bool(g.passed),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "synthesis",
        "passed": bool(rep.passed),
        "f0": encode_matrix(rep.f0.normalized()),
        "product_error": float(rep.product_error),
        "generators": gens,
    }


def error_report(kind: str, exc: BaseException, code: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "error",
        "command": kind,
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": code,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def load_schema(name: str) -> dict:
    """Bundled JSON schema ``name`` (e.g. ``"classification"``)."""
    text = resources.files("riccati_foliations").joinpath(
        "schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
