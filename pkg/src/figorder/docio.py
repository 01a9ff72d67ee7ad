"""JSON documents for figures and isometry witnesses.

A figure document looks like::

    {"geometry": "euclidean",
     "figure": {"type": "union", "parts": [
         {"type": "half_plane", "normal": [1, 0], "offset": 0, "closed": true},
         {"type": "segment", "start": [0, 2], "end": [1, 2]}]}}

Parse errors carry the line and column of the offending object.
"""

from __future__ import annotations

import json
import json.decoder
import json.scanner
import warnings

from .errors import DocumentError, FigorderError
from .figures import (
    PI_SQRT2,
    AngleWedge,
    Arc,
    Complement,
    Difference,
    Disc,
    FiniteFigure,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    Union,
)
from .geometry import Geometry
from .isometry import (
    EllipticIsometry,
    EuclideanIsometry,
    HalfPlaneIsometry,
    Isometry1D,
    MobiusIsometry,
)


# position-aware JSON decoding


class _Obj(dict):
    """A decoded JSON object that remembers where it started."""

    pos = None


def _parse_object(s_and_end, *args, **kw):
    s, end = s_and_end
    obj, new_end = json.decoder.JSONObject(s_and_end, *args, **kw)
    out = _Obj(obj)
    out.pos = end - 1
    return out, new_end


class _Decoder(json.JSONDecoder):
    def __init__(self):
        super().__init__()
        self.parse_object = _parse_object
        self.scan_once = json.scanner.py_make_scanner(self)


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, msg, obj=None, path=""):
        pos = getattr(obj, "pos", None)
        if pos is None:
            raise DocumentError(msg, path=path or None)
        line, col = _line_col(self.text, pos)
        raise DocumentError(msg, line, col, path or None)


def _loads(text):
    try:
        return json.loads(text, cls=_Decoder)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None


# figures


_FIGURE_FIELDS = {
    "points": ("points",),
    "half_plane": ("normal", "offset"),
    "half_line": ("origin", "direction"),
    "segment": ("start", "end"),
    "disc": ("center", "radius"),
    "angle_wedge": ("vertex", "dir1", "dir2"),
    "point": ("point",),
    "line": ("through", "direction"),
    "arc": ("center", "radius", "start", "end"),
    "union": ("parts",),
    "difference": ("a", "b"),
    "complement": ("a",),
    "orbit": (),
}


def figure_to_dict(F) -> dict:
    """Serializable form of a figure; the geometry lives on the document."""
    if isinstance(F, FiniteFigure):
        return {"type": "points", "points": [list(p.coords) for p in F.points]}
    if isinstance(F, HalfPlane):
        return {"type": "half_plane", "normal": list(F.normal), "offset": F.offset, "closed": F.closed}
    if isinstance(F, HalfLine):
        return {"type": "half_line", "origin": list(F.origin), "direction": list(F.direction),
                "include_origin": F.include_origin}
    if isinstance(F, Segment):
        return {"type": "segment", "start": list(F.start), "end": list(F.end),
                "closed_start": F.closed_start, "closed_end": F.closed_end}
    if isinstance(F, Disc):
        return {"type": "disc", "center": list(F.center), "radius": F.radius, "closed": F.closed}
    if isinstance(F, AngleWedge):
        return {"type": "angle_wedge", "vertex": list(F.vertex), "dir1": list(F.dir1),
                "dir2": list(F.dir2), "closed": F.closed}
    if isinstance(F, SinglePoint):
        return {"type": "point", "point": list(F.point)}
    if isinstance(F, Line):
        return {"type": "line", "through": list(F.through), "direction": list(F.direction)}
    if isinstance(F, Arc):
        return {"type": "arc", "center": list(F.center), "radius": F.radius, "start": F.start,
                "end": F.end, "closed_start": F.closed_start, "closed_end": F.closed_end}
    if isinstance(F, Union):
        return {"type": "union", "parts": [figure_to_dict(p) for p in F.parts]}
    if isinstance(F, Difference):
        return {"type": "difference", "a": figure_to_dict(F.a), "b": figure_to_dict(F.b)}
    if isinstance(F, Complement):
        return {"type": "complement", "a": figure_to_dict(F.a)}
    if isinstance(F, OrbitFigure):
        out = {"type": "orbit", "omega": F.omega, "radius_param": F.radius,
               "index_from": F.index_from, "exclude": sorted(F.exclude)}
        if F.truncation is not None:
            out["truncation"] = F.truncation
        return out
    raise TypeError(f"cannot serialize {type(F).__name__}")


def document_to_dict(F) -> dict:
    return {"geometry": F.geometry.value, "figure": figure_to_dict(F)}


def dumps_figure(F) -> str:
    return json.dumps(document_to_dict(F), indent=2, sort_keys=True) + "\n"


def _figure(obj, g, ctx, path):
    if not isinstance(obj, dict):
        ctx.fail("figure must be an object", obj, path)
    kind = obj.get("type")
    if kind not in _FIGURE_FIELDS:
        ctx.fail(f"unknown figure type {kind!r}", obj, path)
    for key in _FIGURE_FIELDS[kind]:
        if key not in obj:
            ctx.fail(f"{kind} needs field {key!r}", obj, path)
    o = obj
    try:
        if kind == "points":
            return FiniteFigure(g, tuple(tuple(p) for p in o["points"]))
        if kind == "half_plane":
            return HalfPlane(o["normal"], o["offset"], o.get("closed", True), g)
        if kind == "half_line":
            return HalfLine(o["origin"], o["direction"], o.get("include_origin", True), g)
        if kind == "segment":
            return Segment(o["start"], o["end"], o.get("closed_start", True), o.get("closed_end", True), g)
        if kind == "disc":
            return Disc(o["center"], o["radius"], o.get("closed", True), g)
        if kind == "angle_wedge":
            return AngleWedge(o["vertex"], o["dir1"], o["dir2"], o.get("closed", True), g)
        if kind == "point":
            return SinglePoint(o["point"], g)
        if kind == "line":
            return Line(o["through"], o["direction"], g)
        if kind == "arc":
            return Arc(o["center"], o["radius"], o["start"], o["end"],
                       o.get("closed_start", True), o.get("closed_end", True), g)
        if kind == "union":
            parts = o["parts"]
            if not isinstance(parts, list) or not parts:
                ctx.fail("union needs a nonempty list of parts", o, path)
            return Union(tuple(_figure(p, g, ctx, f"{path}.parts[{i}]") for i, p in enumerate(parts)))
        if kind == "difference":
            return Difference(_figure(o["a"], g, ctx, path + ".a"), _figure(o["b"], g, ctx, path + ".b"))
        if kind == "complement":
            return Complement(_figure(o["a"], g, ctx, path + ".a"))
        omega = o.get("omega", PI_SQRT2)
        if not isinstance(omega, str):
            warnings.warn("numeric omega: irrationality of omega / pi is now the caller's assumption",
                          stacklevel=2)
        return OrbitFigure(g, omega, o.get("radius_param"), o.get("index_from", 0),
                           frozenset(o.get("exclude", ())), o.get("truncation"))
    except DocumentError:
        raise
    except (TypeError, ValueError, KeyError, FigorderError) as e:
        ctx.fail(f"bad {kind}: {e}", obj, path)


def parse_figure(text: str):
    """Parse a figure document."""
    ctx = _Ctx(text)
    doc = _loads(text)
    if not isinstance(doc, dict):
        ctx.fail("document must be a JSON object")
    for key in ("geometry", "figure"):
        if key not in doc:
            ctx.fail(f"document needs field {key!r}", doc, "$")
    try:
        g = Geometry.parse(doc["geometry"])
    except ValueError as e:
        ctx.fail(str(e), doc, "$.geometry")
    return _figure(doc["figure"], g, ctx, "$.figure")


# witnesses


def _cx(z) -> list:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def isometry_to_dict(f) -> dict:
    if isinstance(f, EuclideanIsometry):
        return {"geometry": "euclidean", "kind": "euclidean", "angle": f.angle,
                "reflect": f.reflect, "translation": list(f.translation)}
    if isinstance(f, MobiusIsometry):
        return {"geometry": Geometry.DISC.value, "kind": "mobius", "a": _cx(f.a), "b": _cx(f.b),
                "conjugate": f.conjugate}
    if isinstance(f, HalfPlaneIsometry):
        return {"geometry": Geometry.HALF_PLANE.value, "kind": "mobius",
                "matrix": [list(r) for r in f.matrix], "reflect": f.reflect}
    if isinstance(f, EllipticIsometry):
        return {"geometry": "elliptic", "kind": "elliptic", "matrix": [list(r) for r in f.matrix]}
    if isinstance(f, Isometry1D):
        return {"geometry": "line", "kind": "1d", "form": f.form, "c": f.c}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def dumps_isometry(f) -> str:
    return json.dumps(isometry_to_dict(f), sort_keys=True)


def _complex(v):
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(re, im)


def isometry_from_dict(obj, ctx=None):
    ctx = ctx or _Ctx("")
    if not isinstance(obj, dict):
        ctx.fail("witness must be an object")
    kind = obj.get("kind")
    try:
        if kind == "euclidean":
            return EuclideanIsometry(obj.get("angle", 0.0), obj.get("reflect", False),
                                     tuple(obj.get("translation", (0.0, 0.0))))
        if kind == "mobius":
            g = Geometry.parse(obj.get("geometry", Geometry.DISC.value))
            if g is Geometry.HALF_PLANE:
                return HalfPlaneIsometry(tuple(map(tuple, obj["matrix"])), obj.get("reflect", False))
            return MobiusIsometry(_complex(obj.get("a", 1.0)), _complex(obj.get("b", 0.0)),
                                  obj.get("conjugate", False))
        if kind == "elliptic":
            return EllipticIsometry(tuple(map(tuple, obj["matrix"])))
        if kind == "1d":
            return Isometry1D(obj.get("form", "identity"), obj.get("c", 0.0))
    except (TypeError, ValueError, KeyError, FigorderError) as e:
        ctx.fail(f"bad {kind} witness: {e}", obj, "$")
    ctx.fail(f"unknown witness kind {kind!r}", obj, "$.kind")


def parse_isometry(text: str):
    ctx = _Ctx(text)
    return isometry_from_dict(_loads(text), ctx)
