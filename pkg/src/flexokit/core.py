"""Domain types, design-document parsing, and print-process validation.

Design documents are JSON (schema_version 1) with lengths in millimeters,
temperatures in degrees Celsius, moduli in GPa, and angles in degrees.
Parsed objects keep the document's units in their ``*_mm`` / ``*_gpa`` /
``*_deg`` fields so that parse -> serialize -> parse is an exact identity;
SI values (meters, pascals, radians) are exposed through properties and are
what every downstream module consumes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Union

from .errors import DanglingReferenceError, DesignError
from .joint_limits import ExtensionalLimitSpec, FlexionalLimitSpec

MM = 1e-3
GPA = 1e9

SCHEMA_VERSION = 1

MATERIAL_KINDS = ("filament", "base_film")

# Recommended process windows. Bed temperature in Celsius, first-layer
# Z-offset in millimeters.
BED_TEMP_RANGE_C = (80.0, 100.0)
BED_TEMP_PEAK_BAND_C = (90.0, 100.0)
Z_OFFSET_RANGE_MM = (0.01, 0.03)

# Peel strength of a commercial adhesive bond, N/cm, reported for reference
# alongside every process validation.
ADHESIVE_BASELINE_N_PER_CM = 11.2


@dataclass(frozen=True)
class Material:
    """One printable filament or the flexible base film."""

    name: str
    youngs_modulus_gpa: float
    kind: str
    nozzle_temp_c: Optional[float] = None

    def __post_init__(self):
        if self.kind not in MATERIAL_KINDS:
            raise DesignError(f"material kind must be one of {MATERIAL_KINDS}")
        if not self.youngs_modulus_gpa > 0:
            raise DesignError("youngs_modulus_gpa must be positive")
        if (self.nozzle_temp_c is not None) != (self.kind == "filament"):
            raise DesignError(
                "nozzle_temp_c is required for filament materials and "
                "forbidden for base films")

    @property
    def youngs_modulus(self) -> float:
        """Young's modulus in pascals."""
        return self.youngs_modulus_gpa * GPA


# Typical datasheet moduli. These are deliberate defaults, not measured
# values; any document or the FLEXOKIT_MATERIALS environment override may
# redefine them, and every stiffness output is traceable to whatever values
# were configured.
DEFAULT_MATERIALS: dict[str, Material] = {
    "PLA": Material("PLA", 3.5, "filament", 215.0),
    "ABS": Material("ABS", 2.2, "filament", 240.0),
    "PC": Material("PC", 2.4, "base_film"),
}


@dataclass(frozen=True)
class LaminateStack:
    """Ordered laminate layers, bottom-first: (material, thickness_mm)."""

    layers: tuple[tuple[Material, float], ...]

    def __post_init__(self):
        if not self.layers:
            raise DesignError("a laminate needs at least one layer")
        films = [i for i, (m, _) in enumerate(self.layers) if m.kind == "base_film"]
        if len(films) > 1 or (films and films[0] != 0):
            raise DesignError(
                "at most one base_film layer is allowed and it must be first")
        for _, t in self.layers:
            if not t > 0:
                raise DesignError("layer thicknesses must be positive")

    @property
    def layers_si(self) -> tuple[tuple[Material, float], ...]:
        """Layers with thickness in meters."""
        return tuple((m, t * MM) for m, t in self.layers)

    @property
    def total_thickness_mm(self) -> float:
        return sum(t for _, t in self.layers)

    @property
    def printed_thickness_mm(self) -> float:
        """Total thickness of extruded layers (the base film is stock)."""
        return sum(t for m, t in self.layers if m.kind == "filament")


@dataclass(frozen=True)
class RibPattern:
    """Periodic raised-rib pattern on the printed face of a flexure."""

    period_mm: float
    width_ratio: float
    feature_height_mm: float

    def __post_init__(self):
        if not self.period_mm > 0:
            raise DesignError("period_mm must be positive")
        if not 0 <= self.width_ratio <= 1:
            raise DesignError("width_ratio must lie in [0, 1]")
        if self.feature_height_mm < 0:
            raise DesignError("feature_height_mm must be nonnegative")

    @property
    def period(self) -> float:
        return self.period_mm * MM

    @property
    def feature_height(self) -> float:
        return self.feature_height_mm * MM


@dataclass(frozen=True)
class FlexureSpec:
    """A rectangular laminate flexure, optionally ribbed."""

    name: str
    length_mm: float
    width_mm: float
    base: LaminateStack
    ribs: Optional[RibPattern] = None
    rib_material: Optional[Material] = None

    def __post_init__(self):
        if not (self.length_mm > 0 and self.width_mm > 0):
            raise DesignError("flexure length and width must be positive")
        if self.ribs is not None and self.ribs.period_mm > self.length_mm:
            raise DesignError("rib period cannot exceed the flexure length")
        if self.ribs is not None and self.resolved_rib_material is None:
            raise DesignError(
                "a ribbed flexure needs a rib_material or a printed base layer")

    @property
    def length(self) -> float:
        return self.length_mm * MM

    @property
    def width(self) -> float:
        return self.width_mm * MM

    @property
    def resolved_rib_material(self) -> Optional[Material]:
        """Explicit rib material, else the topmost printed base layer's."""
        if self.rib_material is not None:
            return self.rib_material
        for m, _ in reversed(self.base.layers):
            if m.kind == "filament":
                return m
        return None


@dataclass(frozen=True)
class PrintProcessConfig:
    """Printer setup checked by validate_process."""

    bed_temp_c: float
    z_offset_mm: float
    material: Material
    pc_thickness_mm: float
    nozzle_temp_c: Optional[float] = None

    def __post_init__(self):
        values = [self.bed_temp_c, self.z_offset_mm, self.pc_thickness_mm]
        if self.nozzle_temp_c is not None:
            values.append(self.nozzle_temp_c)
        if not all(math.isfinite(v) and v > 0 for v in values):
            raise DesignError("process parameters must be finite and positive")


@dataclass(frozen=True)
class FlexionalLimitEntry:
    """Document form of a flexional limit; converts to an SI spec on demand."""

    spacing_mm: float
    head_radius_mm: float
    stem_height_mm: float
    comment: str = ""

    @property
    def spec(self) -> FlexionalLimitSpec:
        return FlexionalLimitSpec(spacing=self.spacing_mm * MM,
                                  head_radius=self.head_radius_mm * MM,
                                  stem_height=self.stem_height_mm * MM)


@dataclass(frozen=True)
class ExtensionalLimitEntry:
    """Document form of an extensional limit."""

    diagonal_mm: float
    base_width_mm: float
    tip_radius_mm: float
    mount_height_mm: float
    incline_deg: float
    comment: str = ""

    @property
    def spec(self) -> ExtensionalLimitSpec:
        return ExtensionalLimitSpec(diagonal=self.diagonal_mm * MM,
                                    base_width=self.base_width_mm * MM,
                                    tip_radius=self.tip_radius_mm * MM,
                                    mount_height=self.mount_height_mm * MM,
                                    incline=math.radians(self.incline_deg))


@dataclass(frozen=True)
class LinkEntry:
    """Rigid link between joints of a limb."""

    length_mm: float

    def __post_init__(self):
        if self.length_mm < 0:
            raise DesignError("link length must be nonnegative")


@dataclass(frozen=True)
class JointEntry:
    """Document form of one flexure joint inside a limb.

    The torsional stiffness is derived from the referenced flexure unless
    given explicitly; the jam cap comes from the referenced limit entry
    unless jam_angle_deg is given. ``sense`` is +1 when positive joint
    rotation shortens the tendon.
    """

    flexure: str
    joint_length_mm: float
    routing_offset_mm: float
    sense: int = 1
    flexional_limit: Optional[str] = None
    extensional_limit: Optional[str] = None
    jam_angle_deg: Optional[float] = None
    torsional_stiffness_nm_per_rad: Optional[float] = None
    comment: str = ""

    def __post_init__(self):
        if self.sense not in (1, -1):
            raise DesignError("joint sense must be +1 or -1")
        if not (self.joint_length_mm > 0 and self.routing_offset_mm > 0):
            raise DesignError("joint length and routing offset must be positive")
        limit_refs = (self.flexional_limit is not None) + \
            (self.extensional_limit is not None)
        if limit_refs > 1:
            raise DesignError("a joint may reference at most one limit kind")
        if limit_refs == 0 and self.jam_angle_deg is None:
            raise DesignError(
                "a joint needs a jam angle: reference a limit or set jam_angle_deg")
        if self.jam_angle_deg is not None and not self.jam_angle_deg > 0:
            raise DesignError("jam_angle_deg must be positive")


@dataclass(frozen=True)
class LimbEntry:
    """Document form of a tendon-driven limb: alternating links and joints."""

    segments: tuple[Union[LinkEntry, JointEntry], ...]
    comment: str = ""

    def __post_init__(self):
        if not any(isinstance(s, JointEntry) for s in self.segments):
            raise DesignError("a limb needs at least one joint")

    @property
    def joints(self) -> tuple[JointEntry, ...]:
        return tuple(s for s in self.segments if isinstance(s, JointEntry))


@dataclass(frozen=True)
class GaitEntry:
    """Trot assignment: two diagonal limb pairs, half a cycle apart."""

    pair_a: tuple[str, str]
    pair_b: tuple[str, str]
    frequencies_hz: tuple[float, ...]

    def __post_init__(self):
        names = (*self.pair_a, *self.pair_b)
        if len(set(names)) != 4:
            raise DesignError("gait needs four distinct limbs, two per pair")
        if any(f < 0 for f in self.frequencies_hz):
            raise DesignError("gait frequencies must be nonnegative")


EXPORT_KINDS = ("flexure", "flexional", "extensional")


@dataclass(frozen=True)
class ExportPart:
    """One geometry export request."""

    kind: str
    ref: str
    file: str
    count: int = 2
    facets: int = 16
    width_mm: Optional[float] = None

    def __post_init__(self):
        if self.kind not in EXPORT_KINDS:
            raise DesignError(f"export kind must be one of {EXPORT_KINDS}")
        if self.count < 1 or self.facets < 8:
            raise DesignError("export needs count >= 1 and facets >= 8")


@dataclass(frozen=True)
class ExportOptions:
    parts: tuple[ExportPart, ...] = ()


@dataclass(frozen=True)
class DesignDoc:
    """A fully cross-linked, validated design document."""

    schema_version: int
    materials: dict[str, Material]
    flexures: dict[str, FlexureSpec] = field(default_factory=dict)
    flexional_limits: dict[str, FlexionalLimitEntry] = field(default_factory=dict)
    extensional_limits: dict[str, ExtensionalLimitEntry] = field(default_factory=dict)
    limbs: dict[str, LimbEntry] = field(default_factory=dict)
    gait: Optional[GaitEntry] = None
    process: Optional[PrintProcessConfig] = None
    export: ExportOptions = ExportOptions()
    comment: str = ""


# --------------------------------------------------------------------------
# Parsing

_TOP_KEYS = {"schema_version", "comment", "materials", "flexures",
             "flexional_limits", "extensional_limits", "limbs", "gait",
             "process", "export"}


def _check_keys(obj: Mapping, allowed: set, path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise DesignError(f"unknown key(s) {sorted(unknown)}", path)


def _obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise DesignError("expected a JSON object", path)
    return value


def _num(obj: Mapping, key: str, path: str, required: bool = True,
         default: Optional[float] = None) -> Optional[float]:
    if key not in obj:
        if required:
            raise DesignError("missing required number", f"{path}.{key}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DesignError("expected a number", f"{path}.{key}")
    return float(v)


def _int(obj: Mapping, key: str, path: str, required: bool = True,
         default: Optional[int] = None) -> Optional[int]:
    if key not in obj:
        if required:
            raise DesignError("missing required integer", f"{path}.{key}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise DesignError("expected an integer", f"{path}.{key}")
    return v


def _str(obj: Mapping, key: str, path: str, required: bool = True,
         default: Optional[str] = None) -> Optional[str]:
    if key not in obj:
        if required:
            raise DesignError("missing required string", f"{path}.{key}")
        return default
    v = obj[key]
    if not isinstance(v, str):
        raise DesignError("expected a string", f"{path}.{key}")
    return v


def _wrap(path: str, build, *args, **kwargs):
    # Re-anchor invariant violations from dataclass constructors at the
    # document field that caused them.
    try:
        return build(*args, **kwargs)
    except DesignError as exc:
        if exc.path:
            raise
        raise DesignError(str(exc), path) from None


class _MaterialTable:
    """Name resolution: overrides shadow the document, which shadows defaults."""

    def __init__(self, declared: dict[str, Material],
                 overrides: Optional[Mapping[str, Material]]):
        self.declared = declared
        self.overrides = dict(overrides) if overrides else {}

    def resolve(self, name: str, path: str) -> Material:
        for table in (self.overrides, self.declared, DEFAULT_MATERIALS):
            if name in table:
                return table[name]
        raise DanglingReferenceError(name, path)

    def merged(self) -> dict[str, Material]:
        out = dict(DEFAULT_MATERIALS)
        out.update(self.declared)
        out.update(self.overrides)
        return out


def _parse_material(name: str, raw: Any, path: str) -> Material:
    obj = _obj(raw, path)
    _check_keys(obj, {"youngs_modulus_gpa", "kind", "nozzle_temp_c"}, path)
    return _wrap(path, Material, name,
                 _num(obj, "youngs_modulus_gpa", path),
                 _str(obj, "kind", path),
                 _num(obj, "nozzle_temp_c", path, required=False))


def _parse_flexure(name: str, raw: Any, path: str,
                   table: _MaterialTable) -> FlexureSpec:
    obj = _obj(raw, path)
    _check_keys(obj, {"length_mm", "width_mm", "base_layers", "ribs",
                      "rib_material"}, path)
    raw_layers = obj.get("base_layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        raise DesignError("expected a non-empty list of [material, thickness_mm]",
                          f"{path}.base_layers")
    layers = []
    for i, pair in enumerate(raw_layers):
        lp = f"{path}.base_layers[{i}]"
        if (not isinstance(pair, list) or len(pair) != 2
                or not isinstance(pair[0], str)
                or isinstance(pair[1], bool)
                or not isinstance(pair[1], (int, float))):
            raise DesignError("expected [material, thickness_mm]", lp)
        layers.append((table.resolve(pair[0], lp), float(pair[1])))
    base = _wrap(f"{path}.base_layers", LaminateStack, tuple(layers))

    ribs = None
    if "ribs" in obj:
        rp = f"{path}.ribs"
        robj = _obj(obj["ribs"], rp)
        _check_keys(robj, {"period_mm", "width_ratio", "feature_height_mm"}, rp)
        ribs = _wrap(rp, RibPattern,
                     _num(robj, "period_mm", rp),
                     _num(robj, "width_ratio", rp),
                     _num(robj, "feature_height_mm", rp))

    rib_material = None
    if "rib_material" in obj:
        rib_material = table.resolve(_str(obj, "rib_material", path),
                                     f"{path}.rib_material")
    return _wrap(path, FlexureSpec, name, _num(obj, "length_mm", path),
                 _num(obj, "width_mm", path), base, ribs, rib_material)


def _parse_joint(raw: Any, path: str, doc_flexures: dict,
                 flexional: dict, extensional: dict) -> JointEntry:
    obj = _obj(raw, path)
    _check_keys(obj, {"flexure", "joint_length_mm", "routing_offset_mm",
                      "sense", "flexional_limit", "extensional_limit",
                      "jam_angle_deg", "torsional_stiffness_nm_per_rad",
                      "comment"}, path)
    flexure = _str(obj, "flexure", path)
    if flexure not in doc_flexures:
        raise DanglingReferenceError(flexure, f"{path}.flexure")
    for key, pool in (("flexional_limit", flexional),
                      ("extensional_limit", extensional)):
        if key in obj and _str(obj, key, path) not in pool:
            raise DanglingReferenceError(obj[key], f"{path}.{key}")
    return _wrap(path, JointEntry, flexure,
                 _num(obj, "joint_length_mm", path),
                 _num(obj, "routing_offset_mm", path),
                 _int(obj, "sense", path, required=False, default=1),
                 _str(obj, "flexional_limit", path, required=False),
                 _str(obj, "extensional_limit", path, required=False),
                 _num(obj, "jam_angle_deg", path, required=False),
                 _num(obj, "torsional_stiffness_nm_per_rad", path,
                      required=False),
                 _str(obj, "comment", path, required=False, default=""))


def _parse_limb(raw: Any, path: str, doc_flexures: dict, flexional: dict,
                extensional: dict) -> LimbEntry:
    obj = _obj(raw, path)
    _check_keys(obj, {"segments", "comment"}, path)
    raw_segments = obj.get("segments")
    if not isinstance(raw_segments, list) or not raw_segments:
        raise DesignError("expected a non-empty segment list", f"{path}.segments")
    segments = []
    for i, seg in enumerate(raw_segments):
        sp = f"{path}.segments[{i}]"
        sobj = _obj(seg, sp)
        if set(sobj) == {"link_mm"}:
            segments.append(_wrap(sp, LinkEntry, _num(sobj, "link_mm", sp)))
        elif set(sobj) == {"joint"}:
            segments.append(_parse_joint(sobj["joint"], f"{sp}.joint",
                                         doc_flexures, flexional, extensional))
        else:
            raise DesignError('expected {"link_mm": ...} or {"joint": {...}}', sp)
    return _wrap(path, LimbEntry, tuple(segments),
                 _str(obj, "comment", path, required=False, default=""))


def parse_design(document_text: str,
                 materials_override: Optional[Mapping[str, Material]] = None
                 ) -> DesignDoc:
    """Parse and cross-link a JSON design document.

    Raises DesignError for syntax errors (with position), schema violations
    (with a dotted field path), and DanglingReferenceError for references to
    undefined names. ``materials_override`` shadows both the document's
    materials and the built-in defaults (the FLEXOKIT_MATERIALS hook).
    """
    try:
        root = json.loads(document_text)
    except json.JSONDecodeError as exc:
        raise DesignError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    root = _obj(root, "$")
    _check_keys(root, _TOP_KEYS, "$")
    version = _int(root, "schema_version", "$")
    if version != SCHEMA_VERSION:
        raise DesignError(f"unknown schema_version {version}; "
                          f"this build reads version {SCHEMA_VERSION}",
                          "$.schema_version")

    declared = {}
    for name, raw in _obj(root.get("materials", {}), "materials").items():
        declared[name] = _parse_material(name, raw, f"materials.{name}")
    table = _MaterialTable(declared, materials_override)

    flexures = {}
    for name, raw in _obj(root.get("flexures", {}), "flexures").items():
        flexures[name] = _parse_flexure(name, raw, f"flexures.{name}", table)

    flexional = {}
    for name, raw in _obj(root.get("flexional_limits", {}),
                          "flexional_limits").items():
        path = f"flexional_limits.{name}"
        obj = _obj(raw, path)
        _check_keys(obj, {"spacing_mm", "head_radius_mm", "stem_height_mm",
                          "comment"}, path)
        entry = _wrap(path, FlexionalLimitEntry,
                      _num(obj, "spacing_mm", path),
                      _num(obj, "head_radius_mm", path),
                      _num(obj, "stem_height_mm", path),
                      _str(obj, "comment", path, required=False, default=""))
        _wrap(path, lambda e: e.spec, entry)  # geometry must be constructible
        flexional[name] = entry

    extensional = {}
    for name, raw in _obj(root.get("extensional_limits", {}),
                          "extensional_limits").items():
        path = f"extensional_limits.{name}"
        obj = _obj(raw, path)
        _check_keys(obj, {"diagonal_mm", "base_width_mm", "tip_radius_mm",
                          "mount_height_mm", "incline_deg", "comment"}, path)
        entry = _wrap(path, ExtensionalLimitEntry,
                      _num(obj, "diagonal_mm", path),
                      _num(obj, "base_width_mm", path),
                      _num(obj, "tip_radius_mm", path),
                      _num(obj, "mount_height_mm", path),
                      _num(obj, "incline_deg", path),
                      _str(obj, "comment", path, required=False, default=""))
        _wrap(path, lambda e: e.spec, entry)
        extensional[name] = entry

    limbs = {}
    for name, raw in _obj(root.get("limbs", {}), "limbs").items():
        limbs[name] = _parse_limb(raw, f"limbs.{name}", flexures,
                                  flexional, extensional)

    gait = None
    if "gait" in root:
        obj = _obj(root["gait"], "gait")
        _check_keys(obj, {"pair_a", "pair_b", "frequencies_hz"}, "gait")
        pairs = []
        for key in ("pair_a", "pair_b"):
            v = obj.get(key)
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(s, str) for s in v)):
                raise DesignError("expected a pair of limb names", f"gait.{key}")
            for s in v:
                if s not in limbs:
                    raise DanglingReferenceError(s, f"gait.{key}")
            pairs.append(tuple(v))
        freqs = obj.get("frequencies_hz", [])
        if (not isinstance(freqs, list)
                or not all(isinstance(f, (int, float)) and not isinstance(f, bool)
                           for f in freqs)):
            raise DesignError("expected a list of numbers", "gait.frequencies_hz")
        gait = _wrap("gait", GaitEntry, pairs[0], pairs[1],
                     tuple(float(f) for f in freqs))

    process = None
    if "process" in root:
        obj = _obj(root["process"], "process")
        _check_keys(obj, {"bed_temp_c", "z_offset_mm", "material",
                          "pc_thickness_mm", "nozzle_temp_c"}, "process")
        material = table.resolve(_str(obj, "material", "process"),
                                 "process.material")
        process = _wrap("process", PrintProcessConfig,
                        _num(obj, "bed_temp_c", "process"),
                        _num(obj, "z_offset_mm", "process"),
                        material,
                        _num(obj, "pc_thickness_mm", "process"),
                        _num(obj, "nozzle_temp_c", "process", required=False))

    export = ExportOptions()
    if "export" in root:
        obj = _obj(root["export"], "export")
        _check_keys(obj, {"parts"}, "export")
        raw_parts = obj.get("parts", [])
        if not isinstance(raw_parts, list):
            raise DesignError("expected a list of parts", "export.parts")
        parts = []
        pools = {"flexure": flexures, "flexional": flexional,
                 "extensional": extensional}
        for i, rp in enumerate(raw_parts):
            pp = f"export.parts[{i}]"
            pobj = _obj(rp, pp)
            _check_keys(pobj, {"kind", "ref", "file", "count", "facets",
                               "width_mm"}, pp)
            part = _wrap(pp, ExportPart,
                         _str(pobj, "kind", pp), _str(pobj, "ref", pp),
                         _str(pobj, "file", pp),
                         _int(pobj, "count", pp, required=False, default=2),
                         _int(pobj, "facets", pp, required=False, default=16),
                         _num(pobj, "width_mm", pp, required=False))
            if part.ref not in pools[part.kind]:
                raise DanglingReferenceError(part.ref, f"{pp}.ref")
            parts.append(part)
        export = ExportOptions(tuple(parts))

    return DesignDoc(schema_version=version, materials=table.merged(),
                     flexures=flexures, flexional_limits=flexional,
                     extensional_limits=extensional, limbs=limbs, gait=gait,
                     process=process, export=export,
                     comment=_str(root, "comment", "$", required=False,
                                  default=""))


# --------------------------------------------------------------------------
# Serialization (inverse of parse_design, document units preserved)

def _material_dict(m: Material) -> dict:
    out: dict[str, Any] = {"youngs_modulus_gpa": m.youngs_modulus_gpa,
                           "kind": m.kind}
    if m.nozzle_temp_c is not None:
        out["nozzle_temp_c"] = m.nozzle_temp_c
    return out


def _joint_dict(j: JointEntry) -> dict:
    out: dict[str, Any] = {"flexure": j.flexure,
                           "joint_length_mm": j.joint_length_mm,
                           "routing_offset_mm": j.routing_offset_mm,
                           "sense": j.sense}
    if j.flexional_limit is not None:
        out["flexional_limit"] = j.flexional_limit
    if j.extensional_limit is not None:
        out["extensional_limit"] = j.extensional_limit
    if j.jam_angle_deg is not None:
        out["jam_angle_deg"] = j.jam_angle_deg
    if j.torsional_stiffness_nm_per_rad is not None:
        out["torsional_stiffness_nm_per_rad"] = j.torsional_stiffness_nm_per_rad
    if j.comment:
        out["comment"] = j.comment
    return {"joint": out}


def serialize_design(doc: DesignDoc) -> str:
    """Emit a document that parses back to an identical DesignDoc."""
    root: dict[str, Any] = {"schema_version": doc.schema_version}
    if doc.comment:
        root["comment"] = doc.comment
    root["materials"] = {name: _material_dict(m)
                         for name, m in sorted(doc.materials.items())}
    if doc.flexures:
        flexures = {}
        for name, f in doc.flexures.items():
            entry: dict[str, Any] = {
                "length_mm": f.length_mm, "width_mm": f.width_mm,
                "base_layers": [[m.name, t] for m, t in f.base.layers]}
            if f.ribs is not None:
                entry["ribs"] = {"period_mm": f.ribs.period_mm,
                                 "width_ratio": f.ribs.width_ratio,
                                 "feature_height_mm": f.ribs.feature_height_mm}
            if f.rib_material is not None:
                entry["rib_material"] = f.rib_material.name
            flexures[name] = entry
        root["flexures"] = flexures
    if doc.flexional_limits:
        root["flexional_limits"] = {
            name: {"spacing_mm": e.spacing_mm,
                   "head_radius_mm": e.head_radius_mm,
                   "stem_height_mm": e.stem_height_mm,
                   **({"comment": e.comment} if e.comment else {})}
            for name, e in doc.flexional_limits.items()}
    if doc.extensional_limits:
        root["extensional_limits"] = {
            name: {"diagonal_mm": e.diagonal_mm,
                   "base_width_mm": e.base_width_mm,
                   "tip_radius_mm": e.tip_radius_mm,
                   "mount_height_mm": e.mount_height_mm,
                   "incline_deg": e.incline_deg,
                   **({"comment": e.comment} if e.comment else {})}
            for name, e in doc.extensional_limits.items()}
    if doc.limbs:
        limbs = {}
        for name, limb in doc.limbs.items():
            segs = [({"link_mm": s.length_mm} if isinstance(s, LinkEntry)
                     else _joint_dict(s)) for s in limb.segments]
            limbs[name] = {"segments": segs,
                           **({"comment": limb.comment} if limb.comment else {})}
        root["limbs"] = limbs
    if doc.gait is not None:
        root["gait"] = {"pair_a": list(doc.gait.pair_a),
                        "pair_b": list(doc.gait.pair_b),
                        "frequencies_hz": list(doc.gait.frequencies_hz)}
    if doc.process is not None:
        p = doc.process
        entry = {"bed_temp_c": p.bed_temp_c, "z_offset_mm": p.z_offset_mm,
                 "material": p.material.name,
                 "pc_thickness_mm": p.pc_thickness_mm}
        if p.nozzle_temp_c is not None:
            entry["nozzle_temp_c"] = p.nozzle_temp_c
        root["process"] = entry
    if doc.export.parts:
        parts = []
        for part in doc.export.parts:
            d: dict[str, Any] = {"kind": part.kind, "ref": part.ref,
                                 "file": part.file, "count": part.count,
                                 "facets": part.facets}
            if part.width_mm is not None:
                d["width_mm"] = part.width_mm
            parts.append(d)
        root["export"] = {"parts": parts}
    return json.dumps(root, indent=2) + "\n"


# --------------------------------------------------------------------------
# Process validation

VALIDATION_CODES = {
    "bed_temp_peak_band": "ok: bed temperature inside the peak peel-strength band",
    "bed_temp_ok": "ok: bed temperature inside the recommended adhesion range",
    "bed_temp_low_adhesion": "warning: bed temperature below the adhesion range",
    "bed_temp_high": "warning: bed temperature above the adhesion range",
    "z_offset_ok": "ok: first-layer Z-offset inside the recommended range",
    "z_offset_out_of_range": "warning: Z-offset outside the recommended range",
    "nozzle_temp_ok": "ok: nozzle temperature matches the material",
    "nozzle_temp_mismatch": "warning: nozzle temperature differs from the material",
    "adhesion_reference": "ok: informational peel-strength baseline",
}


@dataclass(frozen=True)
class ValidationEntry:
    level: str  # "ok" | "warning" | "error"
    code: str
    message: str
    value: Optional[float] = None


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[ValidationEntry, ...]

    @property
    def has_warnings(self) -> bool:
        return any(e.level == "warning" for e in self.entries)

    @property
    def has_errors(self) -> bool:
        return any(e.level == "error" for e in self.entries)

    def to_json(self) -> list:
        return [{"level": e.level, "code": e.code, "message": e.message,
                 **({"value": e.value} if e.value is not None else {})}
                for e in self.entries]

    def to_text(self) -> str:
        if not self.entries:
            return ""
        width = max(len(e.level) for e in self.entries)
        return "\n".join(f"[{e.level.upper():<{width}}] {e.code}: {e.message}"
                         for e in self.entries) + "\n"


def validate_process(config: PrintProcessConfig) -> ValidationReport:
    """Check printer parameters against the recommended process windows.

    Validation reports, never aborts: process windows are recommendations,
    not hard limits. Every entry carries one of the codes documented in
    VALIDATION_CODES.
    """
    entries = []
    bed = config.bed_temp_c
    lo, hi = BED_TEMP_RANGE_C
    peak_lo, peak_hi = BED_TEMP_PEAK_BAND_C
    if bed < lo:
        entries.append(ValidationEntry(
            "warning", "bed_temp_low_adhesion",
            f"bed temperature {bed:g} C is outside recommended adhesion range "
            f"{lo:g}-{hi:g} C; expect weak film bonding", bed))
    elif bed > hi:
        entries.append(ValidationEntry(
            "warning", "bed_temp_high",
            f"bed temperature {bed:g} C is outside recommended adhesion range "
            f"{lo:g}-{hi:g} C; the base film may deform", bed))
    elif peak_lo <= bed <= peak_hi:
        entries.append(ValidationEntry(
            "ok", "bed_temp_peak_band",
            f"bed temperature {bed:g} C sits in the peak peel-strength band "
            f"{peak_lo:g}-{peak_hi:g} C", bed))
    else:
        entries.append(ValidationEntry(
            "ok", "bed_temp_ok",
            f"bed temperature {bed:g} C is inside the recommended range "
            f"{lo:g}-{hi:g} C", bed))

    z = config.z_offset_mm
    zlo, zhi = Z_OFFSET_RANGE_MM
    if zlo <= z <= zhi:
        entries.append(ValidationEntry(
            "ok", "z_offset_ok",
            f"Z-offset {z:g} mm is inside the recommended range "
            f"{zlo:g}-{zhi:g} mm", z))
    else:
        entries.append(ValidationEntry(
            "warning", "z_offset_out_of_range",
            f"Z-offset {z:g} mm is outside {zlo:g}-{zhi:g} mm; first-layer "
            "contact pressure will be off (too low bonds poorly, too high "
            "loses it entirely)", z))

    declared = config.material.nozzle_temp_c
    if config.nozzle_temp_c is not None and declared is not None:
        if config.nozzle_temp_c == declared:
            entries.append(ValidationEntry(
                "ok", "nozzle_temp_ok",
                f"nozzle temperature {config.nozzle_temp_c:g} C matches "
                f"{config.material.name}", config.nozzle_temp_c))
        else:
            entries.append(ValidationEntry(
                "warning", "nozzle_temp_mismatch",
                f"nozzle temperature {config.nozzle_temp_c:g} C differs from "
                f"{config.material.name}'s declared {declared:g} C",
                config.nozzle_temp_c))

    entries.append(ValidationEntry(
        "ok", "adhesion_reference",
        "reference: a well-bonded seam compares to a commercial-adhesive "
        f"baseline of {ADHESIVE_BASELINE_N_PER_CM} N/cm peel strength",
        ADHESIVE_BASELINE_N_PER_CM))
    return ValidationReport(tuple(entries))
