"""Parametric 2.5D fabrication geometry and binary STL export.

Every part is a union of disjoint extruded primitives (boxes, sheared
prisms, faceted cylinders), each meshed as an independently closed triangle
shell. Primitives may abut but never share vertices, so the concatenated
mesh keeps the watertight invariant (every undirected edge bounds exactly
two triangles) and its signed volume is exactly the sum of the primitive
volumes.

Meshes are in millimeters with z as the build direction (the printed face
grows along +z), matching consumer-printing STL conventions. The flexible
base film is never meshed; it is stock material, so exports record only its
required thickness in the sidecar manifest.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import __version__
from .core import FlexureSpec
from .errors import AlwaysJammedError, GeometryError
from .joint_limits import (ExtensionalLimitSpec, FlexionalLimitSpec,
                           extensional_jam_angle)

_MIN_TRIANGLE_AREA_MM2 = 1e-12
M_TO_MM = 1000.0


class TriangleMesh:
    """Immutable triangle soup: vertices shaped (n_triangles, 3, 3), mm."""

    def __init__(self, triangles: np.ndarray):
        tri = np.asarray(triangles, dtype=np.float64)
        if tri.ndim != 3 or tri.shape[1:] != (3, 3):
            raise GeometryError("triangles must be shaped (n, 3, 3)")
        self._tri = tri
        self._tri.setflags(write=False)

    @property
    def triangles(self) -> np.ndarray:
        return self._tri

    def __len__(self) -> int:
        return len(self._tri)

    @property
    def normals(self) -> np.ndarray:
        """Unit outward normals, one per triangle."""
        a = self._tri[:, 1] - self._tri[:, 0]
        b = self._tri[:, 2] - self._tri[:, 0]
        n = np.cross(a, b)
        lengths = np.linalg.norm(n, axis=1, keepdims=True)
        return n / lengths

    def areas(self) -> np.ndarray:
        a = self._tri[:, 1] - self._tri[:, 0]
        b = self._tri[:, 2] - self._tri[:, 0]
        return 0.5 * np.linalg.norm(np.cross(a, b), axis=1)

    def volume(self) -> float:
        """Signed enclosed volume (divergence theorem), mm^3."""
        v0, v1, v2 = self._tri[:, 0], self._tri[:, 1], self._tri[:, 2]
        return float(np.einsum("ij,ij->i", v0, np.cross(v1, v2)).sum() / 6.0)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        pts = self._tri.reshape(-1, 3)
        return pts.min(axis=0), pts.max(axis=0)

    def validate(self) -> None:
        """Raise GeometryError unless the mesh is a closed, outward shell."""
        if len(self._tri) == 0:
            return
        small = self.areas() <= _MIN_TRIANGLE_AREA_MM2
        if small.any():
            raise GeometryError(
                f"{int(small.sum())} degenerate triangle(s) below "
                f"{_MIN_TRIANGLE_AREA_MM2} mm^2")
        index: dict[tuple, int] = {}
        tri_ids = []
        for v in self._tri.reshape(-1, 3):
            key = (v[0], v[1], v[2])
            tri_ids.append(index.setdefault(key, len(index)))
        directed: dict[tuple, int] = {}
        for t in range(len(self._tri)):
            a, b, c = tri_ids[3 * t: 3 * t + 3]
            if len({a, b, c}) != 3:
                raise GeometryError("triangle with repeated vertices")
            for e in ((a, b), (b, c), (c, a)):
                directed[e] = directed.get(e, 0) + 1
        for (a, b), n in directed.items():
            if n != 1 or directed.get((b, a), 0) != 1:
                raise GeometryError(
                    "mesh is not watertight: an edge is not shared by "
                    "exactly two consistently wound triangles")
        if not self.volume() > 0:
            raise GeometryError("mesh volume is not positive (inside out?)")

    @staticmethod
    def concatenate(meshes: Iterable["TriangleMesh"]) -> "TriangleMesh":
        arrays = [m.triangles for m in meshes if len(m)]
        if not arrays:
            return TriangleMesh(np.empty((0, 3, 3)))
        return TriangleMesh(np.concatenate(arrays))


def _polygon_area(poly: tuple) -> float:
    # Shoelace; positive for counterclockwise winding.
    total = 0.0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        total += x0 * y1 - x1 * y0
    return total / 2.0


@dataclass(frozen=True)
class Primitive:
    """One convex polygon extruded along a coordinate axis.

    ``polygon`` is counterclockwise in the plane normal to ``axis`` ("z":
    coordinates are (x, y); "y": coordinates are (x, z)). Boxes, rib prisms,
    sheared standoffs, and faceted cylinders are all instances.
    """

    kind: str
    polygon: tuple[tuple[float, float], ...]
    axis: str
    lo: float
    hi: float
    fan_index: int = 0

    def __post_init__(self):
        if self.axis not in ("y", "z"):
            raise GeometryError("extrusion axis must be 'y' or 'z'")
        if not self.hi > self.lo:
            raise GeometryError("extrusion extent must be positive")
        if _polygon_area(self.polygon) <= 0:
            raise GeometryError("polygon must be counterclockwise")

    @property
    def volume_mm3(self) -> float:
        return _polygon_area(self.polygon) * (self.hi - self.lo)

    def mesh(self) -> TriangleMesh:
        if self.axis == "z":
            lift = lambda px, py, e: (px, py, e)
        else:
            lift = lambda px, py, e: (px, e, py)
        # Caps are fanned, so every cap vertex must be visible from the fan
        # origin (true for convex sections and for the step prism's reflex
        # corner). Rotating the ring keeps the winding.
        poly = self.polygon[self.fan_index:] + self.polygon[:self.fan_index]
        n = len(poly)
        tris = []
        # caps, fanned from vertex 0 (convex cross-sections only)
        for i in range(1, n - 1):
            tris.append([lift(*poly[0], self.hi), lift(*poly[i], self.hi),
                         lift(*poly[i + 1], self.hi)])
            tris.append([lift(*poly[0], self.lo), lift(*poly[i + 1], self.lo),
                         lift(*poly[i], self.lo)])
        for i in range(n):
            (ax, ay), (bx, by) = poly[i], poly[(i + 1) % n]
            a0, b0 = lift(ax, ay, self.lo), lift(bx, by, self.lo)
            a1, b1 = lift(ax, ay, self.hi), lift(bx, by, self.hi)
            tris.append([a0, b0, b1])
            tris.append([a0, b1, a1])
        mesh = TriangleMesh(np.array(tris))
        if mesh.volume() < 0:  # axis-dependent handedness; rewind outward
            mesh = TriangleMesh(mesh.triangles[:, ::-1, :])
        return mesh


@dataclass(frozen=True)
class SolidRecipe:
    """Disjoint primitives forming one printable part."""

    part_name: str
    primitives: tuple[Primitive, ...]

    @property
    def analytic_volume_mm3(self) -> float:
        """Closed-form part volume (faceted, not circular, for cylinders)."""
        return sum(p.volume_mm3 for p in self.primitives)

    def mesh(self) -> TriangleMesh:
        return TriangleMesh.concatenate(p.mesh() for p in self.primitives)


def _rect(x0, x1, y0, y1) -> tuple:
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def _ngon(cx: float, cy: float, radius: float, facets: int) -> tuple:
    return tuple((cx + radius * math.cos(2 * math.pi * i / facets),
                  cy + radius * math.sin(2 * math.pi * i / facets))
                 for i in range(facets))


def regular_polygon_area(radius: float, facets: int) -> float:
    """Area of the regular polygon inscribed in a circle of ``radius``."""
    return 0.5 * facets * radius ** 2 * math.sin(2 * math.pi / facets)


# --------------------------------------------------------------------------
# Part recipes

def flexure_recipe(flex: FlexureSpec) -> SolidRecipe:
    """Base plate plus one centered rib prism per complete period.

    The plate is the printed base only (film excluded). Ribs sit centered
    within each period; at width_ratio 1 the ribs fuse into a single slab.
    """
    length, width = flex.length_mm, flex.width_mm
    t_base = flex.base.printed_thickness_mm
    if t_base <= 0:
        raise GeometryError(
            "nothing to print: the laminate has no extruded layers")
    ribs = flex.ribs
    prims = [Primitive("plate", _rect(0.0, length, 0.0, width), "z",
                       0.0, t_base)]
    if ribs is not None and ribs.feature_height_mm > 0 and ribs.width_ratio > 0:
        period = ribs.period_mm
        if period > length:
            raise GeometryError("rib period exceeds the flexure length")
        n = int(math.floor(length / period + 1e-9))
        z1 = t_base + ribs.feature_height_mm
        if ribs.width_ratio >= 1.0:
            # Ribs fuse into a slab flush with the plate edges. Touching
            # boxes would duplicate their shared boundary edges, so mesh
            # the fused part as one prism instead.
            x1 = n * period
            if x1 >= length - 1e-9 * period:
                prims = [Primitive("plate+slab",
                                   _rect(0.0, length, 0.0, width), "z",
                                   0.0, z1)]
            else:
                step = ((0.0, 0.0), (length, 0.0), (length, t_base),
                        (x1, t_base), (x1, z1), (0.0, z1))
                prims = [Primitive("plate+slab", step, "y", 0.0, width,
                                   fan_index=3)]
        else:
            rib_w = ribs.width_ratio * period
            for i in range(n):
                x0 = i * period + (period - rib_w) / 2
                prims.append(Primitive("rib", _rect(x0, x0 + rib_w, 0.0, width),
                                       "z", t_base, z1))
    return SolidRecipe(flex.name, tuple(prims))


def flexional_recipe(spec: FlexionalLimitSpec, count: int = 2,
                     facets: int = 16, head_thickness: Optional[float] = None,
                     stem_radius: Optional[float] = None) -> SolidRecipe:
    """Mushroom pillars: faceted stem plus wider faceted disk head.

    Feature axes sit ``spacing`` apart along x. Head thickness and stem
    radius are printable realization choices, not jamming inputs; they
    default to half the head radius. All spec lengths are meters (SI);
    the recipe is meshed in mm.
    """
    if count < 2:
        raise GeometryError("a jamming limit needs at least 2 features")
    if facets < 8:
        raise GeometryError("facets must be at least 8")
    if spec.spacing <= 2 * spec.head_radius:
        raise AlwaysJammedError(
            "adjacent heads intersect at rest: spacing must exceed the "
            "head diameter")
    r = spec.head_radius * M_TO_MM
    h = spec.stem_height * M_TO_MM
    spacing = spec.spacing * M_TO_MM
    t_head = r / 2 if head_thickness is None else head_thickness * M_TO_MM
    r_stem = r / 2 if stem_radius is None else stem_radius * M_TO_MM
    if not 0 < r_stem <= r:
        raise GeometryError("stem radius must lie in (0, head radius]")
    prims = []
    for i in range(count):
        cx = i * spacing
        if h > 0:
            prims.append(Primitive("stem", _ngon(cx, 0.0, r_stem, facets),
                                   "z", 0.0, h))
        prims.append(Primitive("head", _ngon(cx, 0.0, r, facets),
                               "z", h, h + t_head))
    return SolidRecipe("flexional_limit", tuple(prims))


def extensional_recipe(spec: ExtensionalLimitSpec, count: int = 2,
                       width: Optional[float] = None) -> SolidRecipe:
    """Inclined standoffs, alternating orientation, facing in pairs.

    Each standoff is a sheared prism: parallelogram cross-section of base
    width b whose slant sides have length equal to the feature diagonal at
    the feature incline, so the prism height is the tip height. A facing
    pair leans toward each other, placed so the gap between the facing tip
    edges equals the rest gap of the jamming model (the prism tip stands in
    for the rounded tip surface, hence the tip-radius retraction on both
    sides). ``width`` is the extrusion depth across the flexure, defaulting
    to the base width.
    """
    if count < 2:
        raise GeometryError("a jamming limit needs at least 2 features")
    extensional_jam_angle(spec)  # raises ContactAtRestError when infeasible
    L = spec.diagonal * M_TO_MM
    b = spec.base_width * M_TO_MM
    r = spec.tip_radius * M_TO_MM
    h1 = L * math.sin(spec.incline)
    shear = L * math.cos(spec.incline)
    depth = b if width is None else width * M_TO_MM
    if depth <= 0:
        raise GeometryError("extrusion width must be positive")
    # Facing tip edges of a pair end up (2*L*cos(incline) - b - 2r) apart.
    pair_offset = 4 * shear - 2 * r
    pitch = pair_offset + 2 * b

    def standoff(x0: float, lean: float) -> Primitive:
        poly = ((x0, 0.0), (x0 + b, 0.0),
                (x0 + b + lean, h1), (x0 + lean, h1))
        return Primitive("standoff", poly, "y", 0.0, depth)

    prims = []
    for i in range(count):
        pair, side = divmod(i, 2)
        x0 = pair * pitch + side * pair_offset
        prims.append(standoff(x0, shear if side == 0 else -shear))
    return SolidRecipe("extensional_limit", tuple(prims))


def build_flexure_solid(flex: FlexureSpec) -> TriangleMesh:
    """Printable mesh of a ribbed flexure (validated, mm)."""
    mesh = flexure_recipe(flex).mesh()
    mesh.validate()
    return mesh


def build_flexional_features(spec: FlexionalLimitSpec, count: int = 2,
                             facets: int = 16, **kwargs) -> TriangleMesh:
    """Printable mesh of a flexional (mushroom) limit pair or row."""
    mesh = flexional_recipe(spec, count, facets, **kwargs).mesh()
    mesh.validate()
    return mesh


def build_extensional_features(spec: ExtensionalLimitSpec, count: int = 2,
                               width: Optional[float] = None) -> TriangleMesh:
    """Printable mesh of an extensional (standoff) limit pair or row."""
    mesh = extensional_recipe(spec, count, width).mesh()
    mesh.validate()
    return mesh


# --------------------------------------------------------------------------
# Binary STL

def export_stl(mesh: TriangleMesh, destination) -> int:
    """Write the canonical binary STL layout; returns bytes written.

    80-byte header, little-endian uint32 triangle count, then per triangle
    12 float32 values (normal, 3 vertices) and a zero attribute word:
    exactly 84 + 50 * count bytes. Refuses invariant-violating meshes.
    """
    mesh.validate()
    header = f"flexokit {__version__} binary STL".encode("ascii")[:80]
    blob = bytearray(header.ljust(80, b" "))
    blob += struct.pack("<I", len(mesh))
    tris = mesh.triangles
    normals = mesh.normals if len(mesh) else np.empty((0, 3))
    for i in range(len(tris)):
        blob += struct.pack("<12f", *normals[i].astype(np.float32),
                            *tris[i].reshape(9).astype(np.float32))
        blob += struct.pack("<H", 0)
    with open(destination, "wb") as fh:
        fh.write(blob)
    return len(blob)
