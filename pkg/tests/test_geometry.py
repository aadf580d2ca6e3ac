"""Solid recipes, mesh invariants, and the binary STL encoder."""

import math
import struct

import numpy as np
import pytest

from helpers import read_stl
from flexokit.core import DEFAULT_MATERIALS, FlexureSpec, LaminateStack, RibPattern
from flexokit.errors import AlwaysJammedError, GeometryError
from flexokit.geometry import (Primitive, TriangleMesh, build_extensional_features,
                               build_flexional_features, build_flexure_solid,
                               export_stl, extensional_recipe, flexional_recipe,
                               flexure_recipe, regular_polygon_area)
from flexokit.joint_limits import ExtensionalLimitSpec, FlexionalLimitSpec

MM = 1e-3
PLA = DEFAULT_MATERIALS["PLA"]
PC = DEFAULT_MATERIALS["PC"]


def plate_flexure():
    return FlexureSpec("plate", 12.0, 44.0, LaminateStack(((PLA, 0.3),)))


def ribbed_flexure(width_ratio=0.5, height=1.0):
    return FlexureSpec("ribbed", 30.0, 44.0,
                       LaminateStack(((PC, 0.1), (PLA, 0.2))),
                       RibPattern(5.0, width_ratio, height))


# ----------------------------------------------------------------- flexures

def test_plain_plate_is_a_single_box():
    recipe = flexure_recipe(plate_flexure())
    mesh = recipe.mesh()
    mesh.validate()
    assert len(mesh) == 12
    assert recipe.analytic_volume_mm3 == pytest.approx(12 * 44 * 0.3, rel=1e-12)
    assert mesh.volume() == pytest.approx(recipe.analytic_volume_mm3, rel=1e-12)
    lo, hi = mesh.bounding_box()
    np.testing.assert_allclose(lo, [0.0, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(hi, [12.0, 44.0, 0.3], atol=1e-15)


def test_film_layer_is_never_meshed():
    with_film = FlexureSpec("f", 12.0, 44.0,
                            LaminateStack(((PC, 0.5), (PLA, 0.3))))
    mesh = build_flexure_solid(with_film)
    lo, hi = mesh.bounding_box()
    # printed plate only: 0.3 mm tall regardless of the film underneath
    assert hi[2] == pytest.approx(0.3, rel=1e-12)
    assert mesh.volume() == pytest.approx(12 * 44 * 0.3, rel=1e-12)
    film_only = FlexureSpec("film", 12.0, 44.0, LaminateStack(((PC, 0.5),)))
    with pytest.raises(GeometryError, match="nothing to print"):
        flexure_recipe(film_only)


def test_ribbed_flexure_centers_one_rib_per_period():
    recipe = flexure_recipe(ribbed_flexure())
    mesh = recipe.mesh()
    mesh.validate()
    ribs = [p for p in recipe.primitives if p.kind == "rib"]
    assert len(ribs) == 6
    assert len(mesh) == 12 * 7
    hand = 30 * 44 * 0.2 + 6 * (2.5 * 44 * 1.0)
    assert recipe.analytic_volume_mm3 == pytest.approx(hand, rel=1e-12)
    assert mesh.volume() == pytest.approx(hand, rel=1e-12)
    # first rib centered in [0, 5): spans [1.25, 3.75] in x
    xs = {v[0] for v in ribs[0].polygon}
    assert xs == {1.25, 3.75}
    assert ribs[0].lo == pytest.approx(0.2) and ribs[0].hi == pytest.approx(1.2)


def test_zero_size_rib_patterns_degenerate_to_the_plate():
    plate = flexure_recipe(ribbed_flexure(height=0.0))
    assert [p.kind for p in plate.primitives] == ["plate"]
    plate = flexure_recipe(ribbed_flexure(width_ratio=0.0))
    assert [p.kind for p in plate.primitives] == ["plate"]


def test_fused_ribs_mesh_as_one_stepped_prism():
    # 13 mm part with 4 mm period: three full periods and a 1 mm remainder
    flex = FlexureSpec("fused", 13.0, 44.0, LaminateStack(((PLA, 0.3),)),
                       RibPattern(4.0, 1.0, 1.0))
    recipe = flexure_recipe(flex)
    assert [p.kind for p in recipe.primitives] == ["plate+slab"]
    mesh = recipe.mesh()
    mesh.validate()
    assert len(mesh) == 20  # hexagonal cross-section prism
    hand = 13 * 44 * 0.3 + 12 * 44 * 1.0
    assert mesh.volume() == pytest.approx(hand, rel=1e-12)
    assert recipe.analytic_volume_mm3 == pytest.approx(hand, rel=1e-12)

    # periods dividing the length exactly produce a plain box
    flush = FlexureSpec("flush", 12.0, 44.0, LaminateStack(((PLA, 0.3),)),
                        RibPattern(4.0, 1.0, 1.0))
    recipe = flexure_recipe(flush)
    mesh = recipe.mesh()
    mesh.validate()
    assert len(mesh) == 12
    assert mesh.volume() == pytest.approx(12 * 44 * 1.3, rel=1e-12)


# ----------------------------------------------------- jamming feature parts

def test_mushroom_pair_matches_faceted_volume():
    spec = FlexionalLimitSpec(6 * MM, 2 * MM, 4 * MM)
    recipe = flexional_recipe(spec)
    mesh = recipe.mesh()
    mesh.validate()
    hand = 2 * (regular_polygon_area(1.0, 16) * 4.0
                + regular_polygon_area(2.0, 16) * 1.0)
    assert recipe.analytic_volume_mm3 == pytest.approx(hand, rel=1e-12)
    assert mesh.volume() == pytest.approx(hand, rel=1e-9)
    lo, hi = mesh.bounding_box()
    assert lo[2] == 0.0
    assert hi[2] == pytest.approx(5.0, rel=1e-12)  # stem 4 + head 2/2
    # head centers sit one spacing apart
    assert hi[0] - lo[0] == pytest.approx(6.0 + 4.0, rel=1e-12)


def test_mushroom_realization_options():
    spec = FlexionalLimitSpec(6 * MM, 2 * MM, 4 * MM)
    tall = flexional_recipe(spec, count=3, facets=24,
                            head_thickness=2 * MM, stem_radius=1.5 * MM)
    mesh = tall.mesh()
    mesh.validate()
    assert len(tall.primitives) == 6
    hand = 3 * (regular_polygon_area(1.5, 24) * 4.0
                + regular_polygon_area(2.0, 24) * 2.0)
    assert tall.analytic_volume_mm3 == pytest.approx(hand, rel=1e-12)
    flat = flexional_recipe(FlexionalLimitSpec(6 * MM, 2 * MM, 0.0))
    assert [p.kind for p in flat.primitives] == ["head", "head"]
    flat.mesh().validate()


def test_mushroom_recipe_rejects_bad_requests():
    spec = FlexionalLimitSpec(6 * MM, 2 * MM, 4 * MM)
    with pytest.raises(GeometryError):
        flexional_recipe(spec, count=1)
    with pytest.raises(GeometryError):
        flexional_recipe(spec, facets=6)
    with pytest.raises(GeometryError):
        flexional_recipe(spec, stem_radius=3 * MM)  # wider than the head
    with pytest.raises(AlwaysJammedError):
        flexional_recipe(FlexionalLimitSpec(3.9 * MM, 2 * MM, 4 * MM))


def test_standoff_pair_reproduces_the_rest_gap():
    spec = ExtensionalLimitSpec(7 * MM, 5.4 * MM, 1.8 * MM, 2 * MM,
                                math.radians(45.0))
    recipe = extensional_recipe(spec)
    mesh = recipe.mesh()
    mesh.validate()
    shear = 7.0 * math.cos(math.radians(45.0))
    h1 = 7.0 * math.sin(math.radians(45.0))
    # facing top edges: right edge of the left prism, left edge of the right
    tips = sorted(x for p in recipe.primitives for (x, z) in p.polygon
                  if z > 0)
    gap = tips[2] - tips[1]
    assert gap == pytest.approx(spec.rest_gap / MM, abs=1e-9)
    lo, hi = mesh.bounding_box()
    assert hi[2] == pytest.approx(h1, rel=1e-12)
    assert hi[1] == pytest.approx(5.4, rel=1e-12)  # default depth = base width
    volume = 2 * (5.4 * h1) * 5.4  # parallelogram area x depth
    assert mesh.volume() == pytest.approx(volume, rel=1e-9)


def test_standoff_row_counts_and_width_override():
    spec = ExtensionalLimitSpec(7 * MM, 5.4 * MM, 1.8 * MM, 2 * MM,
                                math.radians(45.0))
    recipe = extensional_recipe(spec, count=5, width=20 * MM)
    mesh = recipe.mesh()
    mesh.validate()
    assert len(recipe.primitives) == 5
    _, hi = mesh.bounding_box()
    assert hi[1] == pytest.approx(20.0, rel=1e-12)
    with pytest.raises(GeometryError):
        extensional_recipe(spec, count=1)
    from flexokit.errors import ContactAtRestError
    with pytest.raises(ContactAtRestError):
        extensional_recipe(ExtensionalLimitSpec(6 * MM, 5.4 * MM, 1.8 * MM,
                                                2 * MM, math.radians(45.0)))


# ------------------------------------------------------------ mesh plumbing

def test_mesh_validation_catches_open_and_inverted_shells():
    box = Primitive("box", ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)),
                    "z", 0.0, 1.0).mesh()
    box.validate()
    open_shell = TriangleMesh(box.triangles[:-1])
    with pytest.raises(GeometryError, match="watertight"):
        open_shell.validate()
    inverted = TriangleMesh(box.triangles[:, ::-1, :])
    with pytest.raises(GeometryError):
        inverted.validate()
    degenerate = np.zeros((1, 3, 3))
    with pytest.raises(GeometryError, match="degenerate"):
        TriangleMesh(degenerate).validate()


def test_mesh_normals_are_unit_and_outward():
    mesh = build_flexure_solid(plate_flexure())
    norms = np.linalg.norm(mesh.normals, axis=1)
    np.testing.assert_allclose(norms, 1.0, atol=1e-12)
    # divergence-theorem volume is positive for outward orientation
    assert mesh.volume() > 0


def test_primitives_reject_bad_polygons():
    with pytest.raises(GeometryError):
        Primitive("bad", ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0)), "z", 0.0, 1.0)
    with pytest.raises(GeometryError):
        Primitive("bad", ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0)), "z", 1.0, 1.0)
    with pytest.raises(GeometryError):
        Primitive("bad", ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0)), "x", 0.0, 1.0)


def test_concatenate_and_empty_mesh():
    empty = TriangleMesh.concatenate([])
    assert len(empty) == 0
    empty.validate()  # vacuously closed
    a = build_flexure_solid(plate_flexure())
    combined = TriangleMesh.concatenate([a, empty])
    assert len(combined) == len(a)


# -------------------------------------------------------------- STL encoder

def test_stl_byte_layout(tmp_path):
    mesh = build_flexure_solid(plate_flexure())
    out = tmp_path / "plate.stl"
    written = export_stl(mesh, out)
    assert written == 84 + 50 * len(mesh)
    assert out.stat().st_size == written
    header, normals, tris, attrs = read_stl(out)
    assert header.startswith(b"flexokit ")
    assert header.endswith(b" ")  # space padded to 80 bytes
    assert len(tris) == len(mesh)
    assert all(a == 0 for a in attrs)


def test_stl_round_trips_bit_exactly(tmp_path):
    mesh = build_extensional_features(ExtensionalLimitSpec(
        7 * MM, 5.4 * MM, 1.8 * MM, 2 * MM, math.radians(45.0)))
    out = tmp_path / "standoffs.stl"
    export_stl(mesh, out)
    _, normals, tris, _ = read_stl(out)
    assert np.array_equal(tris, mesh.triangles.astype(np.float32))
    assert np.array_equal(normals, mesh.normals.astype(np.float32))
    # identical input produces identical bytes
    again = tmp_path / "standoffs2.stl"
    export_stl(mesh, again)
    assert again.read_bytes() == out.read_bytes()


def test_stl_of_empty_mesh_is_header_only(tmp_path):
    out = tmp_path / "empty.stl"
    written = export_stl(TriangleMesh.concatenate([]), out)
    assert written == 84
    blob = out.read_bytes()
    assert struct.unpack_from("<I", blob, 80) == (0,)


def test_stl_export_refuses_broken_meshes(tmp_path):
    mesh = build_flexional_features(FlexionalLimitSpec(6 * MM, 2 * MM, 4 * MM))
    broken = TriangleMesh(mesh.triangles[:-1])
    with pytest.raises(GeometryError):
        export_stl(broken, tmp_path / "broken.stl")
    assert not (tmp_path / "broken.stl").exists()
