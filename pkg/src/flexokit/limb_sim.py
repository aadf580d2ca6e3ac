"""Quasi-static simulation of a tendon-driven multi-joint limb.

Each flexure joint is reduced to a pseudo-rigid body: one torsional spring
with a hard jam cap, between rigid links. One inextensible, frictionless
tendon with a constant moment arm at every joint drives the limb; positive
rotation at a joint with sense +1 shortens the tendon. Pull and release are
elastic mirror images here (tendon friction, which makes the real release
phase lag, is out of scope).

Equilibrium under a given tendon pull is the unique minimizer of the stored
elastic energy sum(k_i theta_i^2 / 2) subject to the tendon constraint
sum(sense_i * r_i * theta_i) = pull and the jam caps. It is found exactly by
an active-set sweep: unjammed joints satisfy k_i theta_i = T r_i, jammed
joints sit at their cap carrying reaction moment at least the elastic one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .core import MM, DesignDoc, JointEntry, LinkEntry
from .errors import DesignError, EmptyLimbError, OverPullError
from .joint_limits import extensional_jam_angle, flexional_jam_angle
from .stiffness import torsional_stiffness

_CAP_SLACK = 1e-12  # relative; absorbs roundoff at exact jam events


@dataclass(frozen=True)
class JointDef:
    """One pseudo-rigid-body joint. SI units, cap in radians."""

    torsional_stiffness: float   # N*m/rad
    joint_length: float          # m
    jam_angle: float             # rad, magnitude of the hard cap
    routing_offset: float        # m, tendon moment arm
    sense: int = 1               # +1 if positive rotation shortens the tendon

    def __post_init__(self):
        if not (self.torsional_stiffness > 0 and self.joint_length > 0
                and self.jam_angle > 0 and self.routing_offset > 0):
            raise DesignError("joint parameters must be positive")
        if self.sense not in (1, -1):
            raise DesignError("joint sense must be +1 or -1")


@dataclass(frozen=True)
class Link:
    """Rigid link of a limb."""

    length: float  # m

    def __post_init__(self):
        if self.length < 0:
            raise DesignError("link length must be nonnegative")


@dataclass(frozen=True)
class LimbSpec:
    """Alternating rigid links and joints, base to foot."""

    segments: tuple[Union[Link, JointDef], ...]
    base_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)  # x, y, heading

    def __post_init__(self):
        if not self.joints:
            raise EmptyLimbError("a limb needs at least one joint")

    @property
    def joints(self) -> tuple[JointDef, ...]:
        return tuple(s for s in self.segments if isinstance(s, JointDef))

    @property
    def total_length(self) -> float:
        return sum(s.length if isinstance(s, Link) else s.joint_length
                   for s in self.segments)

    @property
    def pull_capacity(self) -> float:
        """Largest admissible tendon pull: every joint at its cap."""
        return sum(j.routing_offset * j.jam_angle for j in self.joints)


@dataclass(frozen=True)
class LimbState:
    """Solved equilibrium at one tendon pull."""

    theta: tuple[float, ...]    # signed joint angles, radians
    tension: float              # N
    pull: float                 # m
    jammed: tuple[bool, ...]


@dataclass(frozen=True)
class StrokeMetrics:
    stroke_distance: float  # m, horizontal extent of the foot path
    stroke_ratio: float     # stroke_distance / max pull


@dataclass(frozen=True)
class CycleResult:
    """One pull-and-release cycle of a limb."""

    pulls: np.ndarray           # (n_steps,)
    states: tuple[LimbState, ...]
    foot_path: np.ndarray       # (n_steps, 2)
    metrics: StrokeMetrics
    curvature_map: np.ndarray   # (n_steps, n_bins), 1/m
    arc_bins: np.ndarray        # (n_bins,) bin-center arc lengths, m


def equilibrium_solve(limb: LimbSpec, pull: float) -> LimbState:
    """Equilibrium joint angles and tendon tension at the given pull.

    Solved in magnitude space (phi_i = sense_i * theta_i >= 0): starting
    all-elastic, compute the common tension, cap any joint pushed past its
    jam angle, redistribute, repeat. Each pass jams at least one more joint,
    so at most n passes run. Tension is continuous in pull; its slope jumps
    up at every jam event.
    """
    joints = limb.joints
    k = np.array([j.torsional_stiffness for j in joints])
    r = np.array([j.routing_offset for j in joints])
    cap = np.array([j.jam_angle for j in joints])
    capacity = float(r @ cap)
    if pull < 0:
        raise DesignError("tendon pull must be nonnegative")
    if pull > capacity * (1 + 1e-12):
        raise OverPullError(
            f"pull {pull:g} m exceeds the limb's jam capacity {capacity:g} m")
    pull = min(pull, capacity)

    jammed = np.zeros(len(joints), dtype=bool)
    phi = np.zeros(len(joints))
    tension = 0.0
    for _ in range(len(joints) + 1):
        free = ~jammed
        remaining = pull - float(r[jammed] @ cap[jammed])
        if not free.any():
            # Whole limb at its caps; report the smallest tension that
            # still holds every jammed joint against its stop.
            tension = float(np.max(k * cap / r))
            break
        tension = remaining / float(r[free] ** 2 @ (1.0 / k[free]))
        phi = np.where(jammed, cap, tension * r / k)
        newly = free & (phi > cap * (1 + _CAP_SLACK))
        if not newly.any():
            break
        jammed |= newly
    phi = np.minimum(phi, cap)
    sense = np.array([j.sense for j in joints])
    return LimbState(theta=tuple(float(s * p) for s, p in zip(sense, phi)),
                     tension=float(tension), pull=pull,
                     jammed=tuple(bool(p >= c) for p, c in zip(phi, cap)))


def forward_kinematics(limb: LimbSpec, theta,
                       arc_points: int = 16) -> tuple[np.ndarray, tuple[float, float]]:
    """Planar chain pose for the given joint angles.

    Joint rotations are distributed uniformly along each joint's length
    (constant-curvature arcs); links stay straight. Returns the chain
    polyline, arcs sampled every ``joint_length / arc_points``, and the foot
    (chain endpoint). The endpoint is closed-form, independent of
    arc_points.
    """
    theta = list(theta)
    joints = limb.joints
    if len(theta) != len(joints):
        raise DesignError(f"expected {len(joints)} joint angles, "
                          f"got {len(theta)}")
    x, y, heading = limb.base_pose
    points = [(x, y)]
    it = iter(theta)
    for seg in limb.segments:
        if isinstance(seg, Link):
            x += seg.length * math.cos(heading)
            y += seg.length * math.sin(heading)
            if seg.length > 0:
                points.append((x, y))
            continue
        th = next(it)
        if abs(th) < 1e-12:
            x += seg.joint_length * math.cos(heading)
            y += seg.joint_length * math.sin(heading)
            points.append((x, y))
            continue
        radius = seg.joint_length / th
        x0, y0, h0 = x, y, heading
        for i in range(1, arc_points + 1):
            t = i / arc_points
            x = x0 + radius * (math.sin(h0 + t * th) - math.sin(h0))
            y = y0 + radius * (math.cos(h0) - math.cos(h0 + t * th))
            points.append((x, y))
        heading = h0 + th
    return np.array(points), (x, y)


def curvature_profile(limb: LimbSpec, theta) -> list[tuple[float, float, float]]:
    """Piecewise-constant curvature along the limb.

    Returns (arc_start, arc_end, curvature) per segment, base to foot.
    Curvature over joint i is theta_i / joint_length_i, zero on links, so
    integrating each joint's span recovers theta_i exactly.
    """
    theta = list(theta)
    joints = limb.joints
    if len(theta) != len(joints):
        raise DesignError(f"expected {len(joints)} joint angles, "
                          f"got {len(theta)}")
    out = []
    s = 0.0
    it = iter(theta)
    for seg in limb.segments:
        if isinstance(seg, Link):
            out.append((s, s + seg.length, 0.0))
            s += seg.length
        else:
            th = next(it)
            out.append((s, s + seg.joint_length, th / seg.joint_length))
            s += seg.joint_length
    return out


def _curvature_at(profile, s: float) -> float:
    for s0, s1, kappa in profile:
        if s0 <= s < s1:
            return kappa
    return profile[-1][2] if profile else 0.0


def sweep_cycle(limb: LimbSpec, max_pull: Optional[float] = None,
                steps: int = 101, arc_bins: int = 64) -> CycleResult:
    """Simulate one tendon pull-and-release cycle on a uniform pull grid.

    max_pull defaults to the limb's jam capacity (the tendon throw that
    brings every joint to its stop). stroke_distance is the horizontal
    extent of the foot path over the whole cycle; stroke_ratio divides it
    by max_pull. The curvature map has one row per cycle step and one
    column per arc-length bin.
    """
    if steps < 2:
        raise DesignError("a sweep needs at least 2 steps")
    if max_pull is None:
        max_pull = limb.pull_capacity
    if max_pull < 0:
        raise DesignError("max_pull must be nonnegative")
    up = np.linspace(0.0, max_pull, steps)
    pulls = np.concatenate([up, up[-2::-1]])

    states = []
    feet = []
    bins = (np.arange(arc_bins) + 0.5) * (limb.total_length / arc_bins)
    kappa_rows = []
    for pull in pulls:
        state = equilibrium_solve(limb, float(pull))
        states.append(state)
        _, foot = forward_kinematics(limb, state.theta, arc_points=1)
        feet.append(foot)
        profile = curvature_profile(limb, state.theta)
        kappa_rows.append([_curvature_at(profile, s) for s in bins])

    foot_path = np.array(feet)
    distance = float(foot_path[:, 0].max() - foot_path[:, 0].min())
    ratio = distance / max_pull if max_pull > 0 else 0.0
    return CycleResult(pulls=pulls, states=tuple(states), foot_path=foot_path,
                       metrics=StrokeMetrics(distance, ratio),
                       curvature_map=np.array(kappa_rows), arc_bins=bins)


def limb_from_document(doc: DesignDoc, name: str) -> LimbSpec:
    """Resolve a document limb into a simulation-ready LimbSpec.

    Joint stiffness comes from the referenced flexure via the pseudo-rigid
    -body conversion unless the document gives it explicitly; the jam cap
    comes from the referenced limit geometry unless jam_angle_deg is given.
    """
    if name not in doc.limbs:
        raise DesignError(f"document defines no limb named {name!r}")
    segments = []
    for seg in doc.limbs[name].segments:
        if isinstance(seg, LinkEntry):
            segments.append(Link(seg.length_mm * MM))
            continue
        assert isinstance(seg, JointEntry)
        joint_length = seg.joint_length_mm * MM
        if seg.torsional_stiffness_nm_per_rad is not None:
            k_theta = seg.torsional_stiffness_nm_per_rad
        else:
            k_theta = torsional_stiffness(doc.flexures[seg.flexure],
                                          joint_length)
        if seg.jam_angle_deg is not None:
            cap = math.radians(seg.jam_angle_deg)
        elif seg.flexional_limit is not None:
            cap = flexional_jam_angle(
                doc.flexional_limits[seg.flexional_limit].spec)
        else:
            cap = extensional_jam_angle(
                doc.extensional_limits[seg.extensional_limit].spec)
        segments.append(JointDef(torsional_stiffness=k_theta,
                                 joint_length=joint_length,
                                 jam_angle=cap,
                                 routing_offset=seg.routing_offset_mm * MM,
                                 sense=seg.sense))
    return LimbSpec(tuple(segments))
