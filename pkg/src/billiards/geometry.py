"""Billiard table geometry: boundary components, assembly, validation.

A table is a closed chain of circular arcs and straight segments. Arcs come
in two orientations: dispersing walls bulge into the domain (the particle
sees a convex obstacle, curvature counted positive) and focusing walls curve
around the domain (curvature negative). Flat segments are neutral.

Conventions fixed here and relied on everywhere else:
  * the boundary is traversed counterclockwise, domain on the left;
  * arclength r runs over [0, total_length) with half-open component
    ranges, corner r-values belonging to the lower-index component;
  * the inward normal is the left normal of the traversal direction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

EPS_GEOM = 1e-12       # relative closure/validation tolerance (units of diameter)
EPS_CORNER = 1e-9      # rad, interior angle below this is a cusp

DISPERSING = "dispersing"
FOCUSING = "focusing"

FAMILIES = ("cusped", "flower", "stadium", "custom")


class GeometryError(ValueError):
    """Raised for an unbuildable or invalid table description."""


def _unit(v):
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise GeometryError("zero-length direction")
    return (v[0] / n, v[1] / n)


@dataclass(frozen=True)
class Segment:
    """Straight wall from a to b (traversal direction a -> b)."""

    a: tuple
    b: tuple

    kind = "segment"
    orientation = "neutral"
    curvature_sign = 0

    @property
    def length(self):
        return math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])

    @property
    def start(self):
        return self.a

    @property
    def end(self):
        return self.b

    def point_at(self, s):
        t = _unit((self.b[0] - self.a[0], self.b[1] - self.a[1]))
        return (self.a[0] + s * t[0], self.a[1] + s * t[1])

    def tangent_at(self, s):
        return _unit((self.b[0] - self.a[0], self.b[1] - self.a[1]))

    def normal_at(self, s):
        tx, ty = self.tangent_at(s)
        return (-ty, tx)

    def curvature_at(self, s):
        return 0.0

    def to_spec(self):
        return {"kind": "segment", "a": list(self.a), "b": list(self.b)}


@dataclass(frozen=True)
class Arc:
    """Circular wall traversed from angle theta0 to theta1 around center.

    The traversal is monotone in the angle; theta1 > theta0 walks
    counterclockwise around the supporting circle.  With the domain kept on
    the left this makes increasing-angle arcs focusing and decreasing-angle
    arcs dispersing; the declared orientation is validated against that.
    """

    center: tuple
    radius: float
    theta0: float
    theta1: float
    orientation: str

    kind = "arc"

    @property
    def span(self):
        return abs(self.theta1 - self.theta0)

    @property
    def length(self):
        return self.radius * self.span

    @property
    def curvature_sign(self):
        return 1 if self.orientation == DISPERSING else -1

    def angle_at(self, s):
        direction = 1.0 if self.theta1 >= self.theta0 else -1.0
        return self.theta0 + direction * s / self.radius

    def point_at_angle(self, theta):
        return (self.center[0] + self.radius * math.cos(theta),
                self.center[1] + self.radius * math.sin(theta))

    @property
    def start(self):
        return self.point_at_angle(self.theta0)

    @property
    def end(self):
        return self.point_at_angle(self.theta1)

    def point_at(self, s):
        return self.point_at_angle(self.angle_at(s))

    def tangent_at(self, s):
        th = self.angle_at(s)
        d = 1.0 if self.theta1 >= self.theta0 else -1.0
        return (-d * math.sin(th), d * math.cos(th))

    def normal_at(self, s):
        # left of tangent; points at the center for focusing arcs, away for dispersing
        tx, ty = self.tangent_at(s)
        return (-ty, tx)

    def curvature_at(self, s):
        return self.curvature_sign / self.radius

    def to_spec(self):
        return {
            "kind": "arc",
            "center": list(self.center),
            "radius": self.radius,
            "start_angle": self.theta0,
            "end_angle": self.theta1,
            "orientation": self.orientation,
        }


@dataclass(frozen=True)
class Corner:
    """Junction of consecutive components (cyclic)."""

    position: tuple
    interior_angle: float
    kind: str          # "transversal" | "cusp"
    r: float           # global arclength of the junction
    index: int         # corner i joins component i to component i+1 (mod n)


class BilliardTable:
    """Validated closed billiard table.

    Immutable after construction; precomputes flat numpy views of the
    component data for the vectorized collision kernel.
    """

    def __init__(self, components, family="custom"):
        if family not in FAMILIES:
            raise GeometryError(f"unknown family {family!r}")
        if len(components) < 1:
            raise GeometryError("empty component list")
        self.components = tuple(components)
        self.family = family
        self._validate_components()

        lengths = [c.length for c in self.components]
        self.offsets = np.concatenate([[0.0], np.cumsum(lengths)])
        self.total_length = float(self.offsets[-1])

        pts = self.sample_boundary(512)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        self.diameter = float(np.hypot(*(hi - lo)))
        self.abs_tol = EPS_GEOM * self.diameter

        self._check_closure()
        self._check_self_intersection()
        self.corners = self._classify_corners()
        self.area = self._signed_area()
        if self.area <= 0:
            raise GeometryError("boundary must be traversed counterclockwise")
        self._build_arrays()

    # -- validation ---------------------------------------------------------

    def _validate_components(self):
        for i, c in enumerate(self.components):
            if c.kind == "arc":
                if c.radius <= 0:
                    raise GeometryError(f"component {i}: arc radius must be positive")
                if c.span <= 0 or c.span >= 2 * math.pi:
                    raise GeometryError(f"component {i}: arc span must lie in (0, 2pi)")
                if c.orientation not in (DISPERSING, FOCUSING):
                    raise GeometryError(f"component {i}: bad orientation {c.orientation!r}")
                ccw = c.theta1 > c.theta0
                if ccw != (c.orientation == FOCUSING):
                    raise GeometryError(
                        f"component {i}: declared {c.orientation} but traversal "
                        "direction implies the opposite (domain-on-left convention)")
            elif c.kind == "segment":
                if c.length == 0.0:
                    raise GeometryError(f"component {i}: zero-length segment")
            else:
                raise GeometryError(f"component {i}: unknown kind {c.kind!r}")

    def _check_closure(self):
        for i, c in enumerate(self.components):
            nxt = self.components[(i + 1) % len(self.components)]
            gap = math.dist(c.end, nxt.start)
            if gap > 100 * self.abs_tol:
                raise GeometryError(
                    f"open boundary: component {i} ends {gap:.3e} away from "
                    f"component {(i + 1) % len(self.components)}")

    def _check_self_intersection(self):
        n = len(self.components)
        for i in range(n):
            for j in range(i + 1, n):
                neighbors = (j == i + 1) or (i == 0 and j == n - 1)
                if _components_intersect(self.components[i], self.components[j],
                                         self.abs_tol, exclude_endpoints=neighbors):
                    raise GeometryError(f"self-intersecting boundary: components {i} and {j}")

    def _classify_corners(self):
        corners = []
        n = len(self.components)
        for i in range(n):
            c = self.components[i]
            nxt = self.components[(i + 1) % n]
            t_in = c.tangent_at(c.length)
            t_out = nxt.tangent_at(0.0)
            turn = math.atan2(t_in[0] * t_out[1] - t_in[1] * t_out[0],
                              t_in[0] * t_out[0] + t_in[1] * t_out[1])
            interior = math.pi - turn
            # at a cusp the tangent reverses => turn = +pi up to rounding
            if abs(interior) <= EPS_CORNER or abs(interior - 2 * math.pi) <= EPS_CORNER:
                kind = "cusp"
                interior = 0.0
                for comp in (c, nxt):
                    if comp.kind != "arc" or comp.orientation != DISPERSING:
                        raise GeometryError(
                            f"corner {i}: cusp corners may only join dispersing arcs")
            else:
                kind = "transversal"
            corners.append(Corner(position=c.end, interior_angle=interior,
                                  kind=kind, r=float(self.offsets[i] + c.length) % self.total_length
                                  if self.total_length else 0.0, index=i))
        return tuple(corners)

    def _signed_area(self):
        # exact contour integral (1/2) \oint (x dy - y dx) over arcs/segments
        total = 0.0
        for c in self.components:
            if c.kind == "segment":
                total += 0.5 * (c.a[0] * c.b[1] - c.a[1] * c.b[0])
            else:
                dth = c.theta1 - c.theta0
                e0 = (math.cos(c.theta0), math.sin(c.theta0))
                e1 = (math.cos(c.theta1), math.sin(c.theta1))
                cross = c.center[0] * (e1[1] - e0[1]) - c.center[1] * (e1[0] - e0[0])
                total += 0.5 * (c.radius * cross + c.radius ** 2 * dth)
        return total

    # -- arclength parameterization ------------------------------------------

    def component_index(self, r):
        r = r % self.total_length
        i = int(np.searchsorted(self.offsets, r, side="right") - 1)
        return min(i, len(self.components) - 1)

    def boundary_point(self, r):
        """Boundary data at arclength r: (position, tangent, inward normal, curvature)."""
        if not 0 <= r < self.total_length + self.abs_tol:
            raise GeometryError(f"arclength {r} outside [0, {self.total_length})")
        i = self.component_index(r)
        s = r - self.offsets[i]
        c = self.components[i]
        return c.point_at(s), c.tangent_at(s), c.normal_at(s), c.curvature_at(s)

    def sample_boundary(self, per_component):
        pts = []
        for c in self.components:
            s = np.linspace(0.0, c.length, per_component, endpoint=False)
            pts.extend(c.point_at(si) for si in s)
        return np.asarray(pts)

    # -- point membership ------------------------------------------------------

    def contains(self, points, tol=0.0):
        """Ray-crossing test, exact for arc/segment boundaries.

        points: (n, 2) array. tol > 0 accepts points within tol of the
        boundary (needed when testing curves that touch the boundary).
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        inside = _crossing_test(self, pts)
        if tol > 0.0:
            near = self.boundary_distance(pts) <= tol
            inside = inside | near
        return inside if len(np.shape(points)) > 1 else bool(inside[0])

    def boundary_distance(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        best = np.full(len(pts), np.inf)
        for c in self.components:
            if c.kind == "segment":
                a = np.array(c.a)
                d = np.array(c.b) - a
                t = np.clip(((pts - a) @ d) / (d @ d), 0.0, 1.0)
                proj = a + t[:, None] * d
                best = np.minimum(best, np.hypot(*(pts - proj).T))
            else:
                rel = pts - np.array(c.center)
                rho = np.hypot(rel[:, 0], rel[:, 1])
                ang = np.arctan2(rel[:, 1], rel[:, 0])
                on_arc = _angle_in_span(ang, c.theta0, c.theta1)
                d_circle = np.abs(rho - c.radius)
                d_ends = np.minimum(np.hypot(*(pts - np.array(c.start)).T),
                                    np.hypot(*(pts - np.array(c.end)).T))
                best = np.minimum(best, np.where(on_arc, d_circle, d_ends))
        return best

    # -- flat arrays for the vector kernel -------------------------------------

    def _build_arrays(self):
        n = len(self.components)
        self.n_components = n
        self.comp_kind = np.array([0 if c.kind == "arc" else 1 for c in self.components])
        self.comp_offset = self.offsets[:-1].copy()
        self.comp_length = np.array([c.length for c in self.components])
        self.arc_center = np.array([c.center if c.kind == "arc" else (0.0, 0.0)
                                    for c in self.components])
        self.arc_radius = np.array([c.radius if c.kind == "arc" else 1.0
                                    for c in self.components])
        self.arc_theta0 = np.array([c.theta0 if c.kind == "arc" else 0.0
                                    for c in self.components])
        self.arc_dir = np.array([(1.0 if c.theta1 >= c.theta0 else -1.0) if c.kind == "arc"
                                 else 0.0 for c in self.components])
        self.arc_span = np.array([c.span if c.kind == "arc" else 0.0 for c in self.components])
        self.seg_a = np.array([c.a if c.kind == "segment" else (0.0, 0.0)
                               for c in self.components])
        self.seg_tangent = np.array([c.tangent_at(0.0) if c.kind == "segment" else (1.0, 0.0)
                                     for c in self.components])
        self.seg_normal = np.array([c.normal_at(0.0) if c.kind == "segment" else (0.0, 1.0)
                                    for c in self.components])
        self.comp_curv_sign = np.array([c.curvature_sign for c in self.components])
        cusp_rs = [k.r for k in self.corners if k.kind == "cusp"]
        self.cusp_r = np.array(cusp_rs) if cusp_rs else np.empty(0)
        self.corner_r = np.array(sorted(k.r for k in self.corners))

    # -- classification helpers -------------------------------------------------

    def component_class(self, i):
        """'dispersing' (M+), 'focusing' (M-) or 'neutral' (M0)."""
        return self.components[i].orientation if self.components[i].kind == "arc" else "neutral"

    @property
    def mean_free_path(self):
        # standard planar billiard identity: pi |Q| / |dQ|
        return math.pi * self.area / self.total_length

    def rescaled(self, s):
        """The same table with all lengths multiplied by s > 0."""
        if s <= 0:
            raise GeometryError("scale factor must be positive")
        comps = []
        for c in self.components:
            if c.kind == "segment":
                comps.append(Segment((c.a[0] * s, c.a[1] * s), (c.b[0] * s, c.b[1] * s)))
            else:
                comps.append(Arc((c.center[0] * s, c.center[1] * s), c.radius * s,
                                 c.theta0, c.theta1, c.orientation))
        return BilliardTable(comps, family=self.family)

    def to_spec(self):
        return {"components": [c.to_spec() for c in self.components], "family": self.family}


# -- intersection helpers ------------------------------------------------------


def _angle_in_span(ang, theta0, theta1):
    """Whether angles lie on the traversed arc [theta0, theta1] (either direction)."""
    lo, hi = (theta0, theta1) if theta1 >= theta0 else (theta1, theta0)
    rel = np.mod(np.asarray(ang) - lo, 2 * math.pi)
    return rel <= (hi - lo) + 1e-14


def _components_intersect(c1, c2, tol, exclude_endpoints):
    """Coarse but exact-shape intersection test used only at build time."""
    pts = _pair_intersections(c1, c2, tol)
    if not pts:
        return False
    if not exclude_endpoints:
        return True
    ends = [c1.start, c1.end, c2.start, c2.end]
    for p in pts:
        if all(math.dist(p, e) > 100 * tol for e in ends):
            return True
    return False


def _pair_intersections(c1, c2, tol):
    if c1.kind == "segment" and c2.kind == "segment":
        return _seg_seg(c1, c2, tol)
    if c1.kind == "arc" and c2.kind == "arc":
        return _arc_arc(c1, c2, tol)
    seg, arc = (c1, c2) if c1.kind == "segment" else (c2, c1)
    return _seg_arc(seg, arc, tol)


def _seg_seg(s1, s2, tol):
    p, r = np.array(s1.a), np.array(s1.b) - np.array(s1.a)
    q, s = np.array(s2.a), np.array(s2.b) - np.array(s2.a)
    denom = r[0] * s[1] - r[1] * s[0]
    if abs(denom) < 1e-300:
        return []
    t = ((q - p)[0] * s[1] - (q - p)[1] * s[0]) / denom
    u = ((q - p)[0] * r[1] - (q - p)[1] * r[0]) / denom
    if -tol <= t <= 1 + tol and -tol <= u <= 1 + tol:
        return [tuple(p + t * r)]
    return []


def _seg_arc(seg, arc, tol):
    a = np.array(seg.a)
    d = np.array(seg.b) - a
    L = np.hypot(*d)
    d = d / L
    m = a - np.array(arc.center)
    b = m @ d
    c = m @ m - arc.radius ** 2
    disc = b * b - c
    if disc < 0:
        return []
    out = []
    for t in (-b - math.sqrt(disc), -b + math.sqrt(disc)):
        if -tol <= t <= L + tol:
            p = a + t * d
            ang = math.atan2(p[1] - arc.center[1], p[0] - arc.center[0])
            if _angle_in_span(ang, arc.theta0, arc.theta1):
                out.append(tuple(p))
    return out


def _arc_arc(a1, a2, tol):
    c1, c2 = np.array(a1.center), np.array(a2.center)
    d = math.dist(a1.center, a2.center)
    r1, r2 = a1.radius, a2.radius
    if d < 1e-300 or d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return []
    x = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - x * x
    h = math.sqrt(max(h2, 0.0))
    u = (c2 - c1) / d
    perp = np.array([-u[1], u[0]])
    out = []
    for sgn in (1.0, -1.0):
        p = c1 + x * u + sgn * h * perp
        ang1 = math.atan2(p[1] - c1[1], p[0] - c1[0])
        ang2 = math.atan2(p[1] - c2[1], p[0] - c2[0])
        if _angle_in_span(ang1, a1.theta0, a1.theta1) and _angle_in_span(ang2, a2.theta0, a2.theta1):
            out.append(tuple(p))
        if h == 0.0:
            break
    return out


def _crossing_test(table, pts):
    """Count boundary crossings of a rightward ray from each point.

    Points landing on a tangency or corner of the ray are retried with a
    perturbed ray direction; exact for this curve class otherwise.
    """
    rng_angles = (0.0, 0.37, 1.13, 2.41)
    inside = np.zeros(len(pts), dtype=bool)
    todo = np.arange(len(pts))
    for ang in rng_angles:
        if len(todo) == 0:
            break
        d = np.array([math.cos(ang), math.sin(ang)])
        crossings, degenerate = _count_crossings(table, pts[todo], d)
        ok = ~degenerate
        inside[todo[ok]] = crossings[ok] % 2 == 1
        todo = todo[degenerate]
    return inside


def _count_crossings(table, pts, d):
    n = len(pts)
    crossings = np.zeros(n, dtype=int)
    degenerate = np.zeros(n, dtype=bool)
    eps = 1e-10
    for c in table.components:
        if c.kind == "segment":
            a = np.array(c.a)
            seg = np.array(c.b) - a
            denom = d[0] * seg[1] - d[1] * seg[0]
            if abs(denom) < 1e-14:
                # ray parallel to segment: degenerate only if collinear and ahead
                continue
            rel = a - pts
            t = (rel[:, 0] * seg[1] - rel[:, 1] * seg[0]) / denom
            u = (rel[:, 0] * d[1] - rel[:, 1] * d[0]) / (-denom)
            hit = (t > 0) & (u > -eps) & (u < 1 + eps)
            edge = hit & ((u < eps) | (u > 1 - eps))
            crossings += (hit & ~edge).astype(int)
            degenerate |= edge
        else:
            m = pts - np.array(c.center)
            b = m @ d
            cc = np.einsum("ij,ij->i", m, m) - c.radius ** 2
            disc = b * b - cc
            has = disc > 0
            sq = np.sqrt(np.where(has, disc, 0.0))
            for sgn in (-1.0, 1.0):
                t = -b + sgn * sq
                p = pts + t[:, None] * d
                ang = np.arctan2(p[:, 1] - c.center[1], p[:, 0] - c.center[0])
                onspan = _angle_in_span(ang, c.theta0, c.theta1)
                hit = has & (t > 0) & onspan
                # tangency or span-endpoint hits are degenerate
                lo, hi = min(c.theta0, c.theta1), max(c.theta0, c.theta1)
                rel_ang = np.mod(ang - lo, 2 * math.pi)
                near_end = (rel_ang < eps) | (np.abs(rel_ang - (hi - lo)) < eps)
                tangent = has & (disc < (eps * c.radius) ** 2)
                degenerate |= has & (t > 0) & ((onspan & near_end) | tangent)
                crossings += (hit & ~tangent & ~near_end).astype(int)
    return crossings, degenerate


# -- table builders --------------------------------------------------------------


def build_table(spec, family=None):
    """Assemble and validate a table from a declarative component list.

    spec: dict with keys "components" and optional "family", or a path to a
    JSON file with that shape.
    """
    if isinstance(spec, (str, Path)):
        with open(spec) as fh:
            spec = json.load(fh)
    comps = []
    for i, c in enumerate(spec["components"]):
        kind = c.get("kind")
        if kind == "arc":
            comps.append(Arc(center=tuple(c["center"]), radius=float(c["radius"]),
                             theta0=float(c["start_angle"]), theta1=float(c["end_angle"]),
                             orientation=c["orientation"]))
        elif kind == "segment":
            comps.append(Segment(a=tuple(c["a"]), b=tuple(c["b"])))
        else:
            raise GeometryError(f"component {i}: unknown kind {kind!r}")
    fam = family or spec.get("family", "custom")
    return BilliardTable(comps, family=fam)


def save_table(table, path):
    with open(path, "w") as fh:
        json.dump(table.to_spec(), fh, indent=2)


def make_stadium(L, R):
    """Bunimovich stadium: two length-L walls at distance 2R joined by semicircles."""
    if L <= 0 or R <= 0:
        raise GeometryError("stadium requires L > 0 and R > 0")
    half = L / 2
    comps = [
        Segment((-half, -R), (half, -R)),
        Arc((half, 0.0), R, -math.pi / 2, math.pi / 2, FOCUSING),
        Segment((half, R), (-half, R)),
        Arc((-half, 0.0), R, math.pi / 2, 3 * math.pi / 2, FOCUSING),
    ]
    return BilliardTable(comps, family="stadium")


def make_three_cusp(R):
    """Curvilinear triangle between three mutually tangent radius-R disks.

    The three dispersing arcs meet pairwise at zero angle: three cusps with
    threefold rotational symmetry. Total boundary length is pi * R.
    """
    if R <= 0:
        raise GeometryError("three-cusp table requires R > 0")
    d = 2 * R / math.sqrt(3.0)
    angles = [math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3]
    centers = [(d * math.cos(a), d * math.sin(a)) for a in angles]
    comps = []
    for i in range(3):
        c = centers[i]
        nxt = centers[(i + 1) % 3]
        prv = centers[(i - 1) % 3]
        # arc faces the origin, spanning between the two tangency midpoints
        th_next = math.atan2((nxt[1] - c[1]), (nxt[0] - c[0]))
        th_prev = math.atan2((prv[1] - c[1]), (prv[0] - c[0]))
        # dispersing: traversed with decreasing angle (domain outside the disk);
        # walk from the previous tangency to the next one the short way
        while th_prev <= th_next:
            th_prev += 2 * math.pi
        comps.append(Arc(c, R, th_prev, th_next, DISPERSING))
    # order the arcs so consecutive endpoints meet
    ordered = [comps[0]]
    remaining = comps[1:]
    while remaining:
        last = ordered[-1]
        nxt = min(remaining, key=lambda a: math.dist(last.end, a.start))
        ordered.append(nxt)
        remaining.remove(nxt)
    return BilliardTable(ordered, family="cusped")


def make_flower(n_petals=4, petal_radius=1.0, petal_span=2 * math.pi / 3,
                petal_distance=1.5, wall_distance=6.0):
    """Bunimovich flower: focusing petal arcs alternating with dispersing walls.

    Petal k is an arc of a radius `petal_radius` circle centered at distance
    `petal_distance` from the origin, spanning `petal_span` symmetrically
    about the outward direction. Consecutive petal tips are joined by
    dispersing arcs centered at `wall_distance` along the bisecting
    direction. The defaults are a validated fixture; other parameter sets
    must pass validate_flower_conditions.
    """
    if n_petals < 3:
        raise GeometryError("flower requires at least 3 petals")
    if not 0 < petal_span < math.pi:
        raise GeometryError("petal span must lie in (0, pi): strictly less than a semicircle")
    comps = []
    step = 2 * math.pi / n_petals
    for k in range(n_petals):
        ax = k * step
        c = (petal_distance * math.cos(ax), petal_distance * math.sin(ax))
        petal = Arc(c, petal_radius, ax - petal_span / 2, ax + petal_span / 2, FOCUSING)
        # dispersing wall joining this petal's end to the next petal's start
        ax_next = (k + 1) * step
        c_next = (petal_distance * math.cos(ax_next), petal_distance * math.sin(ax_next))
        p_end = petal.end
        p_next = Arc(c_next, petal_radius, ax_next - petal_span / 2,
                     ax_next + petal_span / 2, FOCUSING).start
        bis = ax + step / 2
        wc = (wall_distance * math.cos(bis), wall_distance * math.sin(bis))
        wr = math.dist(wc, p_end)
        if abs(math.dist(wc, p_next) - wr) > 1e-9 * wr:
            raise GeometryError("flower wall endpoints are not equidistant from the wall center")
        th_end = math.atan2(p_end[1] - wc[1], p_end[0] - wc[0])
        th_next = math.atan2(p_next[1] - wc[1], p_next[0] - wc[0])
        while th_end <= th_next:
            th_end += 2 * math.pi
        comps.append(petal)
        comps.append(Arc(wc, wr, th_end, th_next, DISPERSING))
    table = BilliardTable(comps, family="flower")
    report = validate_flower_conditions(table)
    if not report.ok:
        raise GeometryError(f"flower conditions violated: {report.failures()}")
    return table


@dataclass
class FlowerReport:
    no_neutral: bool
    arcs_below_semicircle: bool
    circles_inside: bool
    no_cusps: bool
    detail: dict

    @property
    def ok(self):
        return (self.no_neutral and self.arcs_below_semicircle
                and self.circles_inside and self.no_cusps)

    def failures(self):
        names = {
            "no_neutral": "(i) neutral components present",
            "arcs_below_semicircle": "(ii) focusing arc not strictly below a semicircle",
            "circles_inside": "(iii) completed circle leaves the domain",
            "no_cusps": "(iv) cusp corners present",
        }
        return [msg for key, msg in names.items() if not getattr(self, key)]

    def as_dict(self):
        return {
            "i_no_neutral": self.no_neutral,
            "ii_arcs_below_semicircle": self.arcs_below_semicircle,
            "iii_circles_inside": self.circles_inside,
            "iv_no_cusps": self.no_cusps,
            "ok": self.ok,
            "detail": self.detail,
        }


def validate_flower_conditions(table, circle_samples=10_000):
    """Check Bunimovich's four admissibility conditions, reporting each."""
    no_neutral = all(c.kind == "arc" for c in table.components)
    focusing = [c for c in table.components if c.kind == "arc" and c.orientation == FOCUSING]
    arcs_ok = all(c.span < math.pi - EPS_CORNER for c in focusing)
    margin = 10 * table.abs_tol
    circles_ok = True
    worst = 0.0
    for c in focusing:
        th = np.linspace(0.0, 2 * math.pi, circle_samples, endpoint=False)
        pts = np.stack([c.center[0] + c.radius * np.cos(th),
                        c.center[1] + c.radius * np.sin(th)], axis=1)
        ok = table.contains(pts, tol=margin)
        if not ok.all():
            circles_ok = False
            outside = pts[~ok]
            worst = max(worst, float(table.boundary_distance(outside).max()))
    no_cusps = all(k.kind != "cusp" for k in table.corners)
    return FlowerReport(no_neutral, arcs_ok, circles_ok, no_cusps,
                        detail={"n_focusing": len(focusing),
                                "circle_samples": circle_samples,
                                "worst_outside_distance": worst})
