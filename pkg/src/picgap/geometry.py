"""Rate-region geometry in three dimensions.

Outer regions are half-space polytopes ``{R >= 0 : c . R <= b}``. Inner regions
are downward closures (within the nonnegative orthant) of the convex hull of
a finite corner set. Membership in the latter is a linear feasibility problem;
for batches we build the facet description of the closure once with Qhull.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

GEOM_TOL = 1e-6
FORMULA_TOL = 1e-9


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple[float, ...]
    bound: float
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "bound", float(self.bound))
        if not any(c != 0 for c in self.coeffs):
            raise ValueError("constraint coefficients are all zero")
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"coefficients must be nonnegative, got {self.coeffs}")
        if not (np.isfinite(self.bound) and self.bound >= 0):
            raise ValueError(f"bound must be finite and >= 0, got {self.bound}")

    def value(self, p) -> float:
        return float(np.dot(self.coeffs, p))

    @property
    def support(self) -> tuple[int, ...]:
        """1-based indices of the rates with nonzero coefficient."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c != 0)


@dataclass(frozen=True)
class HalfSpaceRegion:
    constraints: tuple[LinearConstraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def dim(self) -> int:
        return len(self.constraints[0].coeffs)

    @property
    def A(self) -> np.ndarray:
        return np.array([c.coeffs for c in self.constraints])

    @property
    def b(self) -> np.ndarray:
        return np.array([c.bound for c in self.constraints])

    def is_bounded(self) -> bool:
        return bool(np.all((self.A > 0).any(axis=0)))

    def row(self, *support: int) -> LinearConstraint:
        """The constraint whose nonzero coefficients sit exactly on ``support``."""
        want = tuple(sorted(support))
        for c in self.constraints:
            if c.support == want:
                return c
        raise KeyError(f"no constraint on rates {want}")

    def axis_bound(self, axis: int) -> float:
        """Tightest bound on rate ``axis`` (1-based) alone: ``min b / c_axis``."""
        A, b = self.A, self.b
        col = A[:, axis - 1]
        mask = col > 0
        if not mask.any():
            raise DomainError(f"rate {axis} is unbounded")
        return float(np.min(np.maximum(b[mask], 0.0) / col[mask]))

    def supports(self) -> set[tuple[int, ...]]:
        return {c.support for c in self.constraints}


@dataclass(frozen=True)
class CrossSection2D:
    fixed_axis: int
    fixed_value: float
    free_axes: tuple[int, int]
    constraints: tuple[LinearConstraint, ...]

    def region(self) -> HalfSpaceRegion:
        return HalfSpaceRegion(self.constraints)

    def free_bound(self, axis: int) -> float:
        """Tightest bound on free rate ``axis`` (1-based, 3-D numbering)."""
        return self.region().axis_bound(self.free_axes.index(axis) + 1)

    def sum_bound(self) -> float | None:
        """Bound on the sum of both free rates, if such a row is present."""
        rows = [c.bound for c in self.constraints if c.coeffs == (1.0, 1.0)]
        return min(rows) if rows else None


def contains_halfspace(region: HalfSpaceRegion, p, tol: float = GEOM_TOL) -> bool:
    p = np.asarray(p, dtype=float)
    if np.any(p < -tol):
        return False
    return bool(np.all(region.A @ p <= region.b + tol))


def contains_halfspace_many(region: HalfSpaceRegion, pts, tol: float = GEOM_TOL) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    ok = np.all(pts >= -tol, axis=1)
    return ok & np.all(pts @ region.A.T <= region.b + tol, axis=1)


def cross_section(region: HalfSpaceRegion, axis: int, value: float) -> CrossSection2D:
    """Fix rate ``axis`` (1-based) at ``value`` and keep constraints on the other two.

    Rows that involve only the fixed rate become vacuous (they hold by the
    domain check) and are dropped; the rest have their bound reduced by
    ``coeff * value``. Rounding residue below zero is clamped.
    """
    top = region.axis_bound(axis)
    if not (0.0 <= value <= top + FORMULA_TOL):
        raise DomainError(f"R{axis} = {value} outside [0, {top}]")
    free = tuple(i for i in range(1, region.dim + 1) if i != axis)
    rows = []
    for c in region.constraints:
        fc = tuple(c.coeffs[i - 1] for i in free)
        if not any(fc):
            continue
        bound = max(c.bound - c.coeffs[axis - 1] * value, 0.0)
        rows.append(LinearConstraint(fc, bound, c.label))
    return CrossSection2D(axis, float(value), free, tuple(rows))


def ray_hit(region: HalfSpaceRegion, direction) -> tuple[np.ndarray, tuple[int, ...]]:
    """Scale a nonnegative direction to the first binding constraint.

    Returns the boundary point and the indices of all constraints binding at
    that scale (ties are reported together).
    """
    d = np.asarray(direction, dtype=float)
    A, b = region.A, region.b
    rate = A @ d
    mask = rate > 0
    if not mask.any():
        raise DomainError("region is unbounded along the ray")
    t = np.full(len(b), np.inf)
    t[mask] = np.maximum(b[mask], 0.0) / rate[mask]
    tmin = t.min()
    binding = tuple(int(i) for i in np.flatnonzero(np.isclose(t, tmin, rtol=1e-12, atol=0)))
    return tmin * d, binding


def sample_directions(count: int, seed: int, dim: int = 3) -> np.ndarray:
    """Directions uniform on the positive octant of the unit sphere."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    d = np.abs(rng.standard_normal((count, dim)))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def sample_boundary(region: HalfSpaceRegion, count: int, seed: int) -> np.ndarray:
    """Pareto-boundary points hit by random rays from the origin (``count x 3``)."""
    if not region.is_bounded():
        raise DomainError("region is unbounded")
    dirs = sample_directions(count, seed, region.dim)
    A, b = region.A, region.b
    rates = dirs @ A.T
    with np.errstate(divide="ignore"):
        t = np.where(rates > 0, np.maximum(b, 0.0) / rates, np.inf)
    return dirs * t.min(axis=1, keepdims=True)


# -- inner regions -----------------------------------------------------------


@dataclass
class CornerCloud:
    """Finite set of achievable corners; the region is their downward-closed hull."""

    corners: np.ndarray
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        self.corners = np.atleast_2d(np.asarray(self.corners, dtype=float))
        if self.corners.size == 0:
            raise ValueError("corner cloud is empty")
        if np.any(self.corners < 0):
            raise ValueError("corners must be componentwise nonnegative")

    def __len__(self) -> int:
        return len(self.corners)

    def scaled(self, factor: float) -> "CornerCloud":
        return CornerCloud(self.corners * factor, list(self.provenance))

    def subset(self, keep) -> "CornerCloud":
        keep = np.asarray(keep)
        if keep.dtype == bool:
            keep = np.flatnonzero(keep)
        prov = [self.provenance[i] for i in keep] if self.provenance else []
        return CornerCloud(self.corners[keep], prov)

    def reduced(self) -> "CornerCloud":
        """Drop corners that cannot be vertices of the downward-closed hull.

        A corner interior to the hull of the others is a convex combination
        of them, so only hull vertices are kept; those are then filtered to
        the Pareto-maximal ones. The represented region is unchanged.
        """
        keep = np.arange(len(self.corners))
        if len(keep) > 8:
            try:
                keep = np.sort(ConvexHull(self.corners).vertices)
            except QhullError:
                _, keep = np.unique(self.corners, axis=0, return_index=True)
                keep = np.sort(keep)
        sub = self.subset(keep)
        return sub.subset(pareto_mask(sub.corners))

    def extent(self) -> np.ndarray:
        """Componentwise maximum achievable rate."""
        return self.corners.max(axis=0)


def pareto_mask(pts: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Mask of points not weakly dominated by another point (duplicates keep one)."""
    pts = np.asarray(pts, dtype=float)
    n = len(pts)
    keep = np.ones(n, dtype=bool)
    idx = np.arange(n)
    for start in range(0, n, chunk):
        block = pts[start : start + chunk]
        ge = np.all(pts[None, :, :] >= block[:, None, :], axis=2)
        gt = np.any(pts[None, :, :] > block[:, None, :], axis=2)
        strictly = (ge & gt).any(axis=1)
        # among exact duplicates the lowest index survives
        dup = (ge & ~gt & (idx[None, :] < idx[start : start + chunk, None])).any(axis=1)
        keep[start : start + chunk] = ~(strictly | dup)
    return keep


def _downward_points(corners: np.ndarray) -> np.ndarray:
    """Corners plus every projection that zeroes a subset of coordinates."""
    dim = corners.shape[1]
    out = [corners]
    for r in range(1, dim + 1):
        for S in itertools.combinations(range(dim), r):
            q = corners.copy()
            q[:, list(S)] = 0.0
            out.append(q)
    return np.unique(np.vstack(out), axis=0)


def contains_inner(cloud: CornerCloud, p, tol: float = GEOM_TOL) -> bool:
    """Is there a convex combination of corners dominating ``p - tol``?

    Solved as a linear feasibility problem over the corner weights.
    """
    V = cloud.corners
    target = np.maximum(np.asarray(p, dtype=float) - tol, 0.0)
    if np.any(np.all(V >= target, axis=1)):
        return True
    n = len(V)
    res = linprog(
        c=np.zeros(n),
        A_ub=-V.T,
        b_ub=-target,
        A_eq=np.ones((1, n)),
        b_eq=[1.0],
        bounds=(0, None),
        method="highs",
    )
    return res.status == 0


class InnerHull:
    """Facet description of the downward-closed convex hull of a corner cloud.

    Falls back to per-point linear programs when the closure is not full
    dimensional (e.g. one rate is identically zero).
    """

    def __init__(self, cloud: CornerCloud):
        self.cloud = cloud
        corners = cloud.corners
        self.facets = None
        # rates that are identically zero are handled outside the hull
        self.active = np.flatnonzero(corners.max(axis=0) > FORMULA_TOL)
        self.vertices = corners
        sub = corners[:, self.active]
        if len(self.active) == 1:
            top = float(sub.max())
            self.facets = np.array([[1.0, -top]])
            return
        if len(self.active) == 0:
            return
        try:
            if len(sub) > len(self.active) + 1:
                sub = sub[ConvexHull(sub).vertices]
        except QhullError:
            pass
        try:
            hull = ConvexHull(_downward_points(sub))
        except QhullError:
            return
        self.facets = hull.equations  # rows [n, c] with n.x + c <= 0 inside
        full = np.zeros((len(hull.vertices), corners.shape[1]))
        full[:, self.active] = hull.points[hull.vertices]
        self.vertices = full

    def margin(self, pts, tol: float = GEOM_TOL) -> np.ndarray:
        """Largest facet violation of ``max(p - tol, 0)``; <= ~0 means inside."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        target = np.maximum(pts - tol, 0.0)
        dead = np.setdiff1d(np.arange(pts.shape[1]), self.active)
        off = target[:, dead].max(axis=1, initial=0.0)
        if len(self.active) == 0:
            return off
        if self.facets is None:
            return np.array(
                [0.0 if contains_inner(self.cloud, q, 0.0) else np.inf for q in target]
            )
        sub = target[:, self.active]
        return np.maximum((sub @ self.facets[:, :-1].T + self.facets[:, -1]).max(axis=1), off)

    def contains(self, pts, tol: float = GEOM_TOL) -> np.ndarray:
        return self.margin(pts, tol) <= FORMULA_TOL


# -- gaps and vertices ---------------------------------------------------------


@dataclass(frozen=True)
class GapRecord:
    axis_gaps: dict[int, float]
    sum_gap: float | None


def axis_gaps(outer: CrossSection2D, inner_corners, inner_sum: float | None = None) -> GapRecord:
    """Per-axis gap between a 2-D outer section and inner corners at the same fixed rate.

    ``inner_corners`` are 3-D achievable corners sharing the section's fixed
    rate (only the free coordinates are used). The sum gap compares the
    section's sum row with the best achievable free-rate sum, or with
    ``inner_sum`` when the caller knows it.
    """
    pts = np.atleast_2d(np.asarray(inner_corners, dtype=float))
    gaps = {}
    for ax in outer.free_axes:
        gaps[ax] = outer.free_bound(ax) - float(pts[:, ax - 1].max())
    s = outer.sum_bound()
    sum_gap = None
    if s is not None:
        a, b = outer.free_axes
        best = inner_sum if inner_sum is not None else float((pts[:, a - 1] + pts[:, b - 1]).max())
        sum_gap = s - best
    return GapRecord(gaps, sum_gap)


def vertices(region: HalfSpaceRegion, tol: float = FORMULA_TOL) -> np.ndarray:
    """Exact vertex enumeration of ``{R >= 0 : A R <= b}`` in three dimensions."""
    A = np.vstack([region.A, -np.eye(region.dim)])
    b = np.concatenate([region.b, np.zeros(region.dim)])
    found = []
    for rows in itertools.combinations(range(len(b)), region.dim):
        M = A[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[list(rows)])
        if np.all(A @ x <= b + tol):
            found.append(x)
    if not found:
        return np.empty((0, region.dim))
    pts = np.array(found)
    # merge numerically identical vertices
    keys = np.round(pts / max(tol, 1e-12)).astype(np.int64)
    _, idx = np.unique(keys, axis=0, return_index=True)
    return pts[np.sort(idx)]
