"""Numerical one-bit gap certification and gap-constant measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams, ChannelType
from .geometry import GEOM_TOL, CornerCloud, InnerHull, contains_inner, cross_section, sample_boundary
from .inner import (
    GridSpec,
    Scheme,
    WitnessNotApplicable,
    evaluate,
    gap_witness_alpha,
    inner_region,
    witness_anchor_range,
)
from .outer import SECTION_AXIS, outer_region, relaxed_outer_region

DEFAULT_SAMPLES = 2000
DEFAULT_SEED = 20240601


@dataclass
class Failure:
    point: tuple[float, float, float]
    shifted: tuple[float, float, float]
    margin: float


@dataclass
class CertReport:
    ctype: ChannelType
    params: ChannelParams
    points_checked: int
    failures: list[Failure]
    max_observed_gap: tuple[float, float, float]
    max_uniform_gap: float
    trivial_case: bool
    affected_axes: tuple[int, ...] = ()
    region: str = "exact"
    corners: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def _uniform_gap(hull: InnerHull, pts: np.ndarray, tol: float, iters: int = 50) -> np.ndarray:
    """Smallest ``s`` with ``max(p - s, 0)`` inside the inner hull, per point (bisection)."""
    lo = np.zeros(len(pts))
    hi = np.full(len(pts), float(np.max(pts, initial=0.0)) + 1.0)
    inside0 = hull.contains(pts, tol)
    lo[inside0] = hi[inside0] = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = hull.contains(np.maximum(pts - mid[:, None], 0.0), tol)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return hi


def certify(
    ctype: ChannelType | int,
    params: ChannelParams,
    samples: int = DEFAULT_SAMPLES,
    grid: GridSpec | None = None,
    seed: int = DEFAULT_SEED,
    shift: float = 1.0,
    tol: float = GEOM_TOL,
    cloud: CornerCloud | None = None,
    verify_lp: int = 0,
) -> CertReport:
    """Check that every sampled outer-boundary point minus ``shift`` bits is achievable.

    Samples the exact outer region. When ``P < 3 N_j`` for some receiver the
    report carries ``trivial_case`` and lists those axes (their single-user
    capacity is below one bit); the sampling is still carried out.
    ``cloud`` overrides the inner region (used for negative controls), and
    ``verify_lp`` re-checks that many points with the linear-program test.
    """
    ctype = ChannelType(ctype)
    affected = tuple(k for k in (1, 2, 3) if params.P < 3 * params.noise(k))
    outer = outer_region(ctype, params)
    cloud = cloud if cloud is not None else inner_region(ctype, params, grid)
    hull = InnerHull(cloud)
    pts = sample_boundary(outer, samples, seed) if params.P > 0 else np.zeros((samples, 3))
    shifted = np.maximum(pts - shift, 0.0)
    margin = hull.margin(shifted, tol)
    bad = np.flatnonzero(margin > 1e-9)
    for i in range(min(verify_lp, len(pts))):
        lp_ok = contains_inner(cloud, shifted[i], tol)
        if lp_ok != (margin[i] <= 1e-9):
            raise RuntimeError(f"hull and LP membership disagree at {shifted[i]}")
    failures = [Failure(tuple(pts[i]), tuple(shifted[i]), float(margin[i])) for i in bad]
    extent = cloud.extent()
    axis_gap = tuple(float(outer.axis_bound(k) - extent[k - 1]) for k in (1, 2, 3))
    ugap = _uniform_gap(hull, pts, tol) if params.P > 0 else np.zeros(1)
    return CertReport(
        ctype=ctype,
        params=params,
        points_checked=len(pts),
        failures=failures,
        max_observed_gap=axis_gap,
        max_uniform_gap=float(ugap.max()),
        trivial_case=bool(affected),
        affected_axes=affected,
        corners=len(cloud),
    )


# -- gap constants -----------------------------------------------------------

# (construction, constant) -> bound in bits
GAP_CONSTANTS = {
    ("type1", "delta1"): 1.0,
    ("type1", "delta2"): 0.91,
    ("type1", "delta3"): 1.0,
    ("type2", "delta1"): 0.41,
    ("type2", "delta2"): 0.71,
    ("type2", "delta3"): 0.71,
    ("type3", "delta1"): 0.62,
    ("type3", "delta2"): 0.62,
    ("type3", "delta3"): 0.8,
    ("type4-largeR1", "delta2"): 0.89,
    ("type4-largeR1", "delta3"): 0.54,
    ("type4-smallR1", "delta2"): 0.90,
    ("type4-smallR1", "delta3"): 0.41,
    ("type4-smallR1", "delta23"): 1.25,
    ("type5-largeR2", "delta1"): 0.91,
    ("type5-largeR2", "delta3"): 0.41,
    ("type5-smallR2", "delta1"): 0.41,
    ("type5-smallR2", "delta3"): 0.12,
    ("type5-smallR2", "delta13"): 1.12,
}


@dataclass
class DeltaEntry:
    construction: str
    name: str
    measured: float | None
    bound: float
    witnesses: int
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.measured is None or self.measured <= self.bound + 1e-6

    @property
    def applicable(self) -> bool:
        return self.measured is not None


@dataclass
class _Family:
    """Witness points sharing one outer fixed rate: inner corners along a segment."""

    fixed_axis: int
    outer_fixed: float
    corners: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))


def _outer_fixed(construction: str, params: ChannelParams, alpha) -> float:
    P, (N1, N2, N3) = params.P, params.N
    v = alpha.values
    if construction == "type1":
        return 0.5 * math.log2(v[1] * P / N2 * 7 / 4)
    if construction == "type2":
        return 0.5 * math.log2(v[0] * P / N1 * 7 / 4)
    if construction == "type3":
        return 0.5 * math.log2(1 / v[0])
    if construction == "type4-largeR1":
        return 0.5 * math.log2(v[1] * P / N1 * 2 / 5) + 1
    if construction == "type4-smallR1":
        return 0.5 * math.log2(v[1] * P / N1 * 4 / 9) + 1
    return 0.5 * math.log2(v[1] * P / N2) + 1


def _construction_name(ctype: ChannelType, scheme: Scheme | None) -> str:
    return f"type{int(ctype)}" + (f"-{scheme.value}" if scheme is not None else "")


def _families(ctype, params, scheme, anchors: int, segment: int):
    ctype = ChannelType(ctype)
    name = _construction_name(ctype, scheme)
    rng = witness_anchor_range(ctype, params, scheme)
    if rng is None:
        return name, []
    out = []
    for r in np.linspace(rng[0], rng[1], anchors):
        try:
            base = gap_witness_alpha(ctype, params, float(r), scheme)
        except WitnessNotApplicable:
            continue
        alphas = [base]
        if scheme in (Scheme.SMALL_R1, Scheme.SMALL_R2):
            if scheme == Scheme.SMALL_R1:
                lo, hi = base.values[1], base.values[2]
            else:
                lo, hi = max(base.values[1], params.N2 / params.P), base.values[0]
            alphas = []
            for t in np.linspace(0.0, 1.0, segment):
                try:
                    alphas.append(gap_witness_alpha(ctype, params, float(r), scheme, lo + t * (hi - lo)))
                except WitnessNotApplicable:
                    pass
            if not alphas:
                continue
        axis = SECTION_AXIS[ctype]
        fam = _Family(axis, _outer_fixed(name, params, base))
        fam.corners = np.array([evaluate(params, a) for a in alphas])
        out.append(fam)
    return name, out


def _measure(name, params, relaxed, families):
    """Per-constant maxima over families. Returns dict name -> measured."""
    worst: dict[str, float] = {}
    fixed_worst = -math.inf
    for fam in families:
        ax = fam.fixed_axis
        value = min(max(fam.outer_fixed, 0.0), relaxed.axis_bound(ax))
        sec = cross_section(relaxed, ax, value)
        pts = fam.corners
        # the inner fixed rate must stay within the construction's distance of the outer one
        fixed_worst = max(fixed_worst, value - float(pts[:, ax - 1].min()))
        worst[f"delta{ax}"] = max(worst.get(f"delta{ax}", -math.inf), value - float(pts[:, ax - 1].min()))
        for k in sec.free_axes:
            d = sec.free_bound(k) - float(pts[:, k - 1].max())
            worst[f"delta{k}"] = max(worst.get(f"delta{k}", -math.inf), d)
        s = sec.sum_bound()
        if s is not None:
            a, b = sec.free_axes
            d = s - float((pts[:, a - 1] + pts[:, b - 1]).max())
            key = f"delta{a}{b}"
            worst[key] = max(worst.get(key, -math.inf), d)
    return worst, fixed_worst


def delta_report(
    ctype: ChannelType | int, params: ChannelParams, anchors: int = 64, segment: int = 65
) -> list[DeltaEntry]:
    """Measured gap constants at the witness constructions versus their stated bounds.

    For each construction the anchor rate is swept over its applicable range;
    each reported value is the largest gap seen. Constructions that do not
    apply at these parameters yield entries with ``measured=None``.
    """
    ctype = ChannelType(ctype)
    relaxed = relaxed_outer_region(ctype, params)  # raises on the trivial case
    entries = []
    scheme_list = {ChannelType.T4: (Scheme.LARGE_R1, Scheme.SMALL_R1),
                   ChannelType.T5: (Scheme.LARGE_R2, Scheme.SMALL_R2)}.get(ctype, (None,))
    for scheme in scheme_list:
        name, fams = _families(ctype, params, scheme, anchors, segment)
        worst, fixed_worst = _measure(name, params, relaxed, fams)
        listed = [(c, b) for (n, c), b in GAP_CONSTANTS.items() if n == name]
        for const, bound in listed:
            m = worst.get(const) if fams else None
            note = "" if fams else "construction not applicable at these parameters"
            entries.append(DeltaEntry(name, const, m, bound, len(fams), note))
        if ctype in (ChannelType.T4, ChannelType.T5):
            fixed = f"delta{SECTION_AXIS[ctype]}"
            m = fixed_worst if fams else None
            entries.append(DeltaEntry(name, fixed, m, 1.0, len(fams), "fixed-axis offset"))
    return entries
