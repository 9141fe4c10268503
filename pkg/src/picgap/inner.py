"""Achievable rate boxes of the lattice-alignment schemes and their unions.

Every scheme is parameterised by a small vector of power fractions ``alpha``.
For a given ``alpha`` the achievable set is a box ``[0, T1] x [0, T2] x [0, T3]``;
the inner region is the convex hull of the union of boxes over all ``alpha``.

The ``_t_*`` kernels are written with numpy broadcasting so that whole grids
are evaluated at once. The public ``inner_box_*`` functions wrap a single
evaluation with domain checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import ChannelParams, ChannelType, RateTriple
from .geometry import CornerCloud, DomainError


class Scheme(str, Enum):
    LARGE_R1 = "largeR1"
    SMALL_R1 = "smallR1"
    LARGE_R2 = "largeR2"
    SMALL_R2 = "smallR2"


_SCHEMES = {
    ChannelType.T4: (Scheme.LARGE_R1, Scheme.SMALL_R1),
    ChannelType.T5: (Scheme.LARGE_R2, Scheme.SMALL_R2),
}

# number of alpha components per (type, scheme)
_ARITY = {
    (ChannelType.T1, None): 2,
    (ChannelType.T2, None): 1,
    (ChannelType.T3, None): 1,
    (ChannelType.T4, Scheme.LARGE_R1): 3,
    (ChannelType.T4, Scheme.SMALL_R1): 3,
    (ChannelType.T5, Scheme.LARGE_R2): 3,
    (ChannelType.T5, Scheme.SMALL_R2): 2,
}

_NAMES = {
    (ChannelType.T1, None): ("a0", "a2"),
    (ChannelType.T2, None): ("a1",),
    (ChannelType.T3, None): ("a",),
    (ChannelType.T4, Scheme.LARGE_R1): ("a0", "a1", "a2"),
    (ChannelType.T4, Scheme.SMALL_R1): ("a0", "a1", "a2"),
    (ChannelType.T5, Scheme.LARGE_R2): ("a1", "a2", "a2p"),
    (ChannelType.T5, Scheme.SMALL_R2): ("a1", "a2"),
}


@dataclass(frozen=True)
class AlphaParams:
    ctype: ChannelType
    values: tuple[float, ...]
    scheme: Scheme | None = None

    def __post_init__(self):
        ctype = ChannelType(self.ctype)
        object.__setattr__(self, "ctype", ctype)
        scheme = Scheme(self.scheme) if self.scheme is not None else None
        object.__setattr__(self, "scheme", scheme)
        if (ctype in _SCHEMES) != (scheme is not None):
            raise ValueError(f"scheme tag is required exactly for types 4 and 5 (type {int(ctype)})")
        if scheme is not None and scheme not in _SCHEMES[ctype]:
            raise ValueError(f"scheme {scheme.value} does not belong to type {int(ctype)}")
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != _ARITY[(ctype, scheme)]:
            raise ValueError(f"expected {_ARITY[(ctype, scheme)]} alpha components, got {len(vals)}")
        if not all(0.0 <= v <= 1.0 for v in vals):
            raise DomainError(f"alpha components must lie in [0, 1], got {vals}")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(_NAMES[(self.ctype, self.scheme)], self.values))


@dataclass(frozen=True)
class InnerBox:
    alpha: AlphaParams
    T: RateTriple


# -- kernels -----------------------------------------------------------------


def half_log(x):
    return 0.5 * np.log2(x)


def half_log_plus(x):
    """``max(0, 1/2 log2 x)``; nonpositive arguments map to 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 0.5 * np.log2(np.where(x > 0, x, 1.0))
    return np.maximum(out, 0.0)


def _stack(*ts):
    return np.stack(np.broadcast_arrays(*ts), axis=-1)


def _t_type1(P, N, a0, a2):
    N1, N2, N3 = N
    t1 = half_log_plus((1 - a0) / (2 - a0) + (1 - a0) * P / ((a0 + a2) * P + N2)) + half_log(
        1 + a0 * P / N1
    )
    t2 = half_log(1 + a2 * P / (a0 * P + N2))
    t3 = half_log_plus(1 / (2 - a0) + P / ((a0 + a2) * P + N3))
    return _stack(t1, t2, t3)


def _t_type2(P, N, a1):
    N1, N2, N3 = N
    return _stack(
        half_log(1 + a1 * P / N1),
        half_log_plus(0.5 + P / (a1 * P + N2)),
        half_log_plus(0.5 + P / (a1 * P + N3)),
    )


def _t_type3(P, N, a):
    N1, N2, N3 = N
    return _stack(
        half_log(1 + a * P / N1),
        half_log(1 + a * P / N2),
        half_log(1 + P / (2 * a * P + N3)),
    )


def _t_type4_large(P, N, a0, a1, a2):
    N1, N2, N3 = N
    s = a0 + a1 + a2
    c11 = (1 - s) / (2 - s)
    c3 = 1 / (2 - s)
    first = np.minimum(
        half_log_plus(c11 + (1 - s) * P / ((a0 + a1 + 2 * a2) * P + N2)),
        half_log(1 + a2 * P / (a0 * P + N1)),
    )
    t1 = first + half_log(1 + a1 * P / ((a0 + a2) * P + N2)) + half_log(1 + a0 * P / N1)
    t2 = half_log(1 + a2 * P / (a0 * P + N2))
    t3 = half_log_plus(c3 + P / (s * P + N3))
    return _stack(t1, t2, t3)


def _t_type4_small(P, N, a0, a1, a2):
    N1, N2, N3 = N
    c11 = (1 - a1) / (2 - a1)
    c3 = 1 / (2 - a1)
    first = np.minimum(
        half_log_plus(c11 + (1 - a1) * P / ((a1 + a2) * P + N2)),
        half_log(1 + (a1 - a0) * P / (a0 * P + N1)),
    )
    t1 = first + half_log(1 + a0 * P / N1)
    t2 = half_log(1 + a2 * P / (a0 * P + N2))
    t3 = half_log_plus(c3 + P / (np.maximum(a1, a2) * P + N3))
    return _stack(t1, t2, t3)


def _t_type5_large(P, N, a1, a2, a2p, literal=False):
    N1, N2, N3 = N
    s = a2 + a2p
    c21 = (1 - s) / (2 - s)
    c3 = 1 / (2 - s)
    first = np.minimum(
        half_log_plus(c21 + (1 - s) * P / ((a1 + s) * P + N2)),
        half_log(1 + a2p * P / N2),
    )
    layer = half_log(1 + a2 * P / (a2p * P + N2))
    if not literal:
        # the layer is decoded at receiver 1 as well, under x1 and N1
        layer = np.minimum(layer, half_log(1 + a2 * P / (a1 * P + N1)))
    t1 = half_log(1 + a1 * P / N1)
    t3 = half_log_plus(c3 + P / (np.maximum(a1, s) * P + N3))
    return _stack(t1, first + layer, t3)


def _t_type5_small(P, N, a1, a2):
    N1, N2, N3 = N
    c21 = (1 - a2) / (2 - a2)
    c3 = 1 / (2 - a2)
    t1 = half_log(1 + a1 * P / N1)
    t2 = np.minimum(
        half_log_plus(c21 + (1 - a2) * P / ((a1 + a2) * P + N2)),
        half_log(1 + a2 * P / N2),
    )
    t3 = half_log_plus(c3 + P / (np.maximum(a1, a2) * P + N3))
    return _stack(t1, t2, t3)


_KERNELS = {
    (ChannelType.T1, None): _t_type1,
    (ChannelType.T2, None): _t_type2,
    (ChannelType.T3, None): _t_type3,
    (ChannelType.T4, Scheme.LARGE_R1): _t_type4_large,
    (ChannelType.T4, Scheme.SMALL_R1): _t_type4_small,
    (ChannelType.T5, Scheme.LARGE_R2): _t_type5_large,
    (ChannelType.T5, Scheme.SMALL_R2): _t_type5_small,
}


def feasible_mask(ctype: ChannelType, scheme: Scheme | None, cols) -> np.ndarray:
    """Power-budget preconditions of each scheme, evaluated on alpha columns."""
    cols = [np.asarray(c, dtype=float) for c in cols]
    ok = np.ones(np.broadcast(*cols).shape, dtype=bool)
    if scheme == Scheme.LARGE_R1:
        ok &= cols[0] + cols[1] + cols[2] <= 1.0 + 1e-12
    elif scheme == Scheme.SMALL_R1:
        ok &= cols[0] <= cols[1]
    elif scheme == Scheme.LARGE_R2:
        ok &= cols[1] + cols[2] <= 1.0 + 1e-12
    return ok


def evaluate(params: ChannelParams, alpha: AlphaParams, literal: bool = False) -> np.ndarray:
    """T-vector for a single alpha as a length-3 array."""
    cols = alpha.values
    if not feasible_mask(alpha.ctype, alpha.scheme, cols):
        raise DomainError(_domain_message(alpha))
    kern = _KERNELS[(alpha.ctype, alpha.scheme)]
    kwargs = {"literal": literal} if kern is _t_type5_large else {}
    with np.errstate(divide="ignore", invalid="ignore"):
        T = kern(params.P, params.N, *cols, **kwargs)
    return np.maximum(np.nan_to_num(np.asarray(T, dtype=float), nan=0.0), 0.0)


def _domain_message(alpha: AlphaParams) -> str:
    if alpha.scheme == Scheme.LARGE_R1:
        return f"a0 + a1 + a2 = {sum(alpha.values)} > 1 overallocates power"
    if alpha.scheme == Scheme.SMALL_R1:
        return f"a0 = {alpha.values[0]} exceeds a1 = {alpha.values[1]}"
    return f"a2 + a2' = {alpha.values[1] + alpha.values[2]} > 1 overallocates power"


def _box(params, ctype, scheme, values, literal=False) -> InnerBox:
    alpha = AlphaParams(ctype, values, scheme)
    return InnerBox(alpha, RateTriple(*evaluate(params, alpha, literal)))


def inner_box_type1(params: ChannelParams, a0: float, a2: float) -> InnerBox:
    return _box(params, ChannelType.T1, None, (a0, a2))


def inner_box_type2(params: ChannelParams, a1: float) -> InnerBox:
    return _box(params, ChannelType.T2, None, (a1,))


def inner_box_type3(params: ChannelParams, a: float) -> InnerBox:
    return _box(params, ChannelType.T3, None, (a,))


def inner_box_type4_large(params: ChannelParams, a0: float, a1: float, a2: float) -> InnerBox:
    return _box(params, ChannelType.T4, Scheme.LARGE_R1, (a0, a1, a2))


def inner_box_type4_small(params: ChannelParams, a0: float, a1: float, a2: float) -> InnerBox:
    return _box(params, ChannelType.T4, Scheme.SMALL_R1, (a0, a1, a2))


def inner_box_type5_large(
    params: ChannelParams, a1: float, a2: float, a2p: float, literal: bool = False
) -> InnerBox:
    """Large-R2 scheme for type 5.

    With ``literal=True`` the R2 layer term omits its receiver-1 decoding
    constraint; that variant can exceed the outer bound and is kept only for
    comparison.
    """
    return _box(params, ChannelType.T5, Scheme.LARGE_R2, (a1, a2, a2p), literal)


def inner_box_type5_small(params: ChannelParams, a1: float, a2: float) -> InnerBox:
    return _box(params, ChannelType.T5, Scheme.SMALL_R2, (a1, a2))


def type1_t11_prime(params: ChannelParams, a0: float, a2: float) -> float:
    """Receiver-1 constraint on the aligned layer of user 1 (type 1)."""
    return float(
        half_log_plus((1 - a0) / (2 - a0) + (1 - a0) * params.P / ((a0 + a2) * params.P + params.N1))
    )


def type4_decoding_terms(params: ChannelParams, alpha: AlphaParams) -> dict[str, float]:
    """Every successive-decoding constraint of the type-4 schemes, unsimplified.

    Keys: ``T11'``, ``T11''``, ``T11'''``, ``T10``, ``T3'``, ``T3''`` for both
    schemes, plus ``T12'`` and ``T12''`` for the large-R1 scheme. The plain
    minimum over each group is achievable; the scheme's closed-form rates are
    lower bounds of it.
    """
    if alpha.ctype != ChannelType.T4:
        raise ValueError("decoding terms are tabulated for type 4 only")
    P, (N1, N2, N3) = params.P, params.N
    v = alpha.as_dict()
    a0, a1, a2 = v["a0"], v["a1"], v["a2"]

    def hl(x):
        return float(half_log(x))

    if alpha.scheme == Scheme.LARGE_R1:
        s = a0 + a1 + a2
        c11, c3 = (1 - s) / (2 - s), 1 / (2 - s)
        return {
            "T11'": hl(c11 + (1 - s) * P / (s * P + N1)),
            "T11''": hl(1 + a2 * P / (a0 * P + N1)),
            "T11'''": hl(1 + (1 - s) * P / ((a0 + a1 + 2 * a2) * P + N2)),
            "T12'": hl(1 + a1 * P / ((a0 + a2) * P + N1)),
            "T12''": hl(1 + a1 * P / ((a0 + a2) * P + N2)),
            "T10": hl(1 + a0 * P / N1),
            "T3'": hl(c3 + P / (s * P + N1)),
            "T3''": hl(1 + P / (a2 * P + N3)),
        }
    if alpha.scheme == Scheme.SMALL_R1:
        c11, c3 = (1 - a1) / (2 - a1), 1 / (2 - a1)
        return {
            "T11'": hl(c11 + (1 - a1) * P / (a1 * P + N1)),
            "T11''": hl(1 + (a1 - a0) * P / (a0 * P + N1)),
            "T11'''": hl(1 + (1 - a1) * P / ((a1 + a2) * P + N2)),
            "T10": hl(1 + a0 * P / N1),
            "T3'": hl(c3 + P / (a1 * P + N1)),
            "T3''": hl(1 + P / (a2 * P + N3)),
        }
    raise ValueError("decoding terms are listed for the type-4 schemes only")


def c_coefficients(ctype: ChannelType | int, alpha: AlphaParams) -> tuple[float, float]:
    """``(c_aligned, c3)`` for the schemes with an aligned lattice layer."""
    v = alpha.as_dict()
    ctype = ChannelType(ctype)
    if ctype == ChannelType.T1:
        s = v["a0"]
    elif alpha.scheme == Scheme.LARGE_R1:
        s = v["a0"] + v["a1"] + v["a2"]
    elif alpha.scheme == Scheme.SMALL_R1:
        s = v["a1"]
    elif alpha.scheme == Scheme.LARGE_R2:
        s = v["a2"] + v["a2p"]
    elif alpha.scheme == Scheme.SMALL_R2:
        s = v["a2"]
    else:
        raise ValueError(f"type {int(ctype)} has no aligned layer")
    return (1 - s) / (2 - s), 1 / (2 - s)


# -- grids and regions -----------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Per-axis alpha values: 0 plus ``floor ** (j / points)`` for ``j = 0..points``.

    Doubling ``points`` yields a superset grid, so refining never loses
    corners. ``values`` overrides the axis with explicit fractions.
    """

    points: int = 64
    floor: float = 1e-6
    witnesses: bool = True
    values: tuple[float, ...] | None = None

    def axis(self) -> np.ndarray:
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        if self.points < 1:
            raise ValueError("grid needs at least one point")
        j = np.arange(self.points + 1)
        return np.concatenate([[0.0], self.floor ** (j / self.points)])


def schemes(ctype: ChannelType | int) -> tuple[Scheme | None, ...]:
    return _SCHEMES.get(ChannelType(ctype), (None,))


def grid_corners(params: ChannelParams, ctype, scheme, axis_values) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate a scheme on the full product grid; returns (alphas, corners)."""
    ctype = ChannelType(ctype)
    k = _ARITY[(ctype, scheme)]
    mesh = np.meshgrid(*([np.asarray(axis_values, dtype=float)] * k), indexing="ij")
    cols = [m.ravel() for m in mesh]
    keep = feasible_mask(ctype, scheme, cols)
    cols = [c[keep] for c in cols]
    with np.errstate(divide="ignore", invalid="ignore"):
        T = _KERNELS[(ctype, scheme)](params.P, params.N, *cols)
    T = np.maximum(np.nan_to_num(T, nan=0.0), 0.0)
    return np.stack(cols, axis=1), T


def corners_for(params: ChannelParams, alphas) -> np.ndarray:
    return np.array([evaluate(params, a) for a in alphas]).reshape(-1, 3)


def inner_region(
    ctype: ChannelType | int, params: ChannelParams, grid: GridSpec | None = None
) -> CornerCloud:
    """Corner cloud over the alpha grid (both schemes for types 4/5) and witness points.

    Provenance holds ``(scheme, alpha tuple)`` per corner. The cloud is reduced
    to hull vertices that are Pareto-maximal, which leaves the
    downward-closed hull unchanged.
    """
    ctype = ChannelType(ctype)
    grid = grid or GridSpec()
    blocks, prov = [], []
    for scheme in schemes(ctype):
        A, T = grid_corners(params, ctype, scheme, grid.axis())
        blocks.append(T)
        prov.extend((scheme, tuple(a)) for a in A)
    if grid.witnesses and params.high_snr:
        wit = witness_family(ctype, params)
        if wit:
            blocks.append(corners_for(params, wit))
            prov.extend((a.scheme, a.values) for a in wit)
    cloud = CornerCloud(np.vstack(blocks), prov)
    return cloud.reduced()


# -- gap witnesses --------------------------------------------------------------


class WitnessNotApplicable(ValueError):
    """The anchor lies outside the range a witness construction covers."""

    def __init__(self, message: str, case: str):
        super().__init__(message)
        self.case = case


def _log_anchor(rate: float) -> float:
    return 2.0 ** (2.0 * rate)


def gap_witness_alpha(
    ctype: ChannelType | int,
    params: ChannelParams,
    anchor: float,
    scheme: Scheme | str | None = None,
    a2: float | None = None,
) -> AlphaParams:
    """Alpha used by the gap construction for an anchor rate (bits).

    The anchor is the inner fixed rate of the construction: R2 (type 1), R1
    (types 2 and 4), R3 (type 3) or R2 (type 5). For the small-R1 scheme of
    type 4, ``a2`` picks the point on the segment ``[a1, a1']`` (default
    ``a1'``); for the small-R2 scheme of type 5 it is the user-1 fraction
    ``a1`` on ``[max(a2, N2/P), a2']`` (default ``a2'``).
    """
    ctype = ChannelType(ctype)
    if not params.high_snr:
        raise WitnessNotApplicable("witness constructions need P >= 3*N3", "trivial")
    P, (N1, N2, N3) = params.P, params.N
    g = _log_anchor(anchor)
    scheme = Scheme(scheme) if scheme is not None else None

    if ctype == ChannelType.T1:
        a0 = N2 / P
        a2v = 2 * N2 * g / P
        if a2v > 1 - a0:
            raise WitnessNotApplicable(f"R2 = {anchor} needs a2 = {a2v} > 1 - a0", "beyond-ii")
        return AlphaParams(ctype, (a0, a2v))

    if ctype == ChannelType.T2:
        a1 = N1 * g / P
        if a1 > 1:
            raise WitnessNotApplicable(f"R1 = {anchor} needs a1 = {a1} > 1", "beyond")
        return AlphaParams(ctype, (a1,))

    if ctype == ChannelType.T3:
        a = 1.0 / (3.0 * g)
        if a > 4 / 7:
            raise WitnessNotApplicable(f"R3 = {anchor} gives a = {a} > 4/7", "small-R3")
        if a * P < N3:
            raise WitnessNotApplicable(f"R3 = {anchor} gives a*P = {a * P} < N3", "large-R3")
        return AlphaParams(ctype, (a,))

    if ctype == ChannelType.T4:
        scheme = scheme or Scheme.LARGE_R1
        if scheme == Scheme.LARGE_R1:
            a1 = 5 * N1 * g / (2 * P)
            lo = math.sqrt(51 * N2 / (20 * P))
            hi = min(3 / 8, 17 * N2 / (20 * (N2 + 3 * N3)))
            if not (lo <= a1 <= hi):
                raise WitnessNotApplicable(
                    f"a1 = {a1} outside [{lo}, {hi}] for the large-R1 construction", "largeR1"
                )
            a0 = N2 / P
            a2v = 17 * N2 / (20 * a1 * P) - a0
            return AlphaParams(ctype, (a0, a1, a2v), scheme)
        a1 = 9 * N1 * g / (4 * P)
        a0 = 0.8 * N2 / P
        a1p = 24 * N2 / (35 * a1 * P) if a1 > 0 else math.inf
        # every a2 in [a1, a1'] must satisfy a2*P >= 3*N3, including a2 = a1
        if a1 * P < 3 * N3 or a1 > a1p or a1 > 0.5:
            raise WitnessNotApplicable(
                f"a1 = {a1}: need a1*P >= 3*N3 and a1 <= a1' = {a1p}", "smallR1"
            )
        a2v = a1p if a2 is None else a2
        if not (a1 - 1e-12 <= a2v <= a1p + 1e-12) or a2v * P < 3 * N3 or a2v > 0.5:
            raise WitnessNotApplicable(
                f"a2 = {a2v} must lie in [a1, a1'] with a2*P >= 3*N3 and a2 <= 1/2", "smallR1"
            )
        return AlphaParams(ctype, (a0, a1, a2v), scheme)

    # type 5
    scheme = scheme or Scheme.LARGE_R2
    a2v = N2 * g / P
    if scheme == Scheme.LARGE_R2:
        lo = max(N3 / P, math.sqrt(N2 / (6 * P)))
        if not (lo <= a2v <= 1 / 6):
            raise WitnessNotApplicable(
                f"a2 = {a2v} outside [{lo}, 1/6] for the large-R2 construction", "largeR2"
            )
        a1 = N2 / (6 * a2v * P)
        return AlphaParams(ctype, (a1, a2v, a1), scheme)
    a2p = N2 / (3 * a2v * P) if a2v > 0 else math.inf
    if not (N3 / P <= a2v <= math.sqrt(N2 / (3 * P))):
        raise WitnessNotApplicable(
            f"a2 = {a2v} outside [N3/P, sqrt(N2/(3P))] for the small-R2 construction", "smallR2"
        )
    a1 = a2p if a2 is None else a2
    if not (max(a2v, N2 / P) - 1e-12 <= a1 <= a2p + 1e-12) or a1 + a2v > 0.5:
        raise WitnessNotApplicable(
            f"a1 = {a1} must lie in [max(a2, N2/P), a2'] with a1 + a2 <= 1/2", "smallR2"
        )
    return AlphaParams(ctype, (a1, a2v), scheme)


def witness_anchor_range(ctype, params: ChannelParams, scheme=None) -> tuple[float, float] | None:
    """Anchor-rate interval (bits) on which the construction applies, or None."""
    ctype = ChannelType(ctype)
    P, (N1, N2, N3) = params.P, params.N

    def rate(lin):
        return 0.5 * math.log2(lin)

    if ctype == ChannelType.T1:
        lo_a, hi_a = 1e-6, 1 - N2 / P
        return rate(lo_a * P / (2 * N2)), rate(hi_a * P / (2 * N2))
    if ctype == ChannelType.T2:
        return rate(1e-6 * P / N1), rate(P / N1)
    if ctype == ChannelType.T3:
        lo_a, hi_a = N3 / P, 4 / 7
        if lo_a > hi_a:
            return None
        return rate(1 / (3 * hi_a)), rate(1 / (3 * lo_a))
    if ctype == ChannelType.T4:
        if (scheme or Scheme.LARGE_R1) == Scheme.LARGE_R1:
            lo = math.sqrt(51 * N2 / (20 * P))
            hi = min(3 / 8, 17 * N2 / (20 * (N2 + 3 * N3)))
            k = 2 * P / (5 * N1)
        else:
            lo = 3 * N3 / P
            hi = min(0.5, math.sqrt(24 * N2 / (35 * P)))
            k = 4 * P / (9 * N1)
        if lo > hi:
            return None
        return rate(lo * k), rate(hi * k)
    if (scheme or Scheme.LARGE_R2) == Scheme.LARGE_R2:
        lo, hi = max(N3 / P, math.sqrt(N2 / (6 * P))), 1 / 6
    else:
        lo, hi = N3 / P, math.sqrt(N2 / (3 * P))
    if lo > hi:
        return None
    return rate(lo * P / N2), rate(hi * P / N2)


def witness_family(ctype, params: ChannelParams, count: int = 96) -> list[AlphaParams]:
    """Witness alphas over a log-uniform sweep of each construction's anchor range."""
    ctype = ChannelType(ctype)
    out = []
    for scheme in schemes(ctype):
        rng = witness_anchor_range(ctype, params, scheme)
        if rng is None:
            continue
        for r in np.linspace(rng[0], rng[1], count):
            extra = [None]
            if scheme in (Scheme.SMALL_R1, Scheme.SMALL_R2):
                extra = list(np.linspace(0.0, 1.0, 5))
            for t in extra:
                try:
                    a = _segment_witness(ctype, params, float(r), scheme, t)
                except WitnessNotApplicable:
                    continue
                out.append(a)
    return out


def _segment_witness(ctype, params, anchor, scheme, t):
    """Witness at fraction ``t`` along the free segment of the MAC-like constructions."""
    if t is None:
        return gap_witness_alpha(ctype, params, anchor, scheme)
    base = gap_witness_alpha(ctype, params, anchor, scheme)
    P, N2 = params.P, params.N2
    if scheme == Scheme.SMALL_R1:
        a1 = base.values[1]
        hi = base.values[2]
        lo = a1
    else:
        a2v = base.values[1]
        hi = base.values[0]
        lo = max(a2v, N2 / P)
    return gap_witness_alpha(ctype, params, anchor, scheme, a2=lo + t * (hi - lo))


def iter_random_alpha(ctype, rng: np.random.Generator):
    """Random feasible alpha for a type (uniformly chosen scheme for types 4/5)."""
    ctype = ChannelType(ctype)
    opts = schemes(ctype)
    scheme = opts[rng.integers(len(opts))]
    k = _ARITY[(ctype, scheme)]
    while True:
        # mix uniform and log-uniform draws so that small fractions are covered
        v = np.where(rng.random(k) < 0.5, rng.random(k), 10.0 ** rng.uniform(-6, 0, k))
        if feasible_mask(ctype, scheme, v):
            return AlphaParams(ctype, tuple(v), scheme)


def all_schemes() -> list[tuple[ChannelType, Scheme | None]]:
    return list(itertools.chain.from_iterable(((t, s) for s in schemes(t)) for t in ChannelType))
