"""Per-type capacity outer bounds, their relaxations and cross-sections."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, ChannelType, single_user_capacity
from .geometry import CrossSection2D, HalfSpaceRegion, LinearConstraint, cross_section

# a pair-sum row is either the "two-term" form with noises (N_a, N_b),
#   1/2 log((P + N_a)/N_a) + 1/2 log((2P + N_b)/(P + N_b)),
# or the "joint" form 1/2 log(1 + 2P/N_a) for a single receiver N_a.
_PAIR_ROWS = {
    ChannelType.T1: (((1, 2), "two", (1, 2)), ((2, 3), "two", (2, 3))),
    ChannelType.T2: (((1, 2), "two", (1, 2)), ((1, 3), "two", (1, 3))),
    ChannelType.T3: (((1, 3), "two", (1, 3)), ((2, 3), "two", (2, 3))),
    ChannelType.T4: (
        ((1, 2), "two", (1, 2)),
        ((1, 3), "joint", (1,)),
        ((2, 3), "two", (2, 3)),
    ),
    ChannelType.T5: (
        ((1, 2), "joint", (1,)),
        ((1, 3), "two", (1, 3)),
        ((2, 3), "joint", (2,)),
    ),
}

# fixed axis of the two-dimensional cross-section for each type
SECTION_AXIS = {
    ChannelType.T1: 2,
    ChannelType.T2: 1,
    ChannelType.T3: 3,
    ChannelType.T4: 1,
    ChannelType.T5: 2,
}


class PreconditionError(ValueError):
    """The requested quantity is only defined under a high-SNR assumption."""


def _indicator(pair) -> tuple[float, float, float]:
    return tuple(1.0 if i in pair else 0.0 for i in (1, 2, 3))


def _label(rates) -> str:
    return "+".join(f"R{i}" for i in rates)


def two_term(P: float, Na: float, Nb: float) -> float:
    return 0.5 * math.log2((P + Na) / Na) + 0.5 * math.log2((2 * P + Nb) / (P + Nb))


def joint(P: float, Na: float) -> float:
    return 0.5 * math.log2(1.0 + 2 * P / Na)


def outer_region(ctype: ChannelType | int, params: ChannelParams) -> HalfSpaceRegion:
    ctype = ChannelType(ctype)
    P = params.P
    rows = [
        LinearConstraint(_indicator((k,)), single_user_capacity(params, k), _label((k,)))
        for k in (1, 2, 3)
    ]
    for pair, form, noises in _PAIR_ROWS[ctype]:
        if form == "two":
            b = two_term(P, params.noise(noises[0]), params.noise(noises[1]))
        else:
            b = joint(P, params.noise(noises[0]))
        rows.append(LinearConstraint(_indicator(pair), b, _label(pair)))
    return HalfSpaceRegion(tuple(rows))


def relaxed_noise(pair) -> int:
    """Receiver whose noise sets the relaxed sum bound: user 1 if involved, else user 2."""
    return 1 if 1 in pair else 2


def relaxed_outer_region(ctype: ChannelType | int, params: ChannelParams) -> HalfSpaceRegion:
    """Looser polytope valid when ``P >= 3 N_j`` for every receiver."""
    ctype = ChannelType(ctype)
    if not params.high_snr:
        raise PreconditionError(
            f"relaxed bounds need P >= 3*N3 (P={params.P}, N3={params.N3}); "
            "use the trivial-gap path instead"
        )
    P = params.P
    rows = [
        LinearConstraint(
            _indicator((k,)),
            0.5 * math.log2(P / params.noise(k) * 4 / 3),
            _label((k,)) + "'",
        )
        for k in (1, 2, 3)
    ]
    for pair, _, _ in _PAIR_ROWS[ctype]:
        Nj = params.noise(relaxed_noise(pair))
        rows.append(
            LinearConstraint(_indicator(pair), 0.5 * math.log2(P / Nj * 7 / 3), _label(pair) + "'")
        )
    return HalfSpaceRegion(tuple(rows))


def outer_cross_section(
    ctype: ChannelType | int, params: ChannelParams, axis: int | None = None, value: float = 0.0
) -> CrossSection2D:
    """Cross-section of the relaxed region at a fixed rate (default axis per type)."""
    ctype = ChannelType(ctype)
    axis = SECTION_AXIS[ctype] if axis is None else axis
    return cross_section(relaxed_outer_region(ctype, params), axis, value)


def sum_row_threshold(ctype: ChannelType | int, params: ChannelParams) -> float:
    """Fixed-rate level above which the residual sum row of the section is inactive.

    Type 4 (fixed R1): the R2+R3 row. Type 5 (fixed R2): the R1+R3 row.
    """
    ctype = ChannelType(ctype)
    a = params.P / params.N1 * 7 / 3
    b = params.P / params.N2 * 7 / 3
    if ctype == ChannelType.T4:
        return 0.5 * math.log2(a) - 0.25 * math.log2(b)
    if ctype == ChannelType.T5:
        return 0.25 * math.log2(b)
    raise ValueError("thresholds are defined for types 4 and 5 only")


@dataclass(frozen=True)
class OuterBoundSet:
    ctype: ChannelType
    exact: HalfSpaceRegion
    relaxed: HalfSpaceRegion | None

    @classmethod
    def build(cls, ctype, params: ChannelParams) -> "OuterBoundSet":
        ctype = ChannelType(ctype)
        relaxed = relaxed_outer_region(ctype, params) if params.high_snr else None
        return cls(ctype, outer_region(ctype, params), relaxed)
