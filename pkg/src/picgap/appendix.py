"""Layered random-coding regions for types 4 and 5 and their closed-form inner regions.

Transmitter 1 splits its message into three layers with powers
``P - N2 - N3``, ``N3`` and ``N2``; transmitter 2 into two layers with powers
``P - N3`` and ``N3``; transmitter 3 sends a single layer at power ``P``.
Each receiver decodes top-down with simultaneous decoding inside a layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, ChannelType
from .geometry import HalfSpaceRegion, LinearConstraint, vertices


class LayeringError(ValueError):
    """The power split needs ``P >= N2 + N3``."""


def _c(x: float) -> float:
    return 0.5 * math.log2(1.0 + x)


# six rows over (R1, R2, R3): coefficient vector and the T indices summed
_ROWS = (
    ((1, 0, 0), (1, 7, 10), "R1"),
    ((0, 1, 0), (2, 8), "R2"),
    ((0, 0, 1), (3,), "R3"),
    ((1, 1, 0), (4, 9, 10), "R1+R2"),
    ((1, 0, 1), (5, 7, 10), "R1+R3"),
    ((0, 1, 1), (6, 8), "R2+R3"),
)

# asserted min-resolutions: (T index, the two I candidates, claimed winner)
MIN_RESOLUTIONS = {
    ChannelType.T4: ((1, (1, 6), 6), (2, (7, 12), 7), (7, (4, 9), 9)),
    ChannelType.T5: ((1, (1, 12), 1), (2, (2, 8), 2), (3, (9, 13), 13), (8, (5, 11), 5)),
}


@dataclass(frozen=True)
class LayeredRates:
    ctype: ChannelType
    I: dict[int, float]
    T: dict[int, float]
    region: HalfSpaceRegion

    def resolution_residuals(self) -> dict[int, float]:
        """``|min(I_a, I_b) - I_claimed|`` for each asserted resolution."""
        out = {}
        for t, (a, b), w in MIN_RESOLUTIONS[self.ctype]:
            out[t] = abs(min(self.I[a], self.I[b]) - self.I[w])
        return out


def _guard(params: ChannelParams):
    if params.P < params.N2 + params.N3:
        raise LayeringError(
            f"layered split needs P >= N2 + N3 (P={params.P}, N2+N3={params.N2 + params.N3})"
        )


def _i_type4(params: ChannelParams) -> dict[int, float]:
    P, (N1, N2, N3) = params.P, params.N
    d1 = N1 + N2 + N3
    d2 = 2 * N2 + 2 * N3
    return {
        1: _c((P - N2 - N3) / d1),
        2: _c(P / d1),
        3: _c((2 * P - N2 - N3) / d1),
        4: _c(N3 / (N1 + N2)),
        5: _c(N2 / N1),
        6: _c((P - N2 - N3) / d2),
        7: _c((P - N3) / d2),
        8: _c((2 * P - N2 - 2 * N3) / d2),
        9: _c(N3 / (2 * N2)),
        10: _c(N3 / (2 * N2)),
        11: _c(2 * N3 / (2 * N2)),
        12: _c((P - N3) / (2 * N3)),
        13: _c(P / (2 * N3)),
        14: _c((2 * P - N3) / (2 * N3)),
    }


def _i_type5(params: ChannelParams) -> dict[int, float]:
    P, (N1, N2, N3) = params.P, params.N
    d1 = N1 + N2 + 2 * N3
    d3 = N2 + 2 * N3
    return {
        1: _c((P - N2 - N3) / d1),
        2: _c((P - N3) / d1),
        3: _c((2 * P - N2 - 2 * N3) / d1),
        4: _c(N3 / (N1 + N2)),
        5: _c(N3 / (N1 + N2)),
        6: _c(2 * N3 / (N1 + N2)),
        7: _c(N2 / N1),
        8: _c((P - N3) / (N2 + N3)),
        9: _c(P / (N2 + N3)),
        10: _c((2 * P - N3) / (N2 + N3)),
        11: _c(N3 / N2),
        12: _c((P - N2 - N3) / d3),
        13: _c(P / d3),
        14: _c((2 * P - N2 - N3) / d3),
    }


def _region(T: dict[int, float]) -> HalfSpaceRegion:
    return HalfSpaceRegion(
        tuple(LinearConstraint(c, sum(T[i] for i in idx), label) for c, idx, label in _ROWS)
    )


def appendix_rates_type4(params: ChannelParams) -> LayeredRates:
    _guard(params)
    I = _i_type4(params)
    T = {
        1: min(I[1], I[6]),
        2: min(I[7], I[12]),
        3: min(I[2], I[13]),
        4: I[8],
        5: I[3],
        6: I[14],
        7: min(I[4], I[9]),
        8: I[10],
        9: I[11],
        10: I[5],
    }
    return LayeredRates(ChannelType.T4, I, T, _region(T))


def appendix_rates_type5(params: ChannelParams) -> LayeredRates:
    _guard(params)
    I = _i_type5(params)
    T = {
        1: min(I[1], I[12]),
        2: min(I[2], I[8]),
        3: min(I[9], I[13]),
        4: I[3],
        5: I[14],
        6: I[10],
        7: I[4],
        8: min(I[5], I[11]),
        9: I[6],
        10: I[7],
    }
    return LayeredRates(ChannelType.T5, I, T, _region(T))


def appendix_rates(ctype: ChannelType | int, params: ChannelParams) -> LayeredRates:
    ctype = ChannelType(ctype)
    if ctype == ChannelType.T4:
        return appendix_rates_type4(params)
    if ctype == ChannelType.T5:
        return appendix_rates_type5(params)
    raise ValueError("layered random-coding regions exist for types 4 and 5 only")


# (individual offsets, pair offsets) as (argument form, subtracted bits)
_HALF_LOG3 = 0.5 * math.log2(3)
_CLOSED = {
    ChannelType.T4: (
        ((2, 1), 1.0),
        ((3, 2), 1.0),
        ((3, 3), _HALF_LOG3),
        ((None, 1), 0.5),
        ((None, 1), 1.0),
        ((None, 2), 1.0),
    ),
    ChannelType.T5: (
        ((2, 1), 0.5),
        ((2, 2), 1.0),
        ((3, 3), _HALF_LOG3),
        ((None, 1), 0.0),
        ((None, 1), 0.5),
        ((None, 2), 0.5),
    ),
}


def appendix_closed_form(ctype: ChannelType | int, params: ChannelParams) -> HalfSpaceRegion:
    """Six-row simplified region; rows are clamped at zero so any ``P >= 0`` is accepted.

    Individual rows read ``1/2 log2(c + P/N_k) - offset``; pair rows read
    ``1/2 log2(1 + 2P/N_j) - offset``.
    """
    ctype = ChannelType(ctype)
    if ctype not in _CLOSED:
        raise ValueError("closed-form regions exist for types 4 and 5 only")
    P = params.P
    rows = []
    for (coeffs, _, label), ((c, j), off) in zip(_ROWS, _CLOSED[ctype]):
        if c is None:
            val = 0.5 * math.log2(1 + 2 * P / params.noise(j)) - off
        else:
            val = 0.5 * math.log2(c + P / params.noise(j)) - off
        rows.append(LinearConstraint(coeffs, max(val, 0.0), label))
    return HalfSpaceRegion(tuple(rows))


@dataclass(frozen=True)
class InclusionResult:
    included: bool
    worst_margin: float
    vertices: np.ndarray


def check_inclusion(
    layered: LayeredRates | HalfSpaceRegion, closed: HalfSpaceRegion, tol: float = 1e-9
) -> InclusionResult:
    """Every vertex of ``closed`` satisfies every row of the layered region."""
    region = layered.region if isinstance(layered, LayeredRates) else layered
    V = vertices(closed)
    if len(V) == 0:
        return InclusionResult(True, math.inf, V)
    slack = region.b[None, :] - V @ region.A.T
    worst = float(slack.min())
    return InclusionResult(worst >= -tol, worst, V)
