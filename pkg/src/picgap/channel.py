"""Channel topologies, parameters and regime classification.

Five partially connected three-user Gaussian interference channels with unit
gains. Receiver ``j`` observes ``Y_j = sum_k A[j, k] X_k + Z_j`` where ``A`` is
the binary adjacency matrix of the channel type. Every transmitter has the same
power ``P`` and noise variances are ordered ``N1 <= N2 <= N3``.

Indices in the public API are 1-based (users 1, 2, 3) to match the usual
notation; arrays are 0-based internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

USERS = (1, 2, 3)


class ChannelType(IntEnum):
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5


_ADJACENCY = {
    ChannelType.T1: ((1, 1, 0), (1, 1, 1), (0, 1, 1)),
    ChannelType.T2: ((1, 1, 1), (1, 1, 0), (1, 0, 1)),
    ChannelType.T3: ((1, 0, 1), (0, 1, 1), (1, 1, 1)),
    ChannelType.T4: ((1, 0, 1), (1, 1, 0), (0, 1, 1)),
    ChannelType.T5: ((1, 1, 0), (0, 1, 1), (1, 0, 1)),
}


class ParameterError(ValueError):
    """Channel parameters violate the model assumptions."""


@dataclass(frozen=True)
class ChannelParams:
    """Common transmit power and per-receiver noise variances (linear scale)."""

    P: float
    N: tuple[float, float, float]

    def __post_init__(self):
        N = tuple(float(n) for n in self.N)
        if len(N) != 3:
            raise ParameterError(f"expected three noise variances, got {len(N)}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "P", float(self.P))
        if not (math.isfinite(self.P) and self.P >= 0):
            raise ParameterError(f"power must be finite and >= 0, got {self.P}")
        if not all(math.isfinite(n) and n > 0 for n in N):
            raise ParameterError(f"noise variances must be finite and > 0, got {N}")
        if not (N[0] <= N[1] <= N[2]):
            raise ParameterError(f"noise variances must satisfy N1 <= N2 <= N3, got {N}")

    @property
    def N1(self) -> float:
        return self.N[0]

    @property
    def N2(self) -> float:
        return self.N[1]

    @property
    def N3(self) -> float:
        return self.N[2]

    def noise(self, k: int) -> float:
        """Noise variance at receiver ``k`` (1-based)."""
        return self.N[k - 1]

    @property
    def high_snr(self) -> bool:
        """True when ``P >= 3 N_j`` for every receiver."""
        return self.P >= 3 * self.N3


@dataclass(frozen=True)
class RateTriple:
    R1: float
    R2: float
    R3: float

    def __post_init__(self):
        for r in (self.R1, self.R2, self.R3):
            if not (math.isfinite(r) and r >= 0):
                raise ValueError(f"rates must be finite and >= 0, got {self.as_tuple()}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.R1, self.R2, self.R3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())


@dataclass(frozen=True)
class SideInfoGraph:
    """Directed graph on users 1..n; edge ``(i, j)`` means ``i -> j``."""

    edges: frozenset[tuple[int, int]]
    nodes: tuple[int, ...] = USERS

    def incoming(self, j: int) -> tuple[int, ...]:
        return tuple(sorted(i for i, k in self.edges if k == j))

    def notation(self) -> str:
        """Render as ``{(1|3),(2),(3|1)}``: each node with its in-neighbours."""
        parts = []
        for j in self.nodes:
            inc = self.incoming(j)
            parts.append(f"({j}|{','.join(map(str, inc))})" if inc else f"({j})")
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class RegimeReport:
    snr: tuple[float, float, float]
    inr: tuple[float, float, float]
    # per receiver: ">" , "<" or "=" comparing SNR_k with INR_k
    ordering: tuple[str, str, str]
    label: str | None

    def holds(self, pattern: tuple[str, str, str]) -> bool:
        """Check a non-strict pattern such as ``(">=", ">=", "<=")``."""
        ok = {">=": (">", "="), "<=": ("<", "=")}
        return all(o in ok[p] for o, p in zip(self.ordering, pattern))


def adjacency(ctype: ChannelType | int) -> np.ndarray:
    """Binary 3x3 matrix; entry ``(j, k)`` is 1 iff transmitter k is heard at receiver j."""
    return np.array(_ADJACENCY[ChannelType(ctype)], dtype=int)


def side_info_graph(ctype: ChannelType | int) -> SideInfoGraph:
    """Edge ``i -> j`` whenever transmitter i does not interfere at receiver j."""
    A = adjacency(ctype)
    edges = frozenset(
        (i, j) for i in USERS for j in USERS if i != j and A[j - 1, i - 1] == 0
    )
    return SideInfoGraph(edges)


def interfered_receiver(ctype: ChannelType | int, k: int) -> int:
    """The single receiver other than ``k`` that hears transmitter ``k``.

    For types 4 and 5 every transmitter interferes at exactly one receiver.
    Types 1-3 have transmitters heard at two or zero other receivers, in which
    case the receiver with the smallest noise (strongest interference) is used.
    """
    A = adjacency(ctype)
    others = [j for j in USERS if j != k and A[j - 1, k - 1] == 1]
    if not others:
        raise ValueError(f"transmitter {k} causes no interference in type {int(ctype)}")
    return min(others)


def classify_regime(ctype: ChannelType | int, params: ChannelParams) -> RegimeReport:
    ctype = ChannelType(ctype)
    snr = tuple(params.P / n for n in params.N)
    inr = []
    for k in USERS:
        try:
            inr.append(params.P / params.noise(interfered_receiver(ctype, k)))
        except ValueError:
            inr.append(0.0)
    ordering = tuple(">" if s > i else "<" if s < i else "=" for s, i in zip(snr, inr))
    label = "mixed" if ctype in (ChannelType.T4, ChannelType.T5) else None
    return RegimeReport(snr, tuple(inr), ordering, label)


def normalize(ctype: ChannelType | int, params: ChannelParams) -> np.ndarray:
    """Gains of the equivalent unit-noise channel: ``A[j, k] / sqrt(N_j)``."""
    A = adjacency(ctype).astype(float)
    return A / np.sqrt(np.asarray(params.N))[:, None]


def single_user_capacity(params: ChannelParams, k: int) -> float:
    """``C_k = 1/2 log2(1 + P/N_k)`` in bits."""
    return 0.5 * math.log2(1.0 + params.P / params.noise(k))
