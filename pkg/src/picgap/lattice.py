"""Scaled-integer lattice algebra behind lattice alignment.

Lattices are cubic, ``a * Z^n``. The Voronoi cell of the origin is the
half-open cube ``[-a/2, a/2)^n``: quantisation rounds half up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RESIDUAL_TOL = 1e-9
RNG_ALGORITHM = "numpy.PCG64"


class MembershipError(ValueError):
    """A codeword or dither violates its lattice/cell membership precondition."""


@dataclass(frozen=True)
class ScaledLattice:
    a: float
    n: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"lattice spacing must be positive, got {self.a}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    def second_moment(self) -> float:
        """Per-dimension second moment of the Voronoi cell, ``a^2 / 12``."""
        return self.a**2 / 12.0

    def contains(self, x, tol: float = RESIDUAL_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        k = x / self.a
        return bool(np.all(np.abs(k - np.round(k)) <= tol * max(1.0, float(np.max(np.abs(k), initial=0)))))

    def in_cell(self, x, tol: float = RESIDUAL_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        h = self.a / 2
        return bool(np.all((x >= -h - tol) & (x < h)))

    def is_sublattice_of(self, other: "ScaledLattice") -> bool:
        """``self`` is coarser with an integer spacing ratio."""
        r = self.a / other.a
        return self.n == other.n and abs(r - round(r)) < 1e-12 * max(1.0, r) and round(r) >= 1


def _check_dim(lat: ScaledLattice, x: np.ndarray):
    if x.ndim > 0 and x.shape[-1] != lat.n and lat.n != 1:
        raise ValueError(f"dimension mismatch: lattice n={lat.n}, vector {x.shape}")


def quantize(lat: ScaledLattice, x):
    x = np.asarray(x, dtype=float)
    _check_dim(lat, x)
    return lat.a * np.floor(x / lat.a + 0.5)


def mod(lat: ScaledLattice, x):
    x = np.asarray(x, dtype=float)
    return x - quantize(lat, x)


def mmse_beta(S: float, N: float) -> float:
    if S < 0:
        raise ValueError(f"signal power must be >= 0, got {S}")
    if N <= 0:
        raise ValueError(f"noise power must be > 0, got {N}")
    return S / (S + N)


def effective_noise_variance(S: float, N: float) -> float:
    """``(beta - 1)^2 S + beta^2 N``, which equals ``S N / (S + N)`` at the MMSE beta."""
    b = mmse_beta(S, N)
    return (b - 1) ** 2 * S + b**2 * N


@dataclass(frozen=True)
class NestedChain:
    """Coding lattice ``a_c Z^n`` with shaping lattices ``a_1 Z^n`` and ``a_3 Z^n``."""

    a_c: float
    a_1: float
    a_3: float
    n: int = 1

    def __post_init__(self):
        c, one, three = self.coding, self.shape1, self.shape3
        if not one.is_sublattice_of(c):
            raise ValueError(f"a_1/a_c = {self.a_1 / self.a_c} is not a positive integer")
        if not three.is_sublattice_of(one):
            raise ValueError(f"a_3/a_1 = {self.a_3 / self.a_1} is not a positive integer")

    @property
    def coding(self) -> ScaledLattice:
        return ScaledLattice(self.a_c, self.n)

    @property
    def shape1(self) -> ScaledLattice:
        return ScaledLattice(self.a_1, self.n)

    @property
    def shape3(self) -> ScaledLattice:
        return ScaledLattice(self.a_3, self.n)

    def codebook_check(self, t, shaping: ScaledLattice, name: str):
        if not self.coding.contains(t):
            raise MembershipError(f"{name} is not a point of the coding lattice")
        if not shaping.in_cell(t):
            raise MembershipError(f"{name} lies outside the shaping Voronoi cell")


@dataclass(frozen=True)
class DitheredCodeword:
    t: np.ndarray
    d: np.ndarray
    x: np.ndarray

    @classmethod
    def encode(cls, shaping: ScaledLattice, t, d) -> "DitheredCodeword":
        t = np.asarray(t, dtype=float)
        d = np.asarray(d, dtype=float)
        return cls(t, d, mod(shaping, t + d))


def _aligned(chain: NestedChain, t11, t3, d11, d3):
    chain.codebook_check(t11, chain.shape1, "t11")
    chain.codebook_check(t3, chain.shape3, "t3")
    if not chain.shape1.in_cell(d11):
        raise MembershipError("d11 lies outside the Voronoi cell of the first shaping lattice")
    if not chain.shape3.in_cell(d3):
        raise MembershipError("d3 lies outside the Voronoi cell of the second shaping lattice")
    x11 = DitheredCodeword.encode(chain.shape1, t11, d11).x
    x3 = DitheredCodeword.encode(chain.shape3, t3, d3).x
    xf = x11 + x3
    tf = mod(chain.shape1, np.asarray(t11, float) + np.asarray(t3, float))
    df = np.asarray(d11, float) + np.asarray(d3, float)
    return xf, tf, df


def _close(a, b, lat: ScaledLattice, tol: float) -> float:
    """Residual between two points modulo a lattice (handles wrap at the cell edge)."""
    r = np.abs(mod(lat, np.asarray(a) - np.asarray(b)))
    return float(np.max(r, initial=0.0))


def lemma1_residual(chain: NestedChain, t11, t3, d11, d3) -> float:
    """``|[xf - df] mod L1 - tf|``: the aligned sum strips its dithers to a codeword."""
    xf, tf, df = _aligned(chain, t11, t3, d11, d3)
    return _close(mod(chain.shape1, xf - df), tf, chain.shape1, 0.0)


def lemma1_check(chain: NestedChain, t11, t3, d11, d3, tol: float = RESIDUAL_TOL) -> bool:
    return lemma1_residual(chain, t11, t3, d11, d3) <= tol


def lemma2_residual(lam1: ScaledLattice, lam3: ScaledLattice, x) -> float:
    if not lam3.is_sublattice_of(lam1):
        raise ValueError(f"spacing {lam3.a} is not an integer multiple of {lam1.a}")
    x = np.asarray(x, dtype=float)
    return _close(mod(lam1, mod(lam3, x)), mod(lam1, x), lam1, 0.0)


def lemma2_check(lam1: ScaledLattice, lam3: ScaledLattice, x, tol: float = RESIDUAL_TOL) -> bool:
    """Reducing modulo the coarser lattice first does not change a finer reduction."""
    return lemma2_residual(lam1, lam3, x) <= tol


def lemma3_residual(chain: NestedChain, t11, t3, d11, d3) -> float:
    xf, tf, df = _aligned(chain, t11, t3, d11, d3)
    return _close(mod(chain.shape1, tf + df), mod(chain.shape1, xf), chain.shape1, 0.0)


def lemma3_check(chain: NestedChain, t11, t3, d11, d3, tol: float = RESIDUAL_TOL) -> bool:
    """``[tf + df] mod L1 = [xf] mod L1``."""
    return lemma3_residual(chain, t11, t3, d11, d3) <= tol


@dataclass(frozen=True)
class Recovery:
    value: np.ndarray | None
    ok: bool


def recover_real_sum(y2, tf, df, lam1: ScaledLattice, truth=None) -> Recovery:
    """Rebuild the real sum ``xf`` from ``y2 = xf + z`` and the decoded ``tf``.

    The fine part ``M = [tf + df] mod L1`` is known exactly; the coarse part is
    the L1 point nearest to ``y2 - M``. When ``truth`` is given the result is
    compared against it and ``ok`` reports exact recovery.
    """
    m = mod(lam1, np.asarray(tf, float) + np.asarray(df, float))
    q = quantize(lam1, np.asarray(y2, float) - m)
    xf = m + q
    if truth is None:
        return Recovery(xf, True)
    ok = bool(np.max(np.abs(xf - np.asarray(truth, float)), initial=0.0) <= RESIDUAL_TOL * max(1.0, lam1.a))
    return Recovery(xf if ok else None, ok)


def _streaming_merge(stats, batch: np.ndarray):
    """Chan et al. pairwise update of (count, mean, M2)."""
    n_a, mean_a, m2_a = stats
    n_b = batch.size
    mean_b = float(batch.mean())
    m2_b = float(((batch - mean_b) ** 2).sum())
    n = n_a + n_b
    delta = mean_b - mean_a
    return n, mean_a + delta * n_b / n, m2_a + m2_b + delta**2 * n_a * n_b / n


def effective_noise_mc(S: float, N: float, samples: int, seed: int, batch: int = 1 << 16) -> float:
    """Sample variance of ``(beta - 1) x + beta z`` with x uniform of power S."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    beta = mmse_beta(S, N)
    root = np.random.SeedSequence(seed)
    stats = (0, 0.0, 0.0)
    remaining = samples
    n_batches = -(-samples // batch)
    for child in root.spawn(n_batches):
        k = min(batch, remaining)
        rng = np.random.Generator(np.random.PCG64(child))
        h = math.sqrt(3 * S)
        x = rng.uniform(-h, h, k)
        z = rng.normal(0.0, math.sqrt(N), k)
        stats = _streaming_merge(stats, (beta - 1) * x + beta * z)
        remaining -= k
    n, _, m2 = stats
    return m2 / (n - 1) if n > 1 else 0.0


# -- randomized verification suite ------------------------------------------------


@dataclass(frozen=True)
class LatticeSuiteResult:
    name: str
    trials: int
    max_residual: float
    passed: bool


def random_chain(rng: np.random.Generator, n: int) -> NestedChain:
    a_c = float(rng.choice([0.25, 0.5, 1.0, 2.0]))
    k1 = int(rng.integers(2, 9))
    k3 = int(rng.integers(2, 9))
    return NestedChain(a_c, a_c * k1, a_c * k1 * k3, n)


def random_codeword(rng: np.random.Generator, coding: ScaledLattice, shaping: ScaledLattice) -> np.ndarray:
    """Uniform codeword from ``coding`` intersected with the shaping cell."""
    m = int(round(shaping.a / coding.a))
    lo = -(m // 2)
    return coding.a * rng.integers(lo, lo + m, coding.n).astype(float)


def random_dither(rng: np.random.Generator, shaping: ScaledLattice) -> np.ndarray:
    h = shaping.a / 2
    return rng.uniform(-h, h, shaping.n)


def run_lattice_suite(trials: int, seed: int, dims=(1, 8)) -> list[LatticeSuiteResult]:
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = {k: 0.0 for k in ("lemma1", "lemma2", "lemma3", "decomposition", "distributive", "recovery")}
    recovery_ok = True
    for n in dims:
        for _ in range(trials):
            ch = random_chain(rng, n)
            t11 = random_codeword(rng, ch.coding, ch.shape1)
            t3 = random_codeword(rng, ch.coding, ch.shape3)
            d11 = random_dither(rng, ch.shape1)
            d3 = random_dither(rng, ch.shape3)
            worst["lemma1"] = max(worst["lemma1"], lemma1_residual(ch, t11, t3, d11, d3))
            worst["lemma3"] = max(worst["lemma3"], lemma3_residual(ch, t11, t3, d11, d3))
            x = rng.normal(0, 3 * ch.a_3, n)
            y = rng.normal(0, 3 * ch.a_3, n)
            worst["lemma2"] = max(worst["lemma2"], lemma2_residual(ch.shape1, ch.shape3, x))
            lat = ch.shape1
            worst["decomposition"] = max(
                worst["decomposition"], float(np.max(np.abs(quantize(lat, x) + mod(lat, x) - x)))
            )
            worst["distributive"] = max(
                worst["distributive"], _close(mod(lat, mod(lat, x) + y), mod(lat, x + y), lat, 0.0)
            )
            xf, tf, df = _aligned(ch, t11, t3, d11, d3)
            z = rng.uniform(-0.49, 0.49, n) * ch.a_1
            rec = recover_real_sum(xf + z, tf, df, ch.shape1, truth=xf)
            recovery_ok &= rec.ok
    out = [
        LatticeSuiteResult(k, trials * len(dims), v, v < RESIDUAL_TOL)
        for k, v in worst.items()
        if k != "recovery"
    ]
    out.append(LatticeSuiteResult("recovery", trials * len(dims), 0.0 if recovery_ok else math.inf, recovery_ok))
    return out
