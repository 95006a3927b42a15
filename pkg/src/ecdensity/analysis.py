"""Test functions, smooth weights, and their Fourier transforms.

Convention throughout: e(t) = exp(2*pi*i*t) and fhat(u) = integral of
f(x) e(-x u) dx.  The density pipeline needs an even test function phi >= 0
whose transform has compact support; the shipped pair is the Fejer pair

    phihat(y) = max(0, 1 - |y|/nu),    phi(x) = nu * sinc(nu x)^2,

so phi(0) = nu and phihat(0) = 1.  Family weights are tensor products of the
C-infinity bump u(t) = exp(-1/(t(1-t))) scaled to a box; their transforms
are evaluated by fixed 256-node Gauss-Legendre per axis, with a one-time FFT
magnitude profile per axis supplying certified truncation radii for lattice
sums (the quadrature itself is only trusted inside the profiled band).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad


# ---------------------------------------------------------------------------
# test function pairs


@dataclass(frozen=True)
class TestFunctionPair:
    """An even pair (phi, phihat) with phihat of compact support.

    kind "fejer" is fully described by nu; kind "custom" wraps caller
    evaluators plus the support radius of phihat.
    """

    kind: str
    nu: Fraction | None = None
    phi_fn: Callable | None = None
    phihat_fn: Callable | None = None
    support: float | None = None

    def phi(self, x):
        if self.kind == "fejer":
            n = float(self.nu)
            return n * np.sinc(n * np.asarray(x, dtype=float)) ** 2
        return self.phi_fn(x)

    def phihat(self, y):
        if self.kind == "fejer":
            n = float(self.nu)
            return np.maximum(0.0, 1.0 - np.abs(np.asarray(y, dtype=float)) / n)
        return self.phihat_fn(y)

    @property
    def phi0(self) -> float:
        return float(self.nu) if self.kind == "fejer" else float(self.phi_fn(0.0))

    @property
    def phihat0(self) -> float:
        return 1.0 if self.kind == "fejer" else float(self.phihat_fn(0.0))

    @property
    def phihat_support(self) -> float:
        """phihat vanishes outside [-support, support]."""
        return float(self.nu) if self.kind == "fejer" else float(self.support)


def fejer_pair(nu: Fraction | str | float) -> TestFunctionPair:
    """The Fejer pair at parameter nu in (0, 1]; nu is kept as an exact rational."""
    nu = Fraction(nu).limit_denominator(10**9) if isinstance(nu, float) else Fraction(nu)
    if not 0 < nu <= 1:
        raise ValueError(f"nu must lie in (0, 1], got {nu}")
    return TestFunctionPair(kind="fejer", nu=nu)


def _fejer_tail(w: float, x0: float, nu: float) -> float:
    """integral_{x0}^inf cos(2 pi w x) / (pi^2 nu x^2) dx, w >= 0."""
    if w == 0.0:
        return 1.0 / (math.pi**2 * nu * x0)
    val, _ = quad(lambda x: 1.0 / (math.pi**2 * nu * x * x), x0, np.inf,
                  weight="cos", wvar=2.0 * math.pi * w)
    return val


def verify_fourier_pair(pair: TestFunctionPair, grid, tol: float = 1e-6) -> float:
    """Max over the grid of |quadrature transform of phi - claimed phihat|.

    For the Fejer kind the slowly decaying oscillatory integral is split as
    2 phi(x) cos(2 pi x y) = [cos(2 pi y x) - cos(2 pi (y+nu) x)/2
    - cos(2 pi |y-nu| x)/2] / (pi^2 nu x^2), finite part by adaptive
    quadrature and the three 1/x^2 tails by QAWF; custom pairs integrate to
    the caller-scanned cutoff where |phi| stays below 1e-14.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    worst = 0.0
    if pair.kind == "fejer":
        nu = float(pair.nu)
        x0 = 24.0 / nu
        for y in np.abs(grid):
            finite, _ = quad(lambda x: 2.0 * pair.phi(x) * math.cos(2.0 * math.pi * x * y),
                             0.0, x0, limit=2000, epsabs=1e-11, epsrel=1e-11)
            tails = (_fejer_tail(y, x0, nu)
                     - 0.5 * _fejer_tail(y + nu, x0, nu)
                     - 0.5 * _fejer_tail(abs(y - nu), x0, nu))
            worst = max(worst, abs(finite + tails - float(pair.phihat(y))))
        return worst
    # custom pair: find a cutoff where |phi| has decayed for good
    xcut = 1.0
    while xcut < 1e8 and max(abs(float(pair.phi(xcut))), abs(float(pair.phi(2 * xcut)))) > 1e-14:
        xcut *= 2.0
    for y in np.abs(grid):
        val, _ = quad(lambda x: 2.0 * float(pair.phi(x)) * math.cos(2.0 * math.pi * x * y),
                      0.0, xcut, limit=2000, epsabs=1e-10, epsrel=1e-10)
        worst = max(worst, abs(val - float(pair.phihat(y))))
    return worst


# ---------------------------------------------------------------------------
# smooth compactly supported weights


def bump(t):
    """exp(-1/(t(1-t))) on (0, 1), 0 elsewhere; vectorized, overflow-safe."""
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < 1.0)
    tt = np.where(inside, t, 0.5)
    out = np.exp(-1.0 / (tt * (1.0 - tt)))
    return np.where(inside, out, 0.0)


DEFAULT_BOX = (0.5, 1.0, 0.5, 1.0)
GL_NODES = 256
_PROFILE_SAMPLES = 1 << 16
_PROFILE_BINS = 4096


class SmoothWeight:
    """Tensor-product bump weight on a box, with transform and truncation data.

    what(u, v) factorizes as axis_transform(0, u) * axis_transform(1, v); each
    axis transform is a fixed Gauss-Legendre sum over the box edge.  radius(i,
    thresh) returns a frequency beyond which |axis transform| stays below
    thresh, certified by a dense FFT magnitude envelope rather than by the
    quadrature (which loses accuracy far outside the profiled band).
    """

    def __init__(self, box: tuple[float, float, float, float] = DEFAULT_BOX,
                 nodes: int = GL_NODES):
        x0, x1, y0, y1 = box
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"degenerate box {box}")
        self.box = tuple(float(t) for t in box)
        self.nodes = int(nodes)
        g, w = leggauss(self.nodes)
        self._ax = []
        self._env = []
        for lo, hi in ((x0, x1), (y0, y1)):
            s = hi - lo
            xs = lo + 0.5 * s * (g + 1.0)
            ws = 0.5 * s * w
            fv = bump((xs - lo) / s)
            self._ax.append((lo, hi, xs, ws * fv))
            self._env.append(self._axis_envelope(lo, hi))
        self._cache: tuple[dict, dict] = ({}, {})

    @staticmethod
    def _axis_envelope(lo: float, hi: float):
        # 4x zero-padding puts four bins per oscillation of the transform
        # (period 1/s in u); sampling at the bare bin spacing 1/s can land
        # on nulls and understate between-bin peaks.  The residual off-bin
        # rise is below sec(pi/8) ~ 1.09; fold it into a 1.15 margin.
        s = hi - lo
        m = _PROFILE_SAMPLES
        samples = bump((np.arange(m) + 0.5) / m)
        mags = s * np.abs(np.fft.fft(samples, n=4 * m))[: 4 * _PROFILE_BINS] / m
        env = 1.15 * np.maximum.accumulate(mags[::-1])[::-1]
        return 1.0 / (4.0 * s), env  # frequency step in u, envelope values

    # -- real-space evaluators

    def axis_weight(self, i: int, t):
        lo, hi, _, _ = self._ax[i]
        return bump((np.asarray(t, dtype=float) - lo) / (hi - lo))

    def w(self, x, y):
        return self.axis_weight(0, x) * self.axis_weight(1, y)

    # -- transforms

    def axis_transform(self, i: int, u):
        """uhat_i(u) = integral over the axis of w_i(x) e(-x u) dx."""
        _, _, xs, wf = self._ax[i]
        u_arr = np.asarray(u, dtype=float)
        ph = np.exp(-2j * np.pi * np.multiply.outer(u_arr, xs))
        return ph @ wf

    def _axis_scalar(self, i: int, u: float) -> complex:
        key = round(float(u), 12)
        cache = self._cache[i]
        val = cache.get(key)
        if val is None:
            val = complex(self.axis_transform(i, float(u)))
            cache[key] = val
        return val

    def what(self, u: float, v: float) -> complex:
        """2D transform value; conjugate-symmetric: what(-u,-v) = conj(what(u,v))."""
        return self._axis_scalar(0, u) * self._axis_scalar(1, v)

    def what_grid(self, us, vs) -> np.ndarray:
        return np.outer(self.axis_transform(0, us), self.axis_transform(1, vs))

    @property
    def mass(self) -> float:
        """what(0, 0) = integral of w > 0; also the max of |what|."""
        return float(self.what(0.0, 0.0).real)

    def axis_mass(self, i: int) -> float:
        return float(abs(self._axis_scalar(i, 0.0)))

    def radius(self, i: int, thresh: float) -> float:
        """Least grid frequency r with |axis transform| < thresh beyond r."""
        du, env = self._env[i]
        if thresh <= env[-1]:
            return du * len(env)  # never certified below thresh on the profile
        j = int(np.argmax(env < thresh))
        return du * j


# ---------------------------------------------------------------------------
# 1D Poisson summation check


@dataclass(frozen=True)
class GaussianPair:
    """Self-dual reference pair: w(x) = exp(-pi (x/sigma)^2), what(u) =
    sigma exp(-pi (sigma u)^2).  Used to exercise Poisson summation with a
    transform known in closed form."""

    sigma: float = 1.0

    def w(self, x):
        return np.exp(-np.pi * (np.asarray(x, dtype=float) / self.sigma) ** 2)

    def what(self, u):
        return self.sigma * np.exp(-np.pi * (self.sigma * np.asarray(u, dtype=float)) ** 2)

    def radius_x(self, tol: float) -> float:
        return self.sigma * math.sqrt(math.log(1.0 / tol) / math.pi)

    def radius_u(self, tol: float) -> float:
        return math.sqrt(math.log(max(self.sigma, 1.0) / tol) / math.pi) / self.sigma


def poisson_mod_l_check(pair, l: int, a: int, d: float,
                        tol: float = 1e-15) -> tuple[float, float]:
    """Both sides of sum over n = a (mod l) of w(n/d)
    = (d/l) * sum_h what(h d / l) e(h a / l), truncated where the factors
    have decayed below tol.  Returns (lhs, rhs) as floats (rhs real part;
    the imaginary part cancels by conjugate pairing).
    """
    if l <= 0 or d <= 0:
        raise ValueError("need l >= 1 and d > 0")
    rx = pair.radius_x(tol)
    nmax = int(math.ceil(rx * d)) + l
    ns = np.arange(a - (a + nmax) // l * l, nmax + 1, l, dtype=float)
    lhs = float(np.sum(pair.w(ns / d)))
    ru = pair.radius_u(tol)
    hmax = int(math.ceil(ru * l / d)) + 1
    hs = np.arange(-hmax, hmax + 1, dtype=float)
    rhs_c = (d / l) * np.sum(pair.what(hs * d / l) * np.exp(2j * np.pi * hs * a / l))
    return lhs, float(rhs_c.real)
