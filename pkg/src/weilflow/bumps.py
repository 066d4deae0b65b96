"""Smooth compactly supported test functions and their transforms.

The basic building block is the scaled mollifier
alpha(t) = A exp(-w^2 / (w^2 - (t - c)^2)) on |t - c| < w, zero outside,
which is C-infinity with all derivatives vanishing at the support boundary.
Finite sums of bumps are first-class: everything downstream only needs
pointwise jets (alpha, alpha', alpha''), the support hull, and a mass scale.

Phi(s) = integral e^{t s} alpha(t) dt is entire in s. It is evaluated by
composite Gauss-Legendre quadrature (order 64 per panel, 8 panels initially,
panel count doubled until successive estimates agree to 1e-12 relative, with
an envelope floor so near-zero values can terminate). Ladder evaluation
computes Phi along an arithmetic progression of imaginary parts in one shared
panelization, which is how the spectral sums stay affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import InputError, QuadratureNonConvergence

# integral of exp(-1/(1-t^2)) over [-1,1]; used only as a tolerance scale
MOLLIFIER_MASS = 0.4439938161680794

GL_ORDER = 64
_MAX_NODES = 1 << 21  # bail out of doubling past ~2M evaluation points

# exp underflows to 0 below ~-745; cut earlier so derivative prefactors
# (which blow up polynomially at the edge) never meet a denormal exp
_EXP_CUTOFF = -700.0


@dataclass(frozen=True)
class BumpFunction:
    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not (self.width > 0):
            raise InputError("bump width must be positive, got %r" % (self.width,))
        if not math.isfinite(self.center) or not math.isfinite(self.amplitude):
            raise InputError("bump parameters must be finite")

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.width, self.center + self.width)

    @property
    def mass_scale(self) -> float:
        """Upper-bound scale for integral of |alpha|; not a certified value."""
        return abs(self.amplitude) * self.width * MOLLIFIER_MASS

    def values(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        s = t - self.center
        w2 = self.width * self.width
        denom = w2 - s * s
        out = np.zeros(t.shape)
        mask = denom > 0
        u = np.full(t.shape, -np.inf)
        u[mask] = -w2 / denom[mask]
        live = u > _EXP_CUTOFF
        out[live] = self.amplitude * np.exp(u[live])
        return out

    def jet(self, t: np.ndarray):
        """(alpha, alpha', alpha'') arrays; exact closed forms.

        With u = -w^2/(w^2 - s^2): alpha = A e^u, alpha' = alpha u',
        alpha'' = alpha (u'' + u'^2); all three vanish smoothly at the edge.
        """
        t = np.asarray(t, dtype=float)
        s = t - self.center
        w2 = self.width * self.width
        denom = w2 - s * s
        a = np.zeros(t.shape)
        a1 = np.zeros(t.shape)
        a2 = np.zeros(t.shape)
        mask = denom > 0
        sd = s[mask]
        dd = denom[mask]
        u = -w2 / dd
        live = u > _EXP_CUTOFF
        sd, dd, u = sd[live], dd[live], u[live]
        e = self.amplitude * np.exp(u)
        up = -2.0 * w2 * sd / (dd * dd)
        upp = -2.0 * w2 * (w2 + 3.0 * sd * sd) / (dd * dd * dd)
        idx = np.flatnonzero(mask)[live]
        a[idx] = e
        a1[idx] = e * up
        a2[idx] = e * (upp + up * up)
        return a, a1, a2

    def __call__(self, t: float) -> float:
        return float(self.values(np.array([t]))[0])


@dataclass(frozen=True)
class BumpSum:
    terms: tuple[BumpFunction, ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("empty bump combination")

    @property
    def support(self) -> tuple[float, float]:
        return (
            min(b.support[0] for b in self.terms),
            max(b.support[1] for b in self.terms),
        )

    @property
    def mass_scale(self) -> float:
        return sum(b.mass_scale for b in self.terms)

    def values(self, t: np.ndarray) -> np.ndarray:
        out = self.terms[0].values(t)
        for b in self.terms[1:]:
            out = out + b.values(t)
        return out

    def jet(self, t: np.ndarray):
        a, a1, a2 = self.terms[0].jet(t)
        for b in self.terms[1:]:
            u, u1, u2 = b.jet(t)
            a, a1, a2 = a + u, a1 + u1, a2 + u2
        return a, a1, a2

    def __call__(self, t: float) -> float:
        return float(self.values(np.array([t]))[0])


TestFunction = Union[BumpFunction, BumpSum]


def combine_bumps(bumps) -> TestFunction:
    """Normalize a bump / sequence of bumps into one test function."""
    if isinstance(bumps, (BumpFunction, BumpSum)):
        return bumps
    terms = tuple(bumps)
    if len(terms) == 1:
        return terms[0]
    return BumpSum(terms=terms)


@dataclass(frozen=True)
class PhiResult:
    value: complex
    error: float  # |last doubling delta|
    panels: int
    order: int = GL_ORDER


@dataclass(frozen=True)
class TailMajorant:
    sigma: float
    m2: float  # certified bound for integral |(e^{sigma t} alpha)''| dt
    error: float


@lru_cache(maxsize=8)
def _gl(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _grid(lo: float, hi: float, panels: int, order: int = GL_ORDER):
    x, w = _gl(order)
    half = (hi - lo) / panels / 2.0
    centers = lo + (2.0 * np.arange(panels) + 1.0) * half
    t = (centers[:, None] + half * x[None, :]).ravel()
    wt = np.broadcast_to(w * half, (panels, order)).reshape(-1).copy()
    return t, wt


def _envelope(tf: TestFunction, sigma: float) -> float:
    lo, hi = tf.support
    return tf.mass_scale * math.exp(max(sigma * lo, sigma * hi))


def phi(tf: TestFunction, s: complex, rtol: float = 1e-12) -> PhiResult:
    """Phi(s) = integral e^{t s} alpha(t) dt with an error estimate.

    Composite Gauss-Legendre, panels doubled until successive estimates agree
    to rtol relative (floored by an envelope scale so destructive-cancellation
    values near zero still terminate).
    """
    s = complex(s)
    lo, hi = tf.support
    env = _envelope(tf, s.real) + 1e-300
    panels = max(8, _oscillation_panels(hi - lo, abs(s.imag)))
    if panels * GL_ORDER > _MAX_NODES:
        raise QuadratureNonConvergence(
            "phi(%s) needs %d panels up front, past the node cap" % (s, panels)
        )
    t, wt = _grid(lo, hi, panels)
    prev = complex(np.sum(wt * tf.values(t) * np.exp(s * t)))
    while True:
        panels *= 2
        if panels * GL_ORDER > _MAX_NODES:
            raise QuadratureNonConvergence(
                "phi(%s) still moving at %d panels" % (s, panels // 2)
            )
        t, wt = _grid(lo, hi, panels)
        cur = complex(np.sum(wt * tf.values(t) * np.exp(s * t)))
        delta = abs(cur - prev)
        if delta <= rtol * max(abs(cur), env):
            return PhiResult(value=cur, error=delta, panels=panels)
        prev = cur


def _oscillation_panels(span: float, freq: float) -> int:
    # 8 wavelengths per 64-node panel: 8 nodes per wavelength to start with;
    # the doubling check still validates the resolution
    return int(math.ceil(span * freq / (2.0 * math.pi * 8.0))) if freq > 0 else 0


def _ladder_pass(tf: TestFunction, sigma: float, f0: float, step: float,
                 count: int, panels: int, lo: float, hi: float) -> np.ndarray:
    """One quadrature pass of F(f) = integral e^{sigma t} alpha(t) e^{i f t} dt
    for f = f0, f0+step, ..., via phase recurrence re-anchored every 512 steps.
    """
    t, wt = _grid(lo, hi, panels)
    base = wt * tf.values(t) * np.exp(sigma * t)
    rot = np.exp(1j * step * t)
    out = np.empty(count, dtype=complex)
    cur = base * np.exp(1j * f0 * t)
    for k in range(count):
        if k and k % 512 == 0:
            cur = base * np.exp(1j * (f0 + step * k) * t)
        out[k] = cur.sum()
        cur *= rot
    return out


def phi_ladder(tf: TestFunction, sigma: float, f0: float, step: float,
               count: int, rtol: float = 1e-12):
    """Phi along s = sigma + i(f0 + step k), k = 0..count-1, with per-point
    error estimates from the final panel doubling.

    Returns (values, errors, panels). Same convergence contract as phi().
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    lo, hi = tf.support
    env = _envelope(tf, sigma) + 1e-300
    fmax = max(abs(f0), abs(f0 + step * (count - 1)))
    panels = max(8, _oscillation_panels(hi - lo, fmax))
    if panels * GL_ORDER > _MAX_NODES:
        raise QuadratureNonConvergence(
            "ladder of %d points needs %d panels up front, past the node cap"
            % (count, panels)
        )
    prev = _ladder_pass(tf, sigma, f0, step, count, panels, lo, hi)
    while True:
        panels *= 2
        if panels * GL_ORDER > _MAX_NODES:
            raise QuadratureNonConvergence(
                "ladder of %d points still moving at %d panels"
                % (count, panels // 2)
            )
        cur = _ladder_pass(tf, sigma, f0, step, count, panels, lo, hi)
        err = np.abs(cur - prev)
        scale = max(float(np.max(np.abs(cur))), env)
        if float(err.max()) <= rtol * scale:
            return cur, err, panels
        prev = cur


def tail_majorant(tf: TestFunction, sigma: float, rtol: float = 1e-9) -> TailMajorant:
    """Certified M2(sigma) with |Phi(sigma + i tau)| <= M2 / tau^2.

    Two integrations by parts of e^{t(sigma + i tau)} alpha(t) put the whole
    tau decay on |(e^{sigma t} alpha)''| = |alpha'' + 2 sigma alpha' +
    sigma^2 alpha| e^{sigma t}. The integrand has kinks (absolute value of a
    sign-changing function), so convergence is algebraic: the tolerance here
    is looser than phi()'s and the result is inflated before being used as a
    bound.
    """
    lo, hi = tf.support

    def integrand(t: np.ndarray) -> np.ndarray:
        a, a1, a2 = tf.jet(t)
        return np.abs(a2 + 2.0 * sigma * a1 + sigma * sigma * a) * np.exp(sigma * t)

    panels = 8
    t, wt = _grid(lo, hi, panels)
    prev = float(np.sum(wt * integrand(t)))
    while True:
        panels *= 2
        if panels * GL_ORDER > _MAX_NODES:
            raise QuadratureNonConvergence(
                "tail majorant at sigma = %g still moving at %d panels"
                % (sigma, panels // 2)
            )
        t, wt = _grid(lo, hi, panels)
        cur = float(np.sum(wt * integrand(t)))
        delta = abs(cur - prev)
        if delta <= rtol * max(abs(cur), 1e-300):
            m2 = cur * (1.0 + 1e-6) + 10.0 * delta
            return TailMajorant(sigma=sigma, m2=m2, error=delta)
        prev = cur
