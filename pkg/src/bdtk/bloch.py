"""Symbol-side machinery for band operators with period l.

A band operator commuting with translation by l block-diagonalizes over the
circle: it acts at angle theta as the l x l matrix B(e^{2 pi i theta}) =
sum_n W(z)^n F_n, where W(z) is the cyclic shift with the wrap entry z and
F_n the diagonal of the n-th band function.  The operator norm is the sup of
the largest singular value over the circle.

The sup is certified in two steps: grid sampling plus local refinement give a
lower bound m attained at an evaluated angle; the upper bound m + tol/2 is
then verified by checking that det(lambda^2 I - B(z)^* B(z)) has no roots on
the unit circle, i.e. that no singular-value sheet crosses the level.  Root
location uses a companion matrix for moderate degrees and zero counting on a
thin annulus (argument principle) for large ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_TWO_PI = 2.0 * np.pi


@dataclass
class SymbolMatrix:
    """Evaluable l x l Laurent-polynomial symbol of a band operator."""

    period: int
    coeffs: dict[int, np.ndarray]      # wrap power w -> l x l coefficient matrix
    band_sup: dict[int, float] = field(default_factory=dict)

    def wrap_degree(self) -> int:
        return max((abs(w) for w in self.coeffs), default=0)

    def at(self, theta: float) -> np.ndarray:
        l = self.period
        out = np.zeros((l, l), dtype=complex)
        for w, C in self.coeffs.items():
            out += C * np.exp(2j * np.pi * w * theta)
        return out

    def at_many(self, thetas: np.ndarray) -> np.ndarray:
        l = self.period
        ws = np.array(sorted(self.coeffs), dtype=float)
        stack = np.stack([self.coeffs[int(w)] for w in ws])
        phases = np.exp(2j * np.pi * np.outer(thetas, ws))
        return np.einsum("tw,wij->tij", phases, stack)

    def lipschitz_bound(self) -> float:
        """2 pi * sum_n (|n| // l + 1) * sup|f_n|, a bound on d(sigma_max)/d(theta)."""
        l = self.period
        return _TWO_PI * sum((abs(n) // l + 1) * s for n, s in self.band_sup.items())


def symbol_from_bands(l: int, band_values: dict[int, np.ndarray]) -> SymbolMatrix:
    """Assemble the symbol from per-band value arrays of length l."""
    coeffs: dict[int, np.ndarray] = {}
    sup: dict[int, float] = {}
    for n, vals in band_values.items():
        sup[n] = float(np.max(np.abs(vals))) if len(vals) else 0.0
        for r in range(l):
            rp = (r + n) % l
            w = (r + n - rp) // l
            C = coeffs.get(w)
            if C is None:
                C = coeffs.setdefault(w, np.zeros((l, l), dtype=complex))
            C[rp, r] += vals[r]
    if not coeffs:
        coeffs[0] = np.zeros((l, l), dtype=complex)
    return SymbolMatrix(l, coeffs, sup)


def symbol_samples_to_bands(samples: np.ndarray, max_band: int) -> dict[int, np.ndarray]:
    """Invert G equispaced symbol samples to band value arrays.

    samples has shape (G, l, l); bands with |n| <= max_band are read off the
    discrete Fourier coefficients of the matrix entries (aliasing folds in
    contributions from wrap powers beyond G/2, which the caller controls by
    choosing G large enough)."""
    G, l, _ = samples.shape
    C = np.fft.fft(samples, axis=0) / G
    out: dict[int, np.ndarray] = {}
    for n in range(-max_band, max_band + 1):
        vals = np.zeros(l, dtype=complex)
        ok = False
        for r in range(l):
            rp = (r + n) % l
            w = (r + n - rp) // l
            if abs(w) > (G - 1) // 2:
                continue
            vals[r] = C[w % G, rp, r]
            ok = True
        if ok and np.any(vals != 0):
            out[n] = vals
    return out


def _smax_batch(mats: np.ndarray) -> np.ndarray:
    return np.linalg.svd(mats, compute_uv=False)[..., 0]


def _smax_at(sym: SymbolMatrix, theta: float) -> float:
    return float(np.linalg.svd(sym.at(theta), compute_uv=False)[0])


def _refine_peak(sym: SymbolMatrix, theta0: float, h: float) -> float:
    a, b = theta0 - h, theta0 + h
    best = _smax_at(sym, theta0)
    for _ in range(55):
        m1 = a + (b - a) / 3.0
        m2 = b - (b - a) / 3.0
        f1, f2 = _smax_at(sym, m1), _smax_at(sym, m2)
        best = max(best, f1, f2)
        if f1 < f2:
            a = m1
        else:
            b = m2
    return best


def _laurent_det_poly(coeff_mats: dict[int, np.ndarray], l: int) -> np.ndarray:
    """Coefficients (low to high) of z^(l*D) * det(sum_u A_u z^u), D = max |u|."""
    D = max((abs(u) for u in coeff_mats), default=0)
    if D == 0:
        return np.array([np.linalg.det(coeff_mats.get(0, np.zeros((l, l))))])
    deg = 2 * l * D
    M = 1
    while M < deg + 2:
        M *= 2
    idx = np.arange(M)
    z = np.exp(2j * np.pi * idx / M)
    mats = np.zeros((M, l, l), dtype=complex)
    for u, A in coeff_mats.items():
        mats += (z ** u)[:, None, None] * A
    vals = np.linalg.det(mats)
    # det is a Laurent polynomial of degree range [-lD, lD]
    c = np.fft.fft(vals) / M
    lo = []
    for k in range(-l * D, l * D + 1):
        lo.append(c[k % M])
    return np.asarray(lo)


def _winding_on_circle(poly_lo2hi: np.ndarray, radius: float) -> int | None:
    """Number of zeros inside |z| < radius via argument accumulation; None if
    the phase steps cannot be resolved (roots essentially on the sampling
    circle), which callers treat as an inconclusive, hence conservative,
    outcome."""
    deg = len(poly_lo2hi) - 1
    M = 4096
    while M < 32 * max(deg, 1):
        M *= 2
    hi2lo = poly_lo2hi[::-1]
    for _ in range(8):
        z = radius * np.exp(2j * np.pi * np.arange(M) / M)
        vals = np.polyval(hi2lo, z)
        if np.min(np.abs(vals)) <= 1e-290:
            return None
        args = np.angle(vals)
        d = np.diff(np.concatenate([args, args[:1]]))
        d = (d + np.pi) % (2 * np.pi) - np.pi
        if np.max(np.abs(d)) < 1.5:
            total = d.sum() / (2 * np.pi)
            w = int(round(total))
            if abs(total - w) < 1e-6:
                return w
        M *= 2
    return None


def circle_root_angles(poly_lo2hi: np.ndarray, delta: float = 1e-7) -> tuple[list[float], bool]:
    """Angles (in turns) of polynomial roots within delta of the unit circle.

    Returns (angles, certified).  certified=True with an empty list means the
    polynomial provably has no root that close to the circle; certified=False
    means the test was inconclusive and the angles are candidate locations.
    """
    p = np.asarray(poly_lo2hi, dtype=complex)
    mx = np.max(np.abs(p)) if len(p) else 0.0
    if mx == 0.0:
        return [0.0], False  # identically zero determinant: degenerate
    keep = np.abs(p) > 1e-300
    first = int(np.argmax(keep))
    last = len(p) - int(np.argmax(keep[::-1]))
    p = p[first:last]
    # drop negligible leading coefficients so the companion matrix stays sane
    tail = np.abs(p[::-1]).cumsum()[::-1]
    cut = len(p)
    while cut > 1 and tail[cut - 1] <= 1e-14 * mx:
        cut -= 1
    p = p[:cut]
    deg = len(p) - 1
    if deg <= 0:
        return [], True
    if deg <= 512:
        roots = np.roots(p[::-1])
        near = roots[np.abs(np.abs(roots) - 1.0) < delta]
        angles = sorted(set((float(a) / _TWO_PI) % 1.0 for a in np.angle(near)))
        return angles, True
    w_out = _winding_on_circle(p, 1.0 + delta)
    w_in = _winding_on_circle(p, 1.0 - delta)
    if w_out is None or w_in is None:
        return _unit_circle_min_angles(p), False
    if w_out == w_in:
        return [], True
    return _unit_circle_min_angles(p), True


def _unit_circle_min_angles(poly_lo2hi: np.ndarray, count: int = 6) -> list[float]:
    deg = len(poly_lo2hi) - 1
    M = 4096
    while M < 8 * max(deg, 1):
        M *= 2
    z = np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.abs(np.polyval(poly_lo2hi[::-1], z))
    local = np.where((vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1)))[0]
    order = local[np.argsort(vals[local])]
    return [float(i) / M for i in order[:count]]


def _gram_coeffs(sym: SymbolMatrix) -> dict[int, np.ndarray]:
    """Laurent coefficients of H(z) = B(z)^* B(z)."""
    H: dict[int, np.ndarray] = {}
    for w1, C1 in sym.coeffs.items():
        A1 = C1.conj().T
        for w2, C2 in sym.coeffs.items():
            u = w2 - w1
            M = H.get(u)
            if M is None:
                M = H.setdefault(u, np.zeros((sym.period, sym.period), dtype=complex))
            M += A1 @ C2
    return H


def _level_root_angles(sym: SymbolMatrix, lam: float, H: dict[int, np.ndarray]):
    l = sym.period
    hmax = max((float(np.max(np.abs(A))) for A in H.values()), default=0.0)
    scale = 1.0 / max(lam * lam, hmax, 1e-300)
    shifted = {u: -scale * A for u, A in H.items()}
    eye_term = shifted.get(0)
    if eye_term is None:
        eye_term = shifted.setdefault(0, np.zeros((l, l), dtype=complex))
    eye_term += scale * lam * lam * np.eye(l)
    poly = _laurent_det_poly(shifted, l)
    return circle_root_angles(poly)


def certified_sup_smax(sym: SymbolMatrix, tol: float) -> float:
    """sup over the circle of sigma_max(B), within tol.

    Returns r with |r - sup| <= tol: the refined grid maximum m is a lower
    bound, and the level m + tol/2 is certified from above by the absence of
    unimodular roots of det(lambda^2 I - B^* B)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    W = sym.wrap_degree()
    if W == 0:
        return _smax_at(sym, 0.0)
    G = 256
    while G < 8 * (2 * W + 1):
        G *= 2
    thetas = np.arange(G) / G
    s = _smax_batch(sym.at_many(thetas))
    local = np.where((s >= np.roll(s, 1)) & (s >= np.roll(s, -1)))[0]
    cand = list(local[np.argsort(s[local])][::-1][:6])
    if int(np.argmax(s)) not in cand:
        cand.append(int(np.argmax(s)))
    m = max(_refine_peak(sym, float(i) / G, 1.0 / G) for i in cand)
    H = _gram_coeffs(sym)
    for _ in range(64):
        lam = m + 0.5 * tol
        angles, certified = _level_root_angles(sym, lam, H)
        if certified and not angles:
            return m + 0.25 * tol
        prev = m
        for ang in angles:
            m = max(m, _refine_peak(sym, ang, 2.0 / G))
        if m <= prev * (1 + 1e-15) + 1e-300:
            # level is touched within root-finder resolution: the sup lies in
            # [m, m + tol/2], so the midpoint is still within tol
            return m + 0.25 * tol
    raise RuntimeError("operator-norm certification did not converge")


def symbol_invertibility(sym: SymbolMatrix, delta: float = 1e-8) -> tuple[bool, float]:
    """Certify pointwise invertibility of B on the circle.

    Returns (invertible, grid_smin).  Invertibility holds iff det B(z) has no
    unimodular roots; grid_smin reports the observed sigma_min margin."""
    l = sym.period
    G = 256
    while G < 8 * (2 * sym.wrap_degree() + 1):
        G *= 2
    mats = sym.at_many(np.arange(G) / G)
    smin = float(np.linalg.svd(mats, compute_uv=False)[:, -1].min())
    poly = _laurent_det_poly(sym.coeffs, l)
    angles, certified = circle_root_angles(poly, delta)
    if not certified or angles or smin <= 1e-12:
        return False, smin
    return True, smin


def winding_of_det(sym: SymbolMatrix) -> int:
    """Winding number of theta -> det B(e^{2 pi i theta}) around 0, by
    argument accumulation on a refined grid."""
    G = 1024
    while G < 16 * (sym.wrap_degree() * sym.period + 1):
        G *= 2
    for _ in range(8):
        vals = np.linalg.det(sym.at_many(np.arange(G) / G))
        if np.min(np.abs(vals)) <= 1e-290:
            raise ValueError("determinant vanishes on the sampling grid")
        args = np.angle(vals)
        d = np.diff(np.concatenate([args, args[:1]]))
        d = (d + np.pi) % (2 * np.pi) - np.pi
        if np.max(np.abs(d)) < np.pi / 2:
            total = d.sum() / (2 * np.pi)
            w = int(round(total))
            if abs(total - w) < 1e-6:
                return w
        G *= 2
    raise RuntimeError("winding accumulation did not resolve")
