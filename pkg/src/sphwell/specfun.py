"""Spherical special functions.

Stable evaluation of the spherical Bessel functions j_l and n_l, the
order-zero spherical Hankel functions, associated Legendre functions,
complex spherical harmonics, and positive zeros of j_l.

Evaluation strategy for j_l(x):

* ascending power series for ``x < 0.5`` or ``x < 0.1 * l`` (upward
  recurrence would be catastrophically unstable there, and any series
  cancellation stays harmless wherever the result is representable);
* upward recurrence from the closed forms of j_0, j_1 when ``x > l``
  (stable while the order stays below the argument);
* Miller's downward recurrence otherwise: start at order
  ``l + max(20, ceil(sqrt(40 l)))``, seed with (0, 1), recur down, and
  renormalize against the closed form of j_0 (or j_1 when j_0 sits near a
  zero of sin).  The raw sweep is rescaled by 1e-280 whenever it grows past
  1e+280 so it never overflows.

Deep evanescent values (l much larger than x) may underflow to exactly
zero; callers that sum densities can ignore them at grid resolution.

All computation is in binary64.
"""

import math

import numpy as np

__all__ = [
    "ORDER_CEILING",
    "sph_bessel_j",
    "sph_bessel_j_all",
    "sph_bessel_j_table",
    "sph_bessel_n",
    "sph_hankel0",
    "assoc_legendre",
    "sph_harmonic",
    "sph_bessel_zero",
]

# Largest supported order; recurrence cost and cache sizes are linear in l.
ORDER_CEILING = 100_000

_OVERFLOW_GUARD = 1e280
_RESCALE = 1e-280
_SERIES_TABLE_CUTOFF = 0.5
_SERIES_TERMS = 60


class ZeroBracketError(RuntimeError):
    """Root refinement failed to converge (signals a bracketing bug)."""


def _check_order(l):
    if not isinstance(l, (int, np.integer)):
        raise ValueError(f"order must be an integer, got {l!r}")
    if l < 0:
        raise ValueError(f"order must be non-negative, got {l}")
    if l > ORDER_CEILING:
        raise ValueError(f"order {l} exceeds the implementation ceiling {ORDER_CEILING}")
    return int(l)


def _check_argument(x):
    x = float(x)
    if math.isnan(x):
        raise ValueError("argument must not be NaN")
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    return x


def _ln_odd_double_factorial(l):
    # ln (2l+1)!! via (2l+1)!! = (2l+1)! / (2^l l!)
    return math.lgamma(2 * l + 2) - l * math.log(2.0) - math.lgamma(l + 1)


def _series_j(l, x):
    """Ascending series j_l(x) = x^l/(2l+1)!! * sum_k (-x^2/2)^k / (k! prod(2l+3..2l+2k+1)).

    The prefactor is carried in log space so the deep-evanescent underflow
    to zero happens gracefully instead of raising.
    """
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    y = 0.5 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 201):
        term *= -y / (k * (2 * l + 2 * k + 1))
        total += term
        # terms may first grow when x^2 > 2(2l+3); only stop past the peak
        if abs(term) <= 1e-18 * abs(total) and k * (2 * l + 2 * k + 1) > y:
            break
    if total == 0.0:
        return 0.0
    ln_mag = l * math.log(x) - _ln_odd_double_factorial(l) + math.log(abs(total))
    if ln_mag < -745.2:
        return 0.0
    return math.copysign(math.exp(ln_mag), total)


def _upward_j(l, x):
    j_prev = math.sin(x) / x
    if l == 0:
        return j_prev
    j_cur = j_prev / x - math.cos(x) / x
    for m in range(1, l):
        j_prev, j_cur = j_cur, (2 * m + 1) / x * j_cur - j_prev
    return j_cur


def _miller_pad(l):
    return max(20, math.ceil(math.sqrt(40.0 * l)))


def _miller_j(l, x):
    """Downward recurrence from order l + pad, normalized against j_0 or j_1."""
    start = l + _miller_pad(l)
    j_up = 0.0  # order m+1
    j_cur = 1.0  # order m
    raw_l = None  # captured during the sweep (start > l always)
    raw_1 = None
    for m in range(start, 0, -1):
        j_up, j_cur = j_cur, (2 * m + 1) / x * j_cur - j_up
        # j_cur now holds order m-1
        if abs(j_cur) > _OVERFLOW_GUARD:
            j_cur *= _RESCALE
            j_up *= _RESCALE
            if raw_l is not None:
                raw_l *= _RESCALE
            if raw_1 is not None:
                raw_1 *= _RESCALE
        if m - 1 == l:
            raw_l = j_cur
        if m - 1 == 1:
            raw_1 = j_cur
    raw_0 = j_cur
    j0 = math.sin(x) / x
    j1 = j0 / x - math.cos(x) / x
    if abs(j0) >= abs(j1) and raw_0 != 0.0:
        scale = j0 / raw_0
    else:
        scale = j1 / raw_1
    return raw_l * scale


def sph_bessel_j(l, x):
    """Spherical Bessel function of the first kind, j_l(x).

    Parameters
    ----------
    l : int
        Order, ``0 <= l <= ORDER_CEILING``.
    x : float
        Argument, ``x >= 0``.

    Returns
    -------
    float
        j_l(x), with relative error below 1e-12 for l <= 5000, x <= 5000.
        Values that fall below the binary64 range underflow to 0.0.
    """
    l = _check_order(l)
    x = _check_argument(x)
    if x < 0:
        raise ValueError(f"argument must be non-negative, got {x}")
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    if x < 0.5 or x < 0.1 * l:
        return _series_j(l, x)
    if x > l:
        return _upward_j(l, x)
    return _miller_j(l, x)


def sph_bessel_j_all(l_max, x):
    """All orders j_0(x) .. j_{l_max}(x) in a single pass.

    Equivalent to ``[sph_bessel_j(l, x) for l in range(l_max + 1)]`` but
    O(l_max + sqrt(l_max)) work: one upward or one downward sweep.
    """
    l_max = _check_order(l_max)
    x = _check_argument(x)
    if x < 0:
        raise ValueError(f"argument must be non-negative, got {x}")
    return sph_bessel_j_table(l_max, np.array([x]))[:, 0]


def sph_bessel_j_table(l_max, x):
    """j_l(x_i) for every order ``l <= l_max`` and every point of a 1-D array.

    Returns an array of shape ``(l_max + 1, len(x))``; row l holds j_l.
    This is the batch evaluator behind the degeneracy-weighted density
    sums, vectorized across grid points.
    """
    l_max = _check_order(l_max)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("x must be a 1-D array")
    if x.size and (np.isnan(x).any() or not np.isfinite(x).all()):
        raise ValueError("arguments must be finite and not NaN")
    if x.size and (x < 0).any():
        raise ValueError("arguments must be non-negative")

    out = np.zeros((l_max + 1, x.size))
    zero = x == 0.0
    out[0, zero] = 1.0

    small = (x > 0.0) & (x < _SERIES_TABLE_CUTOFF)
    if small.any():
        out[:, small] = _series_j_rows(l_max, x[small])

    up = (x >= _SERIES_TABLE_CUTOFF) & (x >= l_max)
    if up.any():
        out[:, up] = _upward_rows(l_max, x[up])

    down = (x >= _SERIES_TABLE_CUTOFF) & (x < l_max)
    if down.any():
        out[:, down] = _miller_rows(l_max, x[down])

    return out


def _series_j_rows(l_max, x):
    ls = np.arange(l_max + 1, dtype=float)[:, None]
    y = 0.5 * x * x
    term = np.ones((l_max + 1, x.size))
    total = np.ones_like(term)
    for k in range(1, _SERIES_TERMS + 1):
        term *= -y / (k * (2.0 * ls + 2.0 * k + 1.0))
        total += term
    ln_df = np.array([_ln_odd_double_factorial(l) for l in range(l_max + 1)])
    ln_pref = ls * np.log(x) - ln_df[:, None]
    with np.errstate(under="ignore"):
        return np.exp(ln_pref) * total


def _upward_rows(l_max, x):
    out = np.empty((l_max + 1, x.size))
    out[0] = np.sin(x) / x
    if l_max == 0:
        return out
    out[1] = out[0] / x - np.cos(x) / x
    for m in range(1, l_max):
        out[m + 1] = (2 * m + 1) / x * out[m] - out[m - 1]
    return out


def _miller_rows(l_max, x):
    """Vectorized Miller sweep over columns of x.

    The raw sequence spans up to thousands of decades for small x, so the
    working pair is rescaled by 1e-280 at the 1e+280 guard and each column
    keeps an event counter; stored rows remember the count at store time
    and are rebuilt afterwards in a fixed number of passes (a row that is
    two events behind the final scale sits at the very bottom of the
    binary64 range; three or more behind is a true underflow to zero).
    """
    start = l_max + _miller_pad(l_max)
    out = np.zeros((l_max + 1, x.size))
    store_events = np.zeros((l_max + 1, x.size), dtype=np.int16)
    events = np.zeros(x.size, dtype=np.int16)
    j_up = np.zeros(x.size)
    j_cur = np.ones(x.size)
    raw_1 = np.zeros(x.size)
    events_1 = np.zeros(x.size, dtype=np.int16)
    with np.errstate(under="ignore", divide="ignore", invalid="ignore"):
        for m in range(start, 0, -1):
            j_up, j_cur = j_cur, (2 * m + 1) / x * j_cur - j_up
            big = np.abs(j_cur) > _OVERFLOW_GUARD
            if big.any():
                j_cur[big] *= _RESCALE
                j_up[big] *= _RESCALE
                events[big] += 1
            if m - 1 <= l_max:
                out[m - 1] = j_cur
                store_events[m - 1] = events
            if m - 1 == 1:
                raw_1 = j_cur.copy()
                events_1 = events.copy()
        raw_0 = j_cur
        j0 = np.sin(x) / x
        j1 = j0 / x - np.cos(x) / x
        # bring raw_1 to the final scale (at most one event separates it)
        raw_1 = np.where(events > events_1, raw_1 * _RESCALE, raw_1)
        scale = np.where(np.abs(j0) >= np.abs(j1), j0 / raw_0, j1 / raw_1)
        # out_final = raw * RESCALE^(events - store_events) * scale, ordered
        # so every intermediate stays inside the binary64 range
        behind = store_events
        np.subtract(events[None, :], behind, out=behind)
        out[behind >= 1] *= _RESCALE
        out *= scale
        out[behind >= 2] *= _RESCALE
        out[behind >= 3] = 0.0
        # rows 0 and 1 have exact closed forms; the swept values are only
        # envelope-accurate next to their zero crossings
        out[0] = j0
        if l_max >= 1:
            out[1] = j1
    return out


def sph_bessel_n(l, x):
    """Spherical Bessel function of the second kind (Neumann), n_l(x).

    ``x`` may be a float or ndarray; every element must be positive
    (n_l has a pole at the origin).  Computed by upward recurrence from
    n_0 = -cos(x)/x, which is stable because n_l dominates for growing l.
    """
    l = _check_order(l)
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise ValueError("argument must not be NaN")
    if (x <= 0).any():
        raise ValueError("n_l(x) requires x > 0 (pole at x = 0)")
    n_prev = -np.cos(x) / x
    if l == 0:
        return float(n_prev) if scalar else n_prev
    n_cur = n_prev / x - np.sin(x) / x
    for m in range(1, l):
        n_prev, n_cur = n_cur, (2 * m + 1) / x * n_cur - n_prev
    return float(n_cur) if scalar else n_cur


def sph_hankel0(kind, x):
    """Order-zero spherical Hankel function h0(x) of the first or second kind.

    ``h0^(1)(x) = -i e^{ix}/x`` and ``h0^(2)(x) = +i e^{-ix}/x``; both have
    modulus exactly 1/x up to rounding, which is what makes their radial
    densities constant.
    """
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind!r}")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise ValueError("argument must not be NaN")
    if (x <= 0).any():
        raise ValueError("h0(x) requires x > 0 (pole at x = 0)")
    if kind == 1:
        val = -1j * np.exp(1j * x) / x
    else:
        val = 1j * np.exp(-1j * x) / x
    return complex(val) if scalar else val


def assoc_legendre(l, m, u):
    """Associated Legendre function P_l^m(u) for m >= 0, WITHOUT the
    Condon-Shortley phase.

    The (-1)^((m+|m|)/2) phase belongs to the spherical-harmonic
    definition and is applied there, so ``assoc_legendre(1, 1, u)``
    is +sqrt(1-u^2).

    Uses the stable upward recurrence in l from the diagonal seed
    P_m^m = (2m-1)!! (1-u^2)^(m/2).
    """
    l = _check_order(l)
    if not isinstance(m, (int, np.integer)):
        raise ValueError(f"m must be an integer, got {m!r}")
    if m < 0 or m > l:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    u = float(u)
    if not -1.0 <= u <= 1.0:
        raise ValueError(f"argument must lie in [-1, 1], got {u}")

    p_mm = 1.0
    if m > 0:
        s = math.sqrt((1.0 - u) * (1.0 + u))
        fact = 1.0
        for _ in range(m):
            p_mm *= fact * s
            fact += 2.0
    if l == m:
        return p_mm
    p_next = u * (2 * m + 1) * p_mm
    for ll in range(m + 2, l + 1):
        p_mm, p_next = p_next, ((2 * ll - 1) * u * p_next - (ll + m - 1) * p_mm) / (ll - m)
    return p_next


def sph_harmonic(l, m, theta, phi):
    """Complex spherical harmonic Y_l^m(theta, phi).

    Phase and normalization:

        Y_l^m = (-1)^((m+|m|)/2) sqrt((2l+1)/(4 pi) (l-|m|)!/(l+|m|)!)
                P_l^|m|(cos theta) e^{i m phi}

    with ``assoc_legendre`` carrying no Condon-Shortley phase, so the
    leading factor is (-1)^m for positive m and +1 otherwise.  This
    coincides with the usual quantum-mechanics convention.
    """
    l = _check_order(l)
    if not isinstance(m, (int, np.integer)):
        raise ValueError(f"m must be an integer, got {m!r}")
    if abs(m) > l:
        raise ValueError(f"need |m| <= l, got l={l}, m={m}")
    theta = float(theta)
    phi = float(phi)
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ValueError(f"phi must lie in [0, 2 pi), got {phi}")

    am = abs(m)
    phase = -1.0 if (m > 0 and m % 2 == 1) else 1.0
    ratio = 1.0  # (l-|m|)! / (l+|m|)!
    for j in range(l - am + 1, l + am + 1):
        ratio /= j
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * ratio)
    return phase * norm * assoc_legendre(l, am, math.cos(theta)) * complex(
        math.cos(m * phi), math.sin(m * phi)
    )


# Cache of computed zeros, filled by the interlacing ladder.
_zero_cache = {}


def _bisect_refine(l, lo, hi):
    """Bisection to 1e-13 followed by two Newton polish steps."""
    f_lo = sph_bessel_j(l, lo)
    f_hi = sph_bessel_j(l, hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ZeroBracketError(f"no sign change for j_{l} on [{lo}, {hi}]")
    for _ in range(200):
        if hi - lo <= 1e-13:
            break
        mid = 0.5 * (lo + hi)
        f_mid = sph_bessel_j(l, mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    else:
        raise ZeroBracketError(f"bisection failed to converge for j_{l}")
    root = 0.5 * (lo + hi)
    for _ in range(2):
        f = sph_bessel_j(l, root)
        fp = sph_bessel_j(l - 1, root) - (l + 1) / root * f
        step = f / fp
        if abs(step) < 1.0:
            root -= step
    return root


def sph_bessel_zero(l, k):
    """k-th positive zero of the spherical Bessel function j_l.

    Zeros of j_0 are exactly k*pi.  For l >= 1 the bracket for the k-th
    zero comes from the interlacing property
    ``z(l-1, k) < z(l, k) < z(l-1, k+1)``, walked up from the known j_0
    zeros, so each bracket is certain; bisection plus two Newton steps
    refine it.  Results are cached.
    """
    l = _check_order(l)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"zero index k must be a positive integer, got {k!r}")
    k = int(k)
    if l == 0:
        return k * math.pi
    key = (l, k)
    if key in _zero_cache:
        return _zero_cache[key]
    # ladder: level j needs zeros k .. k+(l-j)
    prev = [m * math.pi for m in range(k, k + l + 1)]  # level 0
    for j in range(1, l + 1):
        need = l - j + 1
        cur = []
        for i in range(need):
            z = _zero_cache.get((j, k + i))
            if z is None:
                z = _bisect_refine(j, prev[i], prev[i + 1])
                _zero_cache[(j, k + i)] = z
            cur.append(z)
        prev = cur
    return _zero_cache[key]
