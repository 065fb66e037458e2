"""Systems of translates ``{f(. - lam) : lam in Lambda}`` of one step function.

Covers separation and tail masses of translate systems, exact L_2 Gram
matrices and distances, sampled lower bounds for basis and unconditional
constants, window series, and the concrete example systems used by the
experiments (telescoping differences, the three-bump function with its
near-annihilating combinations, and the Rademacher-tail system).
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _rational
from .dyadic import MomentEstimate, rademacher, rademacher_moments_columns
from .stepfn import (
    Interval,
    StepFunction,
    check_p,
    inner_l2,
    lin_comb,
    lp_norm_p,
    merged_grid,
    restrict,
    sample_on_grid,
    translate,
)

ENUMERATE_CAP = 22

__all__ = [
    "TranslateSystem",
    "TailMass",
    "ConstantEstimate",
    "separation",
    "tail_mass",
    "gram_l2",
    "minimality_distance_sq_l2",
    "minimality_distance_l2",
    "unconditional_constant_lb",
    "basis_constant_lb",
    "reevaluate",
    "window_series",
    "disjoint_mass_bound",
    "restriction_windows",
    "telescope_base",
    "telescope_sum",
    "even_subsequence_sum",
    "telescope_witness",
    "dilworth_f",
    "dilworth_g",
    "dilworth_fourier_closed",
    "tail_sigma",
    "tail_base",
    "tail_window_matrix",
    "tail_sum_norm_p",
]


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def separation(lambdas):
    """Minimum gap of a finite translation set; duplicates are an error."""
    lam = sorted(_frac(x) for x in lambdas)
    if len(lam) < 2:
        raise ValueError("separation needs at least two translations")
    gap = min(b - a for a, b in zip(lam, lam[1:]))
    if gap == 0:
        raise ValueError("duplicate translation in Lambda")
    return gap


@dataclass(frozen=True)
class TranslateSystem:
    """``{translate(base, lam) : lam in lambdas}`` in ``L_p``.

    ``lambdas`` is kept in the given order (which matters for basis
    constants); the set itself must be uniformly discrete.
    """

    base: StepFunction
    lambdas: tuple
    p: object = 1

    def __post_init__(self):
        lam = tuple(_frac(x) for x in self.lambdas)
        if not lam:
            raise ValueError("empty translation set")
        if len(lam) > 1:
            separation(lam)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "p", check_p(self.p))

    @property
    def separation(self):
        return separation(self.lambdas) if len(self.lambdas) > 1 else None

    @property
    def members(self):
        return [translate(self.base, lam) for lam in self.lambdas]

    def __len__(self):
        return len(self.lambdas)

    def member(self, i):
        return translate(self.base, self.lambdas[i])


@dataclass(frozen=True)
class TailMass:
    value: object
    bound: object
    windows: int

    @property
    def ok(self):
        return self.value <= self.bound


def tail_mass(sys, interval):
    """``sum_lam ||f_lam restricted to I||_p^p`` and the covering bound
    ``ceil((b - a) / eps0) ||f||_p^p``.

    A point ``x`` lies in ``I - lam`` for at most ``ceil(|I| / eps0)``
    translations, which gives the bound.  ``interval`` may be a degenerate
    pair ``(a, a)``.
    """
    if isinstance(interval, Interval):
        a, b = interval.lo, interval.hi
    else:
        a, b = (_frac(x) for x in interval)
    p = sys.p
    if a >= b:
        return TailMass(Fraction(0), Fraction(0), 0)
    value = Fraction(0)
    for f in sys.members:
        value = value + lp_norm_p(restrict(f, (a, b)), p)
    eps0 = sys.separation
    count = 1 if eps0 is None else math.ceil((b - a) / eps0)
    bound = count * lp_norm_p(sys.base, p)
    if not value <= bound:
        raise AssertionError(f"tail mass {value} exceeds the covering bound {bound}")
    return TailMass(value, bound, count)


def gram_l2(fns):
    """Exact matrix of ``int f_i f_j``."""
    fns = list(fns)
    n = len(fns)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = inner_l2(fns[i], fns[j])
    return g


def _members(sys_or_fns):
    return sys_or_fns.members if isinstance(sys_or_fns, TranslateSystem) else list(sys_or_fns)


def minimality_distance_sq_l2(sys_or_fns, i, window=None):
    """Exact squared L_2 distance from member ``i`` to the span of the
    members in ``window`` (indices, ``i`` excluded).  Dependent columns
    are dropped from the normal equations, which does not change the
    distance."""
    fns = _members(sys_or_fns)
    window = range(len(fns)) if window is None else window
    if i not in window:
        raise ValueError(f"index {i} is not in the window")
    others = [fns[j] for j in window if j != i]
    target = fns[i]
    t2 = inner_l2(target, target)
    if not others:
        return t2
    gram = gram_l2(others)
    rhs = [inner_l2(g, target) for g in others]
    x, _ = _rational.solve_least_squares(gram, rhs)
    d2 = t2 - sum(c * b for c, b in zip(x, rhs))
    if d2 < 0:
        raise ArithmeticError("negative squared distance; Gram solve failed")
    return d2


def minimality_distance_l2(sys_or_fns, i, window=None):
    return math.sqrt(minimality_distance_sq_l2(sys_or_fns, i, window))


# --------------------------------------------------------------------------
# constant estimation

@dataclass(frozen=True)
class ConstantEstimate:
    """Lower bound ``ratio_p ** (1/p)`` realised by ``witness``.

    ``witness`` holds ``coeffs`` plus either ``signs`` (unconditional
    constant) or the prefix pair ``m <= n`` (basis constant).  ``ratio_p``
    is the p-th power of the ratio, exact when the witness norms are.
    """

    lower_bound: float
    ratio_p: object
    witness: dict = field(compare=False)
    method: str
    trials: int
    seed: object
    p: object

    def as_dict(self):
        from .stepfn import format_rational

        def fmt(v):
            if isinstance(v, (list, tuple)):
                return [fmt(x) for x in v]
            if isinstance(v, (Fraction, float)):
                return format_rational(v)
            return v

        return {
            "lower_bound": self.lower_bound,
            "ratio_p": fmt(self.ratio_p),
            "witness": {k: fmt(v) for k, v in self.witness.items()},
            "method": self.method,
            "trials": self.trials,
            "seed": self.seed,
            "p": fmt(self.p),
        }


def _is_step(fns):
    return all(isinstance(f, StepFunction) for f in fns)


def _combine(coeffs, fns):
    if _is_step(fns):
        return lin_comb(coeffs, fns)
    from .seqmodel import seq_lin_comb

    return seq_lin_comb(coeffs, fns)


def _power(x, p, seed=0):
    """``||x||_p^p`` for a step function or a sequence element."""
    if isinstance(x, StepFunction):
        return lp_norm_p(x, p)
    from .seqmodel import seq_pnorm

    v = seq_pnorm(x, seed=seed)
    return v.value if isinstance(v, MomentEstimate) else v


def _root(v, p):
    return float(v) ** (1.0 / float(p)) if v > 0 else 0.0


def _cell_matrix(fns):
    grid = merged_grid(fns)
    if len(grid) < 2:
        return np.zeros((0, len(fns))), np.zeros(0)
    widths = np.array([float(b - a) for a, b in zip(grid, grid[1:])])
    cols = [np.array([float(v) for v in sample_on_grid(f, grid)]) for f in fns]
    return np.column_stack(cols), widths


def _norms_p(M, w, X, p):
    """``||sum_i X[i, k] f_i||_p^p`` for every column ``k`` of ``X``."""
    vals = M @ X
    return w @ (np.abs(vals) ** float(p))


def _trial_coeffs(rng, t, n):
    if t % 2 == 0:
        return [Fraction(int(s)) for s in rng.choice([-1, 1], size=n)]
    return [Fraction(int(round(x * 1000)), 1000) for x in rng.standard_normal(n)]


def _sign_patterns(n, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n - 1, dtype=np.int64)[None, :]) & 1
    signs = np.ones((idx.size, n))
    signs[:, 1:] = 1 - 2 * bits
    return signs


def reevaluate(fns, estimate):
    """Recompute ``ratio_p`` of a stored witness (exact when possible)."""
    wit = estimate.witness
    coeffs = list(wit["coeffs"])
    p = estimate.p
    if "signs" in wit:
        num = _power(_combine([c * s for c, s in zip(coeffs, wit["signs"])], fns), p)
        den = _power(_combine(coeffs, fns), p)
    else:
        m, n = wit["m"], wit["n"]
        num = _power(_combine(coeffs[:m], fns[:m]), p)
        den = _power(_combine(coeffs[:n], fns[:n]), p)
    if isinstance(num, Fraction) and isinstance(den, Fraction):
        return num / den
    return float(num) / float(den)


def _finish(fns, p, best, method, trials, seed):
    ratio, witness = best
    est = ConstantEstimate(_root(ratio, p), ratio, witness, method, trials, seed, p)
    exact = reevaluate(fns, est)
    return ConstantEstimate(_root(exact, p), exact, witness, method, trials, seed, p)


def unconditional_constant_lb(fns, p, mode="sample", trials=100, seed=0,
                              sign_samples=256, witnesses=()):
    """Lower bound for the unconditional constant of ``fns`` in ``L_p``.

    For every trial coefficient vector ``a`` (even trials: random signs,
    odd trials: rounded Gaussians) the ratio ``||sum eps_i a_i f_i|| /
    ||sum a_i f_i||`` is maximised over sign vectors ``eps``: all of them in
    ``mode="enumerate"`` (at most :data:`ENUMERATE_CAP` functions), a seeded
    sample otherwise.  ``witnesses`` adds hand-picked ``(coeffs, signs)``
    pairs.  The best witness is re-evaluated exactly.
    """
    fns = list(fns)
    n = len(fns)
    p = check_p(p)
    if mode not in ("sample", "enumerate"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "enumerate" and n > ENUMERATE_CAP:
        raise ValueError(f"{n} functions exceed the enumeration cap {ENUMERATE_CAP}")
    candidates = [([_frac(c) for c in a], [int(s) for s in e]) for a, e in witnesses]
    best = (Fraction(1), {"coeffs": [Fraction(1)] + [Fraction(0)] * (n - 1),
                          "signs": [1] * n})
    step = _is_step(fns)
    M = w = None
    if step:
        M, w = _cell_matrix(fns)

    def consider(a, e, r):
        nonlocal best
        if r > float(best[0]) * (1 + 1e-12):
            best = (r, {"coeffs": list(a), "signs": [int(s) for s in e]})

    for a, e in candidates:
        den = _power(_combine(a, fns), p)
        if den:
            num = _power(_combine([c * s for c, s in zip(a, e)], fns), p)
            consider(a, e, float(num) / float(den))
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        a = _trial_coeffs(rng, t, n)
        af = np.array([float(c) for c in a])
        if step:
            den = float(_norms_p(M, w, af[:, None], p)[0])
            if den == 0:
                continue
            if mode == "enumerate":
                total = 2 ** (n - 1)
                for start in range(0, total, 1 << 14):
                    S = _sign_patterns(n, start, min(total, start + (1 << 14)))
                    vals = _norms_p(M, w, (S * af).T, p)
                    k = int(np.argmax(vals))
                    consider(a, S[k], float(vals[k]) / den)
            else:
                S = rng.choice([-1.0, 1.0], size=(sign_samples, n))
                vals = _norms_p(M, w, (S * af).T, p)
                k = int(np.argmax(vals))
                consider(a, S[k], float(vals[k]) / den)
        else:
            den = float(_power(_combine(a, fns), p))
            if den == 0:
                continue
            count = 2 ** (n - 1) if mode == "enumerate" else sign_samples
            S = (_sign_patterns(n, 0, count) if mode == "enumerate"
                 else rng.choice([-1.0, 1.0], size=(count, n)))
            for e in S:
                num = float(_power(_combine([c * int(s) for c, s in zip(a, e)], fns), p))
                consider(a, e, num / den)
    return _finish(fns, p, best, mode, trials, seed)


def basis_constant_lb(fns, p, trials=100, seed=0, witnesses=()):
    """Lower bound for the basis constant of the ordered sequence ``fns``:
    the largest ``||sum_{i<=m} a_i f_i|| / ||sum_{i<=n} a_i f_i||`` over
    ``m <= n`` and the sampled (plus supplied) coefficient vectors."""
    fns = list(fns)
    n = len(fns)
    p = check_p(p)
    best = (Fraction(1), {"coeffs": [Fraction(1)] + [Fraction(0)] * (n - 1), "m": 1, "n": 1})
    step = _is_step(fns)
    if step:
        M, w = _cell_matrix(fns)

    def prefix_powers(a):
        if step:
            af = np.array([float(c) for c in a])
            P = np.cumsum(M * af[None, :], axis=1)
            return w @ (np.abs(P) ** float(p))
        return np.array([float(_power(_combine(a[:k], fns[:k]), p)) for k in range(1, n + 1)])

    vectors = [[_frac(c) for c in a] for a in witnesses]
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        vectors.append(_trial_coeffs(rng, t, n))
    for a in vectors:
        pw = prefix_powers(a)
        run_max, arg = -1.0, 0
        for k in range(n):
            if pw[k] > run_max:
                run_max, arg = pw[k], k
            if pw[k] > 0 and run_max / pw[k] > float(best[0]) * (1 + 1e-12):
                best = (run_max / pw[k], {"coeffs": list(a), "m": arg + 1, "n": k + 1})
    return _finish(fns, p, best, "sample", trials, seed)


# --------------------------------------------------------------------------
# window diagnostics

def window_series(f, p, r, window_range=None):
    """``sum_n ||f restricted to [n-1, n]||_p ** r`` over integer windows.

    ``window_range = (lo, hi)`` selects the windows ``[n-1, n]`` with
    ``lo < n <= hi``; by default every window meeting the support.
    """
    if not r > 0:
        raise ValueError(f"series exponent must be positive, got {r}")
    p = check_p(p)
    if f.is_zero:
        return Fraction(0)
    if window_range is None:
        lo = math.floor(f.breakpoints[0])
        hi = math.ceil(f.breakpoints[-1])
    else:
        lo, hi = window_range
    q = Fraction(r) / p if isinstance(p, Fraction) and isinstance(r, (int, Fraction)) else None
    exact = q is not None and q.denominator == 1
    total = Fraction(0) if exact else 0.0
    for n in range(lo + 1, hi + 1):
        v = lp_norm_p(restrict(f, (n - 1, n)), p)
        if exact and isinstance(v, Fraction):
            total += v ** int(q)
        else:
            total = float(total) + float(v) ** (float(r) / float(p))
    return total


def disjoint_mass_bound(fns, windows, coeffs):
    """Check ``||sum a_i f_i||_1 >= (2 lam - 1) sum |a_i|`` for L_1-normalised
    ``f_i`` whose mass on pairwise disjoint windows ``I_i`` is at least
    ``lam``.  Returns ``(lhs, rhs, lam)``."""
    fns, windows, coeffs = list(fns), list(windows), list(coeffs)
    if not len(fns) == len(windows) == len(coeffs):
        raise ValueError("need one window and one coefficient per function")
    for f in fns:
        if lp_norm_p(f, 1) != 1:
            raise ValueError("functions must have L_1 norm 1")
    ivs = sorted((w if isinstance(w, Interval) else Interval(*w) for w in windows),
                 key=lambda iv: iv.lo)
    for u, v in zip(ivs, ivs[1:]):
        if v.lo < u.hi:
            raise ValueError("windows must be pairwise disjoint")
    lam = min(lp_norm_p(restrict(f, w), 1) for f, w in zip(fns, windows))
    lhs = lp_norm_p(lin_comb(coeffs, fns), 1)
    rhs = (2 * lam - 1) * sum(abs(_frac(c)) for c in coeffs)
    return lhs, rhs, lam


def restriction_windows(sys, interval):
    """``||f_i restricted to I + lam_i||_p^p`` for every member; all equal
    ``||f restricted to I||_p^p`` by translation invariance."""
    iv = interval if isinstance(interval, Interval) else Interval(*interval)
    return [lp_norm_p(restrict(translate(sys.base, lam), (iv.lo + lam, iv.hi + lam)), sys.p)
            for lam in sys.lambdas]


# --------------------------------------------------------------------------
# example systems

def telescope_base():
    """``chi_[0,1] - chi_[1,2]``."""
    return StepFunction([0, 1, 2], [1, -1])


def telescope_sum(n):
    """``sum_{i=-2n}^{2n}`` of the integer translates of the base."""
    f = telescope_base()
    return lin_comb([1] * (4 * n + 1), [translate(f, i) for i in range(-2 * n, 2 * n + 1)])


def even_subsequence_sum(n):
    """``sum_{i=-n}^{n}`` of the translates by ``2i``."""
    f = telescope_base()
    return lin_comb([1] * (2 * n + 1), [translate(f, 2 * i) for i in range(-n, n + 1)])


def telescope_witness(n):
    """``f + sum_{k=1}^n (n-k)/n (f(. - k) + f(. + k))``; tends to 0 in
    ``L_p`` for ``p > 1``."""
    f = telescope_base()
    coeffs, fns = [Fraction(1)], [f]
    for k in range(1, n + 1):
        c = Fraction(n - k, n)
        coeffs += [c, c]
        fns += [translate(f, k), translate(f, -k)]
    return lin_comb(coeffs, fns)


def dilworth_f():
    """``chi_[-3/2,-1/2] + 2 chi_[-1/2,1/2] + chi_[1/2,3/2]``."""
    h = Fraction(1, 2)
    return StepFunction([-3 * h, -h, h, 3 * h], [1, 2, 1])


def dilworth_g(n):
    """``f + sum_{k=1}^n (-1)^k (n-k+1)/n (f(. - k) + f(. + k))``.

    The alternating sign ``(-1)^k`` is what makes the combination collapse
    to ``-(1/n)`` on the two windows next to the origin and ``(-1)^n/n`` on
    the outermost ones, so ``||g_n||_p^p = 4 / n^p``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f = dilworth_f()
    coeffs, fns = [Fraction(1)], [f]
    for k in range(1, n + 1):
        c = Fraction((-1) ** k * (n - k + 1), n)
        coeffs += [c, c]
        fns += [translate(f, k), translate(f, -k)]
    return lin_comb(coeffs, fns)


def dilworth_fourier_closed(t):
    """Closed form of the transform of :func:`dilworth_f`:
    ``(2 pi)^{-1/2} * 4 sin(t)/t * cos(t/2)``.

    It factors as ``(2 sin(t/2)/t) * (2 + 2 cos t)``: the transform of the
    centred unit indicator times the symbol of ``delta_{-1} + 2 delta_0 +
    delta_1``.  Zeros: the nonzero multiples of pi.
    """
    t = float(t)
    sinc = 1.0 if t == 0 else math.sin(t) / t
    return 4.0 * sinc * math.cos(t / 2.0) / math.sqrt(2.0 * math.pi)


# --------------------------------------------------------------------------
# the Rademacher-tail system: f = sum_n r_{sigma(n)}(. - n) / sqrt|n|

def tail_sigma(n):
    """Enumeration of the integers by Rademacher indices:
    ``0 -> 1``, ``n > 0 -> 2n``, ``n < 0 -> 2|n| + 1``."""
    return 1 if n == 0 else (2 * n if n > 0 else 2 * (-n) + 1)


def _inv_sqrt(n):
    n = abs(n)
    if n == 0:
        return Fraction(1)
    r = math.isqrt(n)
    return Fraction(1, r) if r * r == n else 1.0 / math.sqrt(n)


TAIL_STEP_CAP = 6


def tail_base(N):
    """The base function truncated to windows ``|n| <= N`` as an explicit
    step function (``N <= 6``: window ``n`` carries ``2**(sigma(n)-1)``
    pieces)."""
    if not 0 <= N <= TAIL_STEP_CAP:
        raise ValueError(f"explicit base limited to N <= {TAIL_STEP_CAP}")
    parts = [translate(rademacher(tail_sigma(n)), n) for n in range(-N, N + 1)]
    return lin_comb([_inv_sqrt(n) for n in range(-N, N + 1)], parts)


def tail_window_matrix(a, N):
    """Coefficients of ``sum_i a_i f(. - i)`` window by window.

    Returns ``(C, windows)`` where ``windows`` are the integers ``k`` with
    a nonzero window ``[k, k+1]`` and ``C[i, col]`` is the coefficient of
    the ``(i+1)``-th term on that window: ``a_i / sqrt|k - i|`` when
    ``|k - i| <= N`` (with ``1/sqrt 0 := 1``).  Inside one window the
    Rademacher functions ``r_{sigma(k-i)}`` are distinct, so the window
    norm is the sign moment of the column.
    """
    a = np.asarray([float(x) for x in a])
    m = a.size
    windows = np.arange(1 - N, m + N + 1)
    i = np.arange(1, m + 1)
    d = np.abs(windows[None, :] - i[:, None])
    C = np.where(d <= N, a[:, None] / np.sqrt(np.maximum(d, 1)), 0.0)
    keep = (C != 0).any(axis=0)
    return C[:, keep], windows[keep]


def tail_sum_norm_p(a, p, N=1024, samples=10 ** 5, seed=0, cap=20):
    """``||sum_i a_i f(. - i)||_p^p`` for the base truncated to ``|n| <= N``.

    Returns ``(total, windows, values, stderrs)``; windows with at most
    ``cap`` active terms are enumerated, the rest are sampled.
    """
    C, windows = tail_window_matrix(a, N)
    values, errs = rademacher_moments_columns(C, p, cap, samples, seed)
    total = MomentEstimate(float(values.sum()), float(np.sqrt((errs ** 2).sum())),
                           False, "monte-carlo" if errs.any() else "enumeration",
                           samples if errs.any() else 0, seed)
    return total, windows, values, errs
