"""Haar and Rademacher systems on [0, 1] and Rademacher moment evaluation.

Haar functions are indexed linearly as in ``(h_n) = (chi_[0,1],
chi_[0,1/2) - chi_[1/2,1), ...)``: ``h_1 = 1`` and for ``n = 2**k + j + 1``
(``0 <= j < 2**k``) ``h_n`` is +1 on the left half and -1 on the right half
of ``[j 2^-k, (j+1) 2^-k)``.  Rademacher functions are ``r_1 = h_1``,
``r_2 = h_2`` and ``r_n = h_{2^{n-2}+1} + ... + h_{2^{n-1}}``.

Moments ``E|sum eps_j c_j|^p`` over independent signs are computed by full
enumeration up to :data:`ENUMERATION_CAP` terms and by seeded Monte Carlo
beyond that.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .stepfn import (
    StepFunction,
    check_p,
    exact_p,
    lin_comb,
    lp_norm_p,
    merged_grid,
    sample_on_grid,
)

ENUMERATION_CAP = 20
MC_CHUNK = 20_000

__all__ = [
    "ENUMERATION_CAP",
    "HaarIndex",
    "MomentEstimate",
    "DyadicTensor",
    "haar",
    "haar_level",
    "haar_norm_p",
    "rademacher",
    "rademacher_moment_exact",
    "rademacher_moment_mc",
    "rademacher_moment",
    "rademacher_moments_columns",
    "square_function_power",
    "square_function_pnorm",
    "haar_coefficients",
]


@dataclass(frozen=True)
class HaarIndex:
    n: int
    shift: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Haar index must be >= 1, got {self.n}")


def haar_level(n):
    """``(k, j)`` with ``n = 2**k + j + 1``; ``h_1`` reports ``(-1, 0)``."""
    if n < 1:
        raise ValueError(f"Haar index must be >= 1, got {n}")
    if n == 1:
        return -1, 0
    k = (n - 1).bit_length() - 1
    return k, n - 2 ** k - 1


def haar_norm_p(n, p):
    """``||h_n||_p ** p`` of the unnormalised Haar function (exact)."""
    k, _ = haar_level(n)
    return Fraction(1) if k < 0 else Fraction(1, 2 ** k)


def _normalizer(n, p):
    # 1 / ||h_n||_p = 2^{k/p}; rational only when p divides k
    k, _ = haar_level(n)
    if k <= 0:
        return Fraction(1)
    if exact_p(p) and k % int(p) == 0:
        return Fraction(2 ** (k // int(p)))
    return 2.0 ** (k / float(p))


def haar(n, shift=0, p=None, normalized=False):
    """Haar function ``h_n`` translated by the integer ``shift``.

    With ``normalized=True`` returns ``h_n / ||h_n||_p``; the values are
    exact rationals when the normalising factor is rational, floats
    otherwise.
    """
    if isinstance(n, HaarIndex):
        n, shift = n.n, n.shift
    k, j = haar_level(n)
    if k < 0:
        f = StepFunction([0, 1], [1])
    else:
        w = Fraction(1, 2 ** k)
        lo = j * w
        f = StepFunction([lo, lo + w / 2, lo + w], [1, -1])
    if normalized:
        if p is None:
            raise ValueError("normalized Haar functions need an exponent p")
        check_p(p)
        f = f.scale(_normalizer(n, p))
    return f.translate(shift) if shift else f


def rademacher(n):
    """``r_n`` on [0, 1]: ``r_1 = 1`` and ``r_n`` alternates +1/-1 on
    ``2**(n-1)`` equal pieces."""
    if n < 1:
        raise ValueError(f"Rademacher index must be >= 1, got {n}")
    if n == 1:
        return StepFunction([0, 1], [1])
    m = 2 ** (n - 1)
    return StepFunction([Fraction(i, m) for i in range(m + 1)],
                        [1 if i % 2 == 0 else -1 for i in range(m)])


# --------------------------------------------------------------------------
# moments of Rademacher sums

@dataclass(frozen=True)
class MomentEstimate:
    """Value of a (possibly sampled) moment-type quantity.

    ``exact`` means ``value`` is a ``Fraction`` computed without rounding;
    ``stderr`` is 0 for enumerated values.
    """

    value: object
    stderr: float = 0.0
    exact: bool = False
    method: str = "enumeration"
    samples: int = 0
    seed: int | None = None

    def __float__(self):
        return float(self.value)

    def __add__(self, other):
        if not isinstance(other, MomentEstimate):
            other = MomentEstimate(other, exact=isinstance(other, Fraction))
        method = self.method if self.method == other.method else "mixed"
        return MomentEstimate(
            self.value + other.value,
            math.hypot(self.stderr, other.stderr),
            self.exact and other.exact,
            method,
            max(self.samples, other.samples),
            self.seed if self.seed is not None else other.seed,
        )

    __radd__ = __add__


def _sign_sums(c):
    """All ``c_0 + sum_{j>=1} (+-)c_j`` (first sign fixed by symmetry)."""
    s = np.asarray(c[:1], dtype=c.dtype)
    for x in c[1:]:
        s = np.concatenate([s + x, s - x])
    return s


def rademacher_moment_exact(c, p, cap=ENUMERATION_CAP):
    """``E|sum_j eps_j c_j|^p`` by enumerating every sign pattern.

    Exact ``Fraction`` when p is an integer and all ``c_j`` are rational;
    float otherwise.
    """
    c = list(c)
    if not c:
        raise ValueError("need at least one coefficient")
    if len(c) > cap:
        raise ValueError(f"{len(c)} terms exceed the enumeration cap {cap}")
    p = check_p(p, minimum=0)
    exact = isinstance(p, Fraction) and all(isinstance(x, (int, Fraction)) for x in c)
    if exact:
        return _moment_exact_rational([Fraction(x) for x in c], int(p))
    arr = np.asarray([float(x) for x in c], dtype=np.float64)
    sums = _sign_sums(arr)
    return float(np.mean(np.abs(sums) ** float(p)))


def _moment_exact_rational(c, p):
    den = lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    if sum(abs(x) for x in ints) < 2 ** 62:
        sums = _sign_sums(np.asarray(ints, dtype=np.int64))
        vals, counts = np.unique(np.abs(sums), return_counts=True)
        total = sum(int(v) ** p * int(k) for v, k in zip(vals.tolist(), counts.tolist()))
    else:
        dist = {ints[0]: 1}
        for x in ints[1:]:
            nxt = {}
            for s, k in dist.items():
                nxt[s + x] = nxt.get(s + x, 0) + k
                nxt[s - x] = nxt.get(s - x, 0) + k
            dist = nxt
        total = sum(abs(s) ** p * k for s, k in dist.items())
    return Fraction(total, 2 ** (len(c) - 1) * den ** p)


def rademacher_moment_mc(c, p, samples=10 ** 5, seed=0):
    """Seeded Monte Carlo estimate of ``E|sum eps_j c_j|^p`` with its
    standard error."""
    arr = np.asarray([float(x) for x in c], dtype=np.float64)
    rng = np.random.default_rng(seed)
    pf = float(p)
    s1 = s2 = 0.0
    done = 0
    while done < samples:
        m = min(MC_CHUNK, samples - done)
        signs = rng.integers(0, 2, size=(m, arr.size), dtype=np.int8) * 2 - 1
        x = np.abs(signs @ arr) ** pf
        s1 += float(x.sum())
        s2 += float((x * x).sum())
        done += m
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return MomentEstimate(mean, math.sqrt(var / samples), False, "monte-carlo", samples, seed)


def rademacher_moment(c, p, cap=ENUMERATION_CAP, samples=10 ** 5, seed=0):
    """Enumeration below the cap, flagged Monte Carlo above it."""
    c = list(c)
    if len(c) <= cap:
        v = rademacher_moment_exact(c, p, cap)
        return MomentEstimate(v, 0.0, isinstance(v, Fraction), "enumeration")
    return rademacher_moment_mc(c, p, samples, seed)


def rademacher_moments_columns(coeffs, p, cap=ENUMERATION_CAP, samples=10 ** 5, seed=0):
    """Moments for many independent Rademacher sums at once.

    ``coeffs`` has shape ``(terms, columns)``; column ``k`` describes the sum
    ``sum_j coeffs[j, k] eps_j``.  Columns with at most ``cap`` nonzero terms
    are enumerated; the rest share one stream of sampled sign vectors (each
    column's expectation is estimated separately, so sharing the stream only
    correlates the errors).  Returns ``(values, stderrs)`` as float arrays.
    """
    C = np.asarray(coeffs, dtype=np.float64)
    terms, cols = C.shape
    values = np.zeros(cols)
    errs = np.zeros(cols)
    nnz = (C != 0).sum(axis=0)
    small = np.flatnonzero(nnz <= cap)
    big = np.flatnonzero(nnz > cap)
    for k in small:
        col = C[:, k][C[:, k] != 0]
        values[k] = rademacher_moment_exact(col.tolist(), p, cap) if col.size else 0.0
    if big.size:
        rows = np.flatnonzero((C[:, big] != 0).any(axis=1))
        sub = C[np.ix_(rows, big)].astype(np.float32)
        rng = np.random.default_rng(seed)
        pf = float(p)
        s1 = np.zeros(big.size)
        s2 = np.zeros(big.size)
        done = 0
        while done < samples:
            m = min(MC_CHUNK // 2, samples - done)
            signs = (rng.integers(0, 2, size=(m, rows.size), dtype=np.int8) * 2 - 1).astype(np.float32)
            x = np.abs((signs @ sub).astype(np.float64)) ** pf
            s1 += x.sum(axis=0)
            s2 += (x * x).sum(axis=0)
            done += m
        mean = s1 / samples
        values[big] = mean
        errs[big] = np.sqrt(np.maximum(s2 / samples - mean * mean, 0.0) / samples)
    return values, errs


# --------------------------------------------------------------------------
# square functions and Haar expansions

def square_function_power(a, fns, p):
    """``||(sum a_i^2 f_i^2)^{1/2}||_p ** p``.

    Exact when the coefficients and values are rational and ``p`` is an even
    integer, or when at most one function is active on every cell and ``p`` is
    an integer; float otherwise.
    """
    a, fns = list(a), list(fns)
    if len(a) != len(fns):
        raise ValueError(f"{len(a)} coefficients for {len(fns)} functions")
    p = check_p(p)
    grid = merged_grid(fns)
    if len(grid) < 2:
        return Fraction(0)
    cols = [sample_on_grid(f, grid) for f in fns]
    total_exact = Fraction(0)
    total_float = []
    for i in range(len(grid) - 1):
        active = [(c, col[i]) for c, col in zip(a, cols) if c != 0 and col[i] != 0]
        if not active:
            continue
        width = grid[i + 1] - grid[i]
        exact_vals = all(isinstance(x, (int, Fraction)) and isinstance(v, Fraction) for x, v in active)
        if exact_vals and isinstance(p, Fraction):
            e = int(p)
            if len(active) == 1:
                x, v = active[0]
                total_exact += abs(Fraction(x) * v) ** e * width
                continue
            if e % 2 == 0:
                s = sum(Fraction(x) ** 2 * v * v for x, v in active)
                total_exact += s ** (e // 2) * width
                continue
        s = math.fsum(float(x) ** 2 * float(v) ** 2 for x, v in active)
        total_float.append(s ** (float(p) / 2) * float(width))
    if total_float:
        return float(total_exact) + math.fsum(total_float)
    return total_exact


def square_function_pnorm(a, fns, p):
    return float(square_function_power(a, fns, p)) ** (1.0 / float(p))


def _is_dyadic(x, depth):
    return (x * 2 ** depth).denominator == 1


def haar_coefficients(f, depth, p=None, normalized=True):
    """Expansion of ``f`` in the Haar basis up to ``depth``.

    ``f`` must live on [0, 1] with breakpoints in ``2**-depth Z``.  Returns a
    list of ``(HaarIndex, coefficient)`` for ``n = 1 .. 2**depth``.  With
    ``normalized=False`` the coefficients refer to the unnormalised ``h_n``
    and are exact; with ``normalized=True`` they refer to ``h_n/||h_n||_p``.
    """
    sup = f.support
    if sup is not None and (sup.lo < 0 or sup.hi > 1):
        raise ValueError("function must be supported in [0, 1]")
    bad = [b for b in f.breakpoints if not _is_dyadic(b, depth)]
    if bad:
        raise ValueError(f"breakpoint {bad[0]} is not dyadic of level {depth}")
    if normalized and p is None:
        raise ValueError("normalized coefficients need an exponent p")
    out = []
    for n in range(1, 2 ** depth + 1):
        h = haar(n)
        coef = _inner(f, h) / haar_norm_p(n, 2)
        if normalized:
            norm = _normalizer(n, p)
            coef = coef / norm if isinstance(norm, Fraction) else float(coef) / norm
        out.append((HaarIndex(n), coef))
    return out


def _inner(f, g):
    from .stepfn import inner_l2

    return inner_l2(f, g)


# --------------------------------------------------------------------------
# functions on [0,1]^2 of the form sum_j g_j(s) r_j(t)

class DyadicTensor:
    """``F(s, t) = sum_j g_j(s) r_j(t)`` on ``[0, 1]^2``.

    ``terms`` maps a Rademacher index ``j`` to its profile ``g_j`` (a step
    function on [0, 1]).  Elementary tensors ``c h_n (x) r_j`` are single
    terms.  A tensor whose profiles are constant on [0, 1] is simply a
    Rademacher polynomial in ``t``.

    Norms are evaluated one ``s``-cell at a time: on a cell the profiles are
    constants ``c_j`` and ``int_0^1 |sum_j c_j r_j(t)|^p dt`` is the sign
    moment ``E|sum_j c_j eps_j|^p``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for j, g in (terms or {}).items():
            if j < 1:
                raise ValueError(f"Rademacher index must be >= 1, got {j}")
            if not g.is_zero:
                sup = g.support
                if sup.lo < 0 or sup.hi > 1:
                    raise ValueError("tensor profiles must live on [0, 1]")
                clean[int(j)] = g
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("DyadicTensor is immutable")

    @classmethod
    def elementary(cls, profile, j, coef=1):
        return cls({j: profile.scale(coef)})

    @classmethod
    def rademacher_poly(cls, coeffs):
        """``sum_j coeffs[j] r_j`` as a function of ``t`` alone."""
        one = StepFunction([0, 1], [1])
        return cls({j: one.scale(c) for j, c in coeffs.items() if c != 0})

    @property
    def is_zero(self):
        return not self.terms

    @property
    def level(self):
        """Dyadic level needed to resolve every profile and every ``r_j``."""
        lv = 0
        for j, g in self.terms.items():
            lv = max(lv, j - 1)
            for b in g.breakpoints:
                d = b.denominator
                lv = max(lv, d.bit_length() - 1 if d & (d - 1) == 0 else 64)
        return lv

    def scale(self, c):
        if c == 0:
            return DyadicTensor()
        return DyadicTensor({j: g.scale(c) for j, g in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, DyadicTensor):
            return NotImplemented
        return tensor_lin_comb([1, 1], [self, other])

    def __sub__(self, other):
        if not isinstance(other, DyadicTensor):
            return NotImplemented
        return tensor_lin_comb([1, -1], [self, other])

    def __eq__(self, other):
        return isinstance(other, DyadicTensor) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"DyadicTensor({self.terms!r})"

    def inner(self, other):
        """``int int F G``; the ``r_j`` are orthonormal in L_2[0,1]."""
        from .stepfn import inner_l2

        total = Fraction(0)
        for j, g in self.terms.items():
            h = other.terms.get(j)
            if h is not None:
                total = total + inner_l2(g, h)
        return total

    def norm_p(self, p, cap=ENUMERATION_CAP, samples=10 ** 5, seed=0):
        """``||F||_p ** p`` as a :class:`MomentEstimate`."""
        p = check_p(p)
        if not self.terms:
            return MomentEstimate(Fraction(0), exact=True)
        if len(self.terms) == 1:
            # |r_j| = 1, so the t-integral is trivial
            (g,) = self.terms.values()
            v = lp_norm_p(g, p)
            return MomentEstimate(v, 0.0, isinstance(v, Fraction), "enumeration")
        profiles = list(self.terms.values())
        grid = merged_grid(profiles)
        cols = [sample_on_grid(g, grid) for g in profiles]
        exact_total = Fraction(0)
        float_total = []
        var = 0.0
        used_mc = False
        for i in range(len(grid) - 1):
            c = [col[i] for col in cols if col[i] != 0]
            if not c:
                continue
            width = grid[i + 1] - grid[i]
            if len(c) <= cap:
                m = rademacher_moment_exact(c, p, cap)
                if isinstance(m, Fraction):
                    exact_total += m * width
                else:
                    float_total.append(m * float(width))
            else:
                used_mc = True
                est = rademacher_moment_mc(c, p, samples, _child_seed(seed, i))
                float_total.append(est.value * float(width))
                var += (est.stderr * float(width)) ** 2
        if float_total:
            value = float(exact_total) + math.fsum(float_total)
            return MomentEstimate(value, math.sqrt(var), False,
                                  "monte-carlo" if used_mc else "enumeration",
                                  samples if used_mc else 0, seed if used_mc else None)
        return MomentEstimate(exact_total, 0.0, True, "enumeration")

    def to_grid(self, level):
        """Dense values on the ``2**level x 2**level`` dyadic grid (rows are
        ``s``-atoms).  Only for small brute-force checks."""
        if any(j - 1 > level for j in self.terms):
            raise ValueError("grid too coarse for the Rademacher indices")
        size = 2 ** level
        cells = [Fraction(i, size) for i in range(size + 1)]
        out = [[Fraction(0)] * size for _ in range(size)]
        for j, g in self.terms.items():
            gs = sample_on_grid(g, cells) if not g.is_zero else [0] * size
            rt = sample_on_grid(rademacher(j), cells)
            for a in range(size):
                if gs[a] != 0:
                    row = out[a]
                    for b in range(size):
                        row[b] += gs[a] * rt[b]
        return out


def _child_seed(seed, i):
    base = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    return base + [i]


def tensor_lin_comb(coeffs, tensors):
    coeffs, tensors = list(coeffs), list(tensors)
    if len(coeffs) != len(tensors):
        raise ValueError(f"{len(coeffs)} coefficients for {len(tensors)} tensors")
    collected = {}
    for c, t in zip(coeffs, tensors):
        if c == 0:
            continue
        for j, g in t.terms.items():
            collected.setdefault(j, ([], []))
            collected[j][0].append(c)
            collected[j][1].append(g)
    return DyadicTensor({j: lin_comb(cs, gs) for j, (cs, gs) in collected.items()})
