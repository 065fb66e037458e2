"""Exact piecewise-constant functions on the real line.

A :class:`StepFunction` is stored as strictly increasing rational
breakpoints ``b0 < ... < bm`` and one value per piece ``[b_{i-1}, b_i)``;
outside ``[b0, bm]`` the function is 0.  Values are ``Fraction`` whenever
they are rational and ``float`` otherwise (normalised Haar functions, for
instance).  Everything stays exact as long as the values are exact and the
exponent ``p`` is a positive integer.
"""

import cmath
import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Interval",
    "StepFunction",
    "translate",
    "lin_comb",
    "restrict",
    "lp_norm_p",
    "lp_norm",
    "inner_l2",
    "fourier_eval",
    "intersection_norm",
    "exact_p",
    "check_p",
    "parse_triples",
    "format_triples",
    "format_rational",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to a rational")


def _val(x):
    """Coerce a function value: rationals stay exact, floats stay floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return float(x)


def exact_p(p):
    """True when ``|v|**p`` of a rational ``v`` is rational, i.e. p is a
    positive integer."""
    return p == int(p) and p >= 1


def check_p(p, minimum=1):
    if not p >= minimum:
        raise ValueError(f"exponent p={p} must be >= {minimum}")
    return Fraction(int(p)) if exact_p(p) else p


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi):
        lo, hi = _rat(lo), _rat(hi)
        if not lo < hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self):
        return self.hi - self.lo

    def indicator(self, value=1):
        return StepFunction([self.lo, self.hi], [value])

    def __contains__(self, x):
        return self.lo <= x < self.hi

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"


class StepFunction:
    """Immutable, canonical piecewise-constant function with bounded support.

    Canonical form: no zero-length pieces, no two adjacent pieces with the
    same value, no zero pieces at either end.  The zero function has no
    breakpoints at all.
    """

    __slots__ = ("breakpoints", "values", "_hash")

    def __init__(self, breakpoints=(), values=()):
        bps = [_rat(b) for b in breakpoints]
        vals = [_val(v) for v in values]
        if bps and len(vals) != len(bps) - 1:
            raise ValueError("need exactly one value per piece")
        if not bps and vals:
            raise ValueError("values given without breakpoints")
        for a, b in zip(bps, bps[1:]):
            if b < a:
                raise ValueError("breakpoints must be non-decreasing")
        self.breakpoints, self.values = _canonical(bps, vals)
        self._hash = None

    def __setattr__(self, name, value):
        if name != "_hash" and hasattr(self, "values"):
            raise AttributeError("StepFunction is immutable")
        object.__setattr__(self, name, value)

    # construction helpers --------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def indicator(cls, lo, hi, value=1):
        return cls([lo, hi], [value])

    @classmethod
    def from_pieces(cls, pieces):
        """Sum of ``value * chi_[lo, hi)`` over ``(lo, hi, value)`` triples;
        overlapping pieces add."""
        parts = [cls([lo, hi], [v]) for lo, hi, v in pieces if _rat(lo) < _rat(hi)]
        if not parts:
            return cls()
        return lin_comb([1] * len(parts), parts)

    # basic queries ----------------------------------------------------------
    def __call__(self, x):
        bps = self.breakpoints
        if not bps:
            return Fraction(0)
        i = bisect_right(bps, x)
        if i == 0 or i == len(bps):
            return Fraction(0)
        return self.values[i - 1]

    def pieces(self, include_zero=False):
        return [
            (a, b, v)
            for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.values)
            if include_zero or v != 0
        ]

    @property
    def support(self):
        """Smallest closed interval containing the support, or None."""
        if not self.breakpoints:
            return None
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    @property
    def is_zero(self):
        return not self.values

    @property
    def is_exact(self):
        return all(isinstance(v, Fraction) for v in self.values)

    def integral(self):
        return _sum(v * (b - a) for a, b, v in self.pieces())

    # algebra ----------------------------------------------------------------
    def translate(self, lam):
        return translate(self, lam)

    def restrict(self, interval):
        return restrict(self, interval)

    def __add__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return lin_comb([1, 1], [self, other])

    def __sub__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return lin_comb([1, -1], [self, other])

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, c):
        if isinstance(c, StepFunction):
            return product(self, c)
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c):
        c = _val(c)
        if c == 0:
            return StepFunction()
        return StepFunction(self.breakpoints, [c * v for v in self.values])

    def abs(self):
        return StepFunction(self.breakpoints, [abs(v) for v in self.values])

    def map_values(self, fn):
        return StepFunction(self.breakpoints, [fn(v) for v in self.values])

    def norm_p(self, p):
        return lp_norm_p(self, p)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.values == other.values

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.breakpoints, self.values))
        return self._hash

    def __repr__(self):
        if self.is_zero:
            return "StepFunction.zero()"
        body = ", ".join(
            f"[{format_rational(a)},{format_rational(b)}):{format_rational(v)}"
            for a, b, v in self.pieces()
        )
        return f"StepFunction({body})"


def _sum(it):
    total = Fraction(0)
    for x in it:
        total = total + x
    return total


def _canonical(bps, vals):
    nb, nv = [], []
    for i, v in enumerate(vals):
        a, b = bps[i], bps[i + 1]
        if a == b:
            continue
        if nv and nv[-1] == v:
            nb[-1] = b
            continue
        if not nb:
            nb.append(a)
        elif nb[-1] != a:
            # cannot happen with contiguous input; keep pieces contiguous
            nb.append(a)
            nv.append(Fraction(0))
        nb.append(b)
        nv.append(v)
    # trim zero pieces at the ends
    while nv and nv[0] == 0:
        nv.pop(0)
        nb.pop(0)
    while nv and nv[-1] == 0:
        nv.pop()
        nb.pop()
    if not nv:
        return (), ()
    return tuple(nb), tuple(nv)


def merged_grid(fns):
    """Sorted union of all breakpoints."""
    pts = set()
    for f in fns:
        pts.update(f.breakpoints)
    return sorted(pts)


def sample_on_grid(f, grid):
    """Values of ``f`` on the cells ``[grid[i], grid[i+1])``.  ``grid`` must
    contain every breakpoint of ``f``."""
    n = len(grid) - 1
    out = [Fraction(0)] * max(n, 0)
    bps = f.breakpoints
    if not bps or n <= 0:
        return out
    start = bisect_right(grid, bps[0]) - 1
    k = 0
    for i in range(start, n):
        left = grid[i]
        if left >= bps[-1]:
            break
        while bps[k + 1] <= left:
            k += 1
        out[i] = f.values[k]
    return out


def translate(f, lam):
    """``x -> f(x - lam)``."""
    lam = _rat(lam)
    if f.is_zero or lam == 0:
        return f
    return StepFunction([b + lam for b in f.breakpoints], f.values)


def lin_comb(coeffs, fns):
    """Pointwise ``sum c_i f_i`` on the merged breakpoint grid."""
    coeffs = list(coeffs)
    fns = list(fns)
    if len(coeffs) != len(fns):
        raise ValueError(f"{len(coeffs)} coefficients for {len(fns)} functions")
    pairs = [(_val(c), f) for c, f in zip(coeffs, fns) if c != 0 and not f.is_zero]
    if not pairs:
        return StepFunction()
    if len(pairs) == 1:
        c, f = pairs[0]
        return f.scale(c)
    grid = merged_grid(f for _, f in pairs)
    acc = [Fraction(0)] * (len(grid) - 1)
    for c, f in pairs:
        for i, v in enumerate(sample_on_grid(f, grid)):
            if v != 0:
                acc[i] = acc[i] + c * v
    return StepFunction(grid, acc)


def product(f, g):
    if f.is_zero or g.is_zero:
        return StepFunction()
    grid = merged_grid([f, g])
    fv, gv = sample_on_grid(f, grid), sample_on_grid(g, grid)
    return StepFunction(grid, [a * b for a, b in zip(fv, gv)])


def restrict(f, interval):
    """``f * chi_I``.  ``interval`` may be an :class:`Interval` or a pair."""
    if not isinstance(interval, Interval):
        lo, hi = (_rat(x) for x in interval)
        if lo >= hi:
            return StepFunction()
        interval = Interval(lo, hi)
    if f.is_zero:
        return f
    lo, hi = interval.lo, interval.hi
    bps = f.breakpoints
    if hi <= bps[0] or lo >= bps[-1]:
        return StepFunction()
    new_b, new_v = [], []
    for a, b, v in zip(bps, bps[1:], f.values):
        a2, b2 = max(a, lo), min(b, hi)
        if a2 < b2:
            if new_b and new_b[-1] != a2:
                new_b.append(a2)
                new_v.append(Fraction(0))
            if not new_b:
                new_b.append(a2)
            new_b.append(b2)
            new_v.append(v)
    return StepFunction(new_b, new_v)


def lp_norm_p(f, p):
    """``||f||_p ** p``.  Exact ``Fraction`` for integer p and exact values,
    otherwise a float."""
    p = check_p(p)
    if f.is_zero:
        return Fraction(0)
    if isinstance(p, Fraction) and f.is_exact:
        e = int(p)
        return _sum(abs(v) ** e * (b - a) for a, b, v in f.pieces())
    pf = float(p)
    return math.fsum(abs(float(v)) ** pf * float(b - a) for a, b, v in f.pieces())


def lp_norm(f, p):
    return float(lp_norm_p(f, p)) ** (1.0 / float(p))


def inner_l2(f, g):
    """``int f g`` exactly (when both are exact)."""
    if f.is_zero or g.is_zero:
        return Fraction(0)
    return product(f, g).integral()


def _segment_transform(a, b, t):
    # int_a^b e^{-ixt} dx = (b - a) e^{-it(a+b)/2} sinc(t(b-a)/2), stable at t -> 0
    length = float(b - a)
    mid = float(a + b) / 2.0
    u = t * length / 2.0
    sinc = 1.0 if u == 0 else math.sin(u) / u
    return length * sinc * cmath.exp(-1j * t * mid)


def fourier_eval(f, t):
    """``(2 pi)^{-1/2} int f(x) e^{-ixt} dx``."""
    t = float(t)
    total = 0j
    for a, b, v in f.pieces():
        total += float(v) * _segment_transform(a, b, t)
    return total / _SQRT_2PI


def intersection_norm(f, p):
    """Norm of ``L_p cap L_2``: ``max(||f||_p, ||f||_2)`` for p > 2."""
    if not p > 2:
        raise ValueError(f"intersection norm needs p > 2, got {p}")
    return max(lp_norm(f, p), lp_norm(f, 2))


# text serialisation ------------------------------------------------------------

def format_rational(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


_SPLIT = re.compile(r"[;\n]+")


def parse_triples(text):
    """Parse ``lo hi value`` triples separated by newlines or ``;``.

    Fields may be separated by commas or whitespace and written as integers,
    decimal fractions or ``num/den``.  ``#`` starts a comment.
    """
    pieces = []
    for chunk in _SPLIT.split(text):
        chunk = chunk.split("#", 1)[0].strip()
        if not chunk:
            continue
        fields = [x for x in re.split(r"[,\s]+", chunk) if x]
        if len(fields) != 3:
            raise ValueError(f"expected 'lo hi value', got {chunk!r}")
        pieces.append(tuple(Fraction(x) for x in fields))
    return StepFunction.from_pieces(pieces)


def format_triples(f):
    return "\n".join(
        f"{format_rational(a)} {format_rational(b)} {format_rational(v)}"
        for a, b, v in f.pieces()
    )
