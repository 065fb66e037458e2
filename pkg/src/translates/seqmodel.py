"""Integer-indexed sequences of coordinate functions, ``l_p(Z, V)``.

``L_p(R)`` is the l_p-sum of the unit windows ``L_p[n, n+1]``, and
``L_p[0,1]`` is isometric to ``L_p([0,1]^2)``; so an element is a finitely
supported map ``n -> coordinate`` where each coordinate is a step function
on [0, 1] or a :class:`~translates.dyadic.DyadicTensor` on ``[0,1]^2``.
Integer translation becomes the index shift ``F^(k) = (f_{n-k})``.

Also here: the lacunary block construction with translations ``-3^j``, the
telescoping Rademacher example, torus Fourier transforms of finitely
supported sequences with exact inner products, and l_2 distances to spans
of shifts.
"""

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import _rational
from .dyadic import (
    ENUMERATION_CAP,
    DyadicTensor,
    MomentEstimate,
    haar,
    rademacher_moment,
    tensor_lin_comb,
)
from .stepfn import (
    StepFunction,
    check_p,
    format_rational,
    format_triples,
    inner_l2,
    lin_comb,
    lp_norm_p,
    restrict,
    translate,
)

__all__ = [
    "SeqElement",
    "shift",
    "seq_lin_comb",
    "seq_pnorm",
    "pairing",
    "from_step_function",
    "to_step_function",
    "BlockScheme",
    "LacunaryModel",
    "lacunary_build",
    "translate_sum_equivalence",
    "block_equivalence",
    "TelescopingModel",
    "telescoping_build",
    "telescoping_coefficients",
    "telescoping_coord0_norm_p",
    "Gauss",
    "PiForm",
    "TorusFunction",
    "transform",
    "shift_sequence",
    "torus_inner",
    "half_period_witness",
    "shift_span_distance_sq_l2",
    "shift_span_distance_l2",
]


# --------------------------------------------------------------------------
# sequence elements

def _coord_kind(c):
    if isinstance(c, StepFunction):
        return "step"
    if isinstance(c, DyadicTensor):
        return "tensor"
    raise TypeError(f"unsupported coordinate type {type(c).__name__}")


def _coord_zero(c):
    return c.is_zero


class SeqElement:
    """``F = (f_n)_{n in Z}`` with finitely many nonzero coordinates, all of
    one kind (step functions on [0, 1] or dyadic tensors)."""

    __slots__ = ("coords", "p", "kind")

    def __init__(self, coords, p):
        clean = {}
        kind = None
        for n, c in coords.items():
            k = _coord_kind(c)
            if kind is None:
                kind = k
            elif k != kind:
                raise TypeError("coordinates must all be step functions or all tensors")
            if _coord_zero(c):
                continue
            if k == "step":
                sup = c.support
                if sup.lo < 0 or sup.hi > 1:
                    raise ValueError(f"coordinate {n} is not supported in [0, 1]")
            clean[int(n)] = c
        object.__setattr__(self, "coords", dict(sorted(clean.items())))
        object.__setattr__(self, "p", check_p(p))
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("SeqElement is immutable")

    @property
    def support(self):
        return list(self.coords)

    @property
    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        return (isinstance(other, SeqElement) and self.p == other.p
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.p, tuple(self.coords.items())))

    def __repr__(self):
        return f"SeqElement(p={self.p}, coords={self.coords!r})"

    def scale(self, c):
        if c == 0:
            return SeqElement({}, self.p)
        return SeqElement({n: f.scale(c) for n, f in self.coords.items()}, self.p)

    def as_dict(self):
        """JSON-ready payload: index -> step triples or tensor terms."""
        out = {}
        for n, c in self.coords.items():
            if isinstance(c, StepFunction):
                out[str(n)] = {"step": format_triples(c)}
            else:
                out[str(n)] = {"tensor": {str(j): format_triples(g) for j, g in c.terms.items()}}
        return {"p": format_rational(self.p), "coords": out}

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


def shift(F, k):
    """``F^(k)``: the coordinate at ``n`` becomes the old coordinate at ``n - k``."""
    return SeqElement({n + k: c for n, c in F.coords.items()}, F.p)


def seq_lin_comb(coeffs, elems):
    coeffs, elems = list(coeffs), list(elems)
    if len(coeffs) != len(elems):
        raise ValueError(f"{len(coeffs)} coefficients for {len(elems)} elements")
    if not elems:
        raise ValueError("need at least one element")
    p = elems[0].p
    if any(e.p != p for e in elems):
        raise ValueError("elements have different exponents")
    collected = {}
    for c, e in zip(coeffs, elems):
        if c == 0:
            continue
        for n, f in e.coords.items():
            collected.setdefault(n, ([], []))
            collected[n][0].append(c)
            collected[n][1].append(f)
    coords = {}
    for n, (cs, fs) in collected.items():
        if len(fs) == 1:
            coords[n] = fs[0].scale(cs[0])
        elif isinstance(fs[0], StepFunction):
            coords[n] = lin_comb(cs, fs)
        else:
            coords[n] = tensor_lin_comb(cs, fs)
    return SeqElement(coords, p)


def seq_pnorm(F, cap=ENUMERATION_CAP, samples=10 ** 5, seed=0):
    """``||F||_p^p = sum_n ||f_n||_p^p`` as a :class:`MomentEstimate`.

    Tensor coordinates go through the sign-moment oracle (sampled beyond
    ``cap`` active Rademachers, with seeds derived from ``seed`` and the
    coordinate index).
    """
    total = MomentEstimate(Fraction(0), 0.0, True, "enumeration")
    for n, c in F.coords.items():
        if isinstance(c, StepFunction):
            v = lp_norm_p(c, F.p)
            total = total + MomentEstimate(v, 0.0, isinstance(v, Fraction), "enumeration")
        else:
            total = total + c.norm_p(F.p, cap, samples, [seed, n] if n >= 0 else [seed, 2 ** 62 - n])
    return total


def pairing(F, G):
    """``sum_n <f_n, g_n>`` with exact coordinate inner products."""
    if F.kind and G.kind and F.kind != G.kind:
        raise TypeError("cannot pair step coordinates with tensor coordinates")
    total = Fraction(0)
    for n, f in F.coords.items():
        g = G.coords.get(n)
        if g is None:
            continue
        total = total + (inner_l2(f, g) if isinstance(f, StepFunction) else f.inner(g))
    return total


def from_step_function(f, p):
    """Cut ``f`` into unit windows: coordinate ``n`` is ``f`` on ``[n, n+1]``
    moved to [0, 1]."""
    if f.is_zero:
        return SeqElement({}, p)
    lo = math.floor(f.breakpoints[0])
    hi = math.ceil(f.breakpoints[-1])
    return SeqElement({n: translate(restrict(f, (n, n + 1)), -n) for n in range(lo, hi)}, p)


def to_step_function(F):
    if F.kind == "tensor":
        raise TypeError("tensor coordinates have no step-function form")
    parts = [translate(c, n) for n, c in F.coords.items()]
    return lin_comb([1] * len(parts), parts) if parts else StepFunction()


# --------------------------------------------------------------------------
# lacunary block construction

@dataclass(frozen=True)
class BlockScheme:
    """Consecutive blocks ``J_1, J_2, ...`` of ``{1..J}`` with weights
    ``eps_j`` satisfying ``sum_{j in J_n} eps_j^4 = 1`` exactly."""

    sizes: tuple
    epsilons: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        eps = tuple(Fraction(e) for e in self.epsilons)
        if any(s < 1 for s in sizes):
            raise ValueError("block sizes must be positive")
        if len(eps) != sum(sizes):
            raise ValueError("need one epsilon per index")
        if any(not 0 < e <= 1 for e in eps):
            raise ValueError("epsilons must lie in (0, 1]")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "epsilons", eps)
        for n, block in enumerate(self.blocks, start=1):
            s = sum(self.eps(j) ** 4 for j in block)
            if s != 1:
                raise ValueError(f"block {n} has sum eps^4 = {s}, not 1")

    @classmethod
    def fourth_powers(cls, roots=(1, 2, 3)):
        """Blocks of size ``r**4`` with constant weight ``1/r``."""
        sizes, eps = [], []
        for r in roots:
            sizes.append(r ** 4)
            eps += [Fraction(1, r)] * r ** 4
        return cls(tuple(sizes), tuple(eps))

    @property
    def total(self):
        return sum(self.sizes)

    @property
    def blocks(self):
        out, start = [], 1
        for s in self.sizes:
            out.append(range(start, start + s))
            start += s
        return out

    def eps(self, j):
        return self.epsilons[j - 1]

    def block_of(self, j):
        for n, block in enumerate(self.blocks, start=1):
            if j in block:
                return n
        raise IndexError(f"index {j} is outside the scheme")

    def eps_power_sum(self, p, block=None):
        """``sum eps_j^p`` over one block (1-based) or over all indices."""
        idx = range(1, self.total + 1) if block is None else self.blocks[block - 1]
        p = check_p(p)
        if isinstance(p, Fraction):
            return sum((self.eps(j) ** int(p) for j in idx), Fraction(0))
        return math.fsum(float(self.eps(j)) ** float(p) for j in idx)


@dataclass(frozen=True)
class LacunaryModel:
    p: object
    scheme: BlockScheme
    base: SeqElement
    translates: tuple
    blocks: tuple


def lacunary_build(p, scheme):
    """Base ``f`` with ``f_{3^j} = eps_j h_n (x) r_j`` for ``j in J_n``
    (normalised Haar ``h_n``), its translates ``f^(-3^j)`` and the block
    vectors ``b^(n) = sum_{j in J_n} eps_j f^(-3^j)``."""
    if not p > 4:
        raise ValueError(f"construction needs p > 4, got {p}")
    p = check_p(p)
    coords = {}
    for n, block in enumerate(scheme.blocks, start=1):
        h = haar(n, p=p, normalized=True)
        for j in block:
            coords[3 ** j] = DyadicTensor.elementary(h, j, scheme.eps(j))
    base = SeqElement(coords, p)
    translates = tuple(shift(base, -3 ** j) for j in range(1, scheme.total + 1))
    blocks = tuple(
        seq_lin_comb([scheme.eps(j) for j in block], [translates[j - 1] for j in block])
        for block in scheme.blocks
    )
    return LacunaryModel(p, scheme, base, translates, blocks)


def _haar_part(model, weights):
    """``||sum_n w_n h_n||_p^p`` for normalised Haar functions."""
    hs = [haar(n, p=model.p, normalized=True) for n in range(1, len(weights) + 1)]
    return lp_norm_p(lin_comb(weights, hs), model.p)


def translate_sum_equivalence(model, a, samples=10 ** 5, seed=0):
    """True norm power of ``sum_j a_j f^(-3^j)`` against the surrogate
    ``||sum_n (sum_{J_n} a_j^2 eps_j^2)^{1/2} h_n||_p^p + sum |a_j|^p``.

    Returns ``(lhs, rhs, ratio)``; ``lhs`` is a :class:`MomentEstimate`.
    """
    a = list(a)
    if len(a) != model.scheme.total:
        raise ValueError(f"need {model.scheme.total} coefficients, got {len(a)}")
    lhs = seq_pnorm(seq_lin_comb(a, model.translates), samples=samples, seed=seed)
    pf = float(model.p)
    weights = [math.sqrt(math.fsum(float(a[j - 1]) ** 2 * float(model.scheme.eps(j)) ** 2
                                   for j in block))
               for block in model.scheme.blocks]
    rhs = float(_haar_part(model, weights)) + math.fsum(abs(float(x)) ** pf for x in a)
    return lhs, rhs, float(lhs.value) / rhs


def block_equivalence(model, c, samples=10 ** 5, seed=0):
    """``||sum c_n b^(n)||_p^p`` against ``||sum c_n h_n||_p^p +
    sum |c_n|^p sum_{J_n} eps_j^p``; returns ``(lhs, rhs, ratio)``."""
    c = list(c)
    if len(c) != len(model.blocks):
        raise ValueError(f"need {len(model.blocks)} coefficients, got {len(c)}")
    lhs = seq_pnorm(seq_lin_comb(c, model.blocks), samples=samples, seed=seed)
    pf = float(model.p)
    rhs = float(_haar_part(model, c)) + math.fsum(
        abs(float(x)) ** pf * float(model.scheme.eps_power_sum(model.p, n))
        for n, x in enumerate(c, start=1))
    return lhs, rhs, float(lhs.value) / rhs


# --------------------------------------------------------------------------
# telescoping Rademacher example

def _telescoping_weight(j):
    if j == 0:
        return Fraction(1)
    r = round(j ** 0.25)
    return Fraction(1, r) if r ** 4 == j else j ** -0.25


@dataclass(frozen=True)
class TelescopingModel:
    p: object
    a: tuple
    base: SeqElement
    translates: tuple
    depth: int


def telescoping_build(p, n_max, depth=None):
    """Base ``f_{3^j} = a_{j-1} r_j - a_{j+1} r_{j+1}`` (``a_j = j^{-1/4}``,
    ``a_0 = 1``) for ``j <= depth`` and the translates ``f^(-3^j)``,
    ``j <= n_max``.  ``depth`` defaults to ``n_max + 1``."""
    if not p > 4:
        raise ValueError(f"construction needs p > 4, got {p}")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    depth = n_max + 1 if depth is None else depth
    if depth < n_max:
        raise ValueError("depth must be >= n_max")
    a = tuple(_telescoping_weight(j) for j in range(depth + 2))
    coords = {3 ** j: DyadicTensor.rademacher_poly({j: a[j - 1], j + 1: -a[j + 1]})
              for j in range(1, depth + 1)}
    base = SeqElement(coords, p)
    translates = tuple(shift(base, -3 ** j) for j in range(1, n_max + 1))
    return TelescopingModel(check_p(p), a, base, translates, depth)


def telescoping_coefficients(a, b):
    """Rademacher coefficients of ``sum_{j=1}^n b_j (a_{j-1} r_j - a_{j+1} r_{j+1})``:
    ``b_j a_{j-1} - b_{j-1} a_j`` on ``r_j`` (``b_0 = 0``) and
    ``-b_n a_{n+1}`` on ``r_{n+1}``."""
    b = [0] + list(b)
    n = len(b) - 1
    coeffs = {j: b[j] * a[j - 1] - b[j - 1] * a[j] for j in range(1, n + 1)}
    coeffs[n + 1] = -b[n] * a[n + 1]
    return {j: c for j, c in coeffs.items() if c != 0}


def telescoping_coord0_norm_p(a, b, p, samples=10 ** 5, seed=0):
    coeffs = telescoping_coefficients(a, b)
    return rademacher_moment(list(coeffs.values()), p, samples=samples, seed=seed)


# --------------------------------------------------------------------------
# torus Fourier analysis

@dataclass(frozen=True)
class Gauss:
    """Exact Gaussian rational ``re + i im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, x):
        if isinstance(x, Gauss):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = Gauss.of(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-Gauss.of(o))

    def __mul__(self, o):
        o = Gauss.of(o)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Gauss.of(o)
        d = o.re ** 2 + o.im ** 2
        return self * Gauss(o.re / d, -o.im / d)

    def conj(self):
        return Gauss(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def abs2(self):
        return self.re ** 2 + self.im ** 2


def _add(x, y):
    if isinstance(x, Gauss) and isinstance(y, Gauss):
        return x + y
    return complex(x) + complex(y)


def _mul(x, y):
    if isinstance(x, Gauss) and isinstance(y, Gauss):
        return x * y
    return complex(x) * complex(y)


def _conj(x):
    return x.conj() if isinstance(x, Gauss) else complex(x).conjugate()


def _exp_ipi(q):
    """``e^{i pi q}``; exact when ``2q`` is an integer."""
    q = Fraction(q)
    if (2 * q).denominator == 1:
        return [Gauss(1), Gauss(0, 1), Gauss(-1), Gauss(0, -1)][int(2 * q) % 4]
    return cmath.exp(1j * math.pi * float(q))


@dataclass(frozen=True)
class PiForm:
    """``a + b pi`` with ``a, b`` exact Gaussian rationals (or complex
    floats when an exponential had no rational value)."""

    a: object = Gauss()
    b: object = Gauss()

    @property
    def exact(self):
        return isinstance(self.a, Gauss) and isinstance(self.b, Gauss)

    @property
    def value(self):
        return complex(self.a) + complex(self.b) * math.pi

    @property
    def is_zero(self):
        if self.exact:
            return not self.a and not self.b
        return abs(self.value) < 1e-12

    def __add__(self, o):
        return PiForm(_add(self.a, o.a), _add(self.b, o.b))

    def conj(self):
        return PiForm(_conj(self.a), _conj(self.b))


@dataclass(frozen=True)
class TorusFunction:
    """``sum_n xi_n e^{int} + S(t)`` on ``[-pi, pi]``.

    ``trig`` maps frequencies to coefficients; ``step`` is a real step
    function of ``u = t / pi`` supported in ``[-1, 1]`` (so breakpoints are
    rational multiples of pi).
    """

    trig: dict
    step: StepFunction = StepFunction()

    def __post_init__(self):
        trig = {int(n): Gauss.of(c) if not isinstance(c, complex) else c
                for n, c in self.trig.items() if c != 0}
        object.__setattr__(self, "trig", dict(sorted(trig.items())))
        if not self.step.is_zero:
            sup = self.step.support
            if sup.lo < -1 or sup.hi > 1:
                raise ValueError("step part must live in [-1, 1] (units of pi)")

    def __call__(self, t):
        s = sum(complex(c) * cmath.exp(1j * n * t) for n, c in self.trig.items())
        return s + float(self.step(Fraction(t / math.pi)))

    def modulate(self, k):
        """Multiply by ``e^{ikt}``."""
        if not self.step.is_zero:
            raise ValueError("modulation of the step part is not representable")
        return TorusFunction({n + k: c for n, c in self.trig.items()})


def transform(x):
    """``x^(t) = sum_n x_n e^{int}`` of a finitely supported sequence."""
    return TorusFunction(dict(x))


def shift_sequence(x, k):
    """``(x_{n-k})_n``."""
    return {n + k: v for n, v in x.items()}


def _trig_step(xi, n, step):
    """``xi * int_{-pi}^{pi} e^{int} S(t / pi) dt`` (S real)."""
    total = PiForm()
    for lo, hi, v in step.pieces():
        val = Gauss.of(v) if isinstance(v, Fraction) else complex(float(v))
        if n == 0:
            total = total + PiForm(Gauss(), _mul(_mul(xi, val), Gauss.of(hi - lo)))
        else:
            diff = _add(_exp_ipi(n * hi), _mul(Gauss(-1), _exp_ipi(n * lo)))
            # divide by i n
            quot = _mul(diff, Gauss(0, Fraction(-1, n)))
            total = total + PiForm(_mul(_mul(xi, val), quot), Gauss())
    return total


def torus_inner(u, v):
    """``int_{-pi}^{pi} u(t) conj(v(t)) dt`` in closed form."""
    total = PiForm()
    # trig x trig: orthogonality, 2 pi delta
    s = Gauss()
    for n, c in u.trig.items():
        d = v.trig.get(n)
        if d is not None:
            s = _add(s, _mul(c, _conj(d)))
    total = total + PiForm(Gauss(), _mul(Gauss(2), s))
    for n, c in u.trig.items():
        total = total + _trig_step(c, n, v.step)
    for n, d in v.trig.items():
        total = total + _trig_step(d, n, u.step).conj()
    if not u.step.is_zero and not v.step.is_zero:
        ip = inner_l2(u.step, v.step)
        ip = Gauss.of(ip) if isinstance(ip, Fraction) else complex(float(ip))
        total = total + PiForm(Gauss(), ip)
    return total


def half_period_witness():
    """``chi_[-pi, 0] - chi_[0, pi]``, orthogonal to every ``e^{2int}``."""
    return TorusFunction({}, StepFunction([-1, 0, 1], [1, -1]))


# --------------------------------------------------------------------------
# l_2 distance to spans of shifts

def _as_seq(x):
    if isinstance(x, dict):
        return {int(n): Fraction(v) for n, v in x.items() if v != 0}
    return {n: Fraction(v) for n, v in enumerate(x) if v != 0}


def shift_span_distance_sq_l2(x, target, shifts):
    """Exact squared l_2 distance from ``target`` to
    ``span{x^(k) : k in shifts}``.

    The Gram matrix is Toeplitz, ``G[k][l] = R(k - l)`` with the
    autocorrelation ``R(d) = sum_m x_m x_{m+d}``.
    """
    x, t = _as_seq(x), _as_seq(target)
    shifts = sorted(set(int(k) for k in shifts))
    t2 = sum((v * v for v in t.values()), Fraction(0))
    if not shifts or not x:
        return t2
    auto = {}

    def R(d):
        if d not in auto:
            auto[d] = sum((v * x.get(m + d, 0) for m, v in x.items()), Fraction(0))
        return auto[d]

    gram = [[R(k - l) for l in shifts] for k in shifts]
    rhs = [sum((v * x.get(n - k, 0) for n, v in t.items()), Fraction(0)) for k in shifts]
    c, _ = _rational.solve_least_squares(gram, rhs)
    d2 = t2 - sum(ci * bi for ci, bi in zip(c, rhs))
    if d2 < 0:
        raise ArithmeticError("negative squared distance; Gram solve failed")
    return d2


def shift_span_distance_l2(x, target, shifts):
    return math.sqrt(shift_span_distance_sq_l2(x, target, shifts))
