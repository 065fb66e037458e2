"""Embedding finite translate systems into ``l_p`` through interval partitions.

Given functions ``f_1, ..., f_N`` with biorthogonal functionals ``g_i``
(here the exact L_2 duals), :func:`build_partition` chooses growing windows
``I_k = [-m_k, m_k]`` and index cut-offs ``n_k`` together with partitions
``pi_k`` of the rings ``A_k = I_k minus I_{k-1}``, such that three
quantities stay below ``eps 2^-k``:

* ``c21_k``: mass of the indices beyond ``n_k`` inside ``I_{k-1}``,
* ``c22_k``: mass of the first ``n_k`` functions outside ``I_k``,
* ``c23_k``: averaging error of ``E_{pi_k}`` on ``A_k`` for the first
  ``n_{k+1}`` functions.

All three are certified for coefficient vectors with ``|a_i| <= K``, where
``K = max_i ||g_i||_q``, by the triangle inequality.  The embedding maps
``f`` to ``a_D = m(D)^{1/p - 1} int_D f`` over the cells ``D`` of the
partition, so ``||Tf||_{l_p} = ||E f||_p`` holds exactly.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _rational
from .stepfn import (
    Interval,
    StepFunction,
    check_p,
    format_rational,
    lin_comb,
    lp_norm_p,
    restrict,
)

MAX_BISECTIONS = 24

__all__ = [
    "Partition",
    "DualSystem",
    "PartitionCertificate",
    "EmbeddingReport",
    "dual_system_l2",
    "build_partition",
    "cond_expect",
    "embed_coords",
    "coords_pnorm_p",
    "distortion_report",
    "lower_lq_constant",
    "tail_certificate",
]


class Partition:
    """Ordered, contiguous cells covering ``[lo, hi]``."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        cells = [c if isinstance(c, Interval) else Interval(*c) for c in cells]
        if not cells:
            raise ValueError("empty partition")
        cells.sort(key=lambda c: c.lo)
        for u, v in zip(cells, cells[1:]):
            if u.hi != v.lo:
                raise ValueError(f"cells {u} and {v} are not contiguous")
        object.__setattr__(self, "cells", tuple(cells))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_breakpoints(cls, points):
        pts = sorted(set(Fraction(x) for x in points))
        return cls([Interval(a, b) for a, b in zip(pts, pts[1:])])

    @property
    def window(self):
        return Interval(self.cells[0].lo, self.cells[-1].hi)

    @property
    def breakpoints(self):
        return [self.cells[0].lo] + [c.hi for c in self.cells]

    @property
    def measures(self):
        return [c.length for c in self.cells]

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Partition({len(self.cells)} cells on {self.window})"

    def refines(self, other):
        return set(other.breakpoints) <= set(self.breakpoints)


def _check_window(f, part):
    if f.is_zero:
        return
    w = part.window
    if f.breakpoints[0] < w.lo or f.breakpoints[-1] > w.hi:
        raise ValueError(f"support of f escapes the partition window {w}")


def cond_expect(f, part):
    """Average of ``f`` over every cell of ``part``."""
    _check_window(f, part)
    vals = [restrict(f, (c.lo, c.hi)).integral() / c.length for c in part.cells]
    return StepFunction(part.breakpoints, vals)


def embed_coords(f, part, p):
    """``a_D = m(D)^{1/p - 1} int_D f`` over the cells ``D``.

    Exact rationals for ``p = 1``; floats otherwise.
    """
    _check_window(f, part)
    p = check_p(p)
    out = []
    for c in part.cells:
        s = restrict(f, (c.lo, c.hi)).integral()
        if p == 1:
            out.append(s)
        else:
            out.append(float(s) * float(c.length) ** (1.0 / float(p) - 1.0))
    return out


def coords_pnorm_p(coords, p):
    p = check_p(p)
    if p == 1 and all(isinstance(x, Fraction) for x in coords):
        return sum((abs(x) for x in coords), Fraction(0))
    return math.fsum(abs(float(x)) ** float(p) for x in coords)


# --------------------------------------------------------------------------
# duals

def _q_norm(g, p):
    """``||g||_q`` with ``1/p + 1/q = 1``."""
    if p == 1:
        return max((abs(v) for v in g.values), default=Fraction(0))
    q = float(p) / (float(p) - 1.0)
    return math.fsum(abs(float(v)) ** q * float(b - a) for a, b, v in g.pieces()) ** (1.0 / q)


@dataclass(frozen=True)
class DualSystem:
    fns: tuple
    duals: tuple
    p: object

    @property
    def norms_q(self):
        return [_q_norm(g, self.p) for g in self.duals]

    @property
    def K(self):
        """``max_i ||g_i||_q``."""
        return max(self.norms_q)

    def coefficients(self, f):
        from .stepfn import inner_l2

        return [inner_l2(f, g) for g in self.duals]


def dual_system_l2(fns, p=1):
    """Exact L_2 duals ``g_i = sum_j (G^-1)_ij f_j``.

    A singular Gram matrix raises ``ValueError`` naming the dependent
    members.
    """
    from .systems import gram_l2

    fns = list(fns)
    gram = gram_l2(fns)
    try:
        inv = _rational.inverse(gram)
    except ZeroDivisionError:
        dep = _rational.dependent_subset(gram)
        raise ValueError(f"functions {dep} depend linearly on earlier ones") from None
    duals = tuple(lin_comb(row, fns) for row in inv)
    return DualSystem(tuple(fns), duals, check_p(p))


# --------------------------------------------------------------------------
# partition construction

def _norm(f, p):
    v = lp_norm_p(f, p)
    if p == 1:
        return v
    return float(v) ** (1.0 / float(p))


def _outside(f, m):
    """``f`` restricted to the complement of ``[-m, m]``."""
    if f.is_zero:
        return f
    lo, hi = f.breakpoints[0], f.breakpoints[-1]
    return restrict(f, (lo, min(hi, -m))) + restrict(f, (max(lo, m), hi))


def _ring(k_lo, k_hi):
    """Intervals of ``[-k_hi, k_hi] minus [-k_lo, k_lo]``."""
    if k_lo == 0:
        return [(-k_hi, k_hi)]
    return [(-k_hi, -k_lo), (k_lo, k_hi)]


def _residual(fns, cells, p):
    """``sum_i ||f_i on cells - E(f_i on cells)||_p`` and the cells with a
    nonzero residual.

    Norms are summed cell by cell, which equals the norm over the whole
    ring for ``p = 1`` and bounds it from above for ``p > 1``.
    """
    total = Fraction(0) if p == 1 else 0.0
    dirty = set()
    for f in fns:
        for idx, (lo, hi) in enumerate(cells):
            piece = restrict(f, (lo, hi))
            if piece.is_zero:
                continue
            avg = piece.integral() / (hi - lo)
            diff = piece - StepFunction([lo, hi], [avg])
            if not diff.is_zero:
                dirty.add(idx)
                total = total + _norm(diff, p)
    return total, dirty


@dataclass(frozen=True)
class PartitionCertificate:
    k: int
    n_k: int
    m_k: object
    tolerance: object
    c21: object
    c22: object
    c23: object

    @property
    def ok(self):
        return max(self.c21, self.c22, self.c23) <= self.tolerance


@dataclass(frozen=True)
class PartitionResult:
    n: tuple
    m: tuple
    partition: Partition
    rings: tuple
    certificates: tuple
    K: object
    epsilon: object
    p: object
    fns: tuple = field(repr=False)

    def verify(self):
        """Re-evaluate every certificate; True iff all values reproduce
        exactly and satisfy their tolerances."""
        for cert, ring in zip(self.certificates, self.rings):
            again = _certificate(self.fns, self.n, self.m, cert.k, ring, self.K,
                                 self.epsilon, self.p)
            if again != cert or not cert.ok:
                return False
        return True


def _c21(fns, n_k, m_prev, K, p):
    if m_prev == 0:
        return Fraction(0) if p == 1 else 0.0
    s = sum((_norm(restrict(f, (-m_prev, m_prev)), p) for f in fns[n_k:]),
            Fraction(0) if p == 1 else 0.0)
    return K * s


def _c22(fns, n_k, m_k, K, p):
    s = sum((_norm(_outside(f, m_k), p) for f in fns[:n_k]), Fraction(0) if p == 1 else 0.0)
    return K * s


def _certificate(fns, n, m, k, ring, K, eps, p):
    i = k - 1
    m_prev = m[i - 1] if i > 0 else 0
    n_next = n[i + 1] if i + 1 < len(n) else len(fns)
    tol = eps / 2 ** k
    c23, _ = _residual(fns[:n_next], ring, p)
    return PartitionCertificate(k, n[i], m[i], tol, _c21(fns, n[i], m_prev, K, p),
                                _c22(fns, n[i], m[i], K, p), K * c23)


def build_partition(duals, epsilon, max_m=4096):
    """Choose ``n_1 < n_2 < ...``, ``m_1 < m_2 < ...`` and ring partitions.

    ``n_1 = 1``; each ``m_k`` is the least integer above ``m_{k-1}`` with
    ``c22_k <= eps 2^-k`` (the last one also covers every support, so the
    window holds the whole span); each later ``n_k`` is the least index
    above ``n_{k-1}`` with ``c21_k <= eps 2^-k``.  Rings start from integer
    cells; cells with a nonzero averaging residual are bisected until
    ``c23_k <= eps 2^-k``.

    Returns a :class:`PartitionResult` whose certificates are exact
    rationals for ``p = 1``.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    fns = list(duals.fns)
    p = duals.p
    N = len(fns)
    K = duals.K
    if p == 1:
        eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    else:
        eps = float(epsilon)
    reach = max(max(abs(f.breakpoints[0]), abs(f.breakpoints[-1])) for f in fns)
    reach = math.ceil(reach)
    n_list, m_list = [], []
    k = 0
    while True:
        k += 1
        tol = eps / 2 ** k
        if k == 1:
            n_k = 1
        else:
            n_k = n_list[-1] + 1
            while n_k < N and _c21(fns, n_k, m_list[-1], K, p) > tol:
                n_k += 1
        m_k = (m_list[-1] + 1) if m_list else 1
        if n_k == N:
            m_k = max(m_k, reach)
        else:
            while _c22(fns, n_k, m_k, K, p) > tol:
                m_k += 1
                if m_k > max_m:
                    raise ValueError("mass does not concentrate on windows up to "
                                     f"[-{max_m}, {max_m}]")
        n_list.append(n_k)
        m_list.append(m_k)
        if n_k == N:
            break
    rings = []
    for k in range(1, len(n_list) + 1):
        i = k - 1
        m_prev = m_list[i - 1] if i > 0 else 0
        n_next = n_list[i + 1] if i + 1 < len(n_list) else N
        tol = eps / 2 ** k
        cells = []
        for lo, hi in _ring(m_prev, m_list[i]):
            cells += [(Fraction(x), Fraction(x + 1)) for x in range(lo, hi)]
        for _ in range(MAX_BISECTIONS + 1):
            res, dirty = _residual(fns[:n_next], cells, p)
            if K * res <= tol:
                break
            new = []
            for idx, (lo, hi) in enumerate(cells):
                if idx in dirty:
                    mid = (lo + hi) / 2
                    new += [(lo, mid), (mid, hi)]
                else:
                    new.append((lo, hi))
            cells = new
        else:
            raise ValueError(f"ring {k} did not reach tolerance after {MAX_BISECTIONS} bisections")
        rings.append(tuple(cells))
    all_cells = sorted(c for ring in rings for c in ring)
    part = Partition(all_cells)
    certs = tuple(_certificate(fns, n_list, m_list, k, rings[k - 1], K, eps, p)
                  for k in range(1, len(n_list) + 1))
    return PartitionResult(tuple(n_list), tuple(m_list), part, tuple(rings), certs, K,
                           eps, p, tuple(fns))


# --------------------------------------------------------------------------
# distortion

@dataclass(frozen=True)
class EmbeddingReport:
    partition: Partition
    epsilon: object
    p: object
    ratios: tuple
    restriction_c: object
    restriction_ratios: tuple
    frame_constant: float

    @property
    def min_ratio(self):
        return min(r for _, r in self.ratios)

    @property
    def max_ratio(self):
        return max(r for _, r in self.ratios)

    @property
    def lower_target(self):
        return 1.0 - 8.0 * self.frame_constant * float(self.epsilon)

    @property
    def min_restriction_ratio(self):
        return min(r for _, r in self.restriction_ratios) if self.restriction_ratios else None

    def as_dict(self):
        return {
            "partition": [format_rational(x) for x in self.partition.breakpoints],
            "epsilon": format_rational(self.epsilon) if isinstance(self.epsilon, Fraction)
            else self.epsilon,
            "p": format_rational(self.p),
            "ratios": [[i, format_rational(r)] for i, r in self.ratios],
            "min_ratio": format_rational(self.min_ratio),
            "max_ratio": format_rational(self.max_ratio),
            "frame_constant": self.frame_constant,
            "lower_target": self.lower_target,
            "restriction_c": format_rational(self.restriction_c)
            if self.restriction_c is not None else None,
            "min_restriction_ratio": None if self.min_restriction_ratio is None
            else format_rational(self.min_restriction_ratio),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


def _sample_coeffs(rng, n):
    return [Fraction(int(v), 100) for v in rng.integers(-100, 101, size=n)]


def _ratio(num, den, p):
    if isinstance(num, Fraction) and isinstance(den, Fraction) and p == 1:
        return num / den
    return (float(num) / float(den)) ** (1.0 / float(p))


def distortion_report(fns, part, p, epsilon, trials=100, seed=0, frame_constant=1.0,
                      restriction_c=None):
    """``||Tf|| / ||f||`` for ``trials`` seeded vectors of the span.

    Coefficients are multiples of 1/100 in ``[-1, 1]`` drawn with
    ``default_rng([seed, t])``; zero combinations are skipped.  With
    ``restriction_c`` also records ``||f on [-c, c]|| / ||f||``.
    """
    fns = list(fns)
    p = check_p(p)
    ratios, rratios = [], []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        f = lin_comb(_sample_coeffs(rng, len(fns)), fns)
        den = lp_norm_p(f, p)
        if den == 0:
            continue
        num = coords_pnorm_p(embed_coords(f, part, p), p)
        ratios.append((t, _ratio(num, den, p)))
        if restriction_c is not None:
            c = Fraction(restriction_c)
            rratios.append((t, _ratio(lp_norm_p(restrict(f, (-c, c)), p), den, p)))
    if not ratios:
        raise ValueError("every sampled combination vanished")
    return EmbeddingReport(part, epsilon, p, tuple(ratios), restriction_c, tuple(rratios),
                           float(frame_constant))


def lower_lq_constant(duals):
    """``(sum_i ||g_i||_q^q)^{1/q}`` (``max_i ||g_i||_inf`` for p = 1), an
    upper bound for ``(sum_i |g_i(f)|^q)^{1/q} / ||f||_p``."""
    p = duals.p
    if p == 1:
        return duals.K
    q = float(p) / (float(p) - 1.0)
    return math.fsum(float(x) ** q for x in duals.norms_q) ** (1.0 / q)


def tail_certificate(duals, f, n, interval):
    """Residual ``||sum_{i>=n} g_i(f) f_i on I||_p`` against the bound
    ``K ||f||_p (sum_{i>=n} ||f_i on I||_p^p)^{1/p}``.  ``n`` is 1-based.
    Returns ``(residual, bound)`` as floats."""
    p = duals.p
    iv = interval if isinstance(interval, Interval) else Interval(*interval)
    fns = list(duals.fns)
    coeffs = duals.coefficients(f)
    tail = lin_comb(coeffs[n - 1:], fns[n - 1:]) if n <= len(fns) else StepFunction()
    residual = float(lp_norm_p(restrict(tail, iv), p)) ** (1.0 / float(p))
    mass = sum(float(lp_norm_p(restrict(g, iv), p)) for g in fns[n - 1:])
    bound = float(lower_lq_constant(duals)) * float(lp_norm_p(f, p)) ** (1.0 / float(p)) \
        * mass ** (1.0 / float(p))
    return residual, bound
