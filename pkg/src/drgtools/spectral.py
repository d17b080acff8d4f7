"""Exact spectra of intersection arrays.

The tridiagonal intersection matrix has integer entries, so its
characteristic polynomial is computed exactly; rational eigenvalues are
recovered by divisor search (they are necessarily integers, the
polynomial being monic) and the remaining ones are certified by Sturm
isolation to disjoint rational intervals.  Multiplicities come from the
standard-sequence formula m = v / sum(k_i u_i^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intervals import Interval, interval_sum
from .params import IntersectionArray, Verdict

DEFAULT_WIDTH = Fraction(1, 10**9)


class CertificationError(RuntimeError):
    """Internal tolerance failure while certifying eigenvalue intervals."""


# ---------------------------------------------------------------------------
# polynomial helpers; coefficients ascending, exact (int or Fraction)


def poly_eval(p, x):
    acc = Interval.point(0) if isinstance(x, Interval) else 0 * x
    for coeff in reversed(p):
        acc = acc * x + coeff
    return acc


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_scale(p, s):
    return [coeff * s for coeff in p]


def _poly_deriv(p):
    return [i * coeff for i, coeff in enumerate(p)][1:]


def _poly_rem(p, q):
    r = [Fraction(x) for x in p]
    qq = [Fraction(x) for x in q]
    while r and len(r) >= len(qq):
        factor = r[-1] / qq[-1]
        shift = len(r) - len(qq)
        for i, coeff in enumerate(qq):
            r[shift + i] -= factor * coeff
        while r and r[-1] == 0:
            r.pop()
    return r


def _deflate(p, root: int):
    """Exact synthetic division by (x - root); root must be a root."""
    out = []
    acc = 0
    for coeff in reversed(p):
        acc = acc * root + coeff
        out.append(acc)
    if out[-1] != 0:
        raise ValueError(f"{root} is not a root")
    out.pop()
    return list(reversed(out))


def char_poly(arr: IntersectionArray) -> list[int]:
    """Characteristic polynomial det(xI - M) of the intersection matrix,
    by the three-term recurrence on leading principal minors."""
    f_prev = [1]
    f_cur = [-arr.a[0], 1]
    for i in range(1, arr.D + 1):
        nxt = _poly_sub(
            _poly_mul([-arr.a[i], 1], f_cur),
            _poly_scale(f_prev, arr.b[i - 1] * arr.ci(i)),
        )
        f_prev, f_cur = f_cur, nxt
    return [int(x) for x in f_cur]


# ---------------------------------------------------------------------------
# Sturm machinery


def _sturm_chain(p):
    chain = [[Fraction(x) for x in p]]
    d = _poly_deriv(chain[0])
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _variations(signs) -> int:
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def _variations_at(chain, x) -> int:
    signs = []
    for p in chain:
        val = poly_eval(p, x)
        if val != 0:
            signs.append(1 if val > 0 else -1)
    return _variations(signs)


def _variations_at_minus_inf(chain) -> int:
    signs = []
    for p in chain:
        s = 1 if p[-1] > 0 else -1
        if (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots_upto(p, x) -> int:
    """Number of distinct real roots of p in (-inf, x]."""
    chain = _sturm_chain(p)
    return _variations_at_minus_inf(chain) - _variations_at(chain, Fraction(x))


def n_roots_below(arr: IntersectionArray, x) -> int:
    """Distinct eigenvalues of the array strictly below x."""
    p = char_poly(arr)
    x = Fraction(x)
    n = count_roots_upto(p, x)
    return n - 1 if poly_eval(p, x) == 0 else n


def jacobi_count_below(a, b, c, x) -> tuple[int, bool]:
    """(eigenvalues strictly below x, whether x is an eigenvalue), from raw
    intersection numbers a_0..a_D, b_0..b_{D-1}, c_1..c_D.

    Evaluates the leading-principal-minor recurrence of the intersection
    matrix at x with scaled integer arithmetic; the minors form a Sturm
    sequence because the matrix is similar to a Jacobi matrix, so the
    sign changes count the eigenvalues above x.  Much cheaper than
    building the characteristic polynomial.
    """
    D = len(b)
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    h = [1, p - a[0] * q]
    for i in range(1, D + 1):
        h.append((p - a[i] * q) * h[-1] - q * q * b[i - 1] * c[i - 1] * h[-2])
    signs = [1 if v > 0 else -1 for v in h if v != 0]
    above = sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)
    is_eigen = h[-1] == 0
    below = (D + 1) - above - (1 if is_eigen else 0)
    return below, is_eigen


def eigen_count_below(arr: IntersectionArray, x) -> tuple[int, bool]:
    """(number of eigenvalues strictly below x, whether x is an eigenvalue)."""
    return jacobi_count_below(arr.a, arr.b, arr.c, x)


# ---------------------------------------------------------------------------
# root extraction


def _integer_roots(p, bound: int) -> tuple[list[int], list]:
    """Integer roots of monic p within [-bound, bound] via divisor search
    over the constant term, plus the deflated quotient polynomial."""
    roots = []
    q = list(p)
    if q[0] == 0:
        roots.append(0)
        q = q[1:]
    const = q[0]
    if const != 0:
        limit = min(bound, abs(const))
        for d in range(1, limit + 1):
            if const % d != 0:
                continue
            for cand in (d, -d):
                if poly_eval(q, cand) == 0:
                    roots.append(cand)
                    q = _deflate(q, cand)
    return sorted(roots, reverse=True), q


def _shrink_once(q, iv: Interval) -> Interval:
    mid = iv.mid
    fm = poly_eval(q, mid)
    if fm == 0:
        raise CertificationError("rational root survived deflation")
    fa = poly_eval(q, iv.lo)
    if (fa > 0) != (fm > 0):
        return Interval(iv.lo, mid)
    return Interval(mid, iv.hi)


def _isolate_roots(q, lo: Fraction, hi: Fraction, width: Fraction,
                   avoid: list[int]) -> list[Interval]:
    """Disjoint certified intervals around all real roots of squarefree q.

    Sturm-count bisection isolates; each interval is then refined until
    it is narrower than ``width`` and avoids the given rational points.
    """
    deg = len(q) - 1
    if deg <= 0:
        return []
    chain = _sturm_chain(q)

    def nroots(a, b):
        return _variations_at(chain, a) - _variations_at(chain, b)

    work = [(lo, hi, nroots(lo, hi))]
    segments = []
    for _ in range(100000):
        if not work:
            break
        a, b, n = work.pop()
        if n == 0:
            continue
        if n == 1:
            segments.append(Interval(a, b))
            continue
        mid = (a + b) / 2
        while poly_eval(q, mid) == 0:
            mid = (a + mid) / 2
        left = nroots(a, mid)
        work.append((a, mid, left))
        work.append((mid, b, n - left))
    else:
        raise CertificationError("root isolation did not converge")
    if len(segments) != deg:
        raise CertificationError("lost track of real roots")

    out = []
    for iv in segments:
        for _ in range(400):
            if iv.width <= width and not any(iv.lo < r < iv.hi for r in avoid):
                break
            iv = _shrink_once(q, iv)
        else:
            raise CertificationError("interval refinement exhausted")
        out.append(iv)

    out.sort(key=lambda iv: iv.lo, reverse=True)
    for i in range(len(out) - 1):
        for _ in range(400):
            if out[i + 1].hi < out[i].lo:
                break
            wider = i if out[i].width >= out[i + 1].width else i + 1
            out[wider] = _shrink_once(q, out[wider])
        else:
            raise CertificationError("certified intervals overlap")
    return out


# ---------------------------------------------------------------------------
# public API


def intersection_matrix(arr: IntersectionArray) -> list[list[int]]:
    """The (D+1)x(D+1) tridiagonal matrix with rows (c_i, a_i, b_i)."""
    n = arr.D + 1
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = arr.a[i]
        if i > 0:
            m[i][i - 1] = arr.ci(i)
        if i < n - 1:
            m[i][i + 1] = arr.bi(i)
    return m


@dataclass(frozen=True)
class StandardSequence:
    """Cosine sequence (u_i) for a test value theta.

    Entries are exact rationals for rational theta, certified intervals
    for an Interval theta.  ``is_eigenvalue`` reports whether the terminal
    recurrence identity holds.
    """

    theta: object
    u: tuple
    is_eigenvalue: bool


def standard_sequence(arr: IntersectionArray, theta) -> StandardSequence:
    """Forward recurrence u_0 = 1, u_1 = theta/k, then the three-term rule."""
    interval = isinstance(theta, Interval)
    th = theta if interval else Fraction(theta)
    one = Interval.point(1) if interval else Fraction(1)
    u = [one, th / arr.k]
    for j in range(1, arr.D):
        u.append(((th - arr.a[j]) * u[j] - arr.ci(j) * u[j - 1]) / arr.b[j])
    residual = arr.ci(arr.D) * u[arr.D - 1] + (arr.a[arr.D] - th) * u[arr.D]
    ok = residual.contains(0) if interval else residual == 0
    return StandardSequence(theta=th, u=tuple(u), is_eigenvalue=ok)


def multiplicity(arr: IntersectionArray, theta) -> Fraction:
    """Exact multiplicity m(theta) = v / sum k_i u_i^2 for an eigenvalue."""
    seq = standard_sequence(arr, theta)
    if not seq.is_eigenvalue:
        raise ValueError(f"{theta} is not an eigenvalue of {arr}")
    denom = sum((k * u * u for k, u in zip(arr.k_seq, seq.u)), Fraction(0))
    return arr.v / denom


def _interval_multiplicity(arr: IntersectionArray, theta: Interval) -> Interval:
    seq = standard_sequence(arr, theta)
    denom = interval_sum(k * u.square() for k, u in zip(arr.k_seq, seq.u))
    return Interval.point(arr.v) / denom


@dataclass(frozen=True)
class SpectrumEntry:
    lo: Fraction
    hi: Fraction
    exact: bool
    mult_lo: Fraction
    mult_hi: Fraction

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError("eigenvalue only certified to an interval")
        return self.lo

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def mult(self) -> Fraction:
        return (self.mult_lo + self.mult_hi) / 2

    def value_str(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo}, {self.hi}]"

    def mult_str(self) -> str:
        if self.mult_lo == self.mult_hi:
            return str(self.mult_lo)
        return f"[{self.mult_lo}, {self.mult_hi}]"


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[SpectrumEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def theta_min(self) -> SpectrumEntry:
        return self.entries[-1]

    def to_jsonable(self) -> list[dict]:
        return [{"value": e.value_str(), "mult": e.mult_str()} for e in self.entries]


def spectrum(arr: IntersectionArray, width: Fraction = DEFAULT_WIDTH) -> Spectrum:
    """All D+1 eigenvalues with multiplicities, exact where rational."""
    p = char_poly(arr)
    int_roots, rest = _integer_roots(p, arr.k)
    ivs = _isolate_roots(rest, Fraction(-arr.k - 1), Fraction(arr.k + 1), width, int_roots)

    entries = []
    for r in int_roots:
        m = multiplicity(arr, r)
        entries.append(SpectrumEntry(Fraction(r), Fraction(r), True, m, m))
    for iv in ivs:
        m = _interval_multiplicity(arr, iv)
        entries.append(SpectrumEntry(iv.lo, iv.hi, False, m.lo, m.hi))
    entries.sort(key=lambda e: e.lo, reverse=True)
    if len(entries) != arr.D + 1:
        raise CertificationError("eigenvalue count mismatch")
    return Spectrum(entries=tuple(entries))


def multiplicities_integral(arr: IntersectionArray,
                            mult_tol: Fraction = Fraction(1, 10**6)) -> Verdict:
    """Check that every multiplicity is a positive integer.

    Exact for rational eigenvalues.  An interval eigenvalue is refined
    until its multiplicity interval is narrower than ``mult_tol``; a
    violation is reported only when the interval excludes all positive
    integers, and an interval that straddles one is recorded as an
    "indeterminate" note instead.
    """
    bad = []
    notes = []
    width = DEFAULT_WIDTH
    spec = spectrum(arr, width)
    for idx, e in enumerate(spec):
        if e.exact:
            if e.mult_lo.denominator != 1 or e.mult_lo <= 0:
                bad.append(("multiplicity integral", (str(e.lo), str(e.mult_lo))))
            continue
        lo, hi = e.mult_lo, e.mult_hi
        w = width
        while hi - lo > mult_tol and w > Fraction(1, 10**30):
            w /= 10**3
            refreshed = spectrum(arr, w).entries[idx]
            lo, hi = refreshed.mult_lo, refreshed.mult_hi
        if math.floor(hi) >= math.ceil(lo) and hi > 0:
            notes.append(("multiplicity indeterminate", (e.value_str(), f"[{lo}, {hi}]")))
        else:
            bad.append(("multiplicity integral", (e.value_str(), f"[{lo}, {hi}]")))
    return Verdict.fail(bad, notes)
