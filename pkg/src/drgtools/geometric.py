"""Clique-geometry machinery for intersection arrays.

An array is treated as a geometric candidate when its smallest
eigenvalue is exactly -k/(a_1+1), so that Delsarte cliques have size
a_1+2.  From the standard sequence at that eigenvalue we derive the
gamma sequence, the near-polygon test, the F/C inner-product data with
its discriminant S, and the two dual-polar classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .params import IntersectionArray
from .spectral import char_poly, n_roots_below, poly_eval, standard_sequence


class NotGeometric(ValueError):
    """The array cannot belong to a geometric DRG in the a_1+2-clique sense."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NonIntegralGamma(NotGeometric):
    def __init__(self, index: int, value: Fraction):
        super().__init__(f"gamma_{index} = {value} is not an integer")
        self.index = index


class GammaOutOfRange(NotGeometric):
    def __init__(self, index: int, value):
        super().__init__(f"gamma_{index} = {value} outside [1, a_1+1]")
        self.index = index


class MonotonicityViolation(NotGeometric):
    def __init__(self, index: int):
        super().__init__(f"gamma decreases at index {index}")
        self.index = index


@dataclass(frozen=True)
class GeometricProfile:
    a1: int
    clique_size: int
    theta_min: Fraction
    gamma: tuple[int, ...]
    near_polygon: bool


def theta_min_target(arr: IntersectionArray) -> Fraction:
    return Fraction(-arr.k, arr.a[1] + 1)


def _require_theta_min(arr: IntersectionArray) -> Fraction:
    """Verify that -k/(a_1+1) is the smallest eigenvalue, exactly."""
    t = theta_min_target(arr)
    p = char_poly(arr)
    # a monic integer polynomial has no non-integer rational roots
    if t.denominator != 1 or poly_eval(p, t) != 0:
        raise NotGeometric(f"-k/(a_1+1) = {t} is not an eigenvalue")
    if n_roots_below(arr, t) > 0:
        raise NotGeometric(f"eigenvalues exist below -k/(a_1+1) = {t}")
    return t


def gamma_profile(arr: IntersectionArray) -> tuple[int, ...]:
    """Gamma sequence from the standard sequence at theta_min.

    Solves gamma_i*u_i + (a_1+2-gamma_i)*u_{i+1} = 0, i.e.
    gamma_i = (a_1+2)*u_{i+1}/(u_{i+1}-u_i), and validates integrality,
    the range [1, a_1+1] and monotonicity.
    """
    t = theta_min_target(arr)
    seq = standard_sequence(arr, t)
    if not seq.is_eigenvalue:
        raise NotGeometric(f"-k/(a_1+1) = {t} is not an eigenvalue")
    a1 = arr.a[1]
    gam = []
    for i in range(arr.D):
        denom = seq.u[i + 1] - seq.u[i]
        if denom == 0:
            raise NotGeometric(f"gamma_{i} undefined: u_{i} = u_{i+1}")
        g = (a1 + 2) * seq.u[i + 1] / denom
        if g.denominator != 1:
            raise NonIntegralGamma(i, g)
        g = int(g)
        if not 1 <= g <= a1 + 1:
            raise GammaOutOfRange(i, g)
        if gam and g < gam[-1]:
            raise MonotonicityViolation(i)
        gam.append(g)
    return tuple(gam)


def geometric_candidate(arr: IntersectionArray) -> GeometricProfile:
    """Profile of an array whose smallest eigenvalue is -k/(a_1+1).

    Raises NotGeometric when that spectral condition fails or when the
    gamma sequence is not a valid one.
    """
    t = _require_theta_min(arr)
    gamma = gamma_profile(arr)
    a1 = arr.a[1]
    near = gamma[-1] == 1
    return GeometricProfile(a1=a1, clique_size=a1 + 2, theta_min=t,
                            gamma=gamma, near_polygon=near)


def near_polygon_check(arr: IntersectionArray) -> bool:
    """True iff a_i = c_i*a_1 for all i; cross-checked against gamma_{D-1}=1."""
    profile = geometric_candidate(arr)
    by_array = all(arr.a[i] == arr.ci(i) * profile.a1 for i in range(1, arr.D + 1))
    by_gamma = profile.gamma[-1] == 1
    if by_array != by_gamma:
        raise RuntimeError(
            f"near-polygon tests disagree on {arr}: a_i rule {by_array}, gamma rule {by_gamma}")
    return by_array


def verify_gamma_identity(arr: IntersectionArray, gamma=None) -> bool:
    """Exact check of the intersection-number identity tying a_i to gamma."""
    if gamma is None:
        gamma = gamma_profile(arr)
    a1 = arr.a[1]
    for i in range(1, arr.D):
        lhs = Fraction(arr.a[i])
        rhs = (Fraction(arr.ci(i)) * (a1 + 1 - gamma[i - 1]) / gamma[i - 1]
               + Fraction(arr.b[i]) * (gamma[i] - 1) / (a1 + 1 - (gamma[i] - 1)))
        if lhs != rhs:
            return False
    last = Fraction(arr.ci(arr.D)) * (a1 + 1 - gamma[arr.D - 1]) / gamma[arr.D - 1]
    return Fraction(arr.a[arr.D]) == last


@dataclass(frozen=True)
class GramData:
    """Inner products of the edge-difference vectors at distance j.

    FF = <F_j,F_j> and CF = <C_j,F_j> are always defined; CC and the
    discriminant S = CC*FF - CF^2 require gamma_{j-1} = 1; t_j is the
    linear-dependency ratio, defined when u_0 != u_j.  S may be negative:
    a negative value witnesses parameter infeasibility and is never
    clamped.
    """

    j: int
    FF: Fraction
    CF: Fraction
    CC: Fraction | None
    S: Fraction | None
    t_j: Fraction | None


def gram_data(arr: IntersectionArray, j: int) -> GramData:
    if not 2 <= j <= arr.D:
        raise ValueError(f"need 2 <= j <= D = {arr.D}, got j = {j}")
    profile = geometric_candidate(arr)
    u = standard_sequence(arr, profile.theta_min).u
    cj = Fraction(arr.ci(j))
    ff = 2 * (u[0] - u[j])
    cf = 2 * cj * (u[1] - u[j - 1])
    cc = s = None
    if profile.gamma[j - 1] == 1:
        cjm1 = arr.ci(j - 1)
        cc = 2 * cj * ((u[0] + (cj - 1) * u[2])
                       - (cjm1 * u[j - 2] + (cj - cjm1) * u[j]))
        s = cc * ff - cf * cf
    tj = cj * (u[1] - u[j - 1]) / (u[0] - u[j]) if u[0] != u[j] else None
    return GramData(j=j, FF=ff, CF=cf, CC=cc, S=s, t_j=tj)


def s_closed_form(j: int, a1: int, c2: int | None = None,
                  c3: int | None = None, c4: int | None = None) -> Fraction:
    """Closed form of the discriminant S_j for j in {3, 4}.

    j=3 uses (a1, c2, c3); j=4 uses (a1, c3, c4).  Agrees exactly with
    gram_data(...).S whenever the latter is defined.
    """
    if j == 3:
        if c2 is None or c3 is None:
            raise ValueError("j=3 needs a1, c2, c3")
        lead = Fraction(4 * (a1 + 2) ** 2 * a1 * c3, (a1 + 1) ** 6)
        return lead * ((a1 * a1 + a1 + 1) * (a1 + c2 + 1) - c3)
    if j == 4:
        if c3 is None or c4 is None:
            raise ValueError("j=4 needs a1, c3, c4")
        lead = Fraction(4 * (a1 + 2) ** 2 * a1 * a1 * c4, (a1 + 1) ** 8)
        return lead * (c4 - (a1 * a1 + 2 * a1 + 2) * (c3 - (a1 + 1) ** 2))
    raise ValueError("closed form available for j in {3, 4} only")


def propagate_standard_sequence(u_prefix, D: int) -> tuple[Fraction, ...]:
    """Extend u_0..u_j to u_0..u_D by the linear-dependency recurrence.

    Branches on u_1 = u_{j-1}: the periodic rule u_{i+1} = u_{i-j+3}, or
    the ratio rule u_{i+1} = (u_i - u_{i-j+2})*(u_0 - u_j)/(u_1 - u_{j-1})
    + u_{i-j+1}.  Requires u_0 != u_j.
    """
    u = [Fraction(x) for x in u_prefix]
    j = len(u) - 1
    if j < 3:
        raise ValueError("need a prefix u_0..u_j with j >= 3")
    if D < j:
        raise ValueError("D must be at least the prefix length")
    if u[0] == u[j]:
        raise ValueError("u_0 = u_j: recurrence undefined")
    periodic = u[1] == u[j - 1]
    if not periodic:
        ratio = (u[0] - u[j]) / (u[1] - u[j - 1])
    for i in range(j, D):
        if periodic:
            u.append(u[i - j + 3])
        else:
            u.append((u[i] - u[i - j + 2]) * ratio + u[i - j + 1])
    return tuple(u)


class DualPolarClass(Enum):
    TWO_A = "2A"
    B_OR_C = "B/C"
    NO_MATCH = "no-match"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class ConditionRecord:
    name: str
    expected: str
    actual: str
    ok: bool

    def to_jsonable(self) -> dict:
        return {"name": self.name, "expected": self.expected,
                "actual": self.actual, "ok": self.ok}


@dataclass(frozen=True)
class ClassifyResult:
    outcome: DualPolarClass
    trace: tuple[ConditionRecord, ...]
    reason: str = ""

    def to_jsonable(self) -> dict:
        return {"outcome": self.outcome.value, "reason": self.reason,
                "trace": [r.to_jsonable() for r in self.trace]}


def _preconditions(arr: IntersectionArray):
    """Shared preconditions of both classifiers; returns profile or a reason."""
    if arr.D < 4:
        return None, f"diameter {arr.D} < 4"
    if arr.ci(2) == 1:
        return None, "c_2 = 1"
    if all(x == 0 for x in arr.a):
        return None, "bipartite array (all a_i = 0)"
    try:
        return geometric_candidate(arr), ""
    except NotGeometric as exc:
        return None, f"not geometric: {exc.reason}"


def theorem1_classify(arr: IntersectionArray, *, printed_form: bool = False) -> ClassifyResult:
    """Equality-form dual polar classifier.

    The local-clique hypothesis is a_i = c_i*a_1; with printed_form=True
    the variant a_i = c_i*(a_1+1) is used instead, which rejects every
    dual polar array and is retained purely for regression documentation.
    """
    profile, reason = _preconditions(arr)
    if profile is None:
        return ClassifyResult(DualPolarClass.NOT_APPLICABLE, (), reason)
    a1 = profile.a1
    mult = (a1 + 1) if printed_form else a1
    c2, c3 = arr.ci(2), arr.ci(3)
    trace = []

    def record(name, expected, actual):
        ok = expected == actual
        trace.append(ConditionRecord(name, str(expected), str(actual), ok))
        return ok

    local2 = [record(f"a_{i} = c_{i}*{mult}", arr.ci(i) * mult, arr.a[i])
              for i in (1, 2)]
    c3_eq = record("c_3 = (a_1^2+a_1+1)(a_1+c_2+1)",
                   (a1 * a1 + a1 + 1) * (a1 + c2 + 1), c3)
    if all(local2) and c3_eq:
        return ClassifyResult(DualPolarClass.TWO_A, tuple(trace))

    a3_ok = record(f"a_3 = c_3*{mult}", c3 * mult, arr.a[3])
    c4_eq = record("c_4 = (a_1^2+2a_1+2)(c_3-(a_1+1)^2)",
                   (a1 * a1 + 2 * a1 + 2) * (c3 - (a1 + 1) ** 2), arr.ci(4))
    if all(local2) and a3_ok and c4_eq:
        return ClassifyResult(DualPolarClass.B_OR_C, tuple(trace))
    return ClassifyResult(DualPolarClass.NO_MATCH, tuple(trace))


def corollary1_classify(arr: IntersectionArray) -> ClassifyResult:
    """Inequality-form dual polar classifier, driven by the gamma sequence."""
    profile, reason = _preconditions(arr)
    if profile is None:
        return ClassifyResult(DualPolarClass.NOT_APPLICABLE, (), reason)
    a1 = profile.a1
    c2, c3, c4 = arr.ci(2), arr.ci(3), arr.ci(4)
    trace = []

    def record(name, expected, actual, ok):
        trace.append(ConditionRecord(name, str(expected), str(actual), ok))
        return ok

    # sanity bound, reported but never a decider
    record("c_3 >= c_2^2-c_2+1 (sanity)", f">= {c2 * c2 - c2 + 1}", str(c3),
           c3 >= c2 * c2 - c2 + 1)

    g2 = record("gamma_2 = 1", 1, profile.gamma[2], profile.gamma[2] == 1)
    big_c2 = record("c_2 >= (a_1+1)^2+1", f">= {(a1 + 1) ** 2 + 1}", str(c2),
                    c2 >= (a1 + 1) ** 2 + 1)
    if g2 and big_c2:
        return ClassifyResult(DualPolarClass.TWO_A, tuple(trace))

    g3 = record("gamma_3 = 1", 1, profile.gamma[3], profile.gamma[3] == 1)
    low_c2 = record("c_2 >= a_1+2", f">= {a1 + 2}", str(c2), c2 >= a1 + 2)
    cap_c4 = record("c_4 <= (a_1+2)(a_1^2+2a_1+2)",
                    f"<= {(a1 + 2) * (a1 * a1 + 2 * a1 + 2)}", str(c4),
                    c4 <= (a1 + 2) * (a1 * a1 + 2 * a1 + 2))
    if g3 and low_c2 and cap_c4:
        return ClassifyResult(DualPolarClass.B_OR_C, tuple(trace))
    return ClassifyResult(DualPolarClass.NO_MATCH, tuple(trace))
