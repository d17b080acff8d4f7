"""Intersection-array generators for the named graph families.

Dual polar graphs are parametrized by (q, e, D) with
c_i = (q^i-1)/(q-1) and b_i = q^(i+e)*(q^(D-i)-1)/(q-1); the named
wrappers fix e.  The exponent e is kept as an exact rational so that a
half-integer e structurally forces q to be a square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .params import IntersectionArray, complete_array
from .spectral import char_poly, count_roots_upto

FAMILY_NAMES = ("dual_polar", "hamming", "johnson", "odd", "folded_cube",
                "witt_m24", "sporadic_27")


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = None
    n = q
    for cand in range(2, math.isqrt(q) + 1):
        if n % cand == 0:
            p = cand
            break
    if p is None:
        return True  # q itself is prime
    while n % p == 0:
        n //= p
    return n == 1


def dual_polar_array(q: int, e, D: int) -> IntersectionArray:
    """Dual polar array for exponent e in {0, 1/2, 1, 3/2, 2}."""
    e = Fraction(e)
    if e not in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)):
        raise ValueError(f"unsupported exponent e = {e}")
    if not is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    if D < 1:
        raise ValueError("D must be >= 1")
    if e.denominator == 2:
        r = math.isqrt(q)
        if r * r != q:
            raise ValueError(f"half-integer e = {e} requires square q, got {q}")

    def q_pow(exp: Fraction) -> int:
        if exp.denominator == 1:
            return q ** int(exp)
        return math.isqrt(q) ** int(2 * exp)

    gauss = [ (q ** i - 1) // (q - 1) for i in range(D + 1) ]
    b = tuple(q_pow(i + e) * gauss[D - i] for i in range(D))
    c = tuple(gauss[i] for i in range(1, D + 1))
    return complete_array(b, c)


def two_a_array(r: int, D: int) -> IntersectionArray:
    """Hermitian dual polar array on a 2D-dimensional space over GF(r^2)."""
    return dual_polar_array(r * r, Fraction(1, 2), D)


def b_array(q: int, D: int) -> IntersectionArray:
    """Symplectic/orthogonal dual polar array (the B and C series coincide)."""
    return dual_polar_array(q, 1, D)


def d_array(q: int, D: int) -> IntersectionArray:
    return dual_polar_array(q, 0, D)


def two_d_array(q: int, D: int) -> IntersectionArray:
    return dual_polar_array(q, 2, D)


def hamming_array(D: int, q: int) -> IntersectionArray:
    if D < 1 or q < 2:
        raise ValueError("need D >= 1 and q >= 2")
    b = tuple((D - i) * (q - 1) for i in range(D))
    c = tuple(range(1, D + 1))
    return complete_array(b, c)


def johnson_array(n: int, d: int) -> IntersectionArray:
    if d < 1 or n < 2 * d:
        raise ValueError("need 1 <= d <= n/2")
    b = tuple((d - i) * (n - d - i) for i in range(d))
    c = tuple(i * i for i in range(1, d + 1))
    return complete_array(b, c)


def odd_graph_array(k: int) -> IntersectionArray:
    """Array of the odd graph O_k: (k-1)-subsets of a (2k-1)-set."""
    if k < 3:
        raise ValueError("need k >= 3")
    D = k - 1
    b = tuple(k - (i + 1) // 2 for i in range(D))
    c = tuple((i + 1) // 2 for i in range(1, D + 1))
    return complete_array(b, c)


def folded_cube_array(m: int) -> IntersectionArray:
    """Array of the folded m-cube for odd m = 2D+1."""
    if m < 5 or m % 2 == 0:
        raise ValueError("need odd m >= 5")
    D = (m - 1) // 2
    b = tuple(m - i for i in range(D))
    c = tuple(list(range(1, D)) + [D])
    return complete_array(b, c)


def witt_m24_array() -> IntersectionArray:
    return complete_array((30, 28, 24), (1, 3, 15))


def sporadic_27_array() -> IntersectionArray:
    return complete_array((8, 6, 1), (1, 3, 8))


def polygon_array(n: int) -> IntersectionArray:
    """Array of the n-gon C_n."""
    if n < 3:
        raise ValueError("need n >= 3")
    D = n // 2
    b = (2,) + (1,) * (D - 1)
    c = (1,) * (D - 1) + ((1,) if n % 2 else (2,))
    return complete_array(b, c)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    @staticmethod
    def of(family: str, **params) -> "FamilySpec":
        return FamilySpec(family, tuple(sorted(params.items())))

    def as_dict(self) -> dict:
        return dict(self.params)


def family_array(spec: FamilySpec) -> IntersectionArray:
    """Dispatch a FamilySpec to its generator."""
    p = spec.as_dict()
    match spec.family:
        case "dual_polar":
            return dual_polar_array(p["q"], p["e"], p["D"])
        case "hamming":
            return hamming_array(p["D"], p["q"])
        case "johnson":
            return johnson_array(p["n"], p["d"])
        case "odd":
            return odd_graph_array(p["k"])
        case "folded_cube":
            return folded_cube_array(p["m"])
        case "witt_m24":
            return witt_m24_array()
        case "sporadic_27":
            return sporadic_27_array()
    raise ValueError(f"unknown family {spec.family!r}; known: {FAMILY_NAMES}")


@dataclass(frozen=True)
class Membership:
    clause: int
    label: str
    theta_min_ok: bool


def _theta_min_at_most(arr: IntersectionArray, bound: Fraction) -> bool:
    """Exact test for theta_min <= bound via a Sturm root count."""
    return count_roots_upto(char_poly(arr), Fraction(bound)) >= 1


def conjecture_membership(arr: IntersectionArray) -> Membership | None:
    """Match an array against the conjectured list of graphs with
    smallest eigenvalue at most -k/2; verifies that bound on a match."""
    D = arr.D
    candidates = []
    if arr.b == (2,) + (1,) * (D - 1) and arr.c == (1,) * D:
        candidates.append((1, f"odd polygon C_{2 * D + 1}"))
    if D >= 2:
        folded = folded_cube_array(2 * D + 1)
        if (arr.b, arr.c) == (folded.b, folded.c):
            candidates.append((2, f"folded {2 * D + 1}-cube"))
    if arr.k >= 3 and D == arr.k - 1:
        odd = odd_graph_array(arr.k)
        if (arr.b, arr.c) == (odd.b, odd.c):
            candidates.append((3, f"odd graph O_{arr.k}"))
    ham = hamming_array(D, 3)
    if (arr.b, arr.c) == (ham.b, ham.c):
        candidates.append((4, f"Hamming H({D},3)"))
    twoa = two_a_array(2, D)
    if (arr.b, arr.c) == (twoa.b, twoa.c):
        candidates.append((5, f"dual polar 2A_{2 * D - 1}(2)"))
    bd = b_array(2, D)
    if (arr.b, arr.c) == (bd.b, bd.c):
        candidates.append((6, f"dual polar B_{D}(2)"))
    if not candidates:
        return None
    clause, label = min(candidates)
    ok = _theta_min_at_most(arr, Fraction(-arr.k, 2))
    return Membership(clause=clause, label=label, theta_min_ok=ok)
