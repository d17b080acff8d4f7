"""Intersection arrays of distance-regular graphs.

An array {b_0,...,b_{D-1}; c_1,...,c_D} is completed with the derived
quantities a_i = b_0 - b_i - c_i, the subconstituent sizes k_i and the
vertex count v, all kept as exact rationals so that non-integrality is
a reportable verdict instead of a rounding accident.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class InvalidArray(ValueError):
    """The given b/c sequences cannot form an intersection array at all."""

    def __init__(self, tag: str, detail: str):
        super().__init__(f"{tag}: {detail}")
        self.tag = tag
        self.detail = detail


@dataclass(frozen=True)
class Verdict:
    """Outcome of a feasibility check: passed iff no violations.

    ``violations`` holds (condition-tag, witness) pairs for definite
    failures; ``notes`` holds non-fatal observations (e.g. interval checks
    that could not decide) and does not affect ``passed``.
    """

    passed: bool
    violations: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        assert self.passed == (len(self.violations) == 0)

    @staticmethod
    def ok(notes: Iterable = ()) -> "Verdict":
        return Verdict(True, (), tuple(notes))

    @staticmethod
    def fail(violations: Iterable, notes: Iterable = ()) -> "Verdict":
        vs = tuple(violations)
        return Verdict(len(vs) == 0, vs, tuple(notes))


@dataclass(frozen=True)
class IntersectionArray:
    """Immutable intersection array with exact derived data.

    Index conventions follow the usual ones: b_D = 0 and c_0 = 0, a_i is
    defined for 0 <= i <= D, k_i for 0 <= i <= D.
    """

    b: tuple[int, ...]
    c: tuple[int, ...]
    a: tuple[int, ...] = field(compare=False)
    k_seq: tuple[Fraction, ...] = field(compare=False)
    v: Fraction = field(compare=False)

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def bi(self, i: int) -> int:
        """b_i with the convention b_D = 0."""
        return self.b[i] if i < self.D else 0

    def ci(self, i: int) -> int:
        """c_i with the convention c_0 = 0."""
        return self.c[i - 1] if i >= 1 else 0

    def ai(self, i: int) -> int:
        return self.a[i]

    def __str__(self) -> str:
        bs = ",".join(str(x) for x in self.b)
        cs = ",".join(str(x) for x in self.c)
        return "{%s;%s}" % (bs, cs)

    def to_json(self) -> str:
        return json.dumps({"b": list(self.b), "c": list(self.c)})


def complete_array(b: Sequence[int], c: Sequence[int]) -> IntersectionArray:
    """Build an IntersectionArray from its b- and c-sequences.

    Rejects inputs that are structurally malformed (length mismatch,
    entries < 1, or some a_i < 0); everything else, including arrays that
    will later fail feasibility, is constructible.
    """
    b = tuple(int(x) for x in b)
    c = tuple(int(x) for x in c)
    if len(b) != len(c) or len(b) < 1:
        raise InvalidArray("length", f"need len(b) == len(c) >= 1, got {len(b)} and {len(c)}")
    D = len(b)
    for i, x in enumerate(b):
        if x < 1:
            raise InvalidArray("nonpositive entry", f"b_{i} = {x}")
    for i, x in enumerate(c, start=1):
        if x < 1:
            raise InvalidArray("nonpositive entry", f"c_{i} = {x}")

    k = b[0]
    a = [0]
    for i in range(1, D + 1):
        bi = b[i] if i < D else 0
        ai = k - bi - c[i - 1]
        if ai < 0:
            raise InvalidArray("negative a_i", f"a_{i} = {ai}")
        a.append(ai)

    k_seq = [Fraction(1)]
    for i in range(1, D + 1):
        k_seq.append(k_seq[-1] * b[i - 1] / c[i - 1])
    v = sum(k_seq, Fraction(0))
    return IntersectionArray(b=b, c=c, a=tuple(a), k_seq=tuple(k_seq), v=v)


def basic_feasibility(arr: IntersectionArray) -> Verdict:
    """Elementary feasibility conditions on an intersection array.

    Checks c_1 = 1 and c non-decreasing, b non-increasing, integrality of
    every k_i, plus c_i <= b_0 and a_i >= 0.  Multiplicity integrality is
    deliberately not checked here (see the spectral module).
    """
    bad = []
    if arr.c[0] != 1:
        bad.append(("c1 = 1", (1, arr.c[0])))
    for i in range(2, arr.D + 1):
        if arr.ci(i) < arr.ci(i - 1):
            bad.append(("c non-decreasing", (i, arr.ci(i))))
    for i in range(1, arr.D):
        if arr.b[i] > arr.b[i - 1]:
            bad.append(("b non-increasing", (i, arr.b[i])))
    for i in range(1, arr.D + 1):
        if arr.k_seq[i].denominator != 1:
            bad.append(("k_i integral", (i, arr.k_seq[i])))
    for i in range(1, arr.D + 1):
        if arr.ci(i) > arr.k:
            bad.append(("c_i <= b_0", (i, arr.ci(i))))
    for i in range(arr.D + 1):
        if arr.a[i] < 0:
            bad.append(("a_i >= 0", (i, arr.a[i])))
    return Verdict.fail(bad)


def array_from_json(text: str | dict) -> IntersectionArray:
    """Parse the {"b": [...], "c": [...]} exchange format."""
    obj = json.loads(text) if isinstance(text, str) else text
    if not isinstance(obj, dict) or "b" not in obj or "c" not in obj:
        raise InvalidArray("json", 'expected an object with "b" and "c" lists')
    return complete_array(obj["b"], obj["c"])
