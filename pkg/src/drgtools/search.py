"""Exhaustive candidate search over the six (j, D) case templates.

Every case fixes a_1 = 1, c_2 = 3 and theta_min = -k/2 and derives the
intersection numbers from a handful of free parameters:

    a_i = c_i        (i <= j-1)   ->  b_i = k - 2c_i
    a_j = k/2                     ->  b_j = k/2 - c_j
    a_i = b_i        (i >= j+1)   ->  b_i = (k - c_i)/2,  c_D = k

with the antipodal identifications c_{D-i} = k - 2c_i when D = 2j.
Candidates are screened by a fixed ordered condition chain.  The
enumerator scans each free c_i over its monotone range and prunes a
whole subtree at the first failed prefix condition; prefix kills are
tallied in the verdict histogram, and only fully-assigned candidates
are materialized as reports.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .params import complete_array
from .spectral import jacobi_count_below, multiplicities_integral

CASE_LIST = ((3, 5), (4, 5), (3, 6), (4, 6), (4, 7), (4, 8))

# condition tags, in evaluation order
T_RANGE = "k range"
T_DIV = "case divisibility"
T_INT = "entries integral"
T_POS = "entries positive"
T_VALID = "array valid"
T_CND = "c non-decreasing"
T_BNI = "b non-increasing"
T_KI = "k_i integral"
T_STRICT = "c strict growth (i<=j)"
T_HIR = "extended: Hiraki bound"
T_L34 = "extended: S_j bound"
T_EIG = "theta=-k/2 eigenvalue"
T_MIN = "theta=-k/2 smallest"
T_MULT = "multiplicity integral"
SURVIVOR = "SURVIVOR"

CONDITION_ORDER = (T_RANGE, T_DIV, T_INT, T_POS, T_VALID, T_CND, T_BNI, T_KI,
                   T_STRICT, T_HIR, T_L34, T_EIG, T_MIN, T_MULT)


@dataclass(frozen=True)
class CaseTemplate:
    """Derivation rules and free parameters of one (j, D) case."""

    j: int
    D: int
    free_c: tuple[int, ...]   # indices of the free c_i, ascending

    @property
    def free_params(self) -> tuple[str, ...]:
        return ("k",) + tuple(f"c{i}" for i in self.free_c)

    @property
    def antipodal(self) -> bool:
        return self.D == 2 * self.j

    @property
    def k_cap(self) -> int:
        return 2 ** (2 * self.j + 1)

    def k_values(self):
        """(k, pinned c dict) pairs allowed by the case divisibility rules."""
        if self.j == 3:
            for k in range(2, self.k_cap + 1):
                if (k - 2) % 4 == 0:
                    yield k, {}
        else:
            for k in range(6, self.k_cap + 1):
                if (k - 6) % 8 == 0:
                    yield k, {3: 7}
                if (k - 6) % 24 == 0:
                    yield k, {3: 15}

    def divisibility_ok(self, k: int, c: dict[int, int]) -> bool:
        if self.j == 3:
            return (k - 2) % 4 == 0
        c3 = c.get(3)
        return (c3 == 7 and (k - 6) % 8 == 0) or (c3 == 15 and (k - 6) % 24 == 0)

    def c_sequence(self, k: int, cfree: dict[int, int]) -> list[Fraction]:
        """c_1..c_D as exact values (free entries from the assignment)."""
        c = {1: Fraction(1), 2: Fraction(3)}
        for i, val in cfree.items():
            c[i] = Fraction(val)
        if self.antipodal:
            for m in range(self.j + 1, self.D):
                c[m] = k - 2 * c[self.D - m]
        c[self.D] = Fraction(k)
        return [c[i] for i in range(1, self.D + 1)]

    def b_sequence(self, k: int, c: list[Fraction]) -> list[Fraction]:
        """b_0..b_{D-1} from the a_i pattern."""
        b = [Fraction(k)]
        for i in range(1, self.D):
            ci = c[i - 1]
            if i <= self.j - 1:
                b.append(k - 2 * ci)
            elif i == self.j:
                b.append(Fraction(k, 2) - ci)
            else:
                b.append(Fraction(k - ci, 2))
        return b

    def expected_u(self) -> list[Fraction]:
        """The forced standard sequence at -k/2: u_i = (-1/2)^min(i, 2j-i)."""
        return [Fraction(-1, 2) ** min(i, 2 * self.j - i) for i in range(self.D + 1)]


def case_template(j: int, D: int) -> CaseTemplate:
    if (j, D) not in CASE_LIST:
        raise ValueError(f"(j, D) = ({j}, {D}) is not one of the admissible cases {CASE_LIST}")
    free = list(range(3, min(j, D - 1) + 1))
    if D != 2 * j:
        free += list(range(j + 1, D))
    return CaseTemplate(j=j, D=D, free_c=tuple(free))


@dataclass(frozen=True)
class CandidateReport:
    j: int
    D: int
    k: int
    c_free: tuple[int, ...]
    verdict: str
    array: str = ""
    indeterminate: bool = False


def evaluate_candidate(tpl: CaseTemplate, k: int, c_free, mode: str = "strict") -> CandidateReport:
    """Run the full ordered condition chain on one parameter assignment.

    Usable on any assignment, including out-of-range probes; the verdict
    is the first failing condition tag, or SURVIVOR.  The whole chain up
    to the final multiplicity refinement is exact integer arithmetic.
    """
    if mode not in ("strict", "extended"):
        raise ValueError("mode must be strict or extended")
    c_free = tuple(int(x) for x in c_free)
    if len(c_free) != len(tpl.free_c):
        raise ValueError(f"case ({tpl.j},{tpl.D}) takes free values for c{tpl.free_c}")
    cfree = dict(zip(tpl.free_c, c_free))
    j, D = tpl.j, tpl.D

    def report(verdict, array="", indeterminate=False):
        return CandidateReport(j, D, k, c_free, verdict, array, indeterminate)

    if not 1 <= k <= tpl.k_cap:
        return report(T_RANGE)
    if not tpl.divisibility_ok(k, cfree):
        return report(T_DIV)

    cs = tpl.c_sequence(k, cfree)
    bs = tpl.b_sequence(k, cs)
    if any(x.denominator != 1 for x in cs + bs):
        return report(T_INT)
    c = [0] + [int(x) for x in cs]          # c[0] = 0 convention
    b = [int(x) for x in bs] + [0]          # b[D] = 0 convention
    arr_str = "{%s;%s}" % (",".join(map(str, b[:D])), ",".join(map(str, c[1:])))
    if any(x < 1 for x in b[:D]) or any(x < 1 for x in c[1:]):
        return report(T_POS)

    a = [k - b[i] - c[i] for i in range(D + 1)]
    if a[0] != 0 or any(x < 0 for x in a) or c[1] != 1:
        return report(T_VALID, arr_str)
    if any(c[i] < c[i - 1] for i in range(2, D + 1)):
        return report(T_CND, arr_str)
    if any(b[i] > b[i - 1] for i in range(1, D)):
        return report(T_BNI, arr_str)
    k_seq = [1]
    for i in range(1, D + 1):
        num = k_seq[-1] * b[i - 1]
        if num % c[i]:
            return report(T_KI, arr_str)
        k_seq.append(num // c[i])

    if any(c[i] < c[i - 1] + 1 for i in range(2, j + 1)):
        return report(T_STRICT, arr_str)

    if mode == "extended":
        # gamma_2 = 1 forces c_3 in [c_2^2-c_2+1, 15]; gamma_3 = 1 (j=4)
        # forces c_4 >= 5(c_3-4) via the closed form of S_4
        if c[3] < 7:
            return report(T_HIR, arr_str)
        if j == 3 and c[3] > 15:
            return report(T_L34, arr_str)
        if j == 4 and c[4] < 5 * (c[3] - 4):
            return report(T_L34, arr_str)

    # the forced standard sequence at -k/2, scaled: u_i * 2^(2j) with sign
    e = [min(i, 2 * j - i) for i in range(D + 1)]
    u_scaled = [(-1) ** e[i] * (1 << (2 * j - e[i])) for i in range(D + 1)]
    eig_ok = all(
        2 * c[i] * u_scaled[i - 1] + (2 * a[i] + k) * u_scaled[i]
        + 2 * b[i] * u_scaled[i + 1] == 0
        for i in range(1, D)
    ) and 2 * c[D] * u_scaled[D - 1] + (2 * a[D] + k) * u_scaled[D] == 0

    below, is_eigen = jacobi_count_below(a, b[:D], c[1:], Fraction(-k, 2))
    if not is_eigen or not eig_ok:
        return report(T_EIG, arr_str)
    if below > 0:
        return report(T_MIN, arr_str)

    # Biggs multiplicity of -k/2: m = v*4^j / sum k_i 4^(j - e_i), all integers
    v = sum(k_seq)
    weight = sum(k_seq[i] * (1 << (2 * (j - e[i]))) for i in range(D + 1))
    assert v <= weight  # hence m <= 4^j
    if (v << (2 * j)) % weight:
        return report(T_MULT, arr_str)
    arr = complete_array(b[:D], c[1:])
    full = multiplicities_integral(arr)
    if not full.passed:
        return report(T_MULT, arr_str)
    if full.notes:
        # escalate indeterminate interval verdicts before accepting a survivor
        full = multiplicities_integral(arr, mult_tol=Fraction(1, 10 ** 15))
        if not full.passed:
            return report(T_MULT, arr_str)
        if full.notes:
            return report(SURVIVOR, arr_str, indeterminate=True)
    return report(SURVIVOR, arr_str)


@dataclass
class CaseResult:
    j: int
    D: int
    mode: str
    verdicts: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)

    @property
    def examined(self) -> int:
        return sum(self.verdicts.values())

    @property
    def survivors(self) -> list[CandidateReport]:
        return [r for r in self.reports if r.verdict == SURVIVOR]

    def _kill(self, tag: str):
        self.verdicts[tag] = self.verdicts.get(tag, 0) + 1

    def _add(self, rep: CandidateReport):
        self.verdicts[rep.verdict] = self.verdicts.get(rep.verdict, 0) + 1
        self.reports.append(rep)


def enumerate_case(j: int, D: int, mode: str = "strict") -> CaseResult:
    """Exhaust one case.

    k runs over its divisibility-filtered range; each free c_i scans its
    monotone range.  A prefix assignment failing a condition kills its
    whole subtree and is tallied once under that condition; every
    fully-assigned candidate goes through evaluate_candidate.
    """
    if mode not in ("strict", "extended"):
        raise ValueError("mode must be strict or extended")
    tpl = case_template(j, D)
    res = CaseResult(j=j, D=D, mode=mode)
    extended = mode == "extended"

    for k, pinned in tpl.k_values():
        # conditions decidable from k and the pinned c_3 alone, in canonical order
        if k % 2:
            res._kill(T_INT)       # a_j = k/2 not integral
            continue
        if k - 6 < 1 or (pinned and k - 2 * pinned[3] < 1):
            res._kill(T_POS)       # b_2 = k-6 or b_3 = k-2c_3 not positive
            continue
        if (k * (k - 2)) % 3:
            res._kill(T_KI)        # k_2 = k(k-2)/3
            continue
        if pinned and (k * (k - 2) // 3 * (k - 6)) % pinned[3]:
            res._kill(T_KI)        # k_3 = k_2(k-6)/c_3
            continue
        _descend(tpl, res, k, dict(pinned), extended)
    res.verdicts = dict(sorted(res.verdicts.items()))
    return res


def _b_known(tpl: CaseTemplate, k: int, cvals: dict, i: int) -> int:
    """b_i as an integer, for indices whose c-values are already known."""
    if i == 0:
        return k
    ci = cvals[i]
    if i <= tpl.j - 1:
        return k - 2 * ci
    if i == tpl.j:
        return k // 2 - ci
    return (k - ci) // 2


def _tail_kill(tpl: CaseTemplate, k: int, cvals: dict, last_b: int, k_last: int):
    """Checks on the derived tail entries once all free c_i are assigned:
    the one non-automatic b-monotonicity pair, then the remaining k_m
    integrality conditions.  Returns a kill tag or None."""
    j, D = tpl.j, tpl.D
    if tpl.antipodal:
        if last_b < cvals[j - 1]:      # b_j >= b_{j+1} = c_{j-1}
            return T_BNI
        tail_c = [k - 2 * cvals[D - m] for m in range(j + 1, D)] + [k]
    else:
        tail_c = [k]
    k_run, prev_b = k_last, last_b
    for offset, cm in enumerate(tail_c):
        num = k_run * prev_b
        if num % cm:
            return T_KI
        k_run = num // cm
        prev_b = (k - cm) // 2          # only used while m < D, where it equals c_{D-m}
    return None


def _descend(tpl: CaseTemplate, res: CaseResult, k: int, cdict: dict, extended: bool):
    """DFS over the not-yet-assigned free c_i, in canonical ascending order."""
    remaining = [i for i in tpl.free_c if i not in cdict]
    if not remaining:
        rep = evaluate_candidate(tpl, k, tuple(cdict[i] for i in tpl.free_c),
                                 "extended" if extended else "strict")
        res._add(rep)
        return
    i = remaining[0]
    j = tpl.j
    last = i == tpl.free_c[-1]
    known = {1: 1, 2: 3} | cdict
    c_prev = known[i - 1]
    b_prev = _b_known(tpl, k, known, i - 1)
    k_run = 1                       # k_{i-1}, exact by the checks on earlier levels
    for m in range(1, i):
        k_run = k_run * _b_known(tpl, k, known, m - 1) // known[m]
    # first derived tail entry bounds c_j from above in the antipodal cases
    c_next_fixed = (k - 2 * known[j - 1]) if (tpl.antipodal and i == j) else None

    for ci in range(c_prev, k + 1):
        if i <= j:
            bi = (k - 2 * ci) if i < j else (k // 2 - ci)
            if bi < 1:
                res._kill(T_POS)
                continue
            if c_next_fixed is not None and ci > c_next_fixed:
                res._kill(T_CND)
                continue
            if bi > b_prev:
                res._kill(T_BNI)
                continue
            if (k_run * b_prev) % ci:
                res._kill(T_KI)
                continue
            if ci < c_prev + 1:
                res._kill(T_STRICT)
                continue
            if extended:
                if i == 3 and ci < 7:
                    res._kill(T_HIR)
                    continue
                if i == 3 and j == 3 and ci > 15:
                    res._kill(T_L34)
                    continue
                if i == 4 and j == 4 and ci < 5 * (known[3] - 4):
                    res._kill(T_L34)
                    continue
        else:
            if (k - ci) % 2:
                res._kill(T_INT)
                continue
            bi = (k - ci) // 2
            if bi < 1:
                res._kill(T_POS)
                continue
            if bi > b_prev:
                res._kill(T_BNI)
                continue
            if (k_run * b_prev) % ci:
                res._kill(T_KI)
                continue
        if last:
            tag = _tail_kill(tpl, k, known | {i: ci}, bi, k_run * b_prev // ci)
            if tag is not None:
                res._kill(tag)
                continue
        cdict[i] = ci
        _descend(tpl, res, k, cdict, extended)
        del cdict[i]


@dataclass
class SearchReport:
    mode: str
    cases: list[CaseResult]

    @property
    def examined(self) -> int:
        return sum(c.examined for c in self.cases)

    @property
    def survivors(self) -> list[CandidateReport]:
        return [r for c in self.cases for r in c.survivors]

    def verdict_histogram(self) -> dict:
        out: dict[str, int] = {}
        for c in self.cases:
            for tag, n in c.verdicts.items():
                out[tag] = out.get(tag, 0) + n
        return dict(sorted(out.items()))

    def to_text(self) -> str:
        lines = [f"mode: {self.mode}"]
        for c in self.cases:
            lines.append(f"case (j={c.j}, D={c.D}): examined {c.examined}, "
                         f"survivors {len(c.survivors)}")
            for tag, n in c.verdicts.items():
                lines.append(f"    {tag}: {n}")
        lines.append(f"total examined: {self.examined}")
        lines.append(f"survivors: {len(self.survivors)}")
        for s in self.survivors:
            lines.append(f"  !! {s}")
        return "\n".join(lines)

    def to_jsonable(self) -> dict:
        return {
            "mode": self.mode,
            "cases": [
                {
                    "j": c.j, "D": c.D, "examined": c.examined, "verdicts": c.verdicts,
                    "candidates": [
                        {"k": r.k, "c": list(r.c_free), "verdict": r.verdict,
                         "array": r.array, "indeterminate": r.indeterminate}
                        for r in c.reports
                    ],
                }
                for c in self.cases
            ],
            "total_examined": self.examined,
            "survivors": len(self.survivors),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "D", "k", "c_params", "verdict"])
        for c in self.cases:
            for r in c.reports:
                w.writerow([r.j, r.D, r.k, " ".join(map(str, r.c_free)), r.verdict])
        return buf.getvalue()


def _enumerate_star(args) -> CaseResult:
    return enumerate_case(*args)


def full_search(mode: str = "strict", workers: int | None = None) -> SearchReport:
    """Run all six cases; results are merged in canonical (j, D) order, so
    the report is byte-identical whether or not workers are used."""
    jobs = [(j, D, mode) for j, D in sorted(CASE_LIST)]
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            cases = list(pool.map(_enumerate_star, jobs))
    else:
        cases = [enumerate_case(*job) for job in jobs]
    return SearchReport(mode=mode, cases=cases)
