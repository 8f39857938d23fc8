"""
Per-entry verification: joint equidistribution plus the construction and
closed-form checks attached to an entry's technique tag.

Verdicts are finite-depth statements.  An entry whose equidistribution holds
up to ``n_max`` is "verified-at-depth" (or "supported-at-depth" for a
conjectured entry); a failed equidistribution is "refuted"; a passing
equidistribution whose attached construction fails is "construction-failed".
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bij import build_map, check_uniqueness, verify_bijection, verify_reduction
from .catalog import PairEntry
from .dist import is_jointly_equidistributed, joint_distribution
from .forms import t_closed_distribution, t_recurrence_x4_step
from .mesh import ShadingType

CHECK_MODES = ("all", "jd")
BIJECTION_N = 6
JOBS_ENV = "MESHPAT_JOBS"

T_CLOSED_IDS = frozenset([f"{s}1_{i}" for s in "XY" for i in range(9, 19)] + ["X4_6", "Y4_6"])
X4_RECURRENCE_IDS = frozenset(["X4_6", "Y4_6"])
WILF_IDS = frozenset(f"{s}1_{i}" for s in "XY" for i in range(1, 19))


def default_jobs() -> int:
    """Job count from the environment, 1 when unset."""
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV}={raw!r} is not an integer") from None
    if jobs < 1:
        raise ValueError(f"{JOBS_ENV} must be positive, got {jobs}")
    return jobs


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: dict | None = None

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class EntryResult:
    id: str
    status: str
    technique: str
    n_max: int
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def verdict(self) -> str:
        if not self.checks[0].ok:
            return "refuted"
        if not self.ok:
            return "construction-failed"
        return "supported-at-depth" if self.status == "conjectured" else "verified-at-depth"

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "technique": self.technique,
                "n_max": self.n_max, "verdict": self.verdict,
                "checks": [c.to_json() for c in self.checks]}


def _closed_form_check(entry: PairEntry, n_max: int) -> CheckResult:
    for n in range(2, n_max + 1):
        got = joint_distribution(entry.q1, entry.q2, n)
        want = t_closed_distribution(n)
        if got.counts != want.counts:
            cell = min(c for c in set(got.counts) | set(want.counts) if got[c] != want[c])
            return CheckResult("t-closed", False, {"n": n, "cell": list(cell),
                                                   "brute": got[cell], "closed": want[cell]})
    return CheckResult("t-closed", True)


def _recurrence_check(entry: PairEntry, n_max: int) -> CheckResult:
    cur = joint_distribution(entry.q1, entry.q2, 2)
    for n in range(3, n_max + 1):
        cur = t_recurrence_x4_step(cur, n)
        got = joint_distribution(entry.q1, entry.q2, n)
        if got.counts != cur.counts:
            return CheckResult("x4-recurrence", False, {"n": n})
    return CheckResult("x4-recurrence", True)


def _wilf_check(entry: PairEntry, n_max: int) -> CheckResult:
    for n in range(2, n_max + 1):
        d = joint_distribution(entry.q1, entry.q2, n)
        if d[(0, 0)] != 2 * math.factorial(n - 1):
            return CheckResult("avoiders-2(n-1)!", False, {"n": n, "avoiders": d[(0, 0)]})
    return CheckResult("avoiders-2(n-1)!", True)


def check_entry(entry: PairEntry, n_max: int, checks: str = "all") -> EntryResult:
    """Run the checks attached to ``entry``; the first check is always joint equidistribution."""
    if checks not in CHECK_MODES:
        raise ValueError(f"unknown check mode {checks!r}")
    rep = is_jointly_equidistributed(entry.q1, entry.q2, n_max)
    out = [CheckResult("jd", rep.verdict, None if rep else {"witness": list(rep.witness)})]
    if entry.id in T_CLOSED_IDS:
        out.append(_closed_form_check(entry, n_max))
    if entry.id in X4_RECURRENCE_IDS:
        out.append(_recurrence_check(entry, n_max))
    if entry.id in WILF_IDS:
        out.append(_wilf_check(entry, n_max))
    if checks == "all" and entry.map is not None:
        n = min(BIJECTION_N, n_max)
        b = verify_bijection(build_map(entry.map, entry.q1, entry.q2), entry.q1, entry.q2, n)
        out.append(CheckResult(f"bijection:{entry.map.kind}", b.ok, b.failure))
        if entry.map.kind.startswith("single-swap"):
            u = check_uniqueness(entry.map, entry.q1, entry.q2, n)
            out.append(CheckResult(f"at-most-one:{u.scope}", u.ok, u.witness))
    if checks == "all" and entry.status == "proved" and entry.template is ShadingType.X1:
        r = verify_reduction(entry.q1, entry.q2, min(BIJECTION_N, n_max))
        out.append(CheckResult("reduction", r.ok, r.failure))
    return EntryResult(entry.id, entry.status, entry.technique, n_max, tuple(out))


def _check_args(args) -> EntryResult:
    return check_entry(*args)


def check_entries(entries: list[PairEntry], n_max: int, checks: str = "all",
                  jobs: int = 1) -> list[EntryResult]:
    """Results in input order, whatever the job count."""
    tasks = [(e, n_max, checks) for e in entries]
    if jobs <= 1 or len(tasks) < 2:
        return [_check_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_check_args, tasks, chunksize=max(1, len(tasks) // (jobs * 4))))
