"""Cross-verification suites built on the brute-force oracles."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import formulas
from .ascent import (
    AscentSequence,
    catalan,
    enumerate_ascent_sequences,
    enumerate_restricted,
    glue,
    is_ascent_sequence,
    is_restricted,
    parse,
    split,
    stats,
)
from .bijection import poset_to_sequence, sequence_to_poset
from .oracle import dp_G, dp_H  # noqa: F401  (re-exported oracles)
from .poset import (
    StrictPoset,
    contains_two_plus_two,
    down_set_chain,
    find_three_plus_one,
    induced,
    isomorphism_classes,
    poset_stats,
    unlabeled_two_plus_two_free,
)
from .report import VerificationReport

KNOWN_NON_RESTRICTED_31_FREE = "0101202"


def _report(identity: str, params: dict, witness=None, passed=None, **kw) -> VerificationReport:
    if passed is None:
        passed = witness is None
    return VerificationReport(identity, None, params, passed, witness, **kw)


# bijection ------------------------------------------------------------------------


def verify_lemma1(n: int) -> VerificationReport:
    """Bijection image of every length-n sequence: roundtrip, statistics, (2+2)-freeness,
    and pairwise non-isomorphism."""
    if not 0 <= n <= 7:
        raise ValueError("verify_lemma1 is limited to n <= 7")
    images = []
    for a in enumerate_ascent_sequences(n):
        lp = sequence_to_poset(a)
        if poset_to_sequence(lp) != a:
            return _report("lemma1", {"n": n}, {"sequence": str(a), "failure": "roundtrip"})
        transported = poset_stats(lp)
        if transported != stats(a):
            return _report(
                "lemma1",
                {"n": n},
                {"sequence": str(a), "failure": "stats", "poset": transported.to_json(),
                 "sequence_stats": stats(a).to_json()},
            )
        sp = lp.to_strict()
        if contains_two_plus_two(sp):
            return _report("lemma1", {"n": n}, {"sequence": str(a), "failure": "contains 2+2"})
        images.append(sp)
    classes = isomorphism_classes(images)
    if len(classes) != len(images):
        return _report("lemma1", {"n": n}, {"failure": "isomorphic images",
                                            "classes": len(classes), "sequences": len(images)})
    return _report("lemma1", {"n": n, "sequences": len(images)})


def verify_poset_oracle(n: int) -> VerificationReport:
    """Unlabeled (2+2)-free posets from labeled enumeration versus ascent sequences."""
    if not 0 <= n <= 5:
        raise ValueError("the labeled poset oracle is limited to n <= 5")
    reps = unlabeled_two_plus_two_free(n)
    seqs = sorted(poset_to_sequence(down_set_chain(p)).entries for p in reps)
    expected = sorted(a.entries for a in enumerate_ascent_sequences(n))
    params = {"n": n, "classes": len(reps), "sequences": len(expected)}
    if seqs != expected:
        missing = sorted(set(expected) - set(seqs))
        return _report("poset-oracle", params, {"missing": [list(m) for m in missing[:5]]})
    return _report("poset-oracle", params)


# restricted sequences ---------------------------------------------------------------


def _replay_31(p: StrictPoset, found) -> bool:
    """Re-check a reported 3+1 copy on the induced subposet."""
    e, u, v, r = found
    q = induced(p, [e, u, v, r])
    return bool(q.less[0, 1] and q.less[1, 2] and q.less[0, 2]) and not any(
        q.less[3, j] or q.less[j, 3] for j in range(3)
    )


def restricted_vs_31(n: int) -> tuple[list[AscentSequence], list[tuple[AscentSequence, list]]]:
    """Disagreements at length n: non-restricted sequences with (3+1)-free image, and
    restricted sequences whose image contains a 3+1 (with the copy found)."""
    free_but_not_restricted = []
    restricted_but_31 = []
    for a in enumerate_ascent_sequences(n):
        p = sequence_to_poset(a).to_strict()
        found = find_three_plus_one(p)
        if found is not None:
            assert _replay_31(p, found)
        if is_restricted(a) and found is not None:
            restricted_but_31.append((a, list(found)))
        elif not is_restricted(a) and found is None:
            free_but_not_restricted.append(a)
    return free_but_not_restricted, restricted_but_31


def verify_restricted_study(n: int) -> VerificationReport:
    if not 0 <= n <= 7:
        raise ValueError("verify_restricted_study is limited to n <= 7")
    free_nr, restricted_31 = restricted_vs_31(n)
    params = {"n": n}
    if n <= 6:
        witness = None
        if free_nr:
            witness = {"non_restricted_31_free": str(free_nr[0])}
        elif restricted_31:
            witness = {"restricted_with_31": str(restricted_31[0][0])}
        return _report("restricted-study", params, witness)
    found = {
        "non_restricted_31_free": [str(a) for a in free_nr],
        "restricted_with_31": [{"sequence": str(a), "copy": c} for a, c in restricted_31],
    }
    passed = (
        bool(restricted_31)
        and KNOWN_NON_RESTRICTED_31_FREE in found["non_restricted_31_free"]
    )
    return _report("restricted-study", params, found, passed=passed, search=True)


def verify_violation_yields_31(bound: int) -> VerificationReport:
    """Extending a restricted sequence with max m >= 2 by x < m-1 forces a 3+1."""
    if not 0 <= bound <= 7:
        raise ValueError("verify_violation_yields_31 is limited to bound <= 7")
    checked = 0
    for n in range(1, bound):
        for a in enumerate_restricted(n):
            m = max(a.entries)
            if m < 2:
                continue
            for x in range(m - 1):
                ext = a.entries + (x,)
                if not is_ascent_sequence(ext):
                    continue
                checked += 1
                p = sequence_to_poset(ext).to_strict()
                found = find_three_plus_one(p)
                if found is None or not _replay_31(p, found):
                    return _report("violation-31", {"bound": bound},
                                   {"sequence": "".join(map(str, ext))})
    return _report("violation-31", {"bound": bound, "extensions": checked})


def verify_catalan(n_max: int) -> VerificationReport:
    if not 0 <= n_max <= 12:
        raise ValueError("verify_catalan is limited to n_max <= 12")
    counts = []
    for n in range(n_max + 1):
        rs = list(enumerate_restricted(n))
        counts.append(len(rs))
        if len(rs) != catalan(n):
            return _report("catalan", {"n_max": n_max},
                           {"n": n, "count": len(rs), "catalan": catalan(n)})
        if n == 0:
            continue
        images = set()
        for k in range(n):
            for d1 in enumerate_restricted(k):
                for d2 in enumerate_restricted(n - 1 - k):
                    g = glue(d1, d2)
                    if g in images or split(g) != (d1, d2):
                        return _report("catalan", {"n_max": n_max},
                                       {"d1": str(d1), "d2": str(d2), "glued": str(g)})
                    images.add(g)
        if images != set(rs):
            return _report("catalan", {"n_max": n_max}, {"n": n, "failure": "glue not onto"})
    return _report("catalan", {"n_max": n_max, "counts": counts})


# suites ---------------------------------------------------------------------------------


def _with_order(report: VerificationReport, order: int | None) -> VerificationReport:
    if report.order is None:
        report.order = order
    return report


R_VALUES = (1, 2, 3)
SCALING_R_VALUES = (1, 2, 3, 4)
M_VALUES = tuple(range(6))
DEFAULT_ORDER = 6

# checks whose ``--order`` is a size bound rather than a truncation order
SIZE_CHECKS = {
    "lemma1": verify_lemma1,
    "poset-oracle": verify_poset_oracle,
    "catalan": verify_catalan,
    "restricted-study": verify_restricted_study,
    "violation": verify_violation_yields_31,
}
R_CHECKS = {
    "lemma2": formulas.check_lemma2,
    "kernel": formulas.check_kernel_relation,
    "theorem-gr": formulas.check_theorem_gr,
    "scaling": formulas.check_scaling,
}
ORDER_CHECKS = {
    "theorem-main": formulas.check_theorem_main,
    "lemma-h": formulas.check_lemma_h,
    "theorem-h": formulas.check_theorem_h,
    "pt-from-ptz": formulas.check_pt_from_ptz,
    "conjecture": formulas.check_conjecture,
}
# formula-only checks never touch an enumeration oracle
FORMULA_ONLY = frozenset({"kernel", "scaling", "psi", "pt-from-ptz", "conjecture"})
SUITE_NAMES = tuple(SIZE_CHECKS) + tuple(R_CHECKS) + tuple(ORDER_CHECKS) + ("psi",)


def _tasks(order: int) -> list[tuple[str, Callable, tuple]]:
    F = formulas
    tasks: list[tuple[str, Callable, tuple]] = []
    # the bijection and poset checks are cheap at their full guard, whatever the order
    tasks += [("lemma1", verify_lemma1, (n,)) for n in range(8)]
    tasks += [("poset-oracle", verify_poset_oracle, (n,)) for n in range(6)]
    for r in R_VALUES:
        tasks.append(("lemma2", F.check_lemma2, (r, order)))
        tasks.append(("kernel", F.check_kernel_relation, (r, order)))
        tasks.append(("theorem-gr", F.check_theorem_gr, (r, order)))
    tasks += [("scaling", F.check_scaling, (r, order)) for r in SCALING_R_VALUES]
    tasks.append(("theorem-main", F.check_theorem_main, (order,)))
    tasks.append(("lemma-h", F.check_lemma_h, (order,)))
    tasks.append(("theorem-h", F.check_theorem_h, (order,)))
    tasks += [("psi", F.check_psi, (m, order)) for m in M_VALUES]
    tasks.append(("pt-from-ptz", F.check_pt_from_ptz, (order,)))
    tasks.append(("conjecture", F.check_conjecture, (order,)))
    tasks.append(("catalan", verify_catalan, (min(order, 12),)))
    tasks += [("restricted-study", verify_restricted_study, (n,)) for n in (6, 7)]
    tasks.append(("violation", verify_violation_yields_31, (7,)))
    return tasks


def select_tasks(name: str, order: int | None = None, r: int | None = None,
                 m: int | None = None) -> list[tuple[str, Callable, tuple]]:
    """Tasks for one named check.

    Without ``order`` the suite's defaults apply. For size checks ``order`` is the
    size bound handed to the verifier; otherwise it is the truncation order.
    ``r`` and ``m`` narrow the parameter sweep of the checks that take them.
    """
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown check {name!r}")
    if r is not None and name not in R_CHECKS:
        raise ValueError(f"{name} takes no r parameter")
    if m is not None and name != "psi":
        raise ValueError(f"{name} takes no m parameter")
    if name in SIZE_CHECKS and order is not None:
        return [(name, SIZE_CHECKS[name], (order,))]
    eff = DEFAULT_ORDER if order is None else order
    if name in R_CHECKS:
        default = SCALING_R_VALUES if name == "scaling" else R_VALUES
        return [(name, R_CHECKS[name], (rr, eff)) for rr in ((r,) if r is not None else default)]
    if name == "psi":
        return [(name, formulas.check_psi, (mm, eff)) for mm in ((m,) if m is not None else M_VALUES)]
    if name in ORDER_CHECKS:
        return [(name, ORDER_CHECKS[name], (eff,))]
    return [t for t in _tasks(eff) if t[0] == name]


def _run_task(task: tuple[str, Callable, tuple], order: int) -> VerificationReport:
    _, fn, args = task
    start = time.perf_counter()
    report = _with_order(fn(*args), order if fn.__module__ == formulas.__name__ else None)
    report.wall_time = time.perf_counter() - start
    return report


def workers() -> int:
    raw = os.environ.get("FISHBURN_WORKERS", "").strip()
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def run_tasks(tasks: list[tuple[str, Callable, tuple]], order: int | None,
              n_workers: int | None = None) -> list[VerificationReport]:
    """Run tasks (in parallel when allowed) and sort the reports by identity.

    The sort is stable, so ties keep task order and the output never depends on
    scheduling or on the number of workers.
    """
    n_workers = n_workers or workers()
    if n_workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(n_workers, len(tasks))) as pool:
            reports = list(pool.map(_run_task, tasks, [order] * len(tasks)))
    else:
        reports = [_run_task(t, order) for t in tasks]
    return sorted(reports, key=lambda r: r.identity)


def run_suite(order: int = DEFAULT_ORDER, only: str | None = None,
              n_workers: int | None = None) -> list[VerificationReport]:
    """Run every check (or only the ones registered under ``only``) at ``order``."""
    tasks = _tasks(order) if only is None else select_tasks(only, order)
    return run_tasks(tasks, order, n_workers)
