"""
Verification suites. Each returns a Report; violations are counted, never raised.
"""

import time
from collections import Counter
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Optional

from .canon import CanonicalForm, are_isomorphic, canonical_form
from .census import (
    CensusRecord,
    ClassLabel,
    Classification,
    StructureCase,
    classify_order,
    classify_structure,
    compute_dstar,
    disconnected_gs,
    labeled_chunks,
    labeled_rows,
    run_oracle,
    run_parallel,
    tripartite_plus_isolated,
)
from .constants import (
    CLASSIFY_MAX_K,
    CLASSIFY_MIN_K,
    ETA_MAX_MAX_ORDER,
    LEMMA49_ORDER,
    LEMMA412_ORDERS,
    MAX_REPORTED_SAMPLES,
    ORACLE_MAX_ORDER,
    SMITH_MAX_ORDER,
    TABLE1_COUNTS,
    TABLE1_TOTAL,
    THM23_MAX_K,
    THM23_MIN_K,
)
from .errors import BkSyntaxError, InertiaLawViolation, OracleLimitError
from .families import (
    bk_spec_of,
    build_bk,
    build_gn,
    format_bk,
    gn_deletion_candidates,
    is_dstar_member,
    parse_bk,
)
from .forbidden import CHORD_NAMES, contains_forbidden, forbidden_catalog
from .graph import Graph, complete, disjoint_union, to_graph6
from .logging_config import get_logger
from .spectral import inertia, is_one_positive, rows_inertia
from .transforms import TransformKind, apply, find_all
from .utils import format_float, load_table1_golden, load_table2_golden

logger = get_logger(__name__)

# Finding kinds each structural case guarantees.
REQUIRED_KINDS: dict[StructureCase, frozenset[TransformKind]] = {
    StructureCase.ISOLATED_IN_Y: frozenset({TransformKind.TYPE1}),
    StructureCase.MULTIPARTITE_Y: frozenset({TransformKind.TYPE1, TransformKind.TYPE2}),
    StructureCase.X_INCOMPLETE: frozenset({TransformKind.TYPE1, TransformKind.TYPE3}),
    StructureCase.X_COMPLETE_NONREDUCED: frozenset({TransformKind.TYPE3}),
}


@dataclass
class Report:
    """Outcome of one verification run."""

    check: str
    parameters: dict[str, Any] = field(default_factory=dict)
    examined: int = 0
    violations: int = 0
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def add_sample(self, key: str, value: Any) -> None:
        """Record an offending item, keeping at most MAX_REPORTED_SAMPLES per key."""
        samples = self.details.setdefault(key, [])
        if len(samples) < MAX_REPORTED_SAMPLES:
            samples.append(value)

    def to_dict(self, include_elapsed: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "check": self.check,
            "parameters": self.parameters,
            "examined": self.examined,
            "violations": self.violations,
        }
        if include_elapsed:
            data["elapsed"] = round(self.elapsed, 3)
        data["details"] = self.details
        return data


@contextmanager
def _timed(report: Report) -> Iterator[Report]:
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - start
        level = "passed" if report.ok else f"failed with {report.violations} violations"
        logger.info(f"{report.check} {level} ({report.examined} examined, {report.elapsed:.2f} s)")


def _form_of_name(name: str) -> Optional[CanonicalForm]:
    try:
        return canonical_form(build_bk(parse_bk(name)))
    except BkSyntaxError as e:
        logger.warning(f"Unparseable golden name {name!r}: {e}")
        return None


def verify_table1(jobs: int = 1) -> Report:
    """Compare the computed D* catalog with the transcribed table, both directions."""
    report = Report("table1")
    with _timed(report):
        catalog = compute_dstar(jobs)
        report.examined = catalog.examined

        per_k = catalog.per_k()
        for k, expected in TABLE1_COUNTS.items():
            if per_k.get(k, 0) != expected:
                report.violations += 1
                report.add_sample(
                    "count_mismatches", {"k": k, "computed": per_k.get(k, 0), "expected": expected}
                )
        if len(catalog) != TABLE1_TOTAL:
            report.violations += 1
            report.add_sample("count_mismatches", {"total": len(catalog), "expected": TABLE1_TOTAL})

        for entry in catalog.entries:
            if entry.inertia.p != 2 or entry.inertia.eta != 2:
                report.violations += 1
                report.add_sample("bad_inertia", {"name": entry.name, **entry.inertia.as_dict()})

        computed = {entry.form: entry for entry in catalog.entries}
        golden = load_table1_golden()
        matched: set[CanonicalForm] = set()
        missing = []
        suspect = []
        for item in golden:
            form = _form_of_name(item.name)
            if form is not None and form in computed:
                matched.add(form)
            elif item.verified:
                missing.append(item.name)
            else:
                suspect.append(item.name)

        extra = [e for e in catalog.entries if e.form not in matched]
        errata = []
        for name in suspect:
            k = parse_bk(name).k
            same_k = [e for e in extra if e.spec.k == k]
            if len(same_k) == 1:
                errata.append({"printed": name, "computed": same_k[0].name})
                extra.remove(same_k[0])
            else:
                missing.append(name)

        report.violations += len(missing) + len(extra)
        report.details.update(
            {
                "total": len(catalog),
                "per_k": {str(k): v for k, v in per_k.items()},
                "per_order": {str(n): v for n, v in catalog.per_order().items()},
                "matched": len(matched),
                "missing_from_computed": sorted(missing),
                "missing_from_golden": sorted(e.name for e in extra),
                "errata": errata,
            }
        )
    return report


def _classification_details(result: Classification) -> dict[str, Any]:
    return {str(k): counts for k, counts in result.counts.items()}


def verify_lemma_4_9(jobs: int = 1) -> Report:
    """No B_k of order 15 (4 <= k <= 14) has p = 2 with positive nullity."""
    report = Report("lemma49", {"n": LEMMA49_ORDER, "k": [CLASSIFY_MIN_K, CLASSIFY_MAX_K]})
    with _timed(report):
        result = classify_order(LEMMA49_ORDER, jobs)
        report.examined = result.examined
        for label in (ClassLabel.DOUBLE_ZERO, ClassLabel.SINGLE_ZERO):
            for spec in result.specs(label):
                report.violations += 1
                report.add_sample("samples", {"name": format_bk(spec), "label": label.value})
        report.details["per_k"] = _classification_details(result)
        report.details["totals"] = {label.value: result.total(label) for label in ClassLabel}
    return report


def verify_lemma_4_12(ns: Sequence[int] = LEMMA412_ORDERS, jobs: int = 1) -> Report:
    """No DoubleZero B_k for the given orders."""
    report = Report("lemma412", {"n": list(ns)})
    with _timed(report):
        per_n = {}
        for n in ns:
            result = classify_order(n, jobs)
            report.examined += result.examined
            for spec in result.specs(ClassLabel.DOUBLE_ZERO):
                report.violations += 1
                report.add_sample("samples", format_bk(spec))
            per_n[str(n)] = {label.value: result.total(label) for label in ClassLabel}
        report.details["totals"] = per_n
    return report


def _category(record: CensusRecord) -> str:
    if record.connected:
        return "connected"
    if record.graph.isolated_vertices():
        return "isolated"
    return "no_isolated"


def census_breakdown(records: Sequence[CensusRecord]) -> dict[int, dict[str, int]]:
    """Per nullity: total, connected, with an isolated vertex, disconnected without one."""
    table: dict[int, dict[str, int]] = {}
    for record in records:
        row = table.setdefault(
            record.eta, {"total": 0, "connected": 0, "isolated": 0, "no_isolated": 0}
        )
        row["total"] += 1
        row[_category(record)] += 1
    return dict(sorted(table.items()))


def _check_g0_listing(
    report: Report, n: int, golden: dict[str, Any], records: Sequence[CensusRecord]
) -> None:
    eta0 = {r.form for r in records if r.eta == 0}
    listed: set[CanonicalForm] = set()
    for name in golden.get("g0_names", []):
        form = _form_of_name(name)
        if form is None or form not in eta0:
            report.violations += 1
            report.add_sample("g0_not_found", {"n": n, "name": name})
        elif form in listed:
            report.violations += 1
            report.add_sample("g0_duplicates", {"n": n, "name": name})
        else:
            listed.add(form)
    for a, b in golden.get("g0_clique_sums", []):
        form = canonical_form(disjoint_union(complete(a), complete(b)))
        if form not in eta0:
            report.violations += 1
            report.add_sample("g0_not_found", {"n": n, "name": f"K{a}+K{b}"})
        listed.add(form)
    if "g0_names" in golden:
        for record in records:
            if record.eta == 0 and record.form not in listed:
                report.violations += 1
                report.add_sample("g0_unlisted", {"n": n, "graph6": record.graph6})


def verify_table2(oracle_n: int = 6, jobs: int = 1, store: Optional[Any] = None) -> Report:
    """Oracle census counts for n = 4..oracle_n against the recorded goldens."""
    report = Report("table2", {"oracle_n": oracle_n})
    with _timed(report):
        if not 4 <= oracle_n <= ORACLE_MAX_ORDER:
            raise OracleLimitError(
                f"table2 check supports 4 <= n <= {ORACLE_MAX_ORDER}, got {oracle_n}"
            )
        goldens = load_table2_golden()
        counts: dict[str, Any] = {}
        errata = []
        for n in range(4, oracle_n + 1):
            result = run_oracle(n, jobs, store)
            report.examined += result.examined
            breakdown = census_breakdown(result.records)
            counts[str(n)] = {str(eta): row for eta, row in breakdown.items()}
            if result.labeled is not None:
                counts[str(n)]["labeled"] = {str(eta): c for eta, c in result.labeled.items()}

            golden = goldens.get(n)
            if golden is None:
                logger.warning(f"No census golden recorded for n={n}")
                continue

            empty_row = {"total": 0, "connected": 0, "isolated": 0, "no_isolated": 0}
            for eta_text, expected in golden["eta"].items():
                computed = breakdown.get(int(eta_text), empty_row)
                if computed != expected:
                    report.violations += 1
                    report.add_sample(
                        "count_mismatches",
                        {"n": n, "eta": int(eta_text), "computed": computed, "expected": expected},
                    )
            for eta in breakdown:
                if str(eta) not in golden["eta"]:
                    report.violations += 1
                    report.add_sample(
                        "count_mismatches",
                        {"n": n, "eta": eta, "computed": breakdown[eta], "expected": None},
                    )

            if result.labeled is not None and "labeled" in golden:
                for eta_text, expected in golden["labeled"].items():
                    computed_labeled = result.labeled.get(int(eta_text), 0)
                    if computed_labeled != expected:
                        report.violations += 1
                        report.add_sample(
                            "labeled_mismatches",
                            {
                                "n": n,
                                "eta": int(eta_text),
                                "computed": computed_labeled,
                                "expected": expected,
                            },
                        )

            _check_g0_listing(report, n, golden, result.records)

            for eta_text, listed in golden.get("listed", {}).items():
                computed = breakdown.get(int(eta_text), empty_row)
                if computed != listed:
                    errata.append(
                        {"n": n, "eta": int(eta_text), "listed": listed, "computed": computed}
                    )

        report.details["counts"] = counts
        report.details["errata"] = errata
    return report


def _smith_chunk(task: tuple[int, int, int]) -> tuple[int, int, list[str]]:
    n, start, stop = task
    examined = violations = 0
    samples: list[str] = []
    for rows in labeled_rows(n, start, stop):
        examined += 1
        g = Graph(n, rows)
        if is_one_positive(g) != (rows_inertia(n, rows).p == 1):
            violations += 1
            if len(samples) < MAX_REPORTED_SAMPLES:
                samples.append(to_graph6(g))
    return examined, violations, samples


def _eta_max_chunk(task: tuple[int, int, int]) -> tuple[int, int, list[str]]:
    n, start, stop = task
    examined = violations = 0
    samples: list[str] = []
    for rows in labeled_rows(n, start, stop):
        ine = rows_inertia(n, rows)
        if ine.eta != n - 3:
            continue
        examined += 1
        g = Graph(n, rows)
        if ine.p != 1 or not tripartite_plus_isolated(g):
            violations += 1
            if len(samples) < MAX_REPORTED_SAMPLES:
                samples.append(to_graph6(g))
    return examined, violations, samples


def _exhaustive(report: Report, chunk_fn: Any, n: int, jobs: int) -> None:
    for examined, violations, samples in run_parallel(chunk_fn, labeled_chunks(n), jobs):
        report.examined += examined
        report.violations += violations
        for sample in samples:
            report.add_sample("samples", sample)


def verify_smith(n: int, jobs: int = 1) -> Report:
    """p = 1 exactly when the non-isolated vertices form a complete multipartite graph."""
    if not 1 <= n <= SMITH_MAX_ORDER:
        raise OracleLimitError(f"smith check supports 1 <= n <= {SMITH_MAX_ORDER}, got {n}")
    report = Report("smith", {"n": n})
    with _timed(report):
        _exhaustive(report, _smith_chunk, n, jobs)
    return report


def verify_eta_max(n: int, jobs: int = 1) -> Report:
    """Every graph of nullity n - 3 has p = 1 and is K_{n1,n2,n3} plus isolated vertices."""
    if not 3 <= n <= ETA_MAX_MAX_ORDER:
        raise OracleLimitError(f"etamax check supports 3 <= n <= {ETA_MAX_MAX_ORDER}, got {n}")
    report = Report("etamax", {"n": n})
    with _timed(report):
        _exhaustive(report, _eta_max_chunk, n, jobs)
    return report


def verify_transforms(n: int, jobs: int = 1, store: Optional[Any] = None) -> Report:
    """Inertia law, existence of findings and the structural case split over the census of order n.

    Every finding on every class with positive nullity must keep (p, n) and lower eta by one.
    Every connected class with eta >= 2 must admit a finding; only D* members of nullity two are
    excused. It must also admit a finding of a kind its structural case guarantees.
    """
    report = Report("transforms", {"n": n})
    with _timed(report):
        records = run_oracle(n, jobs, store).records
        findings_by_kind: Counter[str] = Counter()
        cases: Counter[str] = Counter()
        for record in records:
            if record.eta == 0:
                continue
            report.examined += 1
            g = record.graph
            findings = find_all(g)
            for finding in findings:
                findings_by_kind[finding.kind.value] += 1
                try:
                    apply(g, finding, before=record.inertia)
                except InertiaLawViolation as e:
                    report.violations += 1
                    report.add_sample("law_violations", str(e))

            if not record.connected or record.eta < 2:
                continue
            kinds = {f.kind for f in findings}
            member = is_dstar_member(g)
            if not kinds and not (member and record.eta == 2):
                report.violations += 1
                report.add_sample("stuck", record.graph6)

            structure = classify_structure(g)
            cases[structure.case.value] += 1
            case_sample = {"graph6": record.graph6, "case": structure.case.value}
            required = REQUIRED_KINDS.get(structure.case)
            if required is None:
                if not member:
                    report.violations += 1
                    report.add_sample("case_violations", case_sample)
            elif not kinds & required:
                report.violations += 1
                report.add_sample("case_violations", case_sample)

        report.details["findings"] = dict(sorted(findings_by_kind.items()))
        report.details["cases"] = dict(sorted(cases.items()))
    return report


def verify_fig3() -> Report:
    """Third eigenvalues of the forbidden catalog; every member must have p = 3."""
    report = Report("fig3")
    with _timed(report):
        catalog = forbidden_catalog()
        report.examined = len(catalog)
        entries = []
        flagged = []
        for entry in catalog:
            p = inertia(entry.graph).p
            if p != 3:
                report.violations += 1
                report.add_sample("wrong_inertia", {"name": entry.name, "p": p})
            row = {
                "name": entry.name,
                "lambda3": format_float(entry.lambda3),
                "expected": entry.expected,
                "p": p,
            }
            entries.append(row)
            if entry.flagged:
                flagged.append({**row, "note": entry.note})
            elif not entry.matches:
                report.violations += 1
                report.add_sample("value_mismatches", row)

        named = {entry.name for entry in catalog}
        for names in CHORD_NAMES.values():
            for name, _ in names:
                if name not in named:
                    report.violations += 1
                    report.add_sample("unmatched_names", name)

        report.details["entries"] = entries
        report.details["flagged"] = flagged
    return report


def verify_disconnected(n: int, jobs: int = 1, store: Optional[Any] = None) -> Report:
    """Disconnected census classes of each nullity equal the generated sums, both directions."""
    if not 4 <= n <= SMITH_MAX_ORDER + 1:
        raise OracleLimitError(
            f"disconnected check supports 4 <= n <= {SMITH_MAX_ORDER + 1}, got {n}"
        )
    report = Report("disconnected", {"n": n})
    with _timed(report):
        records = run_oracle(n, jobs, store).records
        smaller = run_oracle(n - 1, jobs, store).records
        per_s = {}
        for s in range(0, n - 2):
            census = {r.form for r in records if r.eta == s and not r.connected}
            generated = {canonical_form(g) for g in disconnected_gs(n, s, smaller)}
            report.examined += len(census | generated)
            missing = census - generated
            extra = generated - census
            report.violations += len(missing) + len(extra)
            for form in sorted(missing):
                report.add_sample("not_generated", {"s": s, "form": form.hex()})
            for form in sorted(extra):
                report.add_sample("not_in_census", {"s": s, "form": form.hex()})
            per_s[str(s)] = len(census)
        report.details["disconnected"] = per_s
    return report


def verify_census_shapes(n: int, jobs: int = 1, store: Optional[Any] = None) -> Report:
    """Shape facts over the connected census of order n.

    Non-neighbours of a minimum-degree vertex induce a complete multipartite graph plus isolated
    vertices; nullity-zero classes are B_s graphs with 3 <= s <= 12; no class contains a
    forbidden catalog graph.
    """
    report = Report("shapes", {"n": n})
    with _timed(report):
        records = run_oracle(n, jobs, store).records
        bk_found = 0
        for record in records:
            g = record.graph
            report.examined += 1
            name = contains_forbidden(g) if n >= 6 else None
            if name is not None:
                report.violations += 1
                report.add_sample("forbidden", {"graph6": record.graph6, "contains": name})
            if not record.connected:
                continue
            if not classify_structure(g).y_shape_ok:
                report.violations += 1
                report.add_sample("y_shape", record.graph6)
            if record.eta == 0:
                spec = bk_spec_of(g, THM23_MIN_K, THM23_MAX_K)
                if spec is None:
                    report.violations += 1
                    report.add_sample("not_bk", record.graph6)
                else:
                    bk_found += 1
        report.details["eta0_bk"] = bk_found
    return report


def verify_gn(max_n: int = 16) -> Report:
    """G_n is an induced subgraph of G_{n+1}: deleting the predicted vertex leaves G_n."""
    report = Report("gn", {"max_n": max_n})
    with _timed(report):
        for n in range(2, max_n + 1):
            target = build_gn(n)
            bigger = build_gn(n + 1)
            for v in gn_deletion_candidates(n):
                report.examined += 1
                if not are_isomorphic(bigger.delete_vertex(v), target):
                    report.violations += 1
                    report.add_sample("samples", {"n": n, "vertex": v})
    return report
