"""Check records, reports, and the list of checks behind ``verify-all``."""

import json
import random
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__
from .errors import BinpolyError

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def load_expected():
    text = resources.files("binpoly").joinpath("data/expected.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Check:
    name: str
    status: str
    details: object = None

    def to_json(self):
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class Report:
    command: list
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def overall(self):
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def add(self, name, ok, details=None):
        self.checks.append(Check(name, PASS if ok else FAIL, details))
        return ok

    def skip(self, name, why):
        self.checks.append(Check(name, SKIPPED, why))

    def run(self, name, fn):
        """Run ``fn() -> (ok, details)`` and record it; exceptions count as failures."""
        try:
            ok, details = fn()
        except (BinpolyError, AssertionError, ValueError, KeyError) as exc:
            ok, details = False, f"{type(exc).__name__}: {exc}"
        return self.add(name, ok, details)

    def failures(self):
        return [c.name for c in self.checks if c.status == FAIL]

    def to_json(self):
        out = {
            "command": self.command,
            "version": __version__,
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }
        if self.data:
            out["data"] = self.data
        return out

    def text(self):
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [f"{c.status.upper():7s} {c.name:{width}s}  {_short(c.details)}".rstrip() for c in self.checks]
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


def _short(details):
    if details is None:
        return ""
    s = details if isinstance(details, str) else json.dumps(details, ensure_ascii=False)
    return s if len(s) <= 100 else s[:97] + "..."


def homology_strings(res):
    return [res.group_text(k) for k in range(len(res))]


# -- individual check groups ---------------------------------------------------------

def group_checks(report, tag, expected, subgroups=True):
    from .groups import abelianization_invariants, get_group, standard_presentation

    g = get_group(tag)
    exp = expected["groups"][tag]
    report.add(f"{tag}: order", g.order == exp["order"], {"order": g.order, "expected": exp["order"]})
    report.add(f"{tag}: group axioms", g.check_axioms())
    if tag in ("T", "O", "I"):
        rep = standard_presentation(g)
        common = g.elements[rep.common_value].encode() if rep.all_equal else None
        ok = rep.all_equal and list(rep.lmn) == exp["lmn"] and g.label(rep.common_value) == "-1"
        report.add(f"{tag}: presentation <{','.join(map(str, rep.lmn))}>", ok,
                   {"powers": {k: g.label(v) for k, v in rep.powers.items()}, "common_value": common})
        ab = abelianization_invariants(g)
        report.add(f"{tag}: abelianization", ab == exp["abelianization"], {"invariants": ab})
    if subgroups:
        for h, big, want in expected["subgroups"]:
            if tag in (h, big):
                subgroup_line(report, h, big, want)
    return report


def subgroup_line(report, h, big, want):
    from .groups import get_group, subgroup_check

    got = subgroup_check(get_group(h), get_group(big))
    report.add(f"{h} {'<=' if want else 'not <='} {big}", got == want)


def polytope_checks(report, tag, expected, oracle="orbit", progress=None):
    from .polytope import (
        brute_force_facets,
        free_facet_action_check,
        get_polytope,
        is_g_stable,
        oracle_agrees,
        verify_fundamental_domain,
    )

    exp = expected["polytopes"][tag]
    p = get_polytope(tag)
    fv = list(p.f_vector())
    report.add(f"{tag}: f-vector", fv == exp["f_vector"], {"f_vector": fv, "expected": exp["f_vector"]})
    report.add(f"{tag}: facet orbit sizes", p.orbit_sizes == exp["orbit_sizes"], {"sizes": p.orbit_sizes})
    report.add(f"{tag}: facet set is G-stable", is_g_stable(p))
    report.add(f"{tag}: free action on facets and vertices", free_facet_action_check(p))
    cert = verify_fundamental_domain(p, raise_on_failure=False, check_free_action=False)
    report.add(f"{tag}: fundamental domain certificate", cert.valid and len(cert.facets) == exp["domain_facets"],
               cert.to_json())
    if oracle == "full":
        found = brute_force_facets(p.group, progress=progress)
        report.add(f"{tag}: brute-force oracle agrees", oracle_agrees(p, found), {"facets": len(found)})
    report.data.setdefault("polytopes", {})[tag] = dict(p.to_json(), fundamental_domain=cert.to_json())
    return report


def complex_checks(report, label):
    from .catalog import (
        build_by_label,
        compare_K_S3,
        extend_periodic,
        verify_minimal_resolution_T,
        verify_tz_equivalence,
    )

    def dd():
        c = build_by_label(label)
        return c.verify(), {"ranks": c.ranks}

    report.run(f"{label}: d o d = 0", dd)
    if label in ("KO", "KI", "KT"):
        def periodic():
            c = extend_periodic(build_by_label(label), 2)
            return c.verify(), {"ranks": c.ranks}
        report.run(f"{label}: d o d = 0 on the n=2 extension", periodic)
    if label == "KS3":
        def push():
            diffs = compare_K_S3()
            return not diffs, [
                {"degree": k, "row": i, "col": j, "pushforward": a, "printed": b} for k, i, j, a, b in diffs
            ]
        report.run("KS3: pushforward of KO equals the printed matrices", push)
    if label == "KO_TZ":
        def tz():
            rep = verify_tz_equivalence(raise_on_failure=False)
            return rep.ok, rep.checks
        report.run("KO_TZ: relations with KO", tz)
    if label == "KT_MIN":
        def tmin():
            rep = verify_minimal_resolution_T(raise_on_failure=False)
            return rep.ok, rep.checks
        report.run("KT_MIN: homotopy equivalence with KT", tmin)
    return report


def sphere_check(report, tag, n, expected):
    from .homology import sphere_homology

    def run():
        res = sphere_homology(tag, n)
        got = homology_strings(res)
        return got == expected["sphere_homology"][str(n)], got

    return report.run(f"{tag}: sphere homology n={n}", run)


def quotient_checks(report, tag, expected):
    from .groups import abelianization_invariants, get_group
    from .homology import poincare_determinant_check, quotient_homology

    def hom():
        got = homology_strings(quotient_homology(tag))
        return got == expected["quotient_homology"][tag], got

    def det():
        d = poincare_determinant_check(tag)
        return d == expected["det_augmented_d2"][tag], d

    def ab():
        res = quotient_homology(tag)
        inv = abelianization_invariants(get_group(tag))
        return res.betti[1] == 0 and res.torsion[1] == inv, {"H1 torsion": res.torsion[1], "abelianization": inv}

    report.run(f"{tag}: quotient homology", hom)
    report.run(f"{tag}: det of augmented d2", det)
    report.run(f"{tag}: H1 of quotient equals abelianization", ab)


def expected_cohomology(expected, tag, qmax):
    table = expected["cohomology"][tag]
    # the stored table is 4-periodic from degree 1 on
    return [table[q] if q < len(table) else table[(q - 1) % 4 + 1] for q in range(qmax + 1)]


def cohomology_check(report, tag, qmax, expected):
    from .homology import group_cohomology_table

    def run():
        got = homology_strings(group_cohomology_table(tag, qmax))
        return got == expected_cohomology(expected, tag, qmax), got

    return report.run(f"{tag}: group cohomology up to degree {qmax}", run)


def flag_checks(report, expected):
    from .homology import flag_homology_report

    def run():
        rep = flag_homology_report()
        exp = expected["flag"]
        got = homology_strings(rep.integral)
        ok = (got == exp["integral"] and rep.mod2 == exp["mod2_betti"]
              and rep.actions == {"s_alpha": exp["s_alpha"], "s_beta": exp["s_beta"]} and rep.ok)
        return ok, {"integral": got, "mod2_betti": rep.mod2, "actions": rep.actions,
                    "failed": [k for k, v in rep.checks.items() if not v]}

    report.run("flag manifold homology and S3 action", run)


def property_checks(report, seed=0, trials=200):
    """Quick randomized field axioms, SNF certification and Euler checks."""
    from .scalars import QuadScalar
    from .snf import smith_normal_form

    rng = random.Random(seed)

    def field_axioms():
        for _ in range(trials):
            d = rng.choice((2, 5))
            x, y, z = (QuadScalar(rng.randint(-9, 9), rng.randint(-9, 9), d) for _ in range(3))
            if (x + y) * z != x * z + y * z or (x * y) * z != x * (y * z):
                return False, "distributivity or associativity"
            if x and x * x.inv() != 1:
                return False, "inverse"
            if (x < y) == (y <= x):
                return False, "order"
        return True, {"trials": trials}

    def snf_certified():
        nrng = np.random.default_rng(seed)
        for _ in range(trials // 4):
            m, n = nrng.integers(1, 7, size=2)
            smith_normal_form(nrng.integers(-3, 4, size=(m, n)))
        return True, {"matrices": trials // 4}

    report.run("QuadScalar field and order axioms", field_axioms)
    report.run("SNF certification on random matrices", snf_certified)


def verify_all(fast=False, progress=None):
    """Every acceptance check, in order.  ``fast`` skips the slow parts."""
    expected = load_expected()
    report = Report(["verify-all"] + (["--fast"] if fast else []))
    for tag in ("Q8", "T", "O", "I", "S3"):
        if tag in ("Q8", "S3"):
            from .groups import get_group

            g = get_group(tag)
            report.add(f"{tag}: order", g.order == expected["groups"][tag]["order"], {"order": g.order})
            report.add(f"{tag}: group axioms", g.check_axioms())
        else:
            group_checks(report, tag, expected, subgroups=False)
    for h, big, want in expected["subgroups"]:
        subgroup_line(report, h, big, want)
    from .groups import quotient_map_O_to_S3

    report.run("projection O -> S3", lambda: (quotient_map_O_to_S3().is_homomorphism(), None))
    for tag in ("T", "O", "I"):
        oracle = "full" if (tag != "I" or not fast) else "orbit"
        polytope_checks(report, tag, expected, oracle, progress)
        if tag == "I" and fast:
            report.skip("I: brute-force oracle agrees", "skipped by --fast")
    for label in ("KT", "KO", "KI", "KS3", "KO_TZ", "KT_MIN"):
        complex_checks(report, label)
    for tag in ("T", "O", "I"):
        sphere_check(report, tag, 1, expected)
    for tag in ("T", "O", "I"):
        if fast:
            report.skip(f"{tag}: sphere homology n=2", "skipped by --fast")
        else:
            sphere_check(report, tag, 2, expected)
    for tag in ("T", "O", "I"):
        quotient_checks(report, tag, expected)
    for tag in ("T", "O", "I"):
        cohomology_check(report, tag, 12, expected)
    flag_checks(report, expected)

    def tmin_homology():
        from .catalog import build_K_T_min
        from .homology import integral_homology, quotient_homology

        a = homology_strings(integral_homology(build_K_T_min(), "augment"))
        b = homology_strings(quotient_homology("T"))
        return a == b, {"KT_MIN": a, "KT": b}

    report.run("KT_MIN and KT have the same quotient homology", tmin_homology)
    property_checks(report)
    return report
