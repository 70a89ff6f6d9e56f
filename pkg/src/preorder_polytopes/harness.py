"""Check orchestration: run every invariant on one preorder or sweep them all.

Checks come in three kinds.  "theorem" checks are proven identities: a
failure aborts with InternalError because it can only mean a bug.
"conjecture" checks record pass/fail verdicts with witnesses.  "diagnostic"
checks are floating-point observations and never gate anything.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import BadParameters, InternalError, SizeLimit
from .ehrhart import (
    DEFAULT_Q_SAMPLES,
    double_ehrhart,
    double_reciprocity_check,
    ehrhart_dual_formula,
    ehrhart_interpolation,
    nabla_block,
    qzeta_sides,
    zeta_polynomial,
)
from .geometry import ehrhart_Rvee
from .mtriangle import display_rows, m_duality_identity, m_triangle, transmute
from .points import enumerate_points, h_vector, maximal_elements
from .polynomials import (
    UniPoly,
    coefficient_polynomial,
    format_rational,
    gamma_vector,
    hstar_from_ehrhart,
    is_polytopal_h,
    is_real_rooted,
    magic_coefficients,
    roots_on_critical_line,
)
from .preorder import dual, enumerate_preorders, ordinal_split, restrict
from .words import (
    hstar_asc_star,
    hstar_filter_formula,
    hstar_words_descent,
    word_count,
)

# name -> (kind, sweep size cap, hard size cap); either cap may be None.
# Sweep caps keep full sweeps fast; hard caps protect single-instance runs
# from checks whose cost explodes with the size.
CHECK_DEFS = {
    "ez_duality": ("theorem", None, None),
    "route_agreement": ("theorem", None, None),
    "nvol_words": ("theorem", None, None),
    "hstar_filter": ("theorem", None, None),
    "hstar_ascstar": ("theorem", None, 7),
    "hstar_words": ("conjecture", None, None),
    "magic": ("conjecture", None, None),
    "zeta_minus_one": ("conjecture", None, None),
    "qzeta": ("conjecture", None, None),
    "nabla_transpose": ("conjecture", 4, 6),
    "h_palindromic": ("conjecture", None, None),
    "h_unimodal": ("conjecture", None, None),
    "h_gtheorem": ("conjecture", None, None),
    "gamma": ("conjecture", None, None),
    "h_real_rooted": ("conjecture", None, None),
    "h_dual": ("conjecture", None, None),
    "m_duality": ("conjecture", None, None),
    "corner_maximal": ("conjecture", None, None),
    "rtau_a": ("conjecture", 4, 5),
    "rtau_b": ("conjecture", 4, 5),
    "double_reciprocity": ("conjecture", 5, 7),
    "critical_line": ("diagnostic", None, None),
}

ALL_CHECKS = tuple(CHECK_DEFS)
DEFAULT_SWEEP_CAP = 5
NABLA_BOUND = 3


@dataclass
class ConjectureReport:
    tau_key: str
    size: int
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    timing: float = 0.0

    def failures(self, include_diagnostic=False):
        out = []
        for name, verdict in self.verdicts.items():
            if verdict != "fail":
                continue
            if CHECK_DEFS[name][0] == "diagnostic" and not include_diagnostic:
                continue
            out.append(name)
        return out


class _Context:
    """Lazily computed shared artifacts for one preorder."""

    def __init__(self, tau, q_samples):
        self.tau = tau
        self.n = tau.n
        self.q_samples = q_samples
        self._cache = {}

    def get(self, name):
        if name not in self._cache:
            self._cache[name] = getattr(self, "_make_" + name)()
        return self._cache[name]

    def _make_dual(self):
        return dual(self.tau)

    def _make_P(self):
        return enumerate_points(self.tau, 1, 0)

    def _make_Pd(self):
        return enumerate_points(self.get("dual"), 1, 0)

    def _make_ehr(self):
        return ehrhart_dual_formula(self.tau, self.get("Pd"))

    def _make_ehr_interp(self):
        return ehrhart_interpolation(self.tau, 1, 0)

    def _make_hstar(self):
        return hstar_from_ehrhart(self.get("ehr"), self.n)

    def _make_h_vec(self):
        return h_vector(self.get("P"))

    def _make_h_vec_dual(self):
        return h_vector(self.get("Pd"))

    def _make_h_poly(self):
        return UniPoly(self.get("h_vec"))

    def _make_zeta(self):
        return zeta_polynomial(self.get("P"))

    def _make_maximal(self):
        return maximal_elements(self.get("P"))

    def _make_mtri(self):
        return m_triangle(self.get("P"))

    def _make_transmuted(self):
        return transmute(self.get("mtri"))

    def _make_double_ehr(self):
        return double_ehrhart(self.tau, self.get("Pd"))

    def _make_rvee_hstar(self):
        return ehrhart_Rvee(self.tau).hstar

    def _make_rvee_hstar_dual(self):
        return ehrhart_Rvee(self.get("dual")).hstar

    def _make_split(self):
        split = ordinal_split(self.tau)
        if split is None:
            return None
        lower, upper = split
        return restrict(self.tau, lower), restrict(self.tau, upper)


def _poly_witness(lhs, rhs):
    def ser(x):
        if isinstance(x, UniPoly):
            return x.serialize()
        if isinstance(x, Fraction):
            return format_rational(x)
        return x

    return {"lhs": ser(lhs), "rhs": ser(rhs)}


def _check_ez_duality(ctx):
    z = zeta_polynomial(ctx.get("Pd"))
    shifted = z.compose(UniPoly([1, 1]))
    return ctx.get("ehr") == shifted, _poly_witness(ctx.get("ehr"), shifted)


def _check_route_agreement(ctx):
    a, b = ctx.get("ehr"), ctx.get("ehr_interp")
    return a == b, _poly_witness(a, b)


def _check_nvol_words(ctx):
    lead = ctx.get("ehr").leading() * factorial(ctx.n)
    words = word_count(ctx.tau, ctx.get("Pd"))
    return lead == words, {"lhs": format_rational(lead), "rhs": str(words)}


def _check_hstar_filter(ctx):
    got = hstar_filter_formula(ctx.tau, ctx.get("Pd"))
    return got == ctx.get("hstar"), _poly_witness(got, ctx.get("hstar"))


def _check_hstar_ascstar(ctx):
    if ctx.tau.min_vertex() is None:
        return None, None
    got = hstar_asc_star(ctx.tau)
    return got == ctx.get("hstar"), _poly_witness(got, ctx.get("hstar"))


def _check_hstar_words(ctx):
    got = hstar_words_descent(ctx.tau, ctx.get("Pd"))
    return got == ctx.get("hstar"), _poly_witness(got, ctx.get("hstar"))


def _check_magic(ctx):
    cs = magic_coefficients(ctx.get("ehr"), ctx.n)
    ok = all(c >= 0 for c in cs)
    return ok, {"coefficients": [format_rational(c) for c in cs]}


def _check_zeta_minus_one(ctx):
    val = ctx.get("zeta")(-1)
    sign = -1 if ctx.n % 2 else 1
    target = sign * len(ctx.get("maximal"))
    return val == target, {"lhs": format_rational(val), "rhs": str(target)}


def _check_qzeta(ctx):
    for q0 in ctx.q_samples:
        lhs, rhs = qzeta_sides(ctx.tau, q0, ctx.get("P"))
        if lhs != rhs:
            return False, {
                "q": format_rational(Fraction(q0)),
                "lhs": format_rational(lhs),
                "rhs": format_rational(rhs),
            }
    return "sampled_pass", {"q_samples": [format_rational(Fraction(q)) for q in ctx.q_samples]}


def _check_nabla_transpose(ctx):
    mine = nabla_block(ctx.tau, NABLA_BOUND, NABLA_BOUND)
    other = nabla_block(ctx.get("dual"), NABLA_BOUND, NABLA_BOUND)
    ok = mine.transpose_equal(other)
    return ok, {
        "block": [list(map(str, row)) for row in mine.entries],
        "dual_block": [list(map(str, row)) for row in other.entries],
    }


def _check_h_palindromic(ctx):
    h = ctx.get("h_vec")
    ok = all(h[i] == h[ctx.n - i] for i in range(ctx.n + 1))
    return ok, {"h": h}


def _check_h_unimodal(ctx):
    h = ctx.get("h_vec")
    ok = all(h[i] == h[ctx.n - i] for i in range(ctx.n + 1)) and all(
        h[i] <= h[i + 1] for i in range(ctx.n // 2)
    )
    return ok, {"h": h}


def _check_h_gtheorem(ctx):
    h = ctx.get("h_vec")
    return is_polytopal_h(h), {"h": h}


def _check_gamma(ctx):
    g = gamma_vector(ctx.get("h_poly"), ctx.n)
    if g is None:
        return False, {"h": ctx.get("h_vec"), "gamma": None}
    ok = all(c >= 0 for c in g)
    return ok, {"gamma": [format_rational(c) for c in g]}


def _check_h_real_rooted(ctx):
    return is_real_rooted(ctx.get("h_poly")), {"h": ctx.get("h_vec")}


def _check_h_dual(ctx):
    a, b = ctx.get("h_vec"), ctx.get("h_vec_dual")
    return a == b, {"lhs": a, "rhs": b}


def _check_m_duality(ctx):
    ok = m_duality_identity(ctx.get("transmuted"), ctx.n)
    return ok, {"transmuted": display_rows(ctx.get("transmuted"), ctx.n)}


def _check_corner_maximal(ctx):
    sign = -1 if ctx.n % 2 else 1
    corner = ctx.get("transmuted").coefficient(0, ctx.n)
    target = sign * len(ctx.get("maximal"))
    return corner == target, {"corner": format_rational(corner), "maximal": len(ctx.get("maximal"))}


def _check_rtau_a(ctx):
    a, b = ctx.get("rvee_hstar"), ctx.get("rvee_hstar_dual")
    return a == b, _poly_witness(a, b)


def _check_rtau_b(ctx):
    split = ctx.get("split")
    if split is None:
        return None, None
    t1, t2 = split
    prod = ehrhart_Rvee(t1).hstar * ehrhart_Rvee(t2).hstar
    return ctx.get("rvee_hstar") == prod, _poly_witness(ctx.get("rvee_hstar"), prod)


def _check_double_reciprocity(ctx):
    ok = double_reciprocity_check(ctx.tau, ctx.get("double_ehr"))
    return ok, {"coefficients": ctx.get("double_ehr").serialize()}


def _check_critical_line(ctx):
    p = coefficient_polynomial(ctx.get("h_vec"))
    return roots_on_critical_line(p, 1e-9), {"polynomial": p.serialize()}


_CHECK_FUNCS = {
    "ez_duality": _check_ez_duality,
    "route_agreement": _check_route_agreement,
    "nvol_words": _check_nvol_words,
    "hstar_filter": _check_hstar_filter,
    "hstar_ascstar": _check_hstar_ascstar,
    "hstar_words": _check_hstar_words,
    "magic": _check_magic,
    "zeta_minus_one": _check_zeta_minus_one,
    "qzeta": _check_qzeta,
    "nabla_transpose": _check_nabla_transpose,
    "h_palindromic": _check_h_palindromic,
    "h_unimodal": _check_h_unimodal,
    "h_gtheorem": _check_h_gtheorem,
    "gamma": _check_gamma,
    "h_real_rooted": _check_h_real_rooted,
    "h_dual": _check_h_dual,
    "m_duality": _check_m_duality,
    "corner_maximal": _check_corner_maximal,
    "rtau_a": _check_rtau_a,
    "rtau_b": _check_rtau_b,
    "double_reciprocity": _check_double_reciprocity,
    "critical_line": _check_critical_line,
}


def parse_q_samples(text):
    try:
        samples = tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise BadParameters(f"bad q sample list {text!r}") from exc
    if not samples:
        raise BadParameters("q sample list is empty")
    return samples


def _env_q_samples():
    text = os.environ.get("PPL_Q_SAMPLES")
    return parse_q_samples(text) if text else DEFAULT_Q_SAMPLES


def run_invariants(tau, checks=None, q_samples=None, sweep_caps=False, payload=True):
    """Run the requested checks on one preorder and assemble a report.

    With sweep_caps=True the expensive checks are skipped (not_applicable)
    above their configured sizes.  Theorem-kind failures raise InternalError.
    """
    if checks is None:
        names = ALL_CHECKS
    else:
        names = tuple(checks)
        unknown = [c for c in names if c not in CHECK_DEFS]
        if unknown:
            raise BadParameters(f"unknown checks: {', '.join(unknown)}")
    ctx = _Context(tau, tuple(q_samples) if q_samples else _env_q_samples())
    started = time.perf_counter()
    report = ConjectureReport(tau.canonical_key, tau.n)
    for name in names:
        kind, sweep_cap, hard_cap = CHECK_DEFS[name]
        cap = sweep_cap if sweep_caps else hard_cap
        if cap is not None and tau.n > cap:
            report.verdicts[name] = "not_applicable"
            continue
        outcome, info = _CHECK_FUNCS[name](ctx)
        if outcome is None:
            report.verdicts[name] = "not_applicable"
        elif outcome == "sampled_pass":
            report.verdicts[name] = "sampled_pass"
        elif outcome:
            report.verdicts[name] = "pass"
        else:
            report.verdicts[name] = "fail"
            if info:
                report.witnesses[name] = info
            if kind == "theorem":
                raise InternalError(
                    f"proven identity {name} failed on {tau.canonical_key}: {info}"
                )
    if payload:
        report.payload = _build_payload(ctx, report)
    report.timing = time.perf_counter() - started
    return report


def _build_payload(ctx, report):
    payload = {
        "h_vector": ctx.get("h_vec"),
        "ehr": ctx.get("ehr").serialize(),
        "hstar": ctx.get("hstar").int_coeffs(),
        "zeta": ctx.get("zeta").serialize(),
        "nvol": str(sum(ctx.get("hstar").int_coeffs())),
        "maximal_count": len(ctx.get("maximal")),
        "magic_coefficients": [
            format_rational(c) for c in magic_coefficients(ctx.get("ehr"), ctx.n)
        ],
        "m_triangle": display_rows(ctx.get("mtri").poly, ctx.n),
        "transmuted": display_rows(ctx.get("transmuted"), ctx.n),
    }
    g = gamma_vector(ctx.get("h_poly"), ctx.n)
    payload["gamma"] = None if g is None else [format_rational(c) for c in g]
    if "double_ehr" in ctx._cache:
        payload["double_ehrhart"] = ctx.get("double_ehr").serialize()
    if "rvee_hstar" in ctx._cache:
        payload["rvee_hstar"] = ctx.get("rvee_hstar").int_coeffs()
    return payload


def _sweep_worker(args):
    tau, checks, q_samples, payload = args
    return run_invariants(tau, checks, q_samples, sweep_caps=True, payload=payload)


def sweep_size_cap():
    env = os.environ.get("PPL_MAX_SIZE")
    if env is None:
        return DEFAULT_SWEEP_CAP
    try:
        return int(env)
    except ValueError as exc:
        raise BadParameters(f"bad PPL_MAX_SIZE {env!r}") from exc


def run_sweep(max_size, checks=None, jobs=1, q_samples=None, payload=True):
    """One report per isomorphism class of size <= max_size, plus a summary."""
    cap = sweep_size_cap()
    if max_size < 1:
        raise BadParameters("max size must be positive")
    if max_size > cap:
        raise SizeLimit(f"max size {max_size} exceeds the cap {cap}")
    taus = []
    for n in range(1, max_size + 1):
        taus.extend(enumerate_preorders(n))
    taus.sort(key=lambda t: (t.n, t.canonical_key))
    work = [(tau, checks, q_samples, payload) for tau in taus]
    if jobs and jobs > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_sweep_worker, work, chunksize=1))
    else:
        reports = [_sweep_worker(item) for item in work]
    reports.sort(key=lambda r: (r.size, r.tau_key))
    return reports, summarize(reports)


def summarize(reports):
    summary = {}
    for name in CHECK_DEFS:
        counts = {"pass": 0, "fail": 0, "not_applicable": 0, "sampled_pass": 0}
        seen = False
        for rep in reports:
            v = rep.verdicts.get(name)
            if v is not None:
                counts[v] += 1
                seen = True
        if seen:
            summary[name] = counts
    gating = sorted(
        {name for rep in reports for name in rep.failures(include_diagnostic=False)}
    )
    summary["_failing_checks"] = gating
    summary["_report_count"] = len(reports)
    return summary
