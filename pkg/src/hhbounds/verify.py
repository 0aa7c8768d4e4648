"""Seeded property suites behind the verify subcommand.

Three suites: "identities" (exact relations that must hold to within
integrator tolerance), "inequalities" (one- and two-sided bound
containments on a random convex corpus), and "means" (the elementary
mean chain and the certified brackets).  Every property draws from its
own deterministic generator, so a (suite, samples, seed) triple always
reproduces the same verdicts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import bounds
from .core import Interval, WeightPair
from .expr import BinOp, Const, Hyp, Node, Pow, Unary, Var, eval_value, parse, to_source
from .jets import eval_jet
from .means import (
    all_means,
    identric_enclosure,
    identric_of_squares_enclosure,
    log_mean_enclosure,
    reciprocal_log_mean_defect,
)
from .quadrature import integrate_mean
from .search import f_ratio, left_counterexample

SUITE_NAMES = ("identities", "inequalities", "means")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Case:
    label: str
    node: Node
    iv: Interval


class _Corpus:
    """Random convex integrands over subintervals of (0.1, 5)."""

    FAMILIES = ("exp(x)", "1/x", "-log(x)", "x*log(x)")

    def __init__(self, rng: random.Random, count: int):
        self.cases: list[Case] = []
        self._means: dict[int, float] = {}
        for _ in range(count):
            kind = rng.randrange(5)
            a = rng.uniform(0.1, 4.5)
            b = rng.uniform(a + 0.05, 5.0)
            if kind < 4:
                src = self.FAMILIES[kind]
            else:
                src = f"x^{rng.uniform(1.2, 6.0)!r}"
            self.cases.append(Case(src, parse(src), Interval(a, b)))

    def mean(self, i: int) -> float:
        if i not in self._means:
            c = self.cases[i]
            self._means[i] = integrate_mean(c.node, c.iv, 1e-10).value
        return self._means[i]


def _fmt(case: Case) -> str:
    return f"{case.label} on [{case.iv.a:.9g}, {case.iv.b:.9g}]"


def _ok(n: int) -> tuple[bool, str]:
    return True, f"ok ({n} checks)"


# --- identities ---------------------------------------------------------------


def _prop_oracle_cubic_exactness(rng, corpus):
    for trial in range(40):
        coeffs = [rng.uniform(-3.0, 3.0) for _ in range(4)]
        a = rng.uniform(-2.0, 2.0)
        b = a + rng.uniform(0.1, 1.5)
        node = Const(coeffs[0])
        for k in (1, 2, 3):
            node = BinOp("+", node, BinOp("*", Const(coeffs[k]), Pow(Var(), float(k))))
        anti = lambda t: sum(c * t ** (k + 1) / (k + 1) for k, c in enumerate(coeffs))
        exact = (anti(b) - anti(a)) / (b - a)
        got = integrate_mean(node, Interval(a, b), 1e-10)
        if abs(got.value - exact) > 1e-13 * (1.0 + abs(exact)):
            return False, f"cubic mean off by {got.value - exact:.3e} at trial {trial}"
    return _ok(40)


def _prop_oracle_additivity(rng, corpus):
    for i, case in enumerate(corpus.cases):
        cut = case.iv.a + case.iv.length * rng.uniform(0.3, 0.7)
        left = integrate_mean(case.node, Interval(case.iv.a, cut), 1e-11)
        right = integrate_mean(case.node, Interval(cut, case.iv.b), 1e-11)
        combined = (
            (cut - case.iv.a) * left.value + (case.iv.b - cut) * right.value
        ) / case.iv.length
        whole = corpus.mean(i)
        if abs(whole - combined) > 1e-11 * (1.0 + abs(whole)):
            return False, f"additivity off by {whole - combined:.3e} for {_fmt(case)}"
    return _ok(len(corpus.cases))


def _prop_oracle_closed_forms(rng, corpus):
    def mean_exp(a, b):
        return (math.exp(b) - math.exp(a)) / (b - a)

    def mean_recip(a, b):
        return math.log(b / a) / (b - a)

    def mean_neglog(a, b):
        return -((b * math.log(b) - b) - (a * math.log(a) - a)) / (b - a)

    def mean_xlogx(a, b):
        anti = lambda t: t * t * (2.0 * math.log(t) - 1.0) / 4.0
        return (anti(b) - anti(a)) / (b - a)

    forms = [
        ("exp(x)", mean_exp),
        ("1/x", mean_recip),
        ("-log(x)", mean_neglog),
        ("x*log(x)", mean_xlogx),
    ]
    for trial in range(100):
        src, form = forms[trial % 4]
        a = rng.uniform(0.1, 9.0)
        b = rng.uniform(a + 0.05, 10.0)
        exact = form(a, b)
        got = integrate_mean(src, Interval(a, b), 1e-10).value
        if abs(got - exact) > 1e-9 * (1.0 + abs(exact)):
            return False, f"{src} on [{a:.6g},{b:.6g}] off by {got - exact:.3e}"
    return _ok(100)


def _identity_prop(which):
    fn = (
        bounds.bisected_trapezoid_identity_residual
        if which == "bt"
        else bounds.simpson_identity_residual
    )

    def prop(rng, corpus):
        for case in corpus.cases:
            check = fn(case.node, case.iv, tol=1e-9)
            scale = 1.0 + max(abs(check.lhs), abs(check.rhs))
            if check.residual > 1e-8 * scale:
                return False, f"residual {check.residual:.3e} for {_fmt(case)}"
        return _ok(len(corpus.cases))

    return prop


def _prop_affine_exactness(rng, corpus):
    for trial in range(50):
        c = rng.uniform(-5.0, 5.0)
        d = rng.uniform(-5.0, 5.0)
        node = BinOp("+", Const(c), BinOp("*", Const(d), Var()))
        a = rng.uniform(-3.0, 3.0)
        iv = Interval(a, a + rng.uniform(0.2, 2.0))
        exact = c + d * iv.mid
        scale = 1e-12 * (1.0 + abs(exact))
        w = WeightPair.from_endpoint(rng.uniform(0.0, 0.5))
        values = (
            bounds.weighted_value(node, iv, w),
            bounds.bisected_trapezoid(node, iv),
            bounds.simpson_value(node, iv),
            bounds.classic_hh(node, iv).lower,
            bounds.classic_hh(node, iv).upper,
        )
        if any(abs(v - exact) > scale for v in values):
            return False, f"affine bound drifted at trial {trial}"
    return _ok(50)


def _prop_ratio_affine_invariance(rng, corpus):
    picks = corpus.cases[: min(20, len(corpus.cases))]
    for case in picks:
        base = f_ratio(case.node, case.iv)
        if base.degenerate:
            continue
        c = rng.uniform(0.5, 3.0)
        d0, d1 = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
        shifted = BinOp(
            "+",
            BinOp("*", Const(c), case.node),
            BinOp("+", Const(d0), BinOp("*", Const(d1), Var())),
        )
        moved = f_ratio(shifted, case.iv)
        if moved.degenerate or abs(moved.value - base.value) > 1e-8 * (1.0 + abs(base.value)):
            return False, f"ratio moved under affine map for {_fmt(case)}"
    return _ok(len(picks))


def _random_expr(rng: random.Random, depth: int) -> Node:
    roll = rng.random()
    if depth <= 0 or roll < 0.25:
        if rng.random() < 0.4:
            return Var()
        return Const(round(rng.uniform(-9.0, 9.0), 3))
    if roll < 0.5:
        op = rng.choice("+-*/")
        return BinOp(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if roll < 0.65:
        return Pow(_random_expr(rng, depth - 1), round(rng.uniform(-3.0, 4.0), 2))
    if roll < 0.75:
        return Hyp(_random_expr(rng, depth - 1), round(rng.uniform(0.01, 2.0), 3))
    fn = rng.choice(("neg", "exp", "log", "sqrt", "abs", "sin", "cos"))
    return Unary(fn, _random_expr(rng, depth - 1))


def _prop_parse_print_roundtrip(rng, corpus):
    for trial in range(50):
        tree = _random_expr(rng, 4)
        once = parse(to_source(tree))
        twice = parse(to_source(once))
        if once != twice:
            return False, f"round-trip changed tree for {to_source(tree)!r}"
    return _ok(50)


def _prop_jet_polynomial_exactness(rng, corpus):
    for trial in range(60):
        coeffs = [rng.uniform(-4.0, 4.0) for _ in range(5)]
        node = Const(coeffs[0])
        for k in (1, 2, 3, 4):
            node = BinOp("+", node, BinOp("*", Const(coeffs[k]), Pow(Var(), float(k))))
        x = rng.uniform(-2.0, 2.0)
        got = eval_jet(node, x).derivatives
        cur = list(coeffs)
        for order in range(5):
            exact = sum(c * x ** k for k, c in enumerate(cur))
            if abs(got[order] - exact) > 1e-12 * (1.0 + abs(exact)):
                return False, f"order-{order} derivative off at trial {trial}"
            cur = [k * c for k, c in enumerate(cur)][1:]
    return _ok(60)


# --- inequalities -------------------------------------------------------------


def _prop_classic_containment(rng, corpus):
    for i, case in enumerate(corpus.cases):
        mean = corpus.mean(i)
        fm = eval_value(case.node, case.iv.mid)
        trap = 0.5 * (eval_value(case.node, case.iv.a) + eval_value(case.node, case.iv.b))
        bt = bounds.bisected_trapezoid(case.node, case.iv)
        if not (fm <= mean + 1e-10 and mean <= bt + 1e-10 and bt <= trap + 1e-12):
            return False, f"containment chain broken for {_fmt(case)}"
    return _ok(len(corpus.cases))


def _prop_weight_monotonicity(rng, corpus):
    for case in corpus.cases:
        fm = eval_value(case.node, case.iv.mid)
        lo = rng.uniform(0.25, 0.5)
        hi = rng.uniform(lo, 0.5)
        v_lo = bounds.weighted_value(case.node, case.iv, WeightPair.from_endpoint(lo))
        v_hi = bounds.weighted_value(case.node, case.iv, WeightPair.from_endpoint(hi))
        v_mid = bounds.weighted_value(case.node, case.iv, WeightPair.from_endpoint(0.0))
        scale = 1e-12 * (1.0 + abs(v_hi))
        if v_lo > v_hi + scale or abs(v_mid - fm) > scale:
            return False, f"weight monotonicity broken for {_fmt(case)}"
    return _ok(len(corpus.cases))


def _prop_defect_sandwich(rng, corpus):
    tested = 0
    for i, case in enumerate(corpus.cases):
        prof = bounds.convexity_profile(case.node, case.iv, 65)
        if prof.f2_shape == "indeterminate":
            continue
        tested += 1
        encl = bounds.bisected_trapezoid_defect(case.node, case.iv, prof)
        defect = bounds.bisected_trapezoid(case.node, case.iv) - corpus.mean(i)
        if not encl.contains(defect, slack=1e-9):
            return False, f"defect {defect:.9g} outside sandwich for {_fmt(case)}"
    return _ok(tested)


def _prop_simpson_defect_bound(rng, corpus):
    tested = 0
    for i, case in enumerate(corpus.cases):
        prof = bounds.convexity_profile(case.node, case.iv, 65)
        if prof.f2_shape == "indeterminate":
            continue
        tested += 1
        encl = bounds.simpson_defect_bound(case.node, case.iv, prof)
        oriented = bounds.simpson_value(case.node, case.iv) - corpus.mean(i)
        if prof.f2_shape == "concave":
            oriented = -oriented
        if not encl.contains(oriented, slack=1e-9):
            return False, f"oriented defect {oriented:.9g} outside bound for {_fmt(case)}"
    return _ok(tested)


def _prop_simpson_direction(rng, corpus):
    tested = 0
    for i, case in enumerate(corpus.cases):
        prof = bounds.convexity_profile(case.node, case.iv, 65)
        if prof.f2_shape == "indeterminate":
            continue
        tested += 1
        one_sided = bounds.simpson_one_sided_bound(case.node, case.iv, prof)
        mean = corpus.mean(i)
        ok = mean <= one_sided.value + 1e-9 if one_sided.is_upper else mean >= one_sided.value - 1e-9
        if not ok:
            return False, f"one-sided direction wrong for {_fmt(case)}"
    return _ok(tested)


def _prop_simpson_error_bound(rng, corpus):
    for i, case in enumerate(corpus.cases):
        est = bounds.simpson_estimate(case.node, case.iv)
        if abs(est.value - corpus.mean(i)) > est.err_bound + 1e-9:
            return False, f"error exceeds bound for {_fmt(case)}"
    return _ok(len(corpus.cases))


def _prop_symmetric_triple(rng, corpus):
    checks = 0
    for case in corpus.cases:
        for _ in range(5):
            t = rng.uniform(0.0, 1.0)
            lo, mid, hi = bounds.symmetric_point_triple(case.node, case.iv, t)
            slack = 1e-12 * (1.0 + abs(hi))
            if lo > mid + slack or mid > hi + slack:
                return False, f"triple not ordered at t={t:.6g} for {_fmt(case)}"
            checks += 1
    return _ok(checks)


def _prop_ratio_range(rng, corpus):
    tested = 0
    for i, case in enumerate(corpus.cases):
        fa = eval_value(case.node, case.iv.a)
        fm = eval_value(case.node, case.iv.mid)
        fb = eval_value(case.node, case.iv.b)
        den = fa + fb - 2.0 * fm
        if abs(den) <= 1e-12 * (1.0 + abs(fa) + abs(fb)):
            continue
        tested += 1
        value = (corpus.mean(i) - fm) / den
        if not -1e-9 <= value <= 0.25 + 1e-9:
            return False, f"ratio {value:.9g} out of range for {_fmt(case)}"
    return _ok(tested)


def _prop_left_counterexample_grid(rng, corpus):
    for k in range(50):
        gamma = 0.01 + (0.5 - 0.01) * (k + 1) / 50.0
        report = left_counterexample(gamma)
        if not report.violated:
            return False, f"no violation at gamma={gamma:.6g}"
    return _ok(50)


# --- means --------------------------------------------------------------------


def _rand_pair(rng) -> tuple[float, float]:
    a = rng.uniform(1e-3, 1e3)
    b = rng.uniform(1e-3, 1e3)
    return (a, b) if a != b else (a, b + 1.0)


def _prop_means_chain(rng, corpus, trials: int):
    for _ in range(trials):
        a, b = _rand_pair(rng)
        ms = all_means(a, b)  # constructor enforces the chain
        if ms.harmonic > ms.gini:
            return False, f"chain inverted for ({a}, {b})"
    return _ok(trials)


def _prop_means_symmetry_homogeneity(rng, corpus, trials: int):
    for _ in range(trials):
        a, b = _rand_pair(rng)
        fwd = all_means(a, b).as_dict()
        rev = all_means(b, a).as_dict()
        k = rng.choice((1e-3, 0.37, 7.3, 1e3))
        scaled = all_means(k * a, k * b).as_dict()
        for name in fwd:
            if abs(fwd[name] - rev[name]) > 1e-12 * fwd[name]:
                return False, f"{name} not symmetric at ({a:.6g}, {b:.6g})"
            if abs(scaled[name] - k * fwd[name]) > 1e-12 * scaled[name]:
                return False, f"{name} not homogeneous at ({a:.6g}, {b:.6g}), k={k}"
    return _ok(trials)


def _bracket_prop(kind: str):
    def prop(rng, corpus, trials: int, printed: bool):
        for _ in range(trials):
            a, b = _rand_pair(rng)
            ms = all_means(a, b)
            if kind == "L":
                encl, target = log_mean_enclosure(a, b), ms.logarithmic
            elif kind == "recipL":
                encl = reciprocal_log_mean_defect(a, b)
                target = 0.5 * (1.0 / ms.arithmetic + 1.0 / ms.harmonic) - 1.0 / ms.logarithmic
            elif kind == "I":
                encl, target = identric_enclosure(a, b, use_printed_constant=printed), ms.identric
            else:
                encl, target = identric_of_squares_enclosure(a, b), all_means(a * a, b * b).identric
            if not encl.contains(target, slack=1e-9 * (1.0 + abs(target))):
                return False, f"target {target:.9g} escaped [{encl.lower:.9g}, {encl.upper:.9g}] at ({a:.9g}, {b:.9g})"
        return _ok(trials)

    return prop


def _prop_upper_below_arithmetic(rng, corpus, trials: int):
    for _ in range(trials):
        a, b = _rand_pair(rng)
        ms = all_means(a, b)
        if (ms.arithmetic + 2.0 * ms.geometric) / 3.0 > ms.arithmetic * (1.0 + 1e-12):
            return False, f"(A+2G)/3 above A at ({a:.6g}, {b:.6g})"
    return _ok(trials)


def _prop_means_cross_module(rng, corpus, trials: int):
    for _ in range(min(trials, 40)):
        a = rng.uniform(0.2, 4.0)
        b = rng.uniform(a * 1.05, 5.0)
        iv = Interval(a, b)
        # defect bracket for 1/t is the reciprocal-log-mean bracket
        lhs = reciprocal_log_mean_defect(a, b)
        rhs = bounds.bisected_trapezoid_defect("1/x", iv)
        if abs(lhs.lower - rhs.lower) > 1e-10 * (1.0 + abs(rhs.lower)) or abs(
            lhs.upper - rhs.upper
        ) > 1e-10 * (1.0 + abs(rhs.upper)):
            return False, f"reciprocal defect mismatch at ({a:.6g}, {b:.6g})"
        # log-mean correction is the Simpson defect bound for e^t on log axes
        log_iv = Interval(math.log(a), math.log(b))
        correction = log_mean_enclosure(a, b)
        simpson = bounds.simpson_defect_bound("exp(x)", log_iv)
        width = correction.upper - correction.lower
        if abs(width - simpson.upper) > 1e-10 * (1.0 + simpson.upper):
            return False, f"log-mean correction mismatch at ({a:.6g}, {b:.6g})"
        # identric exponent is the Simpson defect bound for -log t
        encl = identric_enclosure(a, b)
        exponent = math.log(encl.upper / encl.lower)
        neglog = bounds.simpson_defect_bound("-log(x)", iv)
        if abs(exponent - neglog.upper) > 1e-10 * (1.0 + neglog.upper):
            return False, f"identric exponent mismatch at ({a:.6g}, {b:.6g})"
    return _ok(min(trials, 40))


# --- suite assembly -----------------------------------------------------------


def run_suite(
    suite: str,
    samples: int = 200,
    seed: int = 1,
    printed_constant: bool = False,
) -> list[PropertyResult]:
    """Run one suite (or "all") and return per-property verdicts."""
    if suite == "all":
        out: list[PropertyResult] = []
        for name in SUITE_NAMES:
            out.extend(run_suite(name, samples, seed, printed_constant))
        return out
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES + ('all',)}")
    if samples < 1:
        raise ValueError("samples must be positive")

    mean_trials = max(10 * samples, 100)
    bracket_trials = max(samples, 50)
    if suite == "identities":
        props = [
            ("oracle-cubic-exactness", _prop_oracle_cubic_exactness),
            ("oracle-additivity", _prop_oracle_additivity),
            ("oracle-closed-forms", _prop_oracle_closed_forms),
            ("bisected-trapezoid-identity", _identity_prop("bt")),
            ("simpson-identity", _identity_prop("simpson")),
            ("affine-exactness", _prop_affine_exactness),
            ("ratio-affine-invariance", _prop_ratio_affine_invariance),
            ("parse-print-roundtrip", _prop_parse_print_roundtrip),
            ("jet-polynomial-exactness", _prop_jet_polynomial_exactness),
        ]
        runner = lambda fn, rng, corpus: fn(rng, corpus)
    elif suite == "inequalities":
        props = [
            ("classic-containment", _prop_classic_containment),
            ("weight-monotonicity", _prop_weight_monotonicity),
            ("defect-sandwich", _prop_defect_sandwich),
            ("simpson-defect-bound", _prop_simpson_defect_bound),
            ("simpson-direction", _prop_simpson_direction),
            ("simpson-error-bound", _prop_simpson_error_bound),
            ("symmetric-triple", _prop_symmetric_triple),
            ("ratio-range", _prop_ratio_range),
            ("left-counterexample-grid", _prop_left_counterexample_grid),
        ]
        runner = lambda fn, rng, corpus: fn(rng, corpus)
    else:
        props = [
            ("means-chain", lambda r, c: _prop_means_chain(r, c, mean_trials)),
            (
                "means-symmetry-homogeneity",
                lambda r, c: _prop_means_symmetry_homogeneity(r, c, bracket_trials),
            ),
            (
                "log-mean-bracket",
                lambda r, c: _bracket_prop("L")(r, c, bracket_trials, printed_constant),
            ),
            (
                "reciprocal-log-mean-defect",
                lambda r, c: _bracket_prop("recipL")(r, c, bracket_trials, printed_constant),
            ),
            (
                "identric-bracket",
                lambda r, c: _bracket_prop("I")(r, c, bracket_trials, printed_constant),
            ),
            (
                "identric-square-bracket",
                lambda r, c: _bracket_prop("Isq")(r, c, bracket_trials, printed_constant),
            ),
            (
                "upper-below-arithmetic",
                lambda r, c: _prop_upper_below_arithmetic(r, c, bracket_trials),
            ),
            ("means-cross-module", lambda r, c: _prop_means_cross_module(r, c, bracket_trials)),
        ]
        runner = lambda fn, rng, corpus: fn(rng, corpus)

    corpus = (
        _Corpus(random.Random(seed), samples) if suite in ("identities", "inequalities") else None
    )
    results = []
    for idx, (name, fn) in enumerate(props):
        rng = random.Random(seed * 10007 + idx)
        passed, detail = runner(fn, rng, corpus)
        results.append(PropertyResult(f"{suite}:{name}", passed, detail))
    return results
