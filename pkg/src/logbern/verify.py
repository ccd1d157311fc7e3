"""Invariant suites with machine-readable results.

Each suite returns a list of check records::

    {"id": "warp.domination", "passed": True, "measured": ..., "tolerance": ...}

Identifiers are stable; the CLI ``verify`` command serialises them to JSON.
"""
import math

import numpy as np

from . import analysis, core, denoise, functions, operators, shape
from .grid import interior_grid, uniform_grid
from .warp import WarpContext, check_mu, gamma_n, warp, warp_gap, warp_gap_asymptotics


def _check(ident, passed, measured=None, tolerance=None, **extra):
    rec = {"id": ident, "passed": bool(passed), "measured": measured, "tolerance": tolerance}
    rec.update(extra)
    return rec


def _l(mu):
    return lambda x: np.log1p(mu + x)


# ---------------------------------------------------------------------------


def suite_core(mu=1.0, fn=None, grid_points=1001):
    x = uniform_grid(grid_points)
    worst_pu, worst_neg = 0.0, 0.0
    for n in (1, 2, 5, 10, 50, 100, 500, 1000, 2000):
        w = core.basis(n, x)
        worst_pu = max(worst_pu, float(np.max(np.abs(w.sum(axis=1) - 1.0))))
        worst_neg = min(worst_neg, float(np.min(w)))
    integ = max(abs(core.weight_integral(n, k) - 1.0 / (n + 1))
                for n in range(0, 51, 5) for k in range(n + 1))
    xm = uniform_grid(101)
    mom = 0.0
    for n in (1, 2, 8, 16, 64):
        mom = max(mom, float(np.max(np.abs(core.algebraic_moment(n, 0, xm) - 1.0))),
                  float(np.max(np.abs(core.algebraic_moment(n, 1, xm)))),
                  float(np.max(np.abs(core.algebraic_moment(n, 2, xm) - n * xm * (1 - xm)))))
    viol = 0
    for n in (4, 16, 64, 256, 1024):
        viol += int(np.sum(core.first_absolute_moment(n, x) >= 0.5 / math.sqrt(n)))
    return [
        _check("core.partition_of_unity", worst_pu <= 1e-10, worst_pu, 1e-10),
        _check("core.nonnegativity", worst_neg >= 0.0, worst_neg, 0.0),
        _check("core.integral_identity", integ <= 1e-8, integ, 1e-8),
        _check("core.moment_identities", mom <= 1e-10, mom, 1e-10),
        _check("core.absolute_moment_bound", viol == 0, viol, 0),
    ]


def suite_warp(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    x = uniform_grid(grid_points)
    checks = []
    ns = (1, 2, 5, 10, 100, 1000, 10000)
    rng_ok = dom = 0.0
    ends_ok = True
    mono = conc = 0.0
    for n in ns:
        ctx = WarpContext(mu, n)
        a = warp(ctx, x)
        rng_ok = max(rng_ok, float(max(-a.min(), a.max() - 1.0, 0.0)))
        ends_ok &= a[0] == 0.0 and a[-1] == 1.0
        dom = min(dom, float(np.min(a - x)))
        mono = min(mono, float(np.min(np.diff(a))))
        conc = max(conc, float(np.max(a[2:] - 2 * a[1:-1] + a[:-2])))
    checks.append(_check("warp.range_fixed_points", rng_ok == 0.0 and ends_ok, rng_ok, 0.0))
    checks.append(_check("warp.domination", dom >= -1e-14, dom, -1e-14))
    checks.append(_check("warp.monotone_concave", mono >= 0.0 and conc <= 1e-12,
                         {"min_increment": mono, "max_second_difference": conc}, 1e-12))
    threshold = math.ceil(1.1 / (8.0 * (1.0 + mu) * 1e-3))
    seq = [float(np.max(np.abs(warp_gap(WarpContext(mu, n), x)))) for n in sorted({1, 10, 100, threshold})]
    checks.append(_check("warp.uniform_convergence",
                         all(b < a for a, b in zip(seq, seq[1:]))
                         and float(np.max(np.abs(warp_gap(WarpContext(mu, threshold), x)))) < 1e-3,
                         seq, 1e-3, threshold_n=threshold))
    worst = 0.0
    for n in (1, 2, 3, 10, 50, 100):
        worst = min(worst, float(np.min(warp(WarpContext(mu, n), x) - warp(WarpContext(mu, n + 1), x))))
    checks.append(_check("warp.monotone_in_n", worst >= 0.0, worst, 0.0))
    rep = warp_gap_asymptotics(mu, [100, 1000, 10000], x)
    err = abs(rep.n_gamma[-1] - rep.limit) / rep.limit
    toward = all(abs(b - rep.limit) < abs(a - rep.limit) for a, b in zip(rep.n_gamma, rep.n_gamma[1:]))
    checks.append(_check("warp.n_gamma_limit", err <= 0.01 and toward,
                         {"n": rep.n_list, "n_gamma": rep.n_gamma}, 0.01, limit=rep.limit))
    return checks


def suite_operators(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    x = uniform_grid(grid_points)
    rng = np.random.default_rng(0)
    lnf = functions.ln_mu_function(mu)
    repro = max(float(np.max(np.abs(operators.logarithmic(lnf, mu, n, x) - np.log1p(mu + x))))
                for n in range(1, 201))
    f, g = np.sin, (lambda t: t * t)
    lin = 0.0
    pos = 0.0
    for spec in (operators.OperatorSpec("bernstein", 30),
                 operators.OperatorSpec("logarithmic", 30, mu),
                 operators.OperatorSpec("exponential", 30, mu),
                 operators.OperatorSpec("king", 30, node_fn=WarpContext(mu, 30))):
        lhs = spec.apply(lambda t: 2.5 * f(t) - 1.5 * g(t), x)
        rhs = 2.5 * spec.apply(f, x) - 1.5 * spec.apply(g, x)
        lin = max(lin, float(np.max(np.abs(lhs - rhs))))
        pos = min(pos, float(np.min(spec.apply(lambda t: np.abs(np.sin(9 * t)), x))))
    fac = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 201))
        m = float(rng.uniform(0.05, 3.0))
        xi = rng.uniform(0.0, 1.0, 5)
        c = rng.normal(size=3)
        h = lambda t, c=c: c[0] + c[1] * np.sin(3 * t) + c[2] * t * t  # noqa: E731
        fac = max(fac, float(np.max(np.abs(operators.logarithmic(h, m, n, xi)
                                            - operators.logarithmic_direct(h, m, n, xi)))))
    king = 0.0
    for n in (1, 5, 40, 200):
        for r in (WarpContext(mu, n), lambda t: t * t, lambda t: 0.5 + 0.5 * np.sin(3 * t) ** 2 * 0.9):
            rv = np.asarray(r(x))
            e0 = operators.king(lambda t: np.ones_like(t), n, x, r) - 1.0
            e1 = operators.king(lambda t: t, n, x, r) - rv
            e2 = operators.king(lambda t: t * t, n, x, r) - (rv / n + (n - 1) / n * rv ** 2)
            king = max(king, float(np.max(np.abs(np.concatenate([e0, e1, e2])))))
    conv = {}
    conv_ok = True
    ns = [10, 20, 40, 80, 160, 320, 640]
    for name in ("square", "sin", "abs_center"):
        fun = functions.builtin(name, mu)
        errs = [analysis.sup_error(fun, mu, n, x) for n in ns]
        factor = errs[0] / errs[-1]
        # a corner converges like n^(-1/2): 64x the degree buys about 8x
        need = 10.0 if name != "abs_center" else 0.9 * math.sqrt(ns[-1] / ns[0])
        ok = all(b < a for a, b in zip(errs, errs[1:])) and factor >= need
        conv_ok &= ok
        conv[name] = {"errors": errs, "factor": factor, "required": need}
    return [
        _check("operators.reproduction", repro <= 1e-10, repro, 1e-10),
        _check("operators.linearity_positivity", lin <= 1e-10 and pos >= -1e-12,
               {"linearity": lin, "min_on_nonnegative": pos}, 1e-10),
        _check("operators.factorization", fac <= 1e-12, fac, 1e-12),
        _check("operators.king_identities", king <= 1e-10, king, 1e-10),
        _check("operators.uniform_convergence", conv_ok, conv),
    ]


def suite_bound(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    funcs = [fn] if fn is not None else [functions.builtin(k, mu) for k in ("square", "sin", "abs_center")]
    x = uniform_grid(grid_points)
    rows, ok = [], True
    for f in funcs:
        for n in (16, 64, 256, 1024):
            err = analysis.sup_error(f, mu, n, x)
            bound = analysis.error_bound(f, mu, n)
            ok &= err <= bound + 1e-10
            rows.append({"fn": f.name, "n": n, "error": err, "bound": bound, "margin": bound - err})
    return [_check("analysis.bound_validity", ok, rows, 1e-10)]


def suite_voronovskaja(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    funcs = [fn] if fn is not None else [functions.builtin(k, mu) for k in ("square", "exp", "sin")]
    xs = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    ns = [250, 500, 1000, 2000, 4000]
    ok, rows = True, []
    for f in funcs:
        dev = np.array([analysis.voronovskaja_residual(f, mu, n, xs).deviation for n in ns])
        mono = bool(np.all(dev[1:] <= dev[:-1] * 1.05))
        ok &= mono
        rows.append({"fn": f.name, "n": ns, "deviation": dev.tolist()})
    xi = interior_grid(199)
    worst = 0.0
    for f in funcs:
        if not f.has_derivatives:
            continue
        fm = functions.f_mu(f, mu)
        for order, fd in ((1, fm.d1), (2, fm.d2)):
            exact = fd(xi)
            num = functions.finite_difference(fm, xi, order)
            worst = max(worst, float(np.max(np.abs(exact - num) / np.maximum(1.0, np.abs(exact)))))
    same = all(np.array_equal(analysis.differential_operator_D(f, mu, xi),
                              analysis.voronovskaja_limit(f, mu, xi)) for f in funcs)
    return [
        _check("analysis.voronovskaja_convergence", ok, rows, 0.05),
        _check("analysis.derivative_consistency", worst <= 1e-5, worst, 1e-5),
        _check("analysis.equivalence", same, 0 if same else 1, 0),
    ]


def suite_saturation(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    xi = interior_grid(999)
    if fn is not None:
        funcs = [fn]
    else:
        rng = np.random.default_rng(20)
        funcs = [analysis.saturation_solution(analysis.SaturationCoefficients(a, b), mu)
                 for a, b in rng.uniform(-2.0, 2.0, size=(20, 2))]
    worst = max(float(np.max(np.abs(analysis.differential_operator_D(f, mu, xi)))) for f in funcs)
    x = uniform_grid(grid_points)
    decay = []
    decay_ok = True
    for f in funcs:
        e100 = 100 * analysis.sup_error(f, mu, 100, x)
        e1600 = 1600 * analysis.sup_error(f, mu, 1600, x)
        ok = e1600 <= e100 / 4.0 or e100 <= 1e-11
        decay_ok &= ok
        decay.append({"fn": f.name, "n100": e100, "n1600": e1600})
    return [
        _check("analysis.kernel_annihilation", worst <= 1e-10, worst, 1e-10),
        _check("analysis.saturation_decay", decay_ok, decay, 0.25),
    ]


def _increasing_convex_cases(mu):
    lg = _l(mu)
    fmus = [lambda t: t, lambda t: t * t, lambda t: t ** 3, lambda t: np.exp(t),
            lambda t: np.exp(2 * t) - t, lambda t: t + t * t, lambda t: np.cosh(t),
            lambda t: (t + 0.5) ** 1.5, lambda t: t ** 4 + 0.1 * t, lambda t: 1.0 / (1.2 - t)]
    return [functions.AnalyticFunction(lambda t, g=g: g(t) * lg(t), name=f"icx{i}")
            for i, g in enumerate(fmus)]


def _increasing_concave_cases(mu):
    lg = _l(mu)
    fmus = [lambda t: np.sqrt(t + 0.1), lambda t: np.log1p(t), lambda t: 1.0 - np.exp(-3 * t),
            lambda t: t - 0.4 * t * t, lambda t: np.arctan(2 * t)]
    return [functions.AnalyticFunction(lambda t, g=g: g(t) * lg(t), name=f"icc{i}")
            for i, g in enumerate(fmus)]


def random_smooth_function(rng):
    """Random trigonometric polynomial plus a quadratic; used by BV property checks."""
    deg = int(rng.integers(1, 6))
    a = rng.normal(size=deg)
    b = rng.normal(size=deg)
    q = rng.normal(size=3)
    freq = np.arange(1, deg + 1) * float(rng.uniform(1.0, 4.0))

    def ev(t):
        t = np.asarray(t, dtype=float)
        s = q[0] + q[1] * t + q[2] * t * t
        for ai, bi, w in zip(a, b, freq):
            s = s + ai * np.sin(w * t) + bi * np.cos(w * t)
        return s

    return functions.AnalyticFunction(ev, name="random")


def suite_shape(mu=1.0, fn=None, grid_points=1001):
    mu = check_mu(mu)
    x = uniform_grid(grid_points)
    xi = x[1:-1]
    agree = 0.0
    for f in (functions.builtin("square"), functions.builtin("sin"), functions.builtin("exp")):
        for n in (5, 20, 100):
            h = 1e-5
            xc = np.clip(xi, 2 * h, 1 - 2 * h)
            num = (operators.logarithmic(f, mu, n, xc + h) - operators.logarithmic(f, mu, n, xc - h)) / (2 * h)
            ana = shape.lnf_derivative(f, mu, n, xc)
            agree = max(agree, float(np.max(np.abs(num - ana) / np.maximum(1.0, np.abs(ana)))))
    mono = min(float(np.min(shape.lnf_derivative(f, mu, n, x)))
               for f in _increasing_convex_cases(mu) + _increasing_concave_cases(mu) for n in (3, 20, 100))
    conc = max(float(np.max(shape.second_derivative_ratio(f, mu, n, xi)))
               for f in _increasing_concave_cases(mu) for n in (3, 20, 100))
    chain = []
    chain_ok = True
    for f in _increasing_convex_cases(mu):
        rep = shape.monotone_in_n_check(f, mu, [1, 2, 5, 10, 20, 50], x)
        chain_ok &= rep.passed
        chain.append({"fn": f.name, "min_step_gap": min(rep.min_step_gap),
                      "min_limit_gap": min(rep.min_limit_gap)})
    return [
        _check("shape.derivative_agreement", agree <= 1e-5, agree, 1e-5),
        _check("shape.monotonicity", mono >= -1e-10, mono, -1e-10),
        _check("shape.concavity", conc <= 1e-10, conc, 1e-10),
        _check("shape.monotone_in_n", chain_ok, chain, 1e-10),
    ]


def suite_bv(mu=1.0, fn=None, grid_points=1001, cases=100, seed=7):
    mu = check_mu(mu)
    rng = np.random.default_rng(seed)
    worst = math.inf
    violations = 0
    funcs = [fn] if fn is not None else [random_smooth_function(rng) for _ in range(cases)]
    for f in funcs:
        n = int(rng.choice([5, 20, 80]))
        rep = shape.bv_contraction_check(f, mu, n)
        worst = min(worst, rep.margin)
        violations += int(not rep.passed)
    return [_check("shape.bv_contraction", violations == 0,
                   {"violations": violations, "min_margin": worst}, 1e-9)]


def suite_denoise(mu=denoise.REFERENCE_MUS[0], fn=None, grid_points=1001):
    mu = check_mu(mu)
    f = functions.reference_signal() if fn is None else fn
    x = uniform_grid(grid_points)
    s = denoise.synthesize_noisy(f, mu, 30)
    r1 = denoise.denoise(s, x).reconstruction.values
    r2 = denoise.denoise(s, x).reconstruction.values
    lng = lambda t: np.log((1.0 + mu + t) * f(t))  # noqa: E731
    cons = float(np.max(np.abs(denoise.log_operator_of_samples(s, x)
                               - operators.logarithmic(lng, mu, 30, x))))
    errs = [denoise.denoise(denoise.synthesize_noisy(f, mu, n), x, truth=f).max_error
            for n in (10, 30, 100, 300)]
    kern = 0.0
    for c in (-0.7, 0.5, 2.0):
        g = functions.AnalyticFunction(lambda t, c=c: np.exp(c * np.log1p(mu + t)))
        for n in (1, 7, 50):
            kern = max(kern, denoise.denoise(denoise.synthesize_noisy(g, mu, n), x, truth=g).max_error)
    return [
        _check("denoise.determinism", np.array_equal(r1, r2), 0),
        _check("denoise.consistency", cons <= 1e-12, cons, 1e-12),
        _check("denoise.asymptotic_recovery", all(b < a for a, b in zip(errs, errs[1:])), errs),
        _check("denoise.kernel_exactness", kern <= 1e-10, kern, 1e-10),
    ]


SUITES = {
    "core": suite_core,
    "warp": suite_warp,
    "operators": suite_operators,
    "bound": suite_bound,
    "voronovskaja": suite_voronovskaja,
    "saturation": suite_saturation,
    "shape": suite_shape,
    "bv": suite_bv,
    "denoise": suite_denoise,
}


def run_suite(name, mu=1.0, fn=None, grid_points=1001):
    if name not in SUITES:
        raise KeyError(name)
    checks = SUITES[name](mu=mu, fn=fn, grid_points=grid_points)
    return {"suite": name, "mu": mu, "fn": None if fn is None else fn.name,
            "passed": all(c["passed"] for c in checks), "checks": checks}
