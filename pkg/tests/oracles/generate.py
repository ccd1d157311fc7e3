"""Regenerate the frozen reference values used by the tests.

Everything here is computed with mpmath at 50 digits or with sympy, from
the defining formulas, without importing logbern.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 50


def lop(f, mu, n, x):
    mu, x = mp.mpf(mu), mp.mpf(x)
    eps = 1 / (n * (1 + mu))
    a = mp.log1p(x * eps) / mp.log1p(eps)
    lg = lambda t: mp.log(1 + mu + t)
    return lg(x) * mp.fsum(f(mp.mpf(k) / n) / lg(mp.mpf(k) / n) * mp.binomial(n, k) * a**k * (1 - a) ** (n - k)
                           for k in range(n + 1))


def gamma(mu, n):
    mu = mp.mpf(mu)
    eps = 1 / (n * (1 + mu))
    xs = 1 / mp.log1p(eps) - 1 / eps
    return xs, mp.log1p(xs * eps) / mp.log1p(eps) - xs


def d_operator(expr, mu, x0):
    x = sp.symbols("x")
    fm = expr / sp.log(1 + mu + x)
    val = sp.Rational(1, 2) * sp.log(1 + mu + x) * (x - x**2) * (sp.diff(fm, x) / (1 + mu) + sp.diff(fm, x, 2))
    return sp.N(val.subs(x, x0), 30)


if __name__ == "__main__":
    print("L square mu=1 n=5 x=0.3", mp.nstr(lop(lambda t: t * t, 1, 5, "0.3"), 20))
    print("L sin mu=0.2688 n=7 x=0.61", mp.nstr(lop(mp.sin, "0.2688", 7, "0.61"), 20))
    print("L exp mu=2.5 n=40 x=0.05", mp.nstr(lop(mp.exp, "2.5", 40, "0.05"), 20))
    for mu, n in [(1, 10), (1, 100), (1, 10000), ("0.2688", 30)]:
        xs, g = gamma(mu, n)
        print(f"gamma mu={mu} n={n}", mp.nstr(xs, 20), mp.nstr(g, 20), mp.nstr(n * g, 20))
    eps = 1 / (mp.mpf(50) * 2)
    print("gap mu=1 n=50 x=0.25", mp.nstr(mp.log1p(mp.mpf("0.25") * eps) / mp.log1p(eps) - mp.mpf("0.25"), 20))
    print("D square mu=1 x=0.3", d_operator(sp.Symbol("x") ** 2, 1, sp.Rational(3, 10)))
    print("D sin mu=1/2 x=0.7", d_operator(sp.sin(sp.Symbol("x")), sp.Rational(1, 2), sp.Rational(7, 10)))
    print("abs moment n=10 x=0.37", mp.nstr(mp.fsum(abs(mp.mpf(k) - 10 * mp.mpf("0.37")) / 10 * mp.binomial(10, k)
                                                     * mp.mpf("0.37") ** k * mp.mpf("0.63") ** (10 - k)
                                                     for k in range(11)), 20))
