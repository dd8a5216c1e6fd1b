"""Smoke test for the python extension: a few values cross-checked against
closed forms, one factorization, and one verification suite."""

import cmath
import sys

import _qseries as qs


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    ctx = qs.QContext(0.5)

    # (x)_0 = 1 and the one-step recursion (x)_{n+1} = (1 - x q^n) (x)_n.
    assert close(qs.qpoch(0.3, 0, ctx), 1.0)
    assert close(qs.qpoch(0.3, 3, ctx), qs.qpoch(0.3, 2, ctx) * (1 - 0.3 * 0.5**2))

    # theta(q x) = -theta(x) / x.
    x = 0.7 + 0.2j
    assert close(qs.theta(0.5 * x, ctx), -qs.theta(x, ctx) / x)

    # Ramanujan's bilateral summation at y = 1.
    spec1 = qs.SeriesSpec([2.0], [0.3])
    assert close(qs.psi(spec1, 0.4, 1.0, ctx), qs.one_psi_one_rhs(2.0, 0.3, 0.4, ctx))

    # r = 1 theta-product form of the analytic numerator.
    y = 1.2
    want = qs.qpoch_inf(0.3 / 2.0, ctx) * qs.theta(2.0 * 0.5 * y, ctx)
    assert close(qs.psi_star(spec1, 0.5, y, ctx), want)

    # r = 2 factorization: tiny residual and the zero-class product relation.
    spec2 = qs.SeriesSpec([2.0, 3.0], [0.1, 0.15])
    res = qs.factorize(spec2, 0.4, ctx)
    assert res.residual < 1e-8
    prod = res.rhos[0].rep * res.rhos[1].rep * 2.0 * 3.0 * 0.4
    assert close(prod, 1.0, 1e-8)

    # Elliptic inversion round trip.
    yq = qs.theta_quotient(qs.jacobi_inverse(1.0 + 0.5j, ctx), ctx)
    assert close(yq, 1.0 + 0.5j, 1e-8)

    # One full verification suite.
    report = qs.run_suite("classical", q=0.5, seed=7, samples=10)
    assert report.all_pass(), report.summary()

    # Errors surface as the dedicated exception type.
    try:
        qs.psi(spec2, 1.5, 0.9, ctx)
    except qs.QSeriesError:
        pass
    else:
        raise AssertionError("expected QSeriesError outside the annulus")

    print("python smoke: OK")
    return 0


if __name__ == "__main__":
    sys.exit(main())
