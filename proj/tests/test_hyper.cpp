#include <vector>

#include "doctest.h"
#include "hyper.hpp"
#include "specialfn.hpp"
#include "test_support.hpp"

using namespace cmp;
using hyper::EvalOpts;
using hyper::PfqParams;
using hyper::Strategy;

namespace {
constexpr unsigned kPrec = 256;

EvalOpts opts(Strategy s, int depth = 0) { return EvalOpts{s, depth}; }
}  // namespace

TEST_CASE("margin") {
    PfqParams p{{Rational(1, 3), Rational(1, 4), Rational(1, 5)},
                {Rational(5, 6), Rational(6, 5)}};
    CHECK(hyper::margin(p) == Rational(5, 4));
}

TEST_CASE("series matches the naive reference inside the disc") {
    PfqParams p{{Rational(1, 3), Rational(1, 4)}, {Rational(5, 6)}};
    Rational x(1, 2);
    Real got = hyper::pfq(p, Real::of(x, kPrec), kPrec);
    Real want = ts::naive_pfq(p.upper, p.lower, x, 400, kPrec + 32);
    CHECK(ts::rel_diff(got, want) < 1e-60);

    // x = 0 collapses to 1.
    Real one = hyper::pfq(p, Real(kPrec), kPrec);
    CHECK(ts::rel_diff(one, Real::of_long(1, kPrec)) < 1e-70);
}

TEST_CASE("terminating series is exact regardless of |x|") {
    PfqParams p{{Rational(-3), Rational(1, 2)}, {Rational(1, 3)}};
    Rational x(2);
    Real got = hyper::pfq(p, Real::of(x, kPrec), kPrec);
    Real want = ts::naive_pfq(p.upper, p.lower, x, 10, kPrec);
    CHECK(ts::rel_diff(got, want) < 1e-70);
}

TEST_CASE("divergent argument is rejected") {
    PfqParams p{{Rational(1, 3), Rational(1, 4)}, {Rational(5, 6)}};
    CHECK_THROWS_AS(hyper::pfq(p, Real::of(Rational(3, 2), kPrec), kPrec), Error);
}

TEST_CASE("repeated parameter cancels between the rows") {
    // 3F2(1, c, a; a, b; x) = 2F1(1, c; b; x).
    PfqParams big{{Rational(1), Rational(1, 3), Rational(5, 6)}, {Rational(5, 6), Rational(3, 2)}};
    PfqParams small{{Rational(1), Rational(1, 3)}, {Rational(3, 2)}};
    Real x = Real::of(Rational(2, 5), kPrec);
    CHECK(ts::rel_diff(hyper::pfq(big, x, kPrec), hyper::pfq(small, x, kPrec)) < 1e-65);
}

TEST_CASE("unit-argument routes agree on a wide-margin chain shape") {
    // 3F2(a, b, Q; c, Q+1; 1) with margin about 44: Auto dispatches to the
    // plain series, which then anchors the chain and transform routes.
    PfqParams p{{Rational(1, 3), Rational(1, 4), Rational(9, 2)},
                {Rational(44), Rational(11, 2)}};
    REQUIRE(hyper::margin(p) > Rational(43));
    Real direct = hyper::pfq1(p, kPrec, opts(Strategy::Direct));
    Real auto_route = hyper::pfq1(p, kPrec);
    Real chained = hyper::pfq1(p, kPrec, opts(Strategy::ChainBailey));
    Real chained_deep = hyper::pfq1(p, kPrec, opts(Strategy::ChainBailey, 7));
    CHECK(ts::rel_diff(auto_route, direct) < std::ldexp(1.0, -210));
    CHECK(ts::rel_diff(chained, direct) < std::ldexp(1.0, -190));
    CHECK(ts::rel_diff(chained_deep, direct) < std::ldexp(1.0, -190));
}

TEST_CASE("unit-argument routes agree on a wide-margin descent shape") {
    PfqParams p{{Rational(1), Rational(1, 3), Rational(1, 2)}, {Rational(23), Rational(23)}};
    REQUIRE(hyper::margin(p) > Rational(43));
    Real direct = hyper::pfq1(p, kPrec, opts(Strategy::Direct));
    Real desc = hyper::pfq1(p, kPrec, opts(Strategy::Descent));
    Real desc_deep = hyper::pfq1(p, kPrec, opts(Strategy::Descent, 5));
    CHECK(ts::rel_diff(desc, direct) < std::ldexp(1.0, -190));
    CHECK(ts::rel_diff(desc_deep, direct) < std::ldexp(1.0, -190));
}

TEST_CASE("acceleration fallback tracks the chain on a slim margin") {
    // Margin exactly 1 (the regulator kernel shape): too slim for the plain
    // series, fine for the chain; the Levin fallback should land nearby.
    PfqParams p{{Rational(1, 3), Rational(1, 3), Rational(1, 5)},
                {Rational(2, 3), Rational(6, 5)}};
    REQUIRE(hyper::margin(p) == Rational(1));
    Real chained = hyper::pfq1(p, kPrec);
    Real lev = hyper::pfq1(p, kPrec, opts(Strategy::Levin));
    CHECK(ts::rel_diff(lev, chained) < 1e-25);
    Real lev_fn = hyper::levin_sum_at_1(p, kPrec, 80);
    CHECK(ts::rel_diff(lev_fn, chained) < 1e-25);
}

TEST_CASE("closed form at unit argument vs chain-summed series") {
    struct Case {
        Rational a, b, c;
    } cases[] = {
        {Rational(1, 3), Rational(1, 4), Rational(5, 6)},
        {Rational(1, 2), Rational(1, 2), Rational(7, 4)},
        {Rational(2, 5), Rational(1, 7), Rational(12)},
    };
    for (const Case& cs : cases) {
        Real closed = hyper::euler_at_1(cs.a, cs.b, cs.c, kPrec);
        Real series = hyper::euler_at_1_via_series(cs.a, cs.b, cs.c, kPrec);
        Real series_deep = hyper::euler_at_1_via_series(cs.a, cs.b, cs.c, kPrec, 9);
        CHECK(ts::rel_diff(series, closed) < std::ldexp(1.0, -190));
        CHECK(ts::rel_diff(series_deep, closed) < std::ldexp(1.0, -190));
    }
}

TEST_CASE("gauss 2f1 against the reference away from 1") {
    Rational a(1, 3), b(1, 4), c(5, 6), x(3, 10);
    Real xr = Real::of(x, kPrec), omx = Real::of(Rational(7, 10), kPrec);
    hyper::F21 f = hyper::gauss_2f1(a, b, c, xr, omx, kPrec, true);
    Real want = ts::naive_pfq({a, b}, {c}, x, 400, kPrec + 32);
    CHECK(ts::rel_diff(f.value, want) < 1e-60);
    // F' = (ab/c) 2F1(a+1, b+1; c+1; x).
    Real dwant = Real::of(a * b / c, kPrec + 32) *
                 ts::naive_pfq({a + Rational(1), b + Rational(1)}, {c + Rational(1)}, x, 400,
                               kPrec + 32);
    CHECK(ts::rel_diff(f.deriv, dwant) < 1e-55);
}

TEST_CASE("gauss 2f1 connection regime agrees with the long series") {
    Rational a(1, 3), b(1, 4), c(5, 6), x(97, 100);
    Real xr = Real::of(x, kPrec), omx = Real::of(Rational(3, 100), kPrec);
    hyper::F21 f = hyper::gauss_2f1(a, b, c, xr, omx, kPrec, false);
    Real want = ts::naive_pfq_real({a, b}, {c}, x, 8000, kPrec + 32);
    CHECK(ts::rel_diff(f.value, want) < 1e-50);
}

TEST_CASE("gauss 2f1 derivative in the connection regime vs central difference") {
    Rational a(1, 3), b(1, 4), c(5, 6);
    const unsigned wp = kPrec + 64;
    Rational x(97, 100), h(1, 1000000000);  // 1e-9 exact step
    hyper::F21 f = hyper::gauss_2f1(a, b, c, Real::of(x, wp), Real::of(Rational(1) - x, wp), wp,
                                    true);
    Real fp = hyper::gauss_2f1(a, b, c, Real::of(x + h, wp), Real::of(Rational(1) - x - h, wp), wp,
                               false)
                  .value;
    Real fm = hyper::gauss_2f1(a, b, c, Real::of(x - h, wp), Real::of(Rational(1) - x + h, wp), wp,
                               false)
                  .value;
    Real cdiff = (fp - fm) / (Real::of(h, wp) + Real::of(h, wp));
    CHECK((f.deriv - cdiff).mag_upper() < 1e-15);  // O(h^2) truncation dominates
}

TEST_CASE("logarithmic case at the unit edge") {
    // c = a + b: the connection series carries a log(1-x) term.
    Rational a(1, 2), b(1, 2), c(1), x(999, 1000);
    Real xr = Real::of(x, kPrec), omx = Real::of(Rational(1, 1000), kPrec);
    hyper::F21 f = hyper::gauss_2f1(a, b, c, xr, omx, kPrec, false);
    Real want = ts::naive_pfq_real({a, b}, {c}, x, 70000, kPrec + 32);
    CHECK(ts::rel_diff(f.value, want) < 1e-20);
}

TEST_CASE("log expansion structure for a = b = 1/2") {
    hyper::LogExpansion ex = hyper::log_expansion_at_1(Rational(1, 2), Rational(1, 2), 20, kPrec);
    // k0 = 4 ln 2.
    Real want = Real::of_long(4, kPrec) * Real::log2c(kPrec);
    CHECK((ex.k0 - want).mag_upper() < 1e-72);
    REQUIRE(ex.kshift.size() >= 2);
    CHECK(ex.kshift[1] == Rational(-2));  // k_1 = k_0 - 2
    REQUIRE(ex.coeff.size() >= 2);
    CHECK(ex.coeff[1] == Rational(1, 4));
    CHECK(ts::rel_diff(ex.beta_ab, Real::pi(kPrec)) < 1e-70);  // B(1/2,1/2) = pi
    CHECK((ex.kn(1) - (ex.k0 - Real::of_long(2, kPrec))).mag_upper() < 1e-70);
}

TEST_CASE("basis pair on the running parameters") {
    ts::DataSet c = ts::cubic_set();
    hyper::Basis basis = hyper::basis_f1_f2(c.e);
    CHECK(basis.a == Rational(1, 3));
    CHECK(basis.b == Rational(1, 3));
    CHECK(basis.c2 == Rational(2, 3));

    Real t = Real::of(Rational(3, 10), kPrec), omt = Real::of(Rational(7, 10), kPrec);
    hyper::F21 f2 = basis.F2(t, omt, kPrec, false);
    Real want2 = ts::naive_pfq({basis.a, basis.b}, {basis.c2}, Rational(3, 10), 400, kPrec + 32);
    CHECK(ts::rel_diff(f2.value, want2) < 1e-55);  // alpha1 = 0: no prefactor

    hyper::F21 f1 = basis.F1(t, omt, kPrec, false);
    Real want1 = ts::naive_pfq({basis.a, basis.b}, {Rational(1)}, Rational(7, 10), 400, kPrec + 32);
    CHECK(ts::rel_diff(f1.value, want1) < 1e-55);
}

TEST_CASE("resonant data degenerates the second basis element") {
    ts::DataSet leg = ts::legendre_set();
    hyper::Basis basis = hyper::basis_f1_f2(leg.e);
    CHECK(basis.c2 == Rational(1));
    Real t = Real::of(Rational(1, 2), kPrec), omt = Real::of(Rational(1, 2), kPrec);
    CHECK_THROWS_AS(basis.F2(t, omt, kPrec, false), Error);
    // F1 stays available.
    hyper::F21 f1 = basis.F1(t, omt, kPrec, false);
    Real want = ts::naive_pfq({Rational(1, 2), Rational(1, 2)}, {Rational(1)}, Rational(1, 2), 500,
                              kPrec + 32);
    CHECK(ts::rel_diff(f1.value, want) < 1e-55);
}

TEST_CASE("basis derivative includes the power prefactor") {
    // alpha1 = 1/4 nonzero: F2 = t^{1/4} G(t), F2' = (1/4)t^{-3/4}G + t^{1/4}G'.
    params::ExponentData e{Rational(1, 4), Rational(1, 2), Rational(1, 8), Rational(1, 8)};
    REQUIRE(e.sum() == Rational(1));
    hyper::Basis basis = hyper::basis_f1_f2(e);
    const unsigned wp = kPrec + 64;
    Rational t(2, 5), h(1, 1000000000);
    hyper::F21 f = basis.F2(Real::of(t, wp), Real::of(Rational(1) - t, wp), wp, true);
    Real fp = basis.F2(Real::of(t + h, wp), Real::of(Rational(1) - t - h, wp), wp, false).value;
    Real fm = basis.F2(Real::of(t - h, wp), Real::of(Rational(1) - t + h, wp), wp, false).value;
    Real cdiff = (fp - fm) / (Real::of(h, wp) + Real::of(h, wp));
    CHECK((f.deriv - cdiff).mag_upper() < 1e-14);
}
