#include "monodromy.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cmp;
using monodromy::CycMat2;
using monodromy::CycSum;

TEST_CASE("exact zero tests on root-of-unity sums") {
    // Full sets of N-th roots sum to zero.
    CycSum cube = CycSum::one() + CycSum::root(Rational(1, 3)) + CycSum::root(Rational(2, 3));
    CHECK(cube.is_zero());
    CHECK((CycSum::root(Rational(1, 2)) + CycSum::one()).is_zero());
    CycSum fifth = CycSum::zero();
    for (long k = 0; k < 5; ++k) fifth = fifth + CycSum::root(Rational(k, 5));
    CHECK(fifth.is_zero());
    // Antipodal pair: e(1/8) + e(5/8) = 0.
    CHECK((CycSum::root(Rational(1, 8)) + CycSum::root(Rational(5, 8))).is_zero());
    CycSum x = CycSum::root(Rational(2, 7)).scaled(Rational(3, 4));
    CHECK((x - x).is_zero());
    CHECK((-x + x).is_zero());

    // And things that must not collapse.
    CHECK_FALSE((CycSum::one() + CycSum::root(Rational(1, 3))).is_zero());
    CHECK_FALSE((CycSum::root(Rational(1, 5)) - CycSum::root(Rational(2, 5))).is_zero());
    CHECK_FALSE(CycSum::scalar(Rational(-4)).is_zero());
}

TEST_CASE("products and monomial detection") {
    CHECK((CycSum::root(Rational(1, 3)) * CycSum::root(Rational(2, 3))).equals(CycSum::one()));
    CHECK((CycSum::root(Rational(1, 2)) * CycSum::root(Rational(1, 3)))
              .equals(CycSum::root(Rational(5, 6))));
    Rational c, r;
    CycSum m = CycSum::root(Rational(3, 7)).scaled(Rational(-2, 5));
    REQUIRE(m.monomial(c, r));
    CHECK(c == Rational(-2, 5));
    CHECK(r == Rational(3, 7));
    CHECK_FALSE((CycSum::one() + CycSum::root(Rational(1, 7))).monomial(c, r));
}

TEST_CASE("numeric value of a sum") {
    const unsigned prec = 256;
    Cplx v = CycSum::root(Rational(1, 3)).value(prec);
    CHECK((v.re + Real::of(Rational(1, 2), prec)).mag_upper() < 1e-70);
    Real s3 = sqrt(Real::of_long(3, prec)) / Real::of_long(2, prec);
    CHECK((v.im - s3).mag_upper() < 1e-70);
    Cplx w = (CycSum::root(Rational(1, 8)) + CycSum::root(Rational(5, 8))).value(prec);
    CHECK(w.re.mag_upper() < 1e-70);
    CHECK(w.im.mag_upper() < 1e-70);
}

TEST_CASE("connection coefficient epsilon") {
    // (0,0,1/2,1/2): both twists are -1, so epsilon = -1-1-1-1.
    CHECK(monodromy::epsilon_of(ts::legendre_set().e).equals(CycSum::scalar(Rational(-4))));
    CHECK_FALSE(monodromy::epsilon_of(ts::cubic_set().e).is_zero());
}

TEST_CASE("epsilon vanishes exactly for the split data") {
    // Over sum-1 exponent tuples, epsilon = 0 iff some alpha_i + beta_j is an
    // integer. Random draws plus constructed split cases.
    ts::Rng rng(0x5eedu);
    int split_seen = 0;
    for (int it = 0; it < 60; ++it) {
        Rational a1 = rng.rat01(10), a2 = rng.rat01(10), b1 = rng.rat01(10);
        if (it % 3 == 0) b1 = Rational(1) - a1;  // force a1 + b1 integral
        Rational b2 = Rational(1) - a1 - a2 - b1;
        params::ExponentData e{a1, a2, b1, b2};
        bool split = (a1 + b1).is_integer() || (a1 + b2).is_integer() ||
                     (a2 + b1).is_integer() || (a2 + b2).is_integer();
        if (split) ++split_seen;
        CHECK(monodromy::epsilon_of(e).is_zero() == split);
    }
    CHECK(split_seen >= 20);
}

TEST_CASE("local system matrices") {
    ts::DataSet cs = ts::cubic_set();
    monodromy::LocalSystem sys = monodromy::build_local_system(cs.e);

    CHECK(sys.T1.m[0].equals(CycSum::one()));
    CHECK(sys.T1.m[1].equals(CycSum::one()));
    CHECK(sys.T1.m[2].is_zero());
    CHECK(sys.T1.m[3].equals(CycSum::one()));

    CHECK(sys.T0.m[0].equals(CycSum::root(cs.e.alpha2)));
    CHECK(sys.T0.m[1].is_zero());
    CHECK(sys.T0.m[2].equals(sys.epsilon));
    CHECK(sys.T0.m[3].equals(CycSum::root(cs.e.alpha1)));
    CHECK(sys.T0.det().equals(CycSum::root(cs.e.alpha1 + cs.e.alpha2)));

    CHECK((sys.T0.inverse() * sys.T0).is_identity());
    CHECK((sys.Tinf * sys.T1 * sys.T0).is_identity());
    CHECK(sys.Tinf.trace().equals(CycSum::root(cs.e.beta1) + CycSum::root(cs.e.beta2)));

    monodromy::LocalSystem leg = monodromy::build_local_system(ts::legendre_set().e);
    CHECK((leg.Tinf * leg.T1 * leg.T0).is_identity());
    CHECK(leg.epsilon.equals(CycSum::scalar(Rational(-4))));
    CHECK(leg.Tinf.trace().equals(CycSum::root(Rational(1, 2)).scaled(Rational(2))));
}

TEST_CASE("split data is rejected") {
    params::ExponentData red{Rational(1, 4), Rational(0), Rational(3, 4), Rational(0)};
    try {
        monodromy::build_local_system(red);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == Err::ReducibleSystem);
    }
}

TEST_CASE("exponent scheme") {
    for (const ts::DataSet& ds : {ts::legendre_set(), ts::cubic_set()}) {
        monodromy::RiemannScheme rs = monodromy::riemann_scheme(ds.e);
        CHECK(rs.at1[0] == Rational(0));
        CHECK(rs.at1[1] == Rational(0));
        CHECK(rs.exponent_sum() == Rational(1));
    }
    ts::Rng rng(0x600du);
    for (int it = 0; it < 10; ++it) {
        ts::DataSet ds = ts::random_admissible(rng, 9, false);
        CHECK(monodromy::riemann_scheme(ds.e).exponent_sum() == Rational(1));
    }
}

TEST_CASE("twisted eigenvalue exponents") {
    ts::DataSet cs = ts::cubic_set();
    monodromy::TwistedExponents tw = monodromy::twisted_exponents(cs.e, cs.chi);
    CHECK(tw.at0[0] == Rational(1, 5));
    CHECK(tw.at0[1] == Rational(8, 15));
    CHECK(tw.atinf[0] == Rational(2, 15));
    CHECK(tw.atinf[1] == Rational(2, 15));

    ts::DataSet leg = ts::legendre_set();
    monodromy::TwistedExponents tl = monodromy::twisted_exponents(leg.e, leg.chi);
    CHECK(tl.at0[0] == Rational(1, 3));
    CHECK(tl.at0[1] == Rational(1, 3));
    CHECK(tl.atinf[0] == Rational(1, 6));
    CHECK(tl.atinf[1] == Rational(1, 6));
}
