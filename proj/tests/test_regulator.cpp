#include "regulator.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace cmp;
using period::PolynomialPair;
using regulator::ConnectionConstants;
using regulator::Multiplier;

namespace {
constexpr unsigned kPrec = 256;

PolynomialPair const_one() { return PolynomialPair{{Rational(1)}, {}}; }
PolynomialPair default_pair() { return PolynomialPair{{}, {Rational(-1), Rational(1)}}; }
}  // namespace

TEST_CASE("base series parameters") {
    ts::DataSet cub = ts::cubic_set();
    hyper::PfqParams p = regulator::base_3f2_params(cub.e, cub.chi);
    REQUIRE(p.upper.size() == 3);
    CHECK(p.upper[0] == Rational(1, 3));
    CHECK(p.upper[1] == Rational(1, 3));
    CHECK(p.upper[2] == Rational(1, 5));
    CHECK(p.lower[0] == Rational(2, 3));
    CHECK(p.lower[1] == Rational(6, 5));
    CHECK(hyper::margin(p) == Rational(1));

    ts::DataSet leg = ts::legendre_set();
    CHECK(hyper::margin(regulator::base_3f2_params(leg.e, leg.chi)) == Rational(1));
}

TEST_CASE("kernel values against quadrature") {
    ts::DataSet cub = ts::cubic_set();
    Real k0 = regulator::k_n(cub.e, cub.chi, 0, kPrec);
    // Tolerance floor: the t^{q-1} endpoint keeps ~1.3e-21 of clipped mass.
    oracles::QuadResult qr = oracles::quad_kn(cub.e, cub.chi, 0, 192, 2e-21);
    CHECK(ts::rel_diff(k0, qr.value) < 1e-19);

    Real k2 = regulator::k_n(cub.e, cub.chi, 2, kPrec);
    oracles::QuadResult qr2 = oracles::quad_kn(cub.e, cub.chi, 2, 160, 1e-17);
    CHECK(ts::rel_diff(k2, qr2.value) < 1e-15);
}

TEST_CASE("kernel reduction onto the base value") {
    ts::DataSet cub = ts::cubic_set();
    Rational a = cub.e.alpha1 + cub.e.beta1, b = cub.e.alpha1 + cub.e.beta2;
    Real bab = specialfn::beta(a, b, kPrec);
    Real base = regulator::base_3f2_value(cub.e, cub.chi, kPrec);
    for (unsigned long n = 1; n <= 4; ++n) {
        contiguous::ReductionCoefficients rc = contiguous::kn_reduce(cub.e, cub.chi, n);
        Real lhs = bab * regulator::k_n(cub.e, cub.chi, n, kPrec);
        Real rhs = rc.p_n * base + Real::of(rc.pprime_n, kPrec);
        CHECK((lhs - rhs).mag_upper() < std::ldexp(1.0, -200));
    }
}

TEST_CASE("combination of kernels") {
    // p0 = 1, p1 = 0 collapses J_m to K_m.
    ts::DataSet cub = ts::cubic_set();
    for (long m = 1; m <= 3; ++m) {
        Real jm = regulator::j_m(const_one(), cub.e, cub.chi, m, kPrec);
        Real km = regulator::k_n(cub.e, cub.chi, static_cast<unsigned long>(m), kPrec);
        CHECK((jm - km).mag_upper() < std::ldexp(1.0, -230));
    }

    // Default pair against direct quadrature of the kernel combination.
    Real j1 = regulator::j_m(default_pair(), cub.e, cub.chi, 1, kPrec);
    oracles::QuadResult qj = oracles::quad_jm(default_pair(), cub.e, cub.chi, 1, 160, 1e-17);
    CHECK(ts::rel_diff(j1, qj.value) < 1e-15);
}

TEST_CASE("combination reduction") {
    for (const ts::DataSet& ds : {ts::legendre_set(), ts::cubic_set()}) {
        Rational q0 = ds.chi.q() + ds.e.alpha1;
        Rational a = ds.e.alpha1 + ds.e.beta1, b = ds.e.alpha1 + ds.e.beta2;
        for (long m = 1; m <= 3; ++m) {
            regulator::JmReduction red = regulator::jm_reduction(default_pair(), ds.e, ds.chi, m);
            CHECK(red.coef == period::c_m(default_pair(), ds.e, ds.chi, m) / q0);

            Real bab = specialfn::beta(a, b, kPrec);
            Real lhs = bab * regulator::j_m(default_pair(), ds.e, ds.chi, m, kPrec);
            Real rhs = red.coef * regulator::base_3f2_value(ds.e, ds.chi, kPrec) +
                       Real::of(red.pprime, kPrec);
            CHECK((lhs - rhs).mag_upper() < std::ldexp(1.0, -200));
        }
    }
}

TEST_CASE("decomposition with default constants") {
    ts::DataSet cub = ts::cubic_set();
    ConnectionConstants consts = ConnectionConstants::defaults(cub.e, kPrec);
    CHECK(consts.is_default);
    regulator::RegulatorDecomposition dec = regulator::regulator_decompose(
        default_pair(), cub.e, cub.chi, 1, consts, Multiplier::one(kPrec), kPrec);

    CHECK(dec.c_m == Rational(5, 169));
    CHECK(dec.certificate_exact);
    CHECK(dec.cert_gamma == Rational(0));
    CHECK(dec.cert_3f2 == Rational(-5, 169));
    CHECK(dec.coeff_3f2_nonzero);

    // total = coeff_unit + coeff_gamma * gamma_term + coeff_3f2 * base_3f2.
    Cplx recon = dec.coeff_unit + dec.coeff_gamma * Cplx(dec.gamma_term, Real(kPrec)) +
                 dec.coeff_3f2 * Cplx(dec.base_3f2, Real(kPrec));
    CHECK((dec.total - recon).mag_upper() < std::ldexp(1.0, -200));

    // And the defining combination of the two integrals.
    Real l(Real::of_long(cub.chi.l, kPrec));
    Cplx direct = (consts.lambda1 * Cplx(dec.i_m, Real(kPrec)) +
                   consts.lambda2 * Cplx(dec.j_m, Real(kPrec)));
    direct = Cplx(direct.re / l, direct.im / l);
    CHECK((dec.total - direct).mag_upper() < std::ldexp(1.0, -200));

    ts::DataSet leg = ts::legendre_set();
    regulator::RegulatorDecomposition dl = regulator::regulator_decompose(
        default_pair(), leg.e, leg.chi, 1, ConnectionConstants::defaults(leg.e, kPrec),
        Multiplier::one(kPrec), kPrec);
    CHECK(dl.c_m == Rational(3, 25));
    CHECK(dl.certificate_exact);
    CHECK(dl.cert_3f2 == Rational(-3, 25));
    CHECK(dl.coeff_3f2_nonzero);
}

TEST_CASE("exactly zero multiplier") {
    ts::DataSet cub = ts::cubic_set();
    regulator::RegulatorDecomposition dec = regulator::regulator_decompose(
        default_pair(), cub.e, cub.chi, 1, ConnectionConstants::defaults(cub.e, kPrec),
        Multiplier::zero(kPrec), kPrec);
    CHECK_FALSE(dec.coeff_3f2_nonzero);
    CHECK(dec.total.mag_upper() < 1e-300);
    CHECK(dec.coeff_3f2.mag_upper() < 1e-300);
}

TEST_CASE("vanishing combination is rejected") {
    ts::DataSet cub = ts::cubic_set();
    PolynomialPair p{{Rational(-5, 24)}, {Rational(-1), Rational(1)}};
    REQUIRE(period::c_m(p, cub.e, cub.chi, 1) == Rational(0));
    try {
        regulator::regulator_decompose(p, cub.e, cub.chi, 1,
                                       ConnectionConstants::defaults(cub.e, kPrec),
                                       Multiplier::one(kPrec), kPrec);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == Err::VanishingCm);
    }
}

TEST_CASE("non-default constants") {
    ts::DataSet cub = ts::cubic_set();
    ConnectionConstants consts = ConnectionConstants::defaults(cub.e, kPrec);
    consts.lambda1 = Cplx::of(Rational(1), kPrec);
    consts.is_default = false;
    regulator::RegulatorDecomposition dec = regulator::regulator_decompose(
        default_pair(), cub.e, cub.chi, 1, consts, Multiplier::one(kPrec), kPrec);
    CHECK_FALSE(dec.certificate_exact);
    // gamma coefficient becomes multiplier * lambda1 * C_m / l = (5/169)/5.
    CHECK((dec.coeff_gamma.re - Real::of(Rational(1, 169), kPrec)).mag_upper() <
          std::ldexp(1.0, -220));
    CHECK(dec.coeff_gamma.im.mag_upper() < std::ldexp(1.0, -220));
    Cplx recon = dec.coeff_unit + dec.coeff_gamma * Cplx(dec.gamma_term, Real(kPrec)) +
                 dec.coeff_3f2 * Cplx(dec.base_3f2, Real(kPrec));
    CHECK((dec.total - recon).mag_upper() < std::ldexp(1.0, -200));
}
