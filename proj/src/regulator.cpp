#include "regulator.hpp"

#include "errors.hpp"
#include "specialfn.hpp"

namespace cmp::regulator {

namespace {

Cplx scale(const Cplx& z, const Rational& r, unsigned prec) {
    Real f = Real::of(r, prec);
    return {f * z.re, f * z.im};
}

// Weights w_i = d_i - (q+m+i) d'_{i+1}, i = -1..imax, matching period::c_m.
std::vector<std::pair<long, Rational>> jm_weights(const period::PolynomialPair& p,
                                                  const params::CharacterIndex& chi, long m) {
    p.check();
    if (m < 1) throw Error(Err::Config, "J_m requires m >= 1");
    Rational q = chi.q();
    long imax = static_cast<long>(std::max(p.d.size(), p.dprime.size())) - 1;
    std::vector<std::pair<long, Rational>> w;
    for (long i = -1; i <= imax; ++i) {
        Rational di = (i >= 0 && i < static_cast<long>(p.d.size())) ? p.d[static_cast<size_t>(i)]
                                                                    : Rational(0);
        Rational dpi = (i + 1 < static_cast<long>(p.dprime.size()))
                           ? p.dprime[static_cast<size_t>(i + 1)]
                           : Rational(0);
        Rational wi = di - dpi * (q + Rational(m + i));
        if (!wi.is_zero()) w.emplace_back(m + i, wi);
    }
    return w;
}

}  // namespace

hyper::PfqParams base_3f2_params(const params::ExponentData& e, const params::CharacterIndex& chi) {
    Rational a = e.alpha1 + e.beta1, b = e.alpha1 + e.beta2;
    Rational q0 = chi.q() + e.alpha1;
    return {{a, b, q0}, {a + b, q0 + Rational(1)}};
}

Real base_3f2_value(const params::ExponentData& e, const params::CharacterIndex& chi,
                    unsigned prec) {
    unsigned wp = prec + 16;
    Rational a = e.alpha1 + e.beta1, b = e.alpha1 + e.beta2;
    Real bab = specialfn::beta(a, b, wp);
    return round_to(bab * hyper::pfq1(base_3f2_params(e, chi), wp), prec);
}

Real k_n(const params::ExponentData& e, const params::CharacterIndex& chi, unsigned long n,
         unsigned prec) {
    Rational a = e.alpha1 + e.beta1, b = e.alpha1 + e.beta2;
    Rational qn = chi.q() + e.alpha1 + Rational(static_cast<long>(n));
    if (qn.is_zero()) throw Error(Err::Pole, "K_n index q + alpha1 + n vanishes");
    contiguous::ThreeF2At1 f{a, b, a + b, qn};
    unsigned wp = prec + 16;
    return round_to(f.value(wp) / Real::of(qn, wp), prec);
}

Real j_m(const period::PolynomialPair& p, const params::ExponentData& e,
         const params::CharacterIndex& chi, long m, unsigned prec) {
    unsigned wp = prec + 32;
    Real acc(wp);
    for (const auto& [n, wi] : jm_weights(p, chi, m))
        acc = acc + k_n(e, chi, static_cast<unsigned long>(n), wp) * wi;
    return round_to(acc, prec);
}

JmReduction jm_reduction(const period::PolynomialPair& p, const params::ExponentData& e,
                         const params::CharacterIndex& chi, long m) {
    Rational coef(0), pp(0);
    for (const auto& [n, wi] : jm_weights(p, chi, m)) {
        contiguous::ReductionCoefficients rc =
            contiguous::kn_reduce(e, chi, static_cast<unsigned long>(n));
        coef += wi * rc.p_n;
        pp += wi * rc.pprime_n;
    }
    // Closed form of the same coefficient; the reduction must reproduce it.
    Rational q0 = chi.q() + e.alpha1;
    Rational closed = period::c_m(p, e, chi, m) / q0;
    if (!(coef == closed))
        throw Error(Err::Eval, "J_m reduction coefficient " + coef.str() +
                                   " disagrees with C_m/(q+alpha1) = " + closed.str());
    return {coef, pp};
}

ConnectionConstants ConnectionConstants::defaults(const params::ExponentData& e, unsigned prec) {
    ConnectionConstants c;
    Real tau = Real::pi(prec) + Real::pi(prec);
    c.lambda0 = Cplx{Real(prec), tau};  // 2 pi i
    c.lambda1 = Cplx(prec);
    Rational a = e.alpha1 + e.beta1, b = e.alpha1 + e.beta2;
    c.lambda2 = Cplx{-specialfn::beta(a, b, prec), Real(prec)};
    c.is_default = true;
    return c;
}

RegulatorDecomposition regulator_decompose(const period::PolynomialPair& p,
                                           const params::ExponentData& e,
                                           const params::CharacterIndex& chi, long m,
                                           const ConnectionConstants& consts,
                                           const Multiplier& multiplier, unsigned prec) {
    unsigned wp = prec + 64;
    Rational q0 = chi.q() + e.alpha1;
    Rational linv(1, static_cast<long>(chi.l));

    RegulatorDecomposition dec;
    dec.c_m = period::c_m(p, e, chi, m);
    if (dec.c_m.is_zero())
        throw Error(Err::VanishingCm, "C_m = 0 at m = " + std::to_string(m) +
                                          "; pick m with period::find_nonvanishing_m");
    JmReduction red = jm_reduction(p, e, chi, m);
    dec.pprime_m = red.pprime;

    dec.gamma_term = specialfn::gamma_product(period::im_gamma_spec(e, chi), wp);
    Real bab = specialfn::beta(e.alpha1 + e.beta1, e.alpha1 + e.beta2, wp);
    dec.base_3f2 = bab * hyper::pfq1(base_3f2_params(e, chi), wp);
    dec.i_m = dec.gamma_term * dec.c_m;
    dec.j_m = j_m(p, e, chi, m, wp);

    const Cplx& mult = multiplier.value;
    Cplx l1 = scale(consts.lambda1, linv, wp);
    Cplx l2 = scale(consts.lambda2, linv, wp);
    dec.total = mult * (l1 * Cplx{dec.i_m, Real(wp)} + l2 * Cplx{dec.j_m, Real(wp)});

    dec.certificate_exact = consts.is_default;
    if (consts.is_default) {
        // lambda1 = 0 and lambda2/B(a,b) = -1 exactly.
        dec.cert_gamma = Rational(0);
        dec.cert_3f2 = -(dec.c_m * linv / q0);
        dec.cert_unit = -(dec.pprime_m * linv);
        dec.coeff_gamma = Cplx(wp);
        dec.coeff_3f2 = scale(mult, dec.cert_3f2, wp);
        dec.coeff_unit = scale(mult, dec.cert_unit, wp);
        dec.coeff_3f2_nonzero = !multiplier.exactly_zero && multiplier.definitely_nonzero();
    } else {
        Real binv = Real::of(Rational(1), wp) / bab;
        dec.coeff_gamma = mult * scale(l1, dec.c_m, wp);
        dec.coeff_3f2 = mult * Cplx{binv * (l2.re * (dec.c_m / q0)), binv * (l2.im * (dec.c_m / q0))};
        dec.coeff_unit = mult * Cplx{binv * (l2.re * dec.pprime_m), binv * (l2.im * dec.pprime_m)};
        dec.coeff_3f2_nonzero =
            multiplier.definitely_nonzero() && consts.lambda2.definitely_nonzero();
    }
    if (multiplier.exactly_zero) {
        dec.total = Cplx(wp);
        dec.coeff_unit = Cplx(wp);
        dec.coeff_gamma = Cplx(wp);
        dec.coeff_3f2 = Cplx(wp);
        dec.coeff_3f2_nonzero = false;
    }
    return dec;
}

}  // namespace cmp::regulator
