// Decomposition of the regulator pairing into an exact-rational part, a
// Gamma-product part and a Beta * 3F2(1) part, with a certified nonvanishing
// statement for the 3F2 coefficient.
#pragma once

#include "bigreal.hpp"
#include "contiguous.hpp"
#include "hyper.hpp"
#include "params.hpp"
#include "period.hpp"
#include "rational.hpp"

namespace cmp::regulator {

// {a, b, q+alpha1; a+b, q+alpha1+1} with a = alpha1+beta1, b = alpha1+beta2;
// the convergence margin is exactly 1.
hyper::PfqParams base_3f2_params(const params::ExponentData& e, const params::CharacterIndex& chi);

// B(a,b) * 3F2(a,b,q+alpha1; a+b, q+alpha1+1; 1).
Real base_3f2_value(const params::ExponentData& e, const params::CharacterIndex& chi,
                    unsigned prec);

// K_n = (q+alpha1+n)^{-1} 3F2(a,b,q+alpha1+n; a+b, q+alpha1+n+1; 1).
Real k_n(const params::ExponentData& e, const params::CharacterIndex& chi, unsigned long n,
         unsigned prec);

// J_m = sum_{i >= -1} (d_i - (q+m+i) d'_{i+1}) K_{m+i}; requires m >= 1.
Real j_m(const period::PolynomialPair& p, const params::ExponentData& e,
         const params::CharacterIndex& chi, long m, unsigned prec);

// Exact rationals with  B(a,b) J_m = coef * base_3f2_value + pprime.
// coef always equals C_m / (q+alpha1); computed independently through the
// K_n reduction and cross-checked against that closed form.
struct JmReduction {
    Rational coef;
    Rational pprime;
};
JmReduction jm_reduction(const period::PolynomialPair& p, const params::ExponentData& e,
                         const params::CharacterIndex& chi, long m);

// Connection constants (lambda0, lambda1, lambda2). Defaults: lambda0 = 2 pi i,
// lambda1 = 0, lambda2 = -B(alpha1+beta1, alpha1+beta2); is_default additionally
// records that lambda2 / B(a,b) = -1 holds exactly, which upgrades the
// decomposition coefficients to exact rational multiples of the multiplier.
struct ConnectionConstants {
    Cplx lambda0, lambda1, lambda2;
    bool is_default = false;
    static ConnectionConstants defaults(const params::ExponentData& e, unsigned prec);
};

// Algebraic prefactor of the pairing, tagged so that exact vanishing is
// distinguishable from a small numeric value.
struct Multiplier {
    Cplx value;
    bool exactly_zero = false;
    static Multiplier one(unsigned prec) { return {Cplx::of(Rational(1), prec), false}; }
    static Multiplier zero(unsigned prec) { return {Cplx(prec), true}; }
    static Multiplier of(Cplx v) { return {std::move(v), false}; }
    bool definitely_nonzero() const { return !exactly_zero && value.definitely_nonzero(); }
};

// total = multiplier * [ (lambda1/l) I_m + (lambda2/l) J_m ]
//       = coeff_unit + coeff_gamma * gamma_term + coeff_3f2 * base_3f2.
struct RegulatorDecomposition {
    Rational c_m;      // exact
    Rational pprime_m; // exact
    Real gamma_term;   // Gamma({alpha_j+q}/{1-beta_j+q})
    Real base_3f2;
    Real i_m, j_m;
    Cplx coeff_unit, coeff_gamma, coeff_3f2;
    Cplx total;
    // When the default constants are in use the three coefficients equal
    // multiplier * cert_* exactly, with cert_* the rationals below.
    bool certificate_exact = false;
    Rational cert_unit, cert_gamma, cert_3f2;
    // Certified: with C_m != 0 the 3F2 coefficient vanishes iff the multiplier
    // does; true here means the multiplier (hence the coefficient) is nonzero.
    bool coeff_3f2_nonzero = false;
};

// Err::VanishingCm when C_m = 0 for the requested m (choose another m via
// period::find_nonvanishing_m).
RegulatorDecomposition regulator_decompose(const period::PolynomialPair& p,
                                           const params::ExponentData& e,
                                           const params::CharacterIndex& chi, long m,
                                           const ConnectionConstants& consts,
                                           const Multiplier& multiplier, unsigned prec);

}  // namespace cmp::regulator
