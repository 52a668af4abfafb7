// Closed-form period quantities: the exact coefficient sequence a_n, the
// polynomial-pair combinations C_m, the integrals I_m, the Gamma-product
// period value with its Hodge type, the duality product, and exact
// linear-independence certificates for the coefficient vectors.
#pragma once

#include <optional>
#include <vector>

#include "bigreal.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "specialfn.hpp"

namespace cmp::period {

// a_n = (alpha1+q)_n (alpha2+q)_n / ((1-beta1+q)_n (1-beta2+q)_n), exact.
Rational a_n(const params::ExponentData& e, const params::CharacterIndex& chi, unsigned long n);

// Pair (p0, p1) of rational polynomials given by ascending coefficient lists;
// p1 must satisfy p1(1) = 0 (its coefficients sum to zero), which keeps the
// integrands regular at t = 1.
struct PolynomialPair {
    std::vector<Rational> d;       // p0
    std::vector<Rational> dprime;  // p1
    void check() const;            // Err::Config on violated constraints
    Rational p0_at(const Rational& t) const;
    Rational p1_at(const Rational& t) const;
};

// C_m = sum_{i >= -1} (d_i - d'_{i+1} (q+m+i)) a_{m+i}, with d_{-1} = 0.
// Requires m >= 1 so every index a_{m+i} is defined.
Rational c_m(const PolynomialPair& p, const params::ExponentData& e,
             const params::CharacterIndex& chi, long m);

// Gamma spec of the I_m prefactor: {alpha1+q, alpha2+q} / {1-beta1+q, 1-beta2+q}.
specialfn::GammaSpec im_gamma_spec(const params::ExponentData& e, const params::CharacterIndex& chi);

// I_m = C_m * Gamma({alpha_j+q} / {1-beta_j+q}).
Real i_m(const PolynomialPair& p, const params::ExponentData& e, const params::CharacterIndex& chi,
         long m, unsigned prec);

// Smallest m in [1, m_max] with C_m != 0; Err::ExhaustedSearch if none.
long find_nonvanishing_m(const PolynomialPair& p, const params::ExponentData& e,
                         const params::CharacterIndex& chi, long m_max);

struct PeriodResult {
    specialfn::GammaSpec gamma_spec;  // canonical representative: all arguments in (0,1)
    Rational rational_factor;         // raw Gamma product = rational_factor * canonical product
    Cplx value;                       // 2 pi i * rational_factor * Gamma(canonical spec)
    long hodge_type;                  // p with (p, 2-p) the Hodge bidegree
    Rational im_conversion;           // raw Gamma product = im_conversion * Gamma(im_gamma_spec)
};

// Period of the chi-eigencomponent: 2 pi i * Gamma({q+alpha_j} / {q-beta_j}),
// with arguments replaced by fractional parts and the recurrence factors
// recorded exactly. Pre: validate(e, chi) passes.
PeriodResult period_value(const params::ExponentData& e, const params::CharacterIndex& chi,
                          unsigned prec);

// p = 1 + {q+alpha1} + {q+alpha2} - {q-beta1} - {q-beta2}; always an integer.
long hodge_type(const params::ExponentData& e, const params::CharacterIndex& chi);

// Data of the dual eigencomponent: character exponent 1-q, exponents
// (-alpha_j mod 1, -beta_j mod 1).
struct DualData {
    params::ExponentData e;
    params::CharacterIndex chi;
};
DualData dual_data(const params::ExponentData& e, const params::CharacterIndex& chi);

struct DualityResult {
    Real product;    // P * P' / (2 pi i)^2, i.e. the product of the two Gamma factors
    Real expected;   // sin-quotient sin(pi{q-b1}) sin(pi{q-b2}) / (sin(pi{q+a1}) sin(pi{q+a2}))
    Real residual;   // product - expected
    std::optional<Rational> sine_factor_exact;  // set when every sine is Niven-exact
    bool symbolic_ok;  // exact factor (when known) matches `product` within its error bound
};

// Checks P(chi) * P(dual chi) = (2 pi i)^2 * sine quotient.
DualityResult duality_check(const params::ExponentData& e, const params::CharacterIndex& chi,
                            unsigned prec);

// Determinant of the 2r x 2r matrix with rows
// e_i = (a_{i+1}, ..., a_{i+r}, (i+1) a_{i+1}, ..., (i+r) a_{i+r})
// for i = m+1, ..., m+2r. Exact; nonzero certifies linear independence.
Rational independence_det(const params::ExponentData& e, const params::CharacterIndex& chi,
                          unsigned r, long m);

}  // namespace cmp::period
