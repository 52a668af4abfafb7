// Gamma, log-gamma, digamma and bracketed Gamma products. Numeric values come
// from MPFR's correctly rounded functions; the digamma closed form at rational
// arguments is built symbolically and cross-checked against the numeric path
// in tests.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigreal.hpp"
#include "rational.hpp"

namespace cmp::specialfn {

// Gamma at an exact rational; Err::Pole when x is a nonpositive integer.
// Error bound <= 2^(1-prec)*|Gamma(x)|, well inside the 2^(-prec+8) contract.
Real gamma(const Rational& x, unsigned prec);
Real lngamma(const Rational& x, unsigned prec);  // requires x > 0
// Gamma of a bounded real (argument not near a pole by more than its bound).
Real gamma(const Real& x);
// Complex Gamma via Spouge's series; error certified by the documented Spouge
// bound plus propagation. Used for contract completeness, not on hot paths.
Cplx gamma(const Cplx& z);

// Structured value of psi(p/q) from the Gauss digamma theorem plus the
// recurrence psi(x+1) = psi(x) + 1/x:
//   psi(x) = gamma_coeff*EulerGamma + rational_part
//          + cot_coeff*pi*cot(pi*cot_angle)
//          + sum coeff*ln(arg)              (log_rat, arg a positive rational)
//          + sum 2*cos(2*pi*c)*ln(sin(pi*s)) (log_sin, pairs (c, s))
struct DigammaForm {
    Rational gamma_coeff;
    Rational rational_part;
    Rational cot_coeff;  // 0 when absent
    Rational cot_angle;
    std::vector<std::pair<Rational, Rational>> log_rat;
    std::vector<std::pair<Rational, Rational>> log_sin;
    Real value(unsigned prec) const;
};

// (closed form, numeric value); the two sides are computed independently.
std::pair<DigammaForm, Real> digamma(const Rational& x, unsigned prec);
Real digamma_numeric(const Rational& x, unsigned prec);

// Bracket notation Gamma({num}/{den}).
struct GammaSpec {
    std::vector<Rational> num, den;
    std::string str() const;
};

// Err::Pole names the offending argument. Arguments may be any non-pole
// rationals; negative non-integers go through the reflection-free recurrence
// Gamma(x) = Gamma(x+n) / (x)_n.
Real gamma_product(const GammaSpec& spec, unsigned prec);

Real beta(const Rational& a, const Rational& b, unsigned prec);

// Exact rational value of cos(pi r) when one exists (Niven: denominator of
// the reduced angle in {1,2,3} after folding); nullopt otherwise.
std::optional<Rational> cos_pi_exact(const Rational& r);
// Exact rational value of sin(pi a)*sin(pi b) via product-to-sum, when both
// cosine terms are exact.
std::optional<Rational> sin_pi_product_exact(const Rational& a, const Rational& b);

}  // namespace cmp::specialfn
