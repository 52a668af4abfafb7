// Generalized hypergeometric evaluation: direct series with certified tail
// bounds, near-unit-argument connection formulas for 2F1 (generic and
// logarithmic), the fundamental solution pair on (0,1), and unit-argument
// evaluation of 2F1/3F2 through exact-rational contiguous chains that raise
// the convergence margin before summing.
#pragma once

#include <string>
#include <vector>

#include "bigreal.hpp"
#include "params.hpp"
#include "rational.hpp"

namespace cmp::hyper {

struct PfqParams {
    std::vector<Rational> upper, lower;
    std::string str() const;
};

// Sum(lower) - Sum(upper); for p = q+1 the series converges at x = 1 iff
// this is positive.
Rational margin(const PfqParams& p);

enum class Strategy {
    Auto,
    Direct,       // plain summation (requires a comfortable margin at x=1)
    ChainBailey,  // shape 3F2(a,b,Q;c,Q+1;1): Q-raising chain + transformation
    Descent,      // shape 3F2(1,u,v;l1,l2;1): v-lowering chain, Gamma-free
    Levin,        // sequence acceleration fallback (heuristic certificate)
};

struct EvalOpts {
    Strategy strategy = Strategy::Auto;
    // Extra chain depth beyond the margin target; lets tests evaluate the
    // same value through structurally different chains.
    int extra_depth = 0;
};

// pFq at |x| < 1 (or terminating series). Err::DivergentSeries outside the
// convergence domain; x == 1 exactly dispatches to pfq1.
Real pfq(const PfqParams& p, const Real& x, unsigned prec);
// pFq at x = 1 exactly.
Real pfq1(const PfqParams& p, unsigned prec, EvalOpts opts = {});

// Gauss closed form Gamma({c, c-a-b}/{c-a, c-b}); requires margin > 0.
Real euler_at_1(const Rational& a, const Rational& b, const Rational& c, unsigned prec);
// Gamma-free route to the same value: raise c by exact contiguous steps until
// the margin is comfortable, then sum directly. Cross-checks the closed form.
Real euler_at_1_via_series(const Rational& a, const Rational& b, const Rational& c, unsigned prec,
                           int extra_depth = 0);

struct F21 {
    Real value, deriv;  // deriv with respect to the function argument
};

// 2F1(a,b;c;x) for x in [0,1). The caller supplies 1-x exactly (integration
// nodes are generated in that form); near x = 1 the evaluation switches to
// connection series in 1-x, including the logarithmic case c = a+b.
F21 gauss_2f1(const Rational& a, const Rational& b, const Rational& c, const Real& x,
              const Real& one_minus_x, unsigned prec, bool want_deriv);

// Expansion of 2F1(a,b;a+b;t) around t = 1:
//   B(a,b)^{-1} sum_n ((a)_n (b)_n / n!^2) (k_n - log(1-t)) (1-t)^n,
//   k_n = 2 psi(n+1) - psi(a+n) - psi(b+n).
struct LogExpansion {
    Rational a, b;
    unsigned N = 0;                // truncation order (terms n < N)
    Real k0;                       // k_0, the only transcendental input
    std::vector<Rational> kshift;  // k_n = k0 + kshift[n]
    std::vector<Rational> coeff;   // (a)_n (b)_n / n!^2
    Real beta_ab;                  // B(a,b)
    Real kn(unsigned n) const;
    // Evaluate at w = 1-t; truncation bound folded into the error
    // (empirical geometric-tail certificate).
    Real eval_w(const Real& w, unsigned prec) const;
    // d/dt of the expansion, at w = 1-t.
    Real eval_deriv_t_w(const Real& w, unsigned prec) const;
};

LogExpansion log_expansion_at_1(const Rational& a, const Rational& b, unsigned N, unsigned prec);

// Fundamental pair on (0,1):
//   F1(t) = t^alpha1 2F1(alpha1+beta1, alpha1+beta2; 1; 1-t)
//   F2(t) = t^alpha1 2F1(alpha1+beta1, alpha1+beta2; 1+alpha1-alpha2; t)
// The lower parameter of F2 equals a+b under the sum-1 normalization; the
// resonant case alpha1 == alpha2 makes the pair degenerate and F2 throws
// Err::Pole.
struct Basis {
    params::ExponentData e;
    Rational a, b, c2;
    F21 F1(const Real& t, const Real& one_minus_t, unsigned prec, bool want_deriv) const;
    F21 F2(const Real& t, const Real& one_minus_t, unsigned prec, bool want_deriv) const;
};

Basis basis_f1_f2(const params::ExponentData& e);

// Levin u-transform of a series' partial sums; exposed for oracle use in
// tests. Returns the accelerated limit with a heuristic error estimate
// folded into the bound.
Real levin_sum_at_1(const PfqParams& p, unsigned prec, unsigned terms);

}  // namespace cmp::hyper
