// Three-term and transformation identities for 3F2 at unit argument, the
// shift chains built from them, and the exact-rational reduction of the
// regulator kernel integrals K_n onto a single base value.
#pragma once

#include "bigreal.hpp"
#include "hyper.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "specialfn.hpp"

namespace cmp::contiguous {

// Parameter pack of 3F2(a,b,q; c,q+1; 1): the distinguished upper parameter
// trails its paired lower by one. Convergent iff margin > 0.
struct ThreeF2At1 {
    Rational a, b, c, q;
    Rational margin() const { return c + Rational(1) - a - b; }
    hyper::PfqParams params() const;
    Real value(unsigned prec, hyper::EvalOpts opts = {}) const;
};

// A*F(q+1) - B*F(q) = Gamma({c, c+1-a-b}/{c-a, c-b}) with
// A = (q+1-a)(q+1-b)/(q+1), B = q+1-c.
struct Otsubo2 {
    Rational A, B;
    specialfn::GammaSpec rhs_spec;
    Real rhs;
};

Otsubo2 otsubo2_relation(const Rational& a, const Rational& b, const Rational& c,
                         const Rational& q, unsigned prec);
// A*F(q+1) - B*F(q) - rhs with independently chosen evaluation routes for the
// two function values.
Real otsubo2_residual(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                      unsigned prec, hyper::EvalOpts at_q = {}, hyper::EvalOpts at_q1 = {});

// The two 3-term relations among F^q(x) = 3F2(1,c,q;a,b;x) and its parameter
// shifts; both normalize to the constant (a-1)(b-1), fixed by the x = 0
// boundary value where every series collapses to 1.
enum class ThreeTermVariant { QShift, AShift };

// Left side minus (a-1)(b-1); x in [0,1) or exactly 1. At 1 the (1-x) term
// drops and the remaining two-term form needs a+b > c+q+2.
Real three_term(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                ThreeTermVariant variant, const Real& x, unsigned prec);

// 3F2(a,b,q;c,q+1;1) = prefactor_q * Gamma(prefactor_spec) * 3F2(transformed; 1),
// transformed = (1, c+1-a-b, c-q; c+1-a, c+1-b), whose margin equals q.
struct Bailey {
    Rational prefactor_q;
    specialfn::GammaSpec prefactor_spec;
    Real prefactor;
    hyper::PfqParams transformed;
    Rational transformed_margin;
};

Bailey bailey_transform(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                        unsigned prec);
Real bailey_residual(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                     unsigned prec, hyper::EvalOpts lhs = {}, hyper::EvalOpts rhs = {});

// Exact closure of the normalized values
//   Fhat(q) = Gamma({c+1-a, c+1-b}/{c, c+1-a-b}) * 3F2(a,b,q;c,q+1;1)
// across an integer shift: k*Fhat(q) + kp*Fhat(q+n) + kpp = 0.
struct Cont2Closure {
    Rational k, kp, kpp;
};

Cont2Closure cont2_chain(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                         unsigned long n);

// Exact rationals (p_n, p'_n) with
//   B(a,b) K_n = p_n * B(a,b) 3F2(a,b,q+alpha1; a+b, q+alpha1+1; 1) + p'_n,
// a = alpha1+beta1, b = alpha1+beta2; obtained by iterating the shift
// relation, whose right side times B(a,b) is exactly 1 when c = a+b. No
// floating point is involved.
struct ReductionCoefficients {
    Rational p_n, pprime_n;
};

ReductionCoefficients kn_reduce(const params::ExponentData& e, const params::CharacterIndex& chi,
                                unsigned long n);

}  // namespace cmp::contiguous
