// Symbolic local-system data for the rank-2 eigencomponent: monodromy
// matrices over exact sums of roots of unity, the Riemann scheme, twisted
// eigenvalue exponents, and the irreducibility test.
#pragma once

#include <array>
#include <map>
#include <string>

#include "bigreal.hpp"
#include "params.hpp"
#include "rational.hpp"

namespace cmp::monodromy {

// Finite sum of rational multiples of roots of unity, keyed by the angle
// r in [0,1) of e^{2 pi i r}. Zero-testing is exact: the sum is mapped to a
// polynomial in a primitive N-th root and reduced modulo the N-th cyclotomic
// polynomial.
class CycSum {
  public:
    CycSum() = default;
    static CycSum zero() { return {}; }
    static CycSum one() { return root(Rational(0)); }
    // e^{2 pi i r}
    static CycSum root(const Rational& r);
    static CycSum scalar(const Rational& c);

    CycSum operator+(const CycSum& o) const;
    CycSum operator-(const CycSum& o) const;
    CycSum operator*(const CycSum& o) const;
    CycSum operator-() const;
    CycSum scaled(const Rational& c) const;

    bool is_zero() const;   // exact, via cyclotomic reduction
    bool equals(const CycSum& o) const { return (*this - o).is_zero(); }
    // True when the reduced form is a single term c*e^{2 pi i r}; fills c, r.
    bool monomial(Rational& c, Rational& r) const;

    Cplx value(unsigned prec) const;
    std::string str() const;

    const std::map<Rational, Rational>& terms() const { return terms_; }

  private:
    void add_term(const Rational& angle, const Rational& coeff);
    std::map<Rational, Rational> terms_;
};

// Row-major 2x2 matrix over CycSum.
struct CycMat2 {
    std::array<CycSum, 4> m;
    static CycMat2 identity();
    CycMat2 operator*(const CycMat2& o) const;
    CycSum det() const { return m[0] * m[3] - m[1] * m[2]; }
    CycSum trace() const { return m[0] + m[3]; }
    // Requires a monomial determinant (always the case here: determinants of
    // the local monodromies are single roots of unity).
    CycMat2 inverse() const;
    bool is_identity() const;
    std::array<Cplx, 4> value(unsigned prec) const;
};

struct LocalSystem {
    CycMat2 T1, T0, Tinf;
    CycSum epsilon;
};

// epsilon = -e(alpha1) - e(alpha2) + e(-beta1) + e(-beta2); zero exactly when
// some alpha_i + beta_j is integral (under the sum-1 normalization).
CycSum epsilon_of(const params::ExponentData& e);

// T1 = [[1,1],[0,1]], T0 = [[e(alpha2),0],[epsilon,e(alpha1)]],
// Tinf = (T1 T0)^{-1}. Err::ReducibleSystem when some alpha_i + beta_j is
// integral (equivalently epsilon = 0).
LocalSystem build_local_system(const params::ExponentData& e);

struct RiemannScheme {
    std::array<Rational, 2> at0, at1, atinf;  // at1 is always (0,0)
    Rational exponent_sum() const;            // equals 1 under normalization
};

RiemannScheme riemann_scheme(const params::ExponentData& e);

struct TwistedExponents {
    std::array<Rational, 2> at0, atinf;  // all canonicalized into [0,1)
};

// (q + alpha_j mod 1, -q + beta_j mod 1).
TwistedExponents twisted_exponents(const params::ExponentData& e, const params::CharacterIndex& chi);

}  // namespace cmp::monodromy
