// Extended-precision reals: an MPFR value plus a propagated absolute error
// bound. The bound is carried as a double; propagation rules are first-order
// with slack factors, and the ulp term of each correctly rounded MPFR op is
// added only when the op reports inexact. Precision of a binary op result is
// the max of the operand precisions.
//
// The double representation of bounds is safe for the magnitudes this library
// touches (values within ~2^-900 .. 2^900, precision capped at 768 bits);
// bounds are clamped upward on underflow so certificates stay conservative.
#pragma once

#include <mpfr.h>

#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace cmp {

constexpr unsigned kDefaultPrec = 256;
constexpr unsigned kMinPrec = 64;
constexpr unsigned kMaxPrec = 768;

// Upward slack for bound arithmetic done in double.
inline double bslack(double x) { return x * (1.0 + 1e-12); }

class Real {
  public:
    explicit Real(unsigned prec = kDefaultPrec) : err_(0.0) {
        mpfr_init2(v_, static_cast<mpfr_prec_t>(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) : err_(o.err_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept : err_(o.err_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
            err_ = o.err_;
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) {
            mpfr_swap(v_, o.v_);
            err_ = o.err_;
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(const Rational& q, unsigned prec);
    static Real of_long(long n, unsigned prec);
    static Real of_double(double d, unsigned prec);
    static Real pi(unsigned prec);
    static Real euler(unsigned prec);  // Euler-Mascheroni constant
    static Real log2c(unsigned prec);

    unsigned prec() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    double err() const { return err_; }
    void set_err(double e) { err_ = e; }
    void bump_err(double e) { err_ += e; }
    bool exact() const { return err_ == 0.0; }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    // True when the sign is certain despite the error bound.
    bool definitely_positive() const;
    bool definitely_negative() const;
    bool definitely_nonzero() const { return definitely_positive() || definitely_negative(); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Upper bound on |value| including the error bound.
    double mag_upper() const;
    // Lower bound on |value| given the error bound (clamped at 0).
    double mag_lower() const;
    double ulp() const;  // 2^(exp-prec); 0 for zero values

    // Deterministic scientific-notation decimal, round-to-nearest.
    std::string dec(unsigned digits) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }
    // After writing through raw(), call this with the mpfr ternary value and
    // the error carried in from inputs.
    void finish(int ternary, double carried_err);

  private:
    mpfr_t v_;
    double err_;
};

// Value comparisons (error bounds ignored; callers needing certainty use the
// definitely_* predicates).
inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Rational& a, const Real& b);
Real operator*(const Real& a, const Rational& b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sinh(const Real& a);
Real cosh(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
// x^r for x > 0 (within the error bound), r exact.
Real pow_q(const Real& x, const Rational& r);
Real round_to(const Real& a, unsigned prec);

// sin(pi x) / cos(pi x) with exact period/symmetry reduction; exact zeros at
// the lattice points are returned with a zero error bound.
Real sin_pi(const Rational& x, unsigned prec);
Real cos_pi(const Rational& x, unsigned prec);

struct Cplx {
    Real re, im;
    explicit Cplx(unsigned prec = kDefaultPrec) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Cplx of(const Rational& q, unsigned prec) { return {Real::of(q, prec), Real(prec)}; }
    double mag_upper() const { return bslack(re.mag_upper() + im.mag_upper()); }
    double err() const { return bslack(re.err() + im.err()); }
    bool definitely_nonzero() const { return re.definitely_nonzero() || im.definitely_nonzero(); }
    unsigned prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
};

Cplx operator+(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a, const Cplx& b);
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator*(const Real& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a);
Cplx conj(const Cplx& a);
Real abs_upper(const Cplx& a, unsigned prec);  // |a| rounded up into a Real
// e^(2 pi i r), exact rational angle.
Cplx exp_2pi_i(const Rational& r, unsigned prec);

}  // namespace cmp
