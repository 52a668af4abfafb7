// Exact rational arithmetic on top of GMP's mpq_t. Values are always kept
// canonical (lowest terms, positive denominator), so equality is structural.
#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cmp {

class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den);
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // Accepts "p/q", "p", optional leading '-'. Throws Err::Config on junk.
    static Rational parse(const std::string& s);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // Err::Eval on /0
    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    bool operator==(const Rational& o) const { return mpq_equal(q_, o.q_) != 0; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return mpq_cmp(q_, o.q_) < 0; }
    bool operator<=(const Rational& o) const { return mpq_cmp(q_, o.q_) <= 0; }
    bool operator>(const Rational& o) const { return mpq_cmp(q_, o.q_) > 0; }
    bool operator>=(const Rational& o) const { return mpq_cmp(q_, o.q_) >= 0; }

    int sgn() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    bool is_nonpositive_integer() const { return is_integer() && sgn() <= 0; }

    Rational abs() const;
    Rational inv() const;  // Err::Eval on 0
    // Largest integer <= *this, as a Rational.
    Rational floor() const;
    // Canonical representative in [0,1): *this - floor().
    Rational frac() const { return *this - floor(); }
    long floor_long() const;

    // Denominator as unsigned long; Err::Eval if it does not fit (never
    // expected for the small exponent data this library handles).
    unsigned long den_ulong() const;
    long num_long() const;

    double to_double() const { return mpq_get_d(q_); }
    // "p/q" (or "p" when the denominator is 1); used in reports and configs.
    std::string str() const;

    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw() { return q_; }

  private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational lcm_den(const std::vector<Rational>& xs);
long gcd_long(long a, long b);

}  // namespace cmp
