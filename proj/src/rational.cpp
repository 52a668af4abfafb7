#include "rational.hpp"

#include <cctype>
#include <ostream>

namespace cmp {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(Err::Eval, "rational with zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, den, 1);
    mpq_div(q_, q_, d);
    mpq_clear(d);
}

Rational Rational::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw Error(Err::Config, "empty rational literal");
    bool ok = true;
    std::size_t slash = t.find('/');
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        if (t[from] == '-' || t[from] == '+') ++from;
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        ok = digits(0, t.size());
    } else {
        ok = digits(0, slash) && digits(slash + 1, t.size());
    }
    if (!ok) throw Error(Err::Config, "bad rational literal: '" + s + "'");
    Rational r;
    if (mpq_set_str(r.q_, t.c_str(), 10) != 0)
        throw Error(Err::Config, "bad rational literal: '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw Error(Err::Config, "zero denominator in '" + s + "'");
    mpq_canonicalize(r.q_);
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    Rational r;
    mpq_add(r.q_, q_, o.q_);
    return r;
}
Rational Rational::operator-(const Rational& o) const {
    Rational r;
    mpq_sub(r.q_, q_, o.q_);
    return r;
}
Rational Rational::operator*(const Rational& o) const {
    Rational r;
    mpq_mul(r.q_, q_, o.q_);
    return r;
}
Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw Error(Err::Eval, "rational division by zero");
    Rational r;
    mpq_div(r.q_, q_, o.q_);
    return r;
}
Rational Rational::operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
}
Rational& Rational::operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
}
Rational& Rational::operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
}
Rational& Rational::operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
}
Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Err::Eval, "rational division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

Rational Rational::abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
}

Rational Rational::inv() const {
    if (is_zero()) throw Error(Err::Eval, "rational inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

Rational Rational::floor() const {
    Rational r;
    mpz_t f;
    mpz_init(f);
    mpz_fdiv_q(f, mpq_numref(q_), mpq_denref(q_));
    mpq_set_z(r.q_, f);
    mpz_clear(f);
    return r;
}

long Rational::floor_long() const {
    Rational f = floor();
    if (!mpz_fits_slong_p(mpq_numref(f.q_)))
        throw Error(Err::Eval, "floor out of long range");
    return mpz_get_si(mpq_numref(f.q_));
}

unsigned long Rational::den_ulong() const {
    if (!mpz_fits_ulong_p(mpq_denref(q_)))
        throw Error(Err::Eval, "denominator out of ulong range");
    return mpz_get_ui(mpq_denref(q_));
}

long Rational::num_long() const {
    if (!mpz_fits_slong_p(mpq_numref(q_)))
        throw Error(Err::Eval, "numerator out of long range");
    return mpz_get_si(mpq_numref(q_));
}

std::string Rational::str() const {
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, s.size() + 1);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational lcm_den(const std::vector<Rational>& xs) {
    mpz_t l;
    mpz_init_set_ui(l, 1);
    for (const auto& x : xs) mpz_lcm(l, l, mpq_denref(x.raw()));
    Rational r;
    mpq_set_z(r.raw(), l);
    mpz_clear(l);
    return r;
}

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace cmp
