#include "bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cmp {

namespace {

void check_number(mpfr_srcptr v, const char* op) {
    if (!mpfr_number_p(v)) throw Error(Err::Eval, std::string(op) + ": non-finite result");
}

double ulp_of(mpfr_srcptr v) {
    if (mpfr_zero_p(v)) return 0.0;
    long e = static_cast<long>(mpfr_get_exp(v)) - static_cast<long>(mpfr_get_prec(v));
    if (e < -1060) e = -1060;  // conservative clamp, keeps bound > 0
    if (e > 1020) throw Error(Err::Eval, "value magnitude exceeds bound range");
    return std::ldexp(1.0, static_cast<int>(e));
}

unsigned max_prec(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Real Real::of(const Rational& q, unsigned prec) {
    Real r(prec);
    int t = mpfr_set_q(r.raw(), q.raw(), MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

Real Real::of_long(long n, unsigned prec) {
    Real r(prec);
    int t = mpfr_set_si(r.raw(), n, MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

Real Real::of_double(double d, unsigned prec) {
    Real r(prec);
    int t = mpfr_set_d(r.raw(), d, MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

Real Real::pi(unsigned prec) {
    Real r(prec);
    int t = mpfr_const_pi(r.raw(), MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

Real Real::euler(unsigned prec) {
    Real r(prec);
    int t = mpfr_const_euler(r.raw(), MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

Real Real::log2c(unsigned prec) {
    Real r(prec);
    int t = mpfr_const_log2(r.raw(), MPFR_RNDN);
    r.finish(t, 0.0);
    return r;
}

bool Real::definitely_positive() const {
    if (sgn() <= 0) return false;
    return mpfr_get_d(v_, MPFR_RNDD) > err_;
}

bool Real::definitely_negative() const {
    if (sgn() >= 0) return false;
    return -mpfr_get_d(v_, MPFR_RNDU) > err_;
}

double Real::mag_upper() const {
    double m = std::fabs(mpfr_get_d(v_, MPFR_RNDA));
    return bslack(m + err_);
}

double Real::mag_lower() const {
    double m = std::fabs(mpfr_get_d(v_, MPFR_RNDZ));
    double r = m - bslack(err_);
    return r > 0 ? r : 0.0;
}

double Real::ulp() const { return ulp_of(v_); }

std::string Real::dec(unsigned digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%%.%uRNe", digits);
    char* out = nullptr;
    if (mpfr_asprintf(&out, buf, v_) < 0) throw Error(Err::Eval, "mpfr_asprintf failed");
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

void Real::finish(int ternary, double carried_err) {
    check_number(v_, "op");
    err_ = bslack(carried_err + (ternary != 0 ? ulp_of(v_) : 0.0));
}

Real operator+(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    int t = mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    r.finish(t, a.err() + b.err());
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    int t = mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    r.finish(t, a.err() + b.err());
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    int t = mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    double am = std::fabs(mpfr_get_d(a.raw(), MPFR_RNDA));
    double bm = std::fabs(mpfr_get_d(b.raw(), MPFR_RNDA));
    r.finish(t, am * b.err() + bm * a.err() + a.err() * b.err());
    return r;
}

Real operator/(const Real& a, const Real& b) {
    double bl = b.mag_lower();
    if (bl <= 0.0) throw Error(Err::Eval, "division: divisor not separated from zero");
    Real r(max_prec(a, b));
    int t = mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    double rm = std::fabs(mpfr_get_d(r.raw(), MPFR_RNDA));
    r.finish(t, (a.err() + rm * b.err()) / bl);
    return r;
}

Real operator-(const Real& a) {
    Real r(a);
    mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);  // exact
    return r;
}

Real operator*(const Rational& a, const Real& b) { return Real::of(a, b.prec()) * b; }
Real operator*(const Real& a, const Rational& b) { return Real::of(b, a.prec()) * a; }

Real abs(const Real& a) {
    Real r(a);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);  // exact
    return r;
}

Real sqrt(const Real& a) {
    if (a.sgn() < 0) throw Error(Err::Eval, "sqrt of negative value");
    Real r(a.prec());
    int t = mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    double rm = std::fabs(mpfr_get_d(r.raw(), MPFR_RNDZ));
    double carried = rm > 0 ? a.err() / (2.0 * rm) : std::sqrt(a.err());
    r.finish(t, carried);
    return r;
}

Real exp(const Real& a) {
    Real r(a.prec());
    int t = mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    double rm = std::fabs(mpfr_get_d(r.raw(), MPFR_RNDA));
    r.finish(t, rm * std::expm1(std::min(a.err(), 50.0)));
    return r;
}

Real log(const Real& a) {
    double al = a.mag_lower();
    if (a.sgn() <= 0 || al <= 0.0) throw Error(Err::Eval, "log of non-positive value");
    Real r(a.prec());
    int t = mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    r.finish(t, a.err() / al);
    return r;
}

Real sinh(const Real& a) {
    Real r(a.prec());
    int t = mpfr_sinh(r.raw(), a.raw(), MPFR_RNDN);
    double ch = std::fabs(mpfr_get_d(a.raw(), MPFR_RNDA));
    r.finish(t, std::cosh(std::min(ch, 700.0)) * a.err());
    return r;
}

Real cosh(const Real& a) {
    Real r(a.prec());
    int t = mpfr_cosh(r.raw(), a.raw(), MPFR_RNDN);
    double ch = std::fabs(mpfr_get_d(a.raw(), MPFR_RNDA));
    r.finish(t, std::cosh(std::min(ch, 700.0)) * a.err());
    return r;
}

Real sin(const Real& a) {
    Real r(a.prec());
    int t = mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
    r.finish(t, a.err());
    return r;
}

Real cos(const Real& a) {
    Real r(a.prec());
    int t = mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
    r.finish(t, a.err());
    return r;
}

Real pow_q(const Real& x, const Rational& r) {
    if (r.is_zero()) return Real::of_long(1, x.prec());
    if (r.is_integer() && r == Rational(1)) return x;
    double xl = x.mag_lower();
    if (x.sgn() <= 0 || xl <= 0.0) throw Error(Err::Eval, "pow_q: base not positive");
    unsigned prec = x.prec();
    Real e = Real::of(r, prec);
    Real out(prec);
    int t = mpfr_pow(out.raw(), x.raw(), e.raw(), MPFR_RNDN);
    double om = std::fabs(mpfr_get_d(out.raw(), MPFR_RNDA));
    double rl = std::fabs(r.to_double());
    double lnx = std::fabs(std::log(xl));
    // d/dx x^r = r x^(r-1); exponent rounding contributes |out|*|ln x|*ulp(e).
    double carried = om * (rl * x.err() / xl + lnx * e.err());
    out.finish(t, carried);
    return out;
}

Real round_to(const Real& a, unsigned prec) {
    Real r(prec);
    int t = mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
    r.finish(t, a.err());
    return r;
}

namespace {

// Reduce x mod 2 into [0,2) exactly.
Rational mod2(const Rational& x) {
    Rational two(2);
    Rational f = (x / two).floor();
    return x - f * two;
}

}  // namespace

Real sin_pi(const Rational& x, unsigned prec) {
    Rational s = mod2(x);
    int sign = 1;
    if (s >= Rational(1)) {
        sign = -1;
        s -= Rational(1);
    }
    // sin(pi s), s in [0,1]; fold about 1/2.
    if (s > Rational(1, 2)) s = Rational(1) - s;
    if (s.is_zero()) return Real(prec);  // exact zero
    Real theta = Real::pi(prec) * s;
    Real r = sin(theta);
    if (sign < 0) r = -r;
    return r;
}

Real cos_pi(const Rational& x, unsigned prec) {
    Rational s = mod2(x);
    if (s > Rational(1)) s = Rational(2) - s;
    // cos(pi s), s in [0,1]; fold about 1/2.
    int sign = 1;
    if (s > Rational(1, 2)) {
        sign = -1;
        s = Rational(1) - s;
    }
    if (s == Rational(1, 2)) return Real(prec);  // exact zero
    Real theta = Real::pi(prec) * s;
    Real r = cos(theta);
    if (sign < 0) r = -r;
    return r;
}

Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }

Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Cplx operator*(const Real& a, const Cplx& b) { return {a * b.re, a * b.im}; }

Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    Cplx num = a * conj(b);
    return {num.re / d, num.im / d};
}

Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }

Cplx conj(const Cplx& a) { return {a.re, -a.im}; }

Real abs_upper(const Cplx& a, unsigned prec) {
    Real d = a.re * a.re + a.im * a.im;
    return sqrt(round_to(d, prec));
}

Cplx exp_2pi_i(const Rational& r, unsigned prec) {
    Rational two_r = r * Rational(2);
    return {cos_pi(two_r, prec), sin_pi(two_r, prec)};
}

}  // namespace cmp
