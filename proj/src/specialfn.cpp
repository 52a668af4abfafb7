#include "specialfn.hpp"

#include <cmath>
#include <sstream>

namespace cmp::specialfn {

namespace {

double psi_abs_estimate(double x) {
    // Loose upper estimate of |psi(x)| for error propagation only.
    if (x >= 1.0) return std::log(x) + 1.0 / x + 1.0;
    double d = std::fabs(x - std::nearbyint(x));
    if (d < 1e-300) d = 1e-300;
    return 1.0 / d + std::log(std::fabs(x) + 2.0) + 3.0;
}

double trigamma_upper(double x) {
    // Upper bound on psi'(x) (always positive away from poles).
    if (x > 0) return 1.0 / (x * x) + 1.0 / x;  // sum 1/(x+k)^2 <= 1/x^2 + integral
    double s = std::sin(M_PI * x);
    double refl = (M_PI * M_PI) / std::max(s * s, 1e-300);
    return refl;  // psi'(x) = pi^2/sin^2(pi x) - psi'(1-x) <= pi^2/sin^2
}

}  // namespace

Real gamma(const Rational& x, unsigned prec) {
    if (x.is_nonpositive_integer())
        throw Error(Err::Pole, "Gamma pole at " + x.str());
    unsigned wp = prec + 16;
    Real xr = Real::of(x, wp);
    Real r(wp);
    int t = mpfr_gamma(r.raw(), xr.raw(), MPFR_RNDN);
    double rm = std::fabs(mpfr_get_d(r.raw(), MPFR_RNDA));
    r.finish(t, rm * psi_abs_estimate(x.to_double()) * xr.err());
    return round_to(r, prec);
}

Real lngamma(const Rational& x, unsigned prec) {
    if (x.sgn() <= 0) throw Error(Err::Eval, "lngamma requires a positive argument");
    unsigned wp = prec + 16;
    Real xr = Real::of(x, wp);
    Real r(wp);
    int t = mpfr_lngamma(r.raw(), xr.raw(), MPFR_RNDN);
    r.finish(t, psi_abs_estimate(x.to_double()) * xr.err());
    return round_to(r, prec);
}

Real gamma(const Real& x) {
    double xd = x.to_double();
    double nearest = std::nearbyint(xd);
    if (nearest <= 0.0 && std::fabs(xd - nearest) <= x.err() * 2 + 1e-30)
        throw Error(Err::Pole, "Gamma argument within error bound of a pole");
    Real r(x.prec());
    int t = mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    double rm = std::fabs(mpfr_get_d(r.raw(), MPFR_RNDA));
    r.finish(t, rm * psi_abs_estimate(xd) * x.err());
    return r;
}

Real digamma_numeric(const Rational& x, unsigned prec) {
    if (x.is_nonpositive_integer())
        throw Error(Err::Pole, "digamma pole at " + x.str());
    unsigned wp = prec + 16;
    Real xr = Real::of(x, wp);
    Real r(wp);
    int t = mpfr_digamma(r.raw(), xr.raw(), MPFR_RNDN);
    r.finish(t, trigamma_upper(x.to_double()) * xr.err());
    return round_to(r, prec);
}

Real DigammaForm::value(unsigned prec) const {
    unsigned wp = prec + 16;
    Real acc = Real::of(gamma_coeff, wp) * Real::euler(wp);
    acc = acc + Real::of(rational_part, wp);
    if (!cot_coeff.is_zero()) {
        // pi * cot(pi theta) = pi * cos(pi theta) / sin(pi theta)
        Real s = sin_pi(cot_angle, wp);
        Real c = cos_pi(cot_angle, wp);
        acc = acc + Real::of(cot_coeff, wp) * Real::pi(wp) * (c / s);
    }
    for (const auto& [coeff, arg] : log_rat)
        acc = acc + Real::of(coeff, wp) * log(Real::of(arg, wp));
    for (const auto& [c_angle, s_angle] : log_sin) {
        Real two_cos = Real::of_long(2, wp) * cos_pi(c_angle * Rational(2), wp);
        acc = acc + two_cos * log(sin_pi(s_angle, wp));
    }
    return round_to(acc, prec);
}

std::pair<DigammaForm, Real> digamma(const Rational& x, unsigned prec) {
    if (x.is_nonpositive_integer())
        throw Error(Err::Pole, "digamma pole at " + x.str());
    DigammaForm form;
    form.gamma_coeff = Rational(-1);
    form.rational_part = Rational(0);
    form.cot_coeff = Rational(0);
    form.cot_angle = Rational(0);

    Rational n = x.floor();
    Rational f = x - n;  // in [0,1)
    long nn = n.floor_long();
    if (f.is_zero()) {
        // psi(n) = -EulerGamma + H_{n-1}; poles handled above so n >= 1.
        for (long k = 1; k < nn; ++k) form.rational_part += Rational(1, k);
        return {form, digamma_numeric(x, prec)};
    }
    // Recurrence to psi(f): psi(f+nn) = psi(f) + sum_{k=0}^{nn-1} 1/(f+k) for
    // nn >= 0, and psi(f+nn) = psi(f) - sum_{k=nn}^{-1} 1/(f+k) for nn < 0.
    if (nn >= 0)
        for (long k = 0; k < nn; ++k) form.rational_part += (f + Rational(k)).inv();
    else
        for (long k = nn; k < 0; ++k) form.rational_part -= (f + Rational(k)).inv();

    // Gauss digamma theorem at f = p/q, 0 < p < q:
    //   psi(p/q) = -EulerGamma - ln(2q) - (pi/2) cot(pi p/q)
    //              + 2 sum_{j=1}^{floor((q-1)/2)} cos(2 pi j p/q) ln sin(pi j/q)
    unsigned long q = f.den_ulong();
    form.log_rat.emplace_back(Rational(-1), Rational(2) * Rational(static_cast<long>(q)));
    if (f != Rational(1, 2)) {  // cot(pi/2) = 0: keep the form minimal
        form.cot_coeff = Rational(-1, 2);
        form.cot_angle = f;
    }
    for (unsigned long j = 1; 2 * j + 1 <= q; ++j)
        form.log_sin.emplace_back(f * Rational(static_cast<long>(j)),
                                  Rational(static_cast<long>(j), static_cast<long>(q)));
    return {form, digamma_numeric(x, prec)};
}

std::string GammaSpec::str() const {
    std::ostringstream os;
    os << "Gamma({";
    for (std::size_t i = 0; i < num.size(); ++i) os << (i ? "," : "") << num[i];
    os << "}/{";
    for (std::size_t i = 0; i < den.size(); ++i) os << (i ? "," : "") << den[i];
    os << "})";
    return os.str();
}

Real gamma_product(const GammaSpec& spec, unsigned prec) {
    unsigned wp = prec + 32;
    Real acc = Real::of_long(1, wp);
    // Exact rational factor collected from Gamma(x) = Gamma(x+n)/(x)_n shifts
    // of negative arguments.
    Rational rat(1);
    auto fold = [&](const Rational& arg, bool numerator) {
        if (arg.is_nonpositive_integer())
            throw Error(Err::Pole, "Gamma pole at " + arg.str() + " in " + spec.str());
        Rational a = arg;
        Rational shift_prod(1);
        while (a.sgn() <= 0) {
            shift_prod *= a;
            a += Rational(1);
        }
        Real g = gamma(a, wp);
        if (numerator) {
            acc = acc * g;
            rat /= shift_prod;
        } else {
            acc = acc / g;
            rat *= shift_prod;
        }
    };
    for (const auto& a : spec.num) fold(a, true);
    for (const auto& a : spec.den) fold(a, false);
    return round_to(Real::of(rat, wp) * acc, prec);
}

Real beta(const Rational& a, const Rational& b, unsigned prec) {
    GammaSpec s;
    s.num = {a, b};
    s.den = {a + b};
    return gamma_product(s, prec);
}

std::optional<Rational> cos_pi_exact(const Rational& r) {
    // Fold to [0, 1/2] with sign; Niven: rational cosine only at 0, 1/3, 1/2.
    Rational two(2);
    Rational s = r - (r / two).floor() * two;  // [0,2)
    if (s > Rational(1)) s = two - s;          // [0,1]
    int sign = 1;
    if (s > Rational(1, 2)) {
        sign = -1;
        s = Rational(1) - s;
    }
    if (s.is_zero()) return Rational(sign);
    if (s == Rational(1, 3)) return Rational(sign, 2);
    if (s == Rational(1, 2)) return Rational(0);
    return std::nullopt;
}

std::optional<Rational> sin_pi_product_exact(const Rational& a, const Rational& b) {
    auto c1 = cos_pi_exact(a - b);
    auto c2 = cos_pi_exact(a + b);
    if (!c1 || !c2) return std::nullopt;
    return (*c1 - *c2) / Rational(2);
}

namespace {

Cplx cexp(const Cplx& z) {
    Real ex = exp(z.re);
    return {ex * cos(z.im), ex * sin(z.im)};
}

Cplx clog(const Cplx& z) {
    unsigned prec = z.prec();
    Real r2 = z.re * z.re + z.im * z.im;
    Real lg = log(r2) * Rational(1, 2);
    Real th(prec);
    int t = mpfr_atan2(th.raw(), z.im.raw(), z.re.raw(), MPFR_RNDN);
    double denom = std::max(r2.mag_lower(), 1e-300);
    th.finish(t, (z.re.err() + z.im.err()) / std::sqrt(denom));
    return {lg, th};
}

Cplx csin_pi(const Cplx& z) {
    unsigned prec = z.prec();
    Real px = Real::pi(prec) * z.re;
    Real py = Real::pi(prec) * z.im;
    return {sin(px) * cosh(py), cos(px) * sinh(py)};
}

Cplx spouge_gamma_pos(const Cplx& z, unsigned prec) {
    // Spouge's approximation for Gamma(z+1), Re(z) >= 0:
    //   Gamma(z+1) = (z+a)^(z+1/2) e^(-(z+a))
    //                (c0 + sum_{k=1}^{a-1} c_k/(z+k) + eps),  c0 = sqrt(2 pi),
    //   |eps| <= a^(-1/2) (2 pi)^(-(a+1/2)) relative; a ~ prec/log2(2 pi).
    // The c_k peak near 2^(1.4 a) before cancelling down to O(1), so the
    // working precision has to cover that growth for the tracked bound to
    // come out tight.
    long a = static_cast<long>(static_cast<double>(prec) / 2.57) + 6;
    unsigned wp = prec + 32 + static_cast<unsigned>(2 * a);
    Real sqrt2pi = sqrt(Real::pi(wp) * Real::of_long(2, wp));
    Cplx sum(wp);
    sum.re = sqrt2pi;
    Real kfact = Real::of_long(1, wp);
    for (long k = 1; k < a; ++k) {
        if (k > 1) kfact = kfact * Real::of_long(k - 1, wp);
        Real ak = Real::of_long(a - k, wp);
        Real ck = pow_q(ak, Rational(2 * k - 1, 2)) * exp(ak) / kfact;
        if (k % 2 == 0) ck = -ck;
        Cplx zk = z;
        zk.re = round_to(z.re + Real::of_long(k, wp), wp);
        zk.im = round_to(z.im, wp);
        Cplx term = Cplx(ck, Real(wp)) / zk;
        sum = sum + term;
    }
    Cplx za{round_to(z.re + Real::of_long(a, wp), wp), round_to(z.im, wp)};
    Cplx zp{round_to(z.re + Real::of(Rational(1, 2), wp), wp), round_to(z.im, wp)};
    Cplx power = cexp(zp * clog(za));
    Cplx expf = cexp(-za);
    Cplx out = power * expf;
    out = out * sum;
    // Fold in the truncation bound (relative).
    double rel = std::pow(static_cast<double>(a), -0.5) *
                 std::pow(2 * M_PI, -(static_cast<double>(a) + 0.5));
    double m = out.mag_upper();
    out.re.bump_err(4 * rel * m);
    out.im.bump_err(4 * rel * m);
    return out;
}

}  // namespace

Cplx gamma(const Cplx& z) {
    unsigned prec = z.prec();
    if (z.re.sgn() > 0 || !z.im.is_zero()) {
        if (z.re.sgn() >= 0) {
            // Gamma(z) = Gamma(z+1)/z
            Cplx g1 = spouge_gamma_pos(z, prec);
            return g1 / z;
        }
        // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        Cplx one_minus{round_to(Real::of_long(1, prec) - z.re, prec), -z.im};
        Cplx g = gamma(one_minus);
        Cplx s = csin_pi(z);
        Cplx denom = s * g;
        Cplx num{Real::pi(prec), Real(prec)};
        return num / denom;
    }
    // Real axis, z.re <= 0: use the real path for pole detection.
    Real g = gamma(z.re);
    return {g, Real(prec)};
}

}  // namespace cmp::specialfn
