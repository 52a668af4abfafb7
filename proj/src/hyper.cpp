#include "hyper.hpp"

#include <gmp.h>

#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "errors.hpp"
#include "specialfn.hpp"

namespace cmp::hyper {

namespace {

void join(std::ostringstream& os, const std::vector<Rational>& xs) {
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        os << xs[i].str();
    }
}

// log2|r| within one bit (sign dropped); very negative for zero.
double log2_mag(const Rational& r) {
    if (r.is_zero()) return -1e9;
    double nb = static_cast<double>(mpz_sizeinbase(mpq_numref(r.raw()), 2));
    double db = static_cast<double>(mpz_sizeinbase(mpq_denref(r.raw()), 2));
    return nb - db;
}

double abs_sum(const std::vector<Rational>& xs) {
    double s = 0;
    for (const auto& x : xs) s += std::fabs(x.to_double());
    return s;
}

double sq_sum(const std::vector<Rational>& xs) {
    double s = 0;
    for (const auto& x : xs) {
        double d = x.to_double();
        s += d * d;
    }
    return s;
}

// Index of the last nonzero term when an upper parameter truncates the
// series; nullopt otherwise.
std::optional<unsigned long> truncation_index(const std::vector<Rational>& up) {
    std::optional<unsigned long> best;
    for (const auto& u : up)
        if (u.is_nonpositive_integer()) {
            unsigned long stop = static_cast<unsigned long>(-u.num_long());
            if (!best || stop < *best) best = stop;
        }
    return best;
}

struct SeriesOut {
    Real value, deriv;
    unsigned long terms = 0;
};

// Direct summation of sum_n prod(upper)_n / (prod(lower)_n n!) x^n.
// Supported modes, each with a certified tail bound:
//   - terminating series (some upper a nonpositive integer): any x, tail 0;
//   - |x| < 1 strictly: geometric envelope |t_{k+1}/t_k| <= |x|(1 + C1/k)
//     valid for k >= n_min;
//   - x == 1 exactly, p == q+1, margin > 0: comparison against the reference
//     sequence (k+KK)^-(margin+1), valid for k >= KK with
//     KK >= 2(sum of squared parameters + 1)/margin.
// Stops once the tail falls below 2^-stop_bits * max(1, |S|).
SeriesOut series_sum(const std::vector<Rational>& up, const std::vector<Rational>& low,
                     const Real& x, unsigned wp, bool want_deriv, long stop_bits) {
    const auto trunc = truncation_index(up);
    for (const auto& l : low)
        if (l.is_nonpositive_integer()) {
            unsigned long npole = static_cast<unsigned long>(-l.num_long());
            if (!trunc || *trunc > npole)
                throw Error(Err::Pole,
                            "series lower parameter " + l.str() + " is a nonpositive integer");
        }

    const bool at_one = x.exact() && mpfr_cmp_ui(x.raw(), 1) == 0;
    const double xu = x.mag_upper();
    double marg = 0.0;
    if (!trunc) {
        if (at_one) {
            if (want_deriv)
                throw Error(Err::Eval, "derivative summation at the unit argument is not supported");
            Rational m;
            for (const auto& l : low) m += l;
            for (const auto& u : up) m -= u;
            if (up.size() != low.size() + 1 || m.sgn() <= 0)
                throw Error(Err::DivergentSeries,
                            "series at the unit argument needs p = q+1 and a positive margin");
            marg = m.to_double();
        } else if (up.size() > low.size() + 1) {
            throw Error(Err::DivergentSeries, "p > q+1 series diverges for a nonzero argument");
        } else if (!(xu < 1.0)) {
            throw Error(Err::DivergentSeries, "series argument not strictly inside the unit disk");
        }
    }

    const double c1 = 2.0 * abs_sum(up) + 4.0 * abs_sum(low) + 2.0;
    const double c2 = sq_sum(up) + sq_sum(low) + 1.0;
    double kk = at_one ? std::max(2.0 * c2 / std::max(marg, 0.01), 2.0 * c1) + 8.0
                       : 2.0 * c1 + 8.0;
    if (kk > 200000.0)
        throw Error(Err::NonConvergence, "margin too small for direct summation at 1");
    const unsigned long n_min = static_cast<unsigned long>(kk) + 1;
    const double xl = x.mag_lower();

    Real t = Real::of_long(1, wp);
    Real S = t;
    Real D(wp);
    const unsigned long cap = 2500000;
    unsigned long n = 0;
    for (;;) {
        if (trunc && n == *trunc) break;
        if (!trunc && n >= n_min) {
            const double tn = std::max(t.mag_upper(), 1e-320);
            double tail = -1.0, dtail = 0.0;
            if (at_one) {
                tail = bslack(tn * (static_cast<double>(n) + kk) / marg);
            } else {
                const double rho = xu * (1.0 + c1 / static_cast<double>(n));
                if (rho < 0.9995) {
                    tail = bslack(tn * rho / (1.0 - rho));
                    if (want_deriv)
                        dtail = bslack(tn / std::max(xl, 1e-320) *
                                       (static_cast<double>(n) * rho / (1.0 - rho) +
                                        rho / ((1.0 - rho) * (1.0 - rho))));
                }
            }
            if (tail >= 0.0) {
                const double sc = std::ldexp(std::max(1.0, S.mag_upper()), -static_cast<int>(stop_bits));
                const double dsc =
                    std::ldexp(std::max(1.0, D.mag_upper()), -static_cast<int>(stop_bits));
                if (tail <= sc && (!want_deriv || dtail <= dsc)) {
                    S.bump_err(tail);
                    if (want_deriv) D.bump_err(dtail);
                    break;
                }
            }
        }
        if (n >= cap)
            throw Error(Err::NonConvergence, "series did not meet the target within the term cap");
        Rational r(1);
        for (const auto& u : up) r *= u + Rational(static_cast<long>(n));
        for (const auto& l : low) r /= l + Rational(static_cast<long>(n));
        r /= Rational(static_cast<long>(n) + 1);
        t = t * r;
        if (!at_one) t = t * x;
        ++n;
        S = S + t;
        if (want_deriv) D = D + Rational(static_cast<long>(n)) * (t / x);
    }
    return {std::move(S), std::move(D), n};
}

Real series_at_1(const std::vector<Rational>& up, const std::vector<Rational>& low, unsigned wp,
                 long stop_bits) {
    Real one = Real::of_long(1, wp);
    return series_sum(up, low, one, wp, false, stop_bits).value;
}

// log2 of the largest term magnitude of the unit-argument series, scanned in
// doubles; transformed series can hump before decaying and the hump size is
// exactly the cancellation the working precision must absorb.
double peak_term_bits(const std::vector<Rational>& up, const std::vector<Rational>& low,
                      double marg) {
    std::vector<double> u, l;
    for (const auto& q : up) u.push_back(q.to_double());
    for (const auto& q : low) l.push_back(q.to_double());
    double amax = 1.0;
    for (double d : u) amax = std::max(amax, std::fabs(d));
    for (double d : l) amax = std::max(amax, std::fabs(d));
    const double c2 = sq_sum(up) + sq_sum(low) + 1.0;
    unsigned long nscan = static_cast<unsigned long>(
        std::min(200000.0, std::max(4.0 * amax + 200.0, 4.0 * c2 / std::max(marg, 0.5))));
    double lt = 0.0, peak = 0.0;
    for (unsigned long n = 0; n < nscan; ++n) {
        double r = 1.0;
        for (double d : u) r *= d + static_cast<double>(n);
        for (double d : l) r /= d + static_cast<double>(n);
        r /= static_cast<double>(n) + 1.0;
        r = std::fabs(r);
        if (r == 0.0 || !std::isfinite(r)) break;
        lt += std::log2(r);
        if (lt > peak) peak = lt;
    }
    return peak;
}

double chain_target(unsigned prec) { return std::max(32.0, static_cast<double>(prec) / 6.0); }

// 2F1(a,b;Q;c,Q+1) shape: the distinguished upper parameter trails the paired
// lower by exactly one.
struct Shape3 {
    Rational A, B, Q, C;
};

std::optional<Shape3> match_fq_shape(const PfqParams& p) {
    if (p.upper.size() != 3 || p.lower.size() != 2) return std::nullopt;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 2; ++j)
            if (p.lower[j] == p.upper[i] + Rational(1)) {
                Shape3 s{p.upper[(i + 1) % 3], p.upper[(i + 2) % 3], p.upper[i], p.lower[1 - j]};
                if (s.A > s.B) std::swap(s.A, s.B);
                return s;
            }
    return std::nullopt;
}

struct ShapeU1 {
    Rational U, V, L1, L2;
};

std::optional<ShapeU1> match_upper_one(const PfqParams& p) {
    if (p.upper.size() != 3 || p.lower.size() != 2) return std::nullopt;
    for (size_t i = 0; i < 3; ++i)
        if (p.upper[i] == Rational(1))
            return ShapeU1{p.upper[(i + 1) % 3], p.upper[(i + 2) % 3], p.lower[0], p.lower[1]};
    return std::nullopt;
}

// Raise the distinguished parameter by n through
//   F(Q) = ((Q+1-A)(Q+1-B)/(Q+1) F(Q+1) - G) / (Q+1-C),
// G the Q-independent Gamma bracket of the relation, then trade the raised
// tail for a series of margin Q+n via the classical transformation
//   F(Q+n) = (Q+n) Gamma({C, C+1-A-B}/{C+1-A, C+1-B})
//            3F2(1, C+1-A-B, C-Q-n; C+1-A, C+1-B; 1).
// All chain coefficients are exact rationals; the two Gamma brackets and one
// well-margined series are the only inexact inputs.
Real chain_bailey_3f2(const Shape3& s, unsigned prec, int extra_depth) {
    const Rational m0 = s.C + Rational(1) - s.A - s.B;
    if (m0.sgn() <= 0)
        throw Error(Err::DivergentSeries, "unit-argument series with nonpositive margin");
    const long n = std::max<long>(
                       0, static_cast<long>(std::ceil(chain_target(prec) - s.Q.to_double()))) +
                   std::max(0, extra_depth);
    for (long j = 0; j < n; ++j)
        if (s.Q + Rational(j + 1) == s.C)
            throw Error(Err::Eval, "chain coefficient vanishes: paired parameters differ by an integer");
    Rational R(1), sacc(0);
    for (long j = 0; j < n; ++j) {
        const Rational qj1 = s.Q + Rational(j + 1);
        const Rational aj = (qj1 - s.A) * (qj1 - s.B) / qj1;
        const Rational bj = qj1 - s.C;
        sacc -= R / bj;
        R *= aj / bj;
    }
    const Rational qn = s.Q + Rational(n);
    const std::vector<Rational> tu{Rational(1), m0, s.C - qn};
    const std::vector<Rational> tl{s.C + Rational(1) - s.A, s.C + Rational(1) - s.B};
    const double peak = peak_term_bits(tu, tl, qn.to_double());
    unsigned wp = prec + 64 + static_cast<unsigned>(std::max(0.0, peak)) +
                  static_cast<unsigned>(std::max(0.0, log2_mag(R))) +
                  static_cast<unsigned>(std::max(0.0, log2_mag(sacc)));
    if (wp > 6000) throw Error(Err::NonConvergence, "required working precision out of range");
    const Real gp = specialfn::gamma_product({{s.C, m0}, {s.C - s.A, s.C - s.B}}, wp);
    const Real gp2 =
        specialfn::gamma_product({{s.C, m0}, {s.C + Rational(1) - s.A, s.C + Rational(1) - s.B}}, wp);
    const Real t = series_at_1(tu, tl, wp, static_cast<long>(prec) + 24);
    Real val = (R * qn) * (gp2 * t) + sacc * gp;
    return round_to(val, prec);
}

// Lower the third upper parameter of 3F2(1,U,v;L1,L2;1) through
//   T(v) = ((L1-1)(L2-1) - (L1-v)(L2-v) T(v-1)) / ((v-1)(L1+L2-U-1-v)),
// gaining one unit of margin per step without touching Gamma values.
Real descent_3f2(const ShapeU1& s, unsigned prec, int extra_depth) {
    const Rational s0 = s.L1 + s.L2 - Rational(1) - s.U - s.V;
    if (s0.sgn() <= 0)
        throw Error(Err::DivergentSeries, "unit-argument series with nonpositive margin");
    const long n =
        std::max<long>(0, static_cast<long>(std::ceil(chain_target(prec) - s0.to_double()))) +
        std::max(0, extra_depth);
    Rational R(1), sacc(0);
    for (long j = 0; j < n; ++j) {
        const Rational vj = s.V - Rational(j);
        const Rational d1 = vj - Rational(1);
        if (d1.is_zero())
            throw Error(Err::Eval, "descent coefficient vanishes: upper parameter is integral");
        const Rational dj = d1 * (s0 + Rational(j));
        sacc += R * ((s.L1 - Rational(1)) * (s.L2 - Rational(1)) / dj);
        R *= -((s.L1 - vj) * (s.L2 - vj) / dj);
    }
    const Rational vn = s.V - Rational(n);
    const std::vector<Rational> tu{Rational(1), s.U, vn};
    const std::vector<Rational> tl{s.L1, s.L2};
    const double peak = peak_term_bits(tu, tl, (s0 + Rational(n)).to_double());
    unsigned wp = prec + 64 + static_cast<unsigned>(std::max(0.0, peak)) +
                  static_cast<unsigned>(std::max(0.0, log2_mag(R)));
    if (wp > 6000) throw Error(Err::NonConvergence, "required working precision out of range");
    const Real t = series_at_1(tu, tl, wp, static_cast<long>(prec) + 24);
    Real val = R * t + Real::of(sacc, wp);
    return round_to(val, prec);
}

// Gauss-summable 2F1 at 1 without Gamma values: raise c until the margin is
// comfortable using F(c) = (c-a)(c-b)/(c(c-a-b)) F(c+1), then sum directly.
// Serves as the route independent of the closed form.
Real f21_chain_direct(const Rational& a, const Rational& b, const Rational& c, unsigned prec,
                      int extra_depth) {
    if (c.is_nonpositive_integer())
        throw Error(Err::Pole, "2F1 lower parameter " + c.str() + " is a nonpositive integer");
    const Rational m = c - a - b;
    if (m.sgn() <= 0)
        throw Error(Err::DivergentSeries, "unit-argument series with nonpositive margin");
    if ((c - a).is_nonpositive_integer() || (c - b).is_nonpositive_integer())
        return Real(prec);  // reflection zero of the closed form
    const long n = std::max<long>(
                       0, static_cast<long>(std::ceil(chain_target(prec) - m.to_double()))) +
                   std::max(0, extra_depth);
    Rational R(1);
    for (long j = 0; j < n; ++j) {
        const Rational cj = c + Rational(j);
        R *= (cj - a) * (cj - b) / (cj * (cj - a - b));
    }
    const unsigned wp = prec + 64 + static_cast<unsigned>(std::max(0.0, log2_mag(R)));
    const Real t = series_at_1({a, b}, {c + Rational(n)}, wp, static_cast<long>(prec) + 24);
    return round_to(R * t, prec);
}

Rational upow(unsigned long base, unsigned long e) {
    Rational r;
    mpz_ui_pow_ui(mpq_numref(r.raw()), base, e);
    return r;
}

struct LogOut {
    Real value, dw;
    unsigned long terms = 0;
};

// E(w) = B(a,b)^{-1} sum_n c_n (k_n - ln w) w^n and dE/dw, for w in (0, 0.45).
// N_fixed > 0 sums exactly that many terms; 0 selects adaptively. The tail is
// bounded by the geometric envelope of c_n w^n against the slow growth of k_n.
LogOut log_series(const Rational& a, const Rational& b, const Real& w, unsigned wp,
                  bool want_deriv, long stop_bits, unsigned long n_fixed, const Real* k0_in,
                  const Real* beta_in) {
    if (a.is_nonpositive_integer() || b.is_nonpositive_integer())
        throw Error(Err::Pole, "logarithmic connection needs non-polar numerator parameters");
    if (!w.definitely_positive())
        throw Error(Err::Eval, "logarithmic connection argument must be positive");
    const double wd = w.to_double();
    if (wd >= 0.45)
        throw Error(Err::Eval, "logarithmic connection used away from the unit argument");

    Real k0(wp);
    if (k0_in) {
        k0 = *k0_in;
    } else {
        const Real g = Real::euler(wp);
        k0 = -(g + g + specialfn::digamma_numeric(a, wp) + specialfn::digamma_numeric(b, wp));
    }
    const Real bab = beta_in ? *beta_in : specialfn::beta(a, b, wp);
    const Real lw = log(w);
    const double a2 = std::max({std::fabs(a.to_double()), std::fabs(b.to_double()), 1.0});
    const unsigned long n_min = static_cast<unsigned long>(std::max(16.0, 4.0 * a2));

    Real wn = Real::of_long(1, wp);
    Rational cn(1), shift(0);
    Real S(wp), Dw(wp);
    unsigned long n = 0;
    for (;;) {
        const Real kml = k0 + Real::of(shift, wp) - lw;
        const Real term = cn * (wn * kml);
        S = S + term;
        if (want_deriv)
            Dw = Dw + cn * ((wn / w) *
                            (Rational(static_cast<long>(n)) * kml - Real::of_long(1, wp)));
        ++n;
        if (n_fixed) {
            if (n >= n_fixed) {
                const double r = std::min(0.92, wd * (1.0 + a2 / std::max(1.0, double(n))) *
                                                    (1.0 + a2 / std::max(1.0, double(n))) * 1.05);
                const double safety = n >= n_min ? 1.0 : 4.0;
                S.bump_err(bslack(std::max(term.mag_upper(), 1e-320) * r / (1.0 - r) * safety));
                if (want_deriv)
                    Dw.bump_err(bslack(std::max(term.mag_upper(), 1e-320) / wd * (double(n) + 2.0) *
                                       r / (1.0 - r) * safety * 2.0));
                break;
            }
        } else if (n >= n_min) {
            const double r = wd * (1.0 + a2 / double(n)) * (1.0 + a2 / double(n)) * 1.05;
            const double tn = std::max(term.mag_upper(), 1e-320);
            if (r < 0.6) {
                const double tail = bslack(tn * r / (1.0 - r));
                const double dtail =
                    bslack(tn / wd * (double(n) + 2.0) * r / (1.0 - r) * 2.0);
                const double sc =
                    std::ldexp(std::max(1.0, S.mag_upper()), -static_cast<int>(stop_bits));
                const double dsc =
                    std::ldexp(std::max(1.0, Dw.mag_upper()), -static_cast<int>(stop_bits));
                if (tail <= sc && (!want_deriv || dtail <= dsc)) {
                    S.bump_err(tail);
                    if (want_deriv) Dw.bump_err(dtail);
                    break;
                }
            }
            if (n >= 2500000)
                throw Error(Err::NonConvergence, "logarithmic series did not meet the target");
        }
        shift += Rational(2, static_cast<long>(n)) - (a + Rational(static_cast<long>(n) - 1)).inv() -
                 (b + Rational(static_cast<long>(n) - 1)).inv();
        cn *= (a + Rational(static_cast<long>(n) - 1)) * (b + Rational(static_cast<long>(n) - 1)) /
              Rational(static_cast<long>(n) * static_cast<long>(n));
        wn = wn * w;
    }
    return {S / bab, want_deriv ? Dw / bab : Real(wp), n};
}

}  // namespace

std::string PfqParams::str() const {
    std::ostringstream os;
    os << upper.size() << "F" << lower.size() << "(";
    join(os, upper);
    os << "; ";
    join(os, lower);
    os << ")";
    return os.str();
}

Rational margin(const PfqParams& p) {
    Rational m;
    for (const auto& l : p.lower) m += l;
    for (const auto& u : p.upper) m -= u;
    return m;
}

Real pfq(const PfqParams& p, const Real& x, unsigned prec) {
    if (x.exact() && x.is_zero()) return Real::of_long(1, prec);
    if (x.exact() && mpfr_cmp_ui(x.raw(), 1) == 0) return pfq1(p, prec);
    const auto trunc = truncation_index(p.upper);
    if (!trunc && !(x.mag_upper() < 1.0))
        throw Error(Err::DivergentSeries,
                    p.str() + " supported at |x| < 1, exact 1, or terminating only");
    auto out = series_sum(p.upper, p.lower, x, prec + 48, false, static_cast<long>(prec) + 16);
    return round_to(out.value, prec);
}

Real levin_sum_at_1(const PfqParams& p, unsigned prec, unsigned terms) {
    const Rational m = margin(p);
    if (!truncation_index(p.upper)) {
        if (p.upper.size() != p.lower.size() + 1 || m.sgn() <= 0)
            throw Error(Err::DivergentSeries, p.str() + " does not converge at 1");
    }
    const unsigned long K = terms ? terms : std::min<unsigned>(280, 60 + prec / 2);
    const unsigned wp = 2 * prec + 96;
    // partial sums S_0..S_K and terms t_0..t_{K+1}
    std::vector<Real> S, T;
    S.reserve(K + 1);
    T.reserve(K + 2);
    Real t = Real::of_long(1, wp);
    Real acc = t;
    T.push_back(t);
    S.push_back(acc);
    for (unsigned long nn = 0; nn <= K; ++nn) {
        Rational r(1);
        for (const auto& u : p.upper) r *= u + Rational(static_cast<long>(nn));
        for (const auto& l : p.lower) r /= l + Rational(static_cast<long>(nn));
        r /= Rational(static_cast<long>(nn) + 1);
        t = t * r;
        T.push_back(t);
        if (nn + 1 <= K) {
            acc = acc + t;
            S.push_back(acc);
        }
    }
    // Levin u-transform, beta = 1, remainder estimates (1+n) t_{n+1}; the
    // standard triangular recursion on numerator and denominator sequences.
    std::vector<Real> N(K + 1, Real(wp)), D(K + 1, Real(wp));
    for (unsigned long nn = 0; nn <= K; ++nn) {
        const Real w = Rational(static_cast<long>(nn) + 1) * T[nn + 1];
        if (!w.definitely_nonzero())
            throw Error(Err::Eval, "acceleration remainder estimate vanished");
        N[nn] = S[nn] / w;
        D[nn] = Real::of_long(1, wp) / w;
    }
    Real est(wp), prev1(wp), prev2(wp);
    for (unsigned long k = 1; k <= K; ++k) {
        for (unsigned long nn = 0; nn + k <= K; ++nn) {
            // Weniger's u-transform recursion, beta = 1:
            //   coeff = (n+1)(n+k)^(k-2) / (n+k+1)^(k-1),  k = 1 -> 1.
            const Rational coeff =
                k == 1 ? Rational(1)
                       : Rational(static_cast<long>(nn) + 1) * upow(nn + k, k - 2) /
                             upow(nn + k + 1, k - 1);
            N[nn] = N[nn + 1] - coeff * N[nn];
            D[nn] = D[nn + 1] - coeff * D[nn];
        }
        if (k + 2 >= K) {
            prev2 = prev1;
            prev1 = est;
            if (!D[0].definitely_nonzero())
                throw Error(Err::NonConvergence, "acceleration denominator lost significance");
            est = N[0] / D[0];
        }
    }
    // Heuristic stabilization certificate: successive diagonal differences.
    const double h = 8.0 * (abs(est - prev1).mag_upper() + abs(prev1 - prev2).mag_upper());
    est.bump_err(bslack(h));
    return round_to(est, prec);
}

Real pfq1(const PfqParams& p, unsigned prec, EvalOpts opts) {
    const auto trunc = truncation_index(p.upper);
    if (trunc) {
        Real one = Real::of_long(1, prec + 48);
        return round_to(series_sum(p.upper, p.lower, one, prec + 48, false,
                                   static_cast<long>(prec) + 16)
                            .value,
                        prec);
    }
    const size_t np = p.upper.size(), nq = p.lower.size();
    const Rational m = margin(p);
    if (np == nq + 1 && m.sgn() <= 0)
        throw Error(Err::DivergentSeries, p.str() + " does not converge at 1");
    if (np > nq + 1) throw Error(Err::DivergentSeries, p.str() + " diverges at 1");

    const auto direct = [&](unsigned pr) {
        return round_to(series_at_1(p.upper, p.lower, pr + 48, static_cast<long>(pr) + 16), pr);
    };

    switch (opts.strategy) {
        case Strategy::Direct:
            return direct(prec);
        case Strategy::Levin:
            return levin_sum_at_1(p, prec, 0);
        case Strategy::ChainBailey: {
            const auto s = match_fq_shape(p);
            if (!s)
                throw Error(Err::Eval, p.str() + " does not have the raised-parameter shape");
            return chain_bailey_3f2(*s, prec, opts.extra_depth);
        }
        case Strategy::Descent: {
            const auto s = match_upper_one(p);
            if (!s) throw Error(Err::Eval, p.str() + " has no unit upper parameter");
            return descent_3f2(*s, prec, opts.extra_depth);
        }
        case Strategy::Auto:
            break;
    }

    if (np <= nq) return direct(prec);
    if (m.to_double() >= chain_target(prec)) return direct(prec);
    if (np == 2) {
        const Rational a = p.upper[0], b = p.upper[1], c = p.lower[0];
        if ((c - a).is_nonpositive_integer() || (c - b).is_nonpositive_integer())
            return Real(prec);
        return euler_at_1(a, b, c, prec);
    }
    if (np == 3) {
        if (const auto s = match_fq_shape(p)) {
            try {
                return chain_bailey_3f2(*s, prec, opts.extra_depth);
            } catch (const Error& e) {
                if (e.code() != Err::Eval && e.code() != Err::Pole) throw;
            }
        }
        if (const auto s = match_upper_one(p)) {
            try {
                return descent_3f2(*s, prec, opts.extra_depth);
            } catch (const Error& e) {
                if (e.code() != Err::Eval && e.code() != Err::Pole) throw;
            }
        }
    }
    return levin_sum_at_1(p, prec, 0);
}

Real euler_at_1(const Rational& a, const Rational& b, const Rational& c, unsigned prec) {
    const Rational m = c - a - b;
    if (m.sgn() <= 0)
        throw Error(Err::DivergentSeries, "2F1 at 1 with nonpositive margin");
    if ((c - a).is_nonpositive_integer() || (c - b).is_nonpositive_integer()) return Real(prec);
    return specialfn::gamma_product({{c, m}, {c - a, c - b}}, prec);
}

Real euler_at_1_via_series(const Rational& a, const Rational& b, const Rational& c, unsigned prec,
                           int extra_depth) {
    return f21_chain_direct(a, b, c, prec, extra_depth);
}

F21 gauss_2f1(const Rational& a, const Rational& b, const Rational& c, const Real& x,
              const Real& one_minus_x, unsigned prec, bool want_deriv) {
    if (c.is_nonpositive_integer())
        throw Error(Err::Pole, "2F1 lower parameter " + c.str() + " is a nonpositive integer");
    const unsigned wp = prec + 48;
    if (x.exact() && x.is_zero())
        return {Real::of_long(1, prec), Real::of(a * b / c, prec)};

    if (truncation_index({a, b}) || x.to_double() <= 0.6) {
        auto out = series_sum({a, b}, {c}, x, wp, want_deriv, static_cast<long>(prec) + 16);
        return {round_to(out.value, prec),
                want_deriv ? round_to(out.deriv, prec) : Real(prec)};
    }

    if (!one_minus_x.definitely_positive())
        throw Error(Err::Eval, "2F1 argument indistinguishable from 1");
    const Rational delta = c - a - b;
    if (delta.is_zero()) {
        auto lo = log_series(a, b, one_minus_x, wp, want_deriv, static_cast<long>(prec) + 16, 0,
                             nullptr, nullptr);
        return {round_to(lo.value, prec),
                want_deriv ? round_to(-lo.dw, prec) : Real(prec)};
    }
    if (delta.is_integer())
        throw Error(Err::Eval, "integer parameter excess outside the supported evaluation families");

    // Two-part connection in w = 1-x; coefficients with a polar denominator
    // Gamma vanish identically.
    const bool p1_zero = (c - a).is_nonpositive_integer() || (c - b).is_nonpositive_integer();
    const bool p2_zero = a.is_nonpositive_integer() || b.is_nonpositive_integer();
    Real val(wp), der(wp);
    if (!p1_zero) {
        const Real p1 = specialfn::gamma_product({{c, delta}, {c - a, c - b}}, wp);
        auto h1 = series_sum({a, b}, {Rational(1) - delta}, one_minus_x, wp, want_deriv,
                             static_cast<long>(prec) + 16);
        val = p1 * h1.value;
        if (want_deriv) der = p1 * h1.deriv;
    }
    if (!p2_zero) {
        const Real p2 = specialfn::gamma_product({{c, -delta}, {a, b}}, wp);
        auto h2 = series_sum({c - a, c - b}, {Rational(1) + delta}, one_minus_x, wp, want_deriv,
                             static_cast<long>(prec) + 16);
        const Real wpow = pow_q(one_minus_x, delta);
        val = val + p2 * (wpow * h2.value);
        if (want_deriv)
            der = der + p2 * (delta * ((wpow / one_minus_x) * h2.value) + wpow * h2.deriv);
    }
    return {round_to(val, prec), want_deriv ? round_to(-der, prec) : Real(prec)};
}

Real LogExpansion::kn(unsigned n) const {
    if (n >= kshift.size()) throw Error(Err::Config, "log expansion index past the truncation order");
    return k0 + Real::of(kshift[n], k0.prec());
}

Real LogExpansion::eval_w(const Real& w, unsigned prec) const {
    auto out = log_series(a, b, w, prec + 32, false, static_cast<long>(prec) + 16, N, &k0, &beta_ab);
    return round_to(out.value, prec);
}

Real LogExpansion::eval_deriv_t_w(const Real& w, unsigned prec) const {
    auto out = log_series(a, b, w, prec + 32, true, static_cast<long>(prec) + 16, N, &k0, &beta_ab);
    return round_to(-out.dw, prec);
}

LogExpansion log_expansion_at_1(const Rational& a, const Rational& b, unsigned N, unsigned prec) {
    if (a.is_nonpositive_integer() || b.is_nonpositive_integer())
        throw Error(Err::Pole, "logarithmic expansion needs non-polar numerator parameters");
    if (N == 0) throw Error(Err::Config, "log expansion needs at least one term");
    const unsigned wp = prec + 32;
    const Real g = Real::euler(wp);
    Real k0 = -(g + g + specialfn::digamma_numeric(a, wp) + specialfn::digamma_numeric(b, wp));
    Real bab = specialfn::beta(a, b, wp);
    std::vector<Rational> kshift, coeff;
    kshift.reserve(N);
    coeff.reserve(N);
    Rational shift(0), cn(1);
    for (unsigned n = 0; n < N; ++n) {
        kshift.push_back(shift);
        coeff.push_back(cn);
        const Rational nn(static_cast<long>(n));
        shift += Rational(2, static_cast<long>(n) + 1) - (a + nn).inv() - (b + nn).inv();
        cn *= (a + nn) * (b + nn) / ((nn + Rational(1)) * (nn + Rational(1)));
    }
    return {a, b, N, std::move(k0), std::move(kshift), std::move(coeff), std::move(bab)};
}

Basis basis_f1_f2(const params::ExponentData& e) {
    return {e, e.alpha1 + e.beta1, e.alpha1 + e.beta2, Rational(1) + e.alpha1 - e.alpha2};
}

namespace {

F21 with_power_prefactor(const Rational& alpha, const Real& t, const F21& g, int dsign,
                         unsigned prec) {
    // d/dt [t^alpha G(arg(t))] with arg' = dsign (+1 for arg = t, -1 for 1-t).
    const Real darg = dsign > 0 ? g.deriv : -g.deriv;
    if (alpha.is_zero()) return {round_to(g.value, prec), round_to(darg, prec)};
    const Real tp = pow_q(t, alpha);
    const Real tpm = tp / t;
    return {round_to(tp * g.value, prec), round_to(alpha * (tpm * g.value) + tp * darg, prec)};
}

}  // namespace

F21 Basis::F1(const Real& t, const Real& one_minus_t, unsigned prec, bool want_deriv) const {
    auto g = gauss_2f1(a, b, Rational(1), one_minus_t, t, prec + 16, want_deriv);
    return with_power_prefactor(e.alpha1, t, g, -1, prec);
}

F21 Basis::F2(const Real& t, const Real& one_minus_t, unsigned prec, bool want_deriv) const {
    if (e.alpha1 == e.alpha2)
        throw Error(Err::Pole, "resonant exponents: the companion solution is logarithmic");
    auto g = gauss_2f1(a, b, c2, t, one_minus_t, prec + 16, want_deriv);
    return with_power_prefactor(e.alpha1, t, g, +1, prec);
}

}  // namespace cmp::hyper
