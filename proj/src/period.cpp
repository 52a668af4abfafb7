#include "period.hpp"

#include "errors.hpp"

namespace cmp::period {

using params::pochhammer;

Rational a_n(const params::ExponentData& e, const params::CharacterIndex& chi, unsigned long n) {
    Rational q = chi.q();
    Rational num = pochhammer(e.alpha1 + q, n) * pochhammer(e.alpha2 + q, n);
    Rational den = pochhammer(Rational(1) - e.beta1 + q, n) * pochhammer(Rational(1) - e.beta2 + q, n);
    if (den.is_zero()) throw Error(Err::Pole, "vanishing Pochhammer denominator in a_n");
    return num / den;
}

void PolynomialPair::check() const {
    Rational s(0);
    for (const Rational& c : dprime) s += c;
    if (!s.is_zero())
        throw Error(Err::Config, "polynomial pair: p1(1) must vanish (coefficients sum to " +
                                     s.str() + ")");
    if (d.empty() && dprime.empty())
        throw Error(Err::Config, "polynomial pair: both polynomials are empty");
}

Rational PolynomialPair::p0_at(const Rational& t) const {
    Rational acc(0), tp(1);
    for (const Rational& c : d) {
        acc += c * tp;
        tp *= t;
    }
    return acc;
}

Rational PolynomialPair::p1_at(const Rational& t) const {
    Rational acc(0), tp(1);
    for (const Rational& c : dprime) {
        acc += c * tp;
        tp *= t;
    }
    return acc;
}

Rational c_m(const PolynomialPair& p, const params::ExponentData& e,
             const params::CharacterIndex& chi, long m) {
    p.check();
    if (m < 1) throw Error(Err::Config, "C_m requires m >= 1");
    Rational q = chi.q();
    long imax = static_cast<long>(std::max(p.d.size(), p.dprime.size())) - 1;
    Rational acc(0);
    for (long i = -1; i <= imax; ++i) {
        Rational di = (i >= 0 && i < static_cast<long>(p.d.size())) ? p.d[static_cast<size_t>(i)]
                                                                    : Rational(0);
        Rational dpi = (i + 1 < static_cast<long>(p.dprime.size()))
                           ? p.dprime[static_cast<size_t>(i + 1)]
                           : Rational(0);
        Rational w = di - dpi * (q + Rational(m + i));
        if (w.is_zero()) continue;
        acc += w * a_n(e, chi, static_cast<unsigned long>(m + i));
    }
    return acc;
}

specialfn::GammaSpec im_gamma_spec(const params::ExponentData& e, const params::CharacterIndex& chi) {
    Rational q = chi.q();
    return {{e.alpha1 + q, e.alpha2 + q},
            {Rational(1) - e.beta1 + q, Rational(1) - e.beta2 + q}};
}

Real i_m(const PolynomialPair& p, const params::ExponentData& e, const params::CharacterIndex& chi,
         long m, unsigned prec) {
    Rational cm = c_m(p, e, chi, m);
    return specialfn::gamma_product(im_gamma_spec(e, chi), prec) * cm;
}

long find_nonvanishing_m(const PolynomialPair& p, const params::ExponentData& e,
                         const params::CharacterIndex& chi, long m_max) {
    for (long m = 1; m <= m_max; ++m)
        if (!c_m(p, e, chi, m).is_zero()) return m;
    throw Error(Err::ExhaustedSearch,
                "C_m vanishes for every m in [1, " + std::to_string(m_max) + "]");
}

namespace {

// Gamma(x) = factor * Gamma(frac(x)); x must not be an integer.
Rational shift_factor(const Rational& x) {
    if (x.is_integer()) throw Error(Err::Pole, "integral Gamma argument " + x.str());
    long k = x.floor_long();
    Rational f(1);
    if (k >= 0) {
        // Gamma(frac + k) = (frac)_k Gamma(frac)
        f = pochhammer(x.frac(), static_cast<unsigned long>(k));
    } else {
        // Gamma(x) = Gamma(x + |k|) / (x)_{|k|}
        f = pochhammer(x, static_cast<unsigned long>(-k)).inv();
    }
    return f;
}

specialfn::GammaSpec canonical_spec(const params::ExponentData& e,
                                    const params::CharacterIndex& chi, Rational& factor) {
    Rational q = chi.q();
    std::vector<Rational> raw_num = {q + e.alpha1, q + e.alpha2};
    std::vector<Rational> raw_den = {q - e.beta1, q - e.beta2};
    specialfn::GammaSpec spec;
    factor = Rational(1);
    for (const Rational& x : raw_num) {
        factor *= shift_factor(x);
        spec.num.push_back(x.frac());
    }
    for (const Rational& x : raw_den) {
        factor /= shift_factor(x);
        spec.den.push_back(x.frac());
    }
    return spec;
}

}  // namespace

long hodge_type(const params::ExponentData& e, const params::CharacterIndex& chi) {
    Rational q = chi.q();
    Rational h = Rational(1) + (q + e.alpha1).frac() + (q + e.alpha2).frac() -
                 (q - e.beta1).frac() - (q - e.beta2).frac();
    if (!h.is_integer()) throw Error(Err::Eval, "non-integral Hodge exponent " + h.str());
    return h.num_long();
}

PeriodResult period_value(const params::ExponentData& e, const params::CharacterIndex& chi,
                          unsigned prec) {
    params::ValidationReport rep = params::validate(e, chi);
    if (!rep.ok())
        throw Error(Err::Config, "invalid data: " + rep.violations.front().first + " = " +
                                     rep.violations.front().second.str());

    PeriodResult r;
    r.gamma_spec = canonical_spec(e, chi, r.rational_factor);
    Real g = specialfn::gamma_product(r.gamma_spec, prec);
    Real tau = Real::pi(prec) + Real::pi(prec);
    // raw bracket value: Gamma(raw args) = rational_factor * Gamma(canonical)
    r.value = Cplx{Real(prec), tau * (g * r.rational_factor)};
    r.hodge_type = hodge_type(e, chi);

    // Gamma({q+a_j}/{q-b_j}) = im_conversion * Gamma({a_j+q}/{1-b_j+q}):
    // each denominator entry obeys Gamma(q-b) = Gamma(1-b+q)/(q-b).
    r.im_conversion = (chi.q() - e.beta1) * (chi.q() - e.beta2);
    return r;
}

DualData dual_data(const params::ExponentData& e, const params::CharacterIndex& chi) {
    DualData d;
    d.chi = params::CharacterIndex::of(Rational(1) - chi.q());
    Rational a1 = (-e.alpha1).frac(), a2 = (-e.alpha2).frac();
    Rational b1 = (-e.beta1).frac(), b2 = (-e.beta2).frac();
    if (a2 < a1) std::swap(a1, a2);
    if (b2 < b1) std::swap(b1, b2);
    d.e = params::ExponentData{a1, a2, b1, b2};
    return d;
}

DualityResult duality_check(const params::ExponentData& e, const params::CharacterIndex& chi,
                            unsigned prec) {
    unsigned wp = prec + 32;
    Rational f1, f2;
    specialfn::GammaSpec s1 = canonical_spec(e, chi, f1);
    DualData dd = dual_data(e, chi);
    specialfn::GammaSpec s2 = canonical_spec(dd.e, dd.chi, f2);

    DualityResult res;
    Real g1 = specialfn::gamma_product(s1, wp);
    Real g2 = specialfn::gamma_product(s2, wp);
    res.product = round_to(g1 * g2, prec);

    Rational q = chi.q();
    Rational sb1 = (q - e.beta1).frac(), sb2 = (q - e.beta2).frac();
    Rational sa1 = (q + e.alpha1).frac(), sa2 = (q + e.alpha2).frac();
    Real num = sin_pi(sb1, wp) * sin_pi(sb2, wp);
    Real den = sin_pi(sa1, wp) * sin_pi(sa2, wp);
    res.expected = round_to(num / den, prec);
    res.residual = res.product - res.expected;

    res.symbolic_ok = false;
    auto pn = specialfn::sin_pi_product_exact(sb1, sb2);
    auto pd = specialfn::sin_pi_product_exact(sa1, sa2);
    if (pn && pd && !pd->is_zero()) {
        res.sine_factor_exact = *pn / *pd;
        Real diff = (g1 * g2) - Real::of(*res.sine_factor_exact, wp);
        res.symbolic_ok = !diff.definitely_nonzero();
    }
    return res;
}

Rational independence_det(const params::ExponentData& e, const params::CharacterIndex& chi,
                          unsigned r, long m) {
    if (r == 0 || m < 0) throw Error(Err::Config, "independence_det requires r >= 1, m >= 0");
    size_t n = 2 * static_cast<size_t>(r);
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n, Rational(0)));
    for (size_t row = 0; row < n; ++row) {
        long i = m + 1 + static_cast<long>(row);
        for (size_t k = 1; k <= r; ++k) {
            Rational aik = a_n(e, chi, static_cast<unsigned long>(i + static_cast<long>(k)));
            mat[row][k - 1] = aik;
            mat[row][r + k - 1] = Rational(i + static_cast<long>(k)) * aik;
        }
    }
    // Exact Gaussian elimination.
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && mat[piv][col].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(mat[piv], mat[col]);
            det = -det;
        }
        det *= mat[col][col];
        Rational lead = mat[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (mat[row][col].is_zero()) continue;
            Rational fac = mat[row][col] / lead;
            for (size_t k = col; k < n; ++k) mat[row][k] -= fac * mat[col][k];
        }
    }
    return det;
}

}  // namespace cmp::period
