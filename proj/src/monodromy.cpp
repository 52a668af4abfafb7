#include "monodromy.hpp"

#include <sstream>

#include "errors.hpp"

namespace cmp::monodromy {
namespace {

using Poly = std::vector<Rational>;  // coeffs, ascending degree

int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!p[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

// Exact quotient; remainder (if any) is discarded by the caller's contract.
Poly divide_exact(const Poly& num, const Poly& den) {
    int dn = degree(num), dd = degree(den);
    Poly rem = num;
    Poly quot(static_cast<size_t>(dn - dd + 1), Rational(0));
    for (int k = dn - dd; k >= 0; --k) {
        Rational c = rem[static_cast<size_t>(k + dd)] / den[static_cast<size_t>(dd)];
        quot[static_cast<size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(k + j)] -= c * den[static_cast<size_t>(j)];
    }
    return quot;
}

// x^n - 1
Poly xn_minus_1(unsigned long n) {
    Poly p(n + 1, Rational(0));
    p[0] = Rational(-1);
    p[n] = Rational(1);
    return p;
}

const Poly& cyclotomic(unsigned long n) {
    static std::map<unsigned long, Poly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Poly p = xn_minus_1(n);
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        p = divide_exact(p, cyclotomic(d));
    }
    return cache.emplace(n, std::move(p)).first->second;
}

// Remainder of p modulo the cyclotomic polynomial Phi_n.
Poly reduce_mod_cyclotomic(Poly p, unsigned long n) {
    const Poly& phi = cyclotomic(n);
    int dd = degree(phi);
    for (int k = degree(p); k >= dd; --k) {
        Rational c = p[static_cast<size_t>(k)] / phi[static_cast<size_t>(dd)];
        if (c.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            p[static_cast<size_t>(k - dd + j)] -= c * phi[static_cast<size_t>(j)];
    }
    return p;
}

}  // namespace

void CycSum::add_term(const Rational& angle, const Rational& coeff) {
    if (coeff.is_zero()) return;
    Rational a = angle.frac();
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CycSum CycSum::root(const Rational& r) {
    CycSum s;
    s.add_term(r, Rational(1));
    return s;
}

CycSum CycSum::scalar(const Rational& c) {
    CycSum s;
    s.add_term(Rational(0), c);
    return s;
}

CycSum CycSum::operator+(const CycSum& o) const {
    CycSum s = *this;
    for (const auto& [a, c] : o.terms_) s.add_term(a, c);
    return s;
}

CycSum CycSum::operator-(const CycSum& o) const {
    CycSum s = *this;
    for (const auto& [a, c] : o.terms_) s.add_term(a, -c);
    return s;
}

CycSum CycSum::operator-() const {
    CycSum s;
    for (const auto& [a, c] : terms_) s.add_term(a, -c);
    return s;
}

CycSum CycSum::scaled(const Rational& c) const {
    CycSum s;
    for (const auto& [a, k] : terms_) s.add_term(a, k * c);
    return s;
}

CycSum CycSum::operator*(const CycSum& o) const {
    CycSum s;
    for (const auto& [a1, c1] : terms_)
        for (const auto& [a2, c2] : o.terms_) s.add_term(a1 + a2, c1 * c2);
    return s;
}

bool CycSum::is_zero() const {
    if (terms_.empty()) return true;
    std::vector<Rational> angles;
    angles.reserve(terms_.size());
    for (const auto& [a, c] : terms_) angles.push_back(a);
    unsigned long n = static_cast<unsigned long>(lcm_den(angles).num_long());
    // P(zeta_n) with zeta_n primitive; zero iff Phi_n divides P.
    Poly p(n, Rational(0));
    for (const auto& [a, c] : terms_) {
        unsigned long k = (a * Rational(static_cast<long>(n))).floor_long() % n;
        p[k] += c;
    }
    Poly r = reduce_mod_cyclotomic(std::move(p), n);
    return degree(r) < 0;
}

bool CycSum::monomial(Rational& c, Rational& r) const {
    if (terms_.size() != 1) return false;
    r = terms_.begin()->first;
    c = terms_.begin()->second;
    return true;
}

Cplx CycSum::value(unsigned prec) const {
    Cplx acc{Real(prec), Real(prec)};
    for (const auto& [a, c] : terms_) {
        Cplx e = exp_2pi_i(a, prec);
        Real k = Real::of(c, prec);
        acc = acc + Cplx{k * e.re, k * e.im};
    }
    return acc;
}

std::string CycSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*e(" << a.str() << ")";
    }
    return os.str();
}

CycMat2 CycMat2::identity() {
    return {{CycSum::one(), CycSum::zero(), CycSum::zero(), CycSum::one()}};
}

CycMat2 CycMat2::operator*(const CycMat2& o) const {
    return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
             m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

CycMat2 CycMat2::inverse() const {
    Rational dc, dr;
    if (!det().monomial(dc, dr) || dc.is_zero())
        throw Error(Err::Eval, "matrix inverse requires a monomial determinant");
    // 1/(dc * e(dr)) = (1/dc) * e(-dr)
    CycSum dinv = CycSum::root(-dr).scaled(dc.inv());
    return {{m[3] * dinv, (-m[1]) * dinv, (-m[2]) * dinv, m[0] * dinv}};
}

bool CycMat2::is_identity() const {
    return (m[0] - CycSum::one()).is_zero() && m[1].is_zero() && m[2].is_zero() &&
           (m[3] - CycSum::one()).is_zero();
}

std::array<Cplx, 4> CycMat2::value(unsigned prec) const {
    return {m[0].value(prec), m[1].value(prec), m[2].value(prec), m[3].value(prec)};
}

CycSum epsilon_of(const params::ExponentData& e) {
    return CycSum::root(-e.beta1) + CycSum::root(-e.beta2) - CycSum::root(e.alpha1) -
           CycSum::root(e.alpha2);
}

LocalSystem build_local_system(const params::ExponentData& e) {
    for (const Rational& a : e.alpha())
        for (const Rational& b : e.beta())
            if ((a + b).is_integer())
                throw Error(Err::ReducibleSystem,
                            "local system is reducible: alpha + beta = " + (a + b).str() +
                                " is integral");
    CycSum eps = epsilon_of(e);
    if (eps.is_zero())
        throw Error(Err::ReducibleSystem, "local system is reducible: vanishing epsilon");

    LocalSystem sys;
    sys.epsilon = eps;
    sys.T1 = {{CycSum::one(), CycSum::one(), CycSum::zero(), CycSum::one()}};
    sys.T0 = {{CycSum::root(e.alpha2), CycSum::zero(), eps, CycSum::root(e.alpha1)}};
    sys.Tinf = (sys.T1 * sys.T0).inverse();
    return sys;
}

RiemannScheme riemann_scheme(const params::ExponentData& e) {
    RiemannScheme s;
    s.at0 = {e.alpha1, e.alpha2};
    s.at1 = {Rational(0), Rational(0)};
    s.atinf = {e.beta1, e.beta2};
    return s;
}

Rational RiemannScheme::exponent_sum() const {
    return at0[0] + at0[1] + at1[0] + at1[1] + atinf[0] + atinf[1];
}

TwistedExponents twisted_exponents(const params::ExponentData& e, const params::CharacterIndex& chi) {
    Rational q = chi.q();
    TwistedExponents t;
    t.at0 = {(q + e.alpha1).frac(), (q + e.alpha2).frac()};
    t.atinf = {(e.beta1 - q).frac(), (e.beta2 - q).frac()};
    return t;
}

}  // namespace cmp::monodromy
