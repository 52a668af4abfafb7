#include "params.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace cmp::params {

std::string ExponentData::str() const {
    std::ostringstream os;
    os << "alpha=(" << alpha1 << "," << alpha2 << ") beta=(" << beta1 << "," << beta2 << ")";
    return os.str();
}

CharacterIndex CharacterIndex::of(const Rational& q) {
    if (q <= Rational(0) || q >= Rational(1))
        throw Error(Err::Config, "character index must lie in (0,1), got " + q.str());
    CharacterIndex c;
    c.k = q.num_long();
    c.l = static_cast<long>(q.den_ulong());
    return c;
}

ValidationReport validate(const ExponentData& e, const CharacterIndex& chi) {
    ValidationReport rep;
    rep.normalized = (e.sum() == Rational(1));
    if (!rep.normalized) rep.violations.emplace_back("sum", e.sum());

    rep.irreducible = true;
    const char* anames[2] = {"alpha1", "alpha2"};
    const char* bnames[2] = {"beta1", "beta2"};
    auto al = e.alpha();
    auto be = e.beta();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Rational s = al[i] + be[j];
            if (s.is_integer()) {
                rep.irreducible = false;
                rep.violations.emplace_back(std::string(anames[i]) + "+" + bnames[j], s);
            }
        }

    rep.theorem_main_ok = true;
    Rational q = chi.q();
    for (int i = 0; i < 2; ++i) {
        Rational t = q + al[i];
        if (t.is_integer()) {
            rep.theorem_main_ok = false;
            rep.violations.emplace_back(std::string("q+") + anames[i], t);
        }
    }
    for (int j = 0; j < 2; ++j) {
        Rational t = be[j] - q;
        if (t.is_integer()) {
            rep.theorem_main_ok = false;
            rep.violations.emplace_back(std::string(bnames[j]) + "-q", t);
        }
    }
    return rep;
}

Rational pochhammer(const Rational& x, unsigned long n) {
    Rational acc(1);
    Rational cur = x;
    for (unsigned long i = 0; i < n; ++i) {
        acc *= cur;
        cur += Rational(1);
    }
    return acc;
}

namespace {

// Smallest N with N*(each of xs) integral.
unsigned long common_denominator(const std::vector<Rational>& xs) {
    Rational l = lcm_den(xs);
    if (!l.is_integer()) throw Error(Err::Eval, "lcm not integral");
    unsigned long n = l.den_ulong();  // == 1
    (void)n;
    if (!mpz_fits_ulong_p(mpq_numref(l.raw())))
        throw Error(Err::DegenerateOrbit, "orbit modulus out of range");
    return mpz_get_ui(mpq_numref(l.raw()));
}

struct ConjKey {
    Rational q, a1, a2, b1, b2;
    bool operator==(const ConjKey& o) const {
        return q == o.q && a1 == o.a1 && a2 == o.a2 && b1 == o.b1 && b2 == o.b2;
    }
};

}  // namespace

GaloisOrbit galois_orbit(const ExponentData& e, const CharacterIndex& chi) {
    Rational q = chi.q();
    std::vector<Rational> twisted = {q, q + e.alpha1, q + e.alpha2, e.beta1 - q, e.beta2 - q};
    for (std::size_t i = 1; i < twisted.size(); ++i)
        if (twisted[i].is_integer())
            throw Error(Err::DegenerateOrbit,
                        "orbit undefined: twisted exponent " + twisted[i].str() + " is integral");

    GaloisOrbit orbit;
    orbit.modulus = common_denominator(twisted);
    unsigned long N = orbit.modulus;

    std::vector<ConjKey> seen;
    for (unsigned long s = 1; s < N; ++s) {
        if (gcd_long(static_cast<long>(s), static_cast<long>(N)) != 1) continue;
        Rational sr(static_cast<long>(s));
        Rational qp = (sr * q).frac();
        // q' in (0,1): s coprime to the denominator of q keeps it off Z.
        Rational a1 = (sr * (q + e.alpha1) - qp).frac();
        Rational a2 = (sr * (q + e.alpha2) - qp).frac();
        Rational b1 = (sr * (e.beta1 - q) + qp).frac();
        Rational b2 = (sr * (e.beta2 - q) + qp).frac();
        if (a1 > a2) std::swap(a1, a2);
        if (b1 > b2) std::swap(b1, b2);

        ConjKey key{qp, a1, a2, b1, b2};
        bool dup = false;
        for (const auto& k : seen)
            if (k == key) {
                dup = true;
                break;
            }
        if (dup) continue;
        seen.push_back(key);

        // Restore the exact sum-1 invariant by integer shifts; canonical
        // classes are unchanged.
        Rational sum = a1 + a2 + b1 + b2;
        if (!sum.is_integer()) throw Error(Err::DegenerateOrbit, "conjugate sum not integral");
        long S = sum.floor_long();
        if (S == 0) {
            b2 += Rational(1);
        } else if (S == 2) {
            b2 -= Rational(1);
        } else if (S == 3) {
            b2 -= Rational(1);
            b1 -= Rational(1);
        } else if (S != 1) {
            throw Error(Err::DegenerateOrbit, "conjugate sum out of range");
        }

        OrbitElement el;
        el.s = s;
        el.data = ExponentData{a1, a2, b1, b2};
        el.chi = CharacterIndex::of(qp);
        orbit.elements.push_back(std::move(el));
    }
    if (orbit.elements.empty()) throw Error(Err::DegenerateOrbit, "empty orbit");
    return orbit;
}

}  // namespace cmp::params
