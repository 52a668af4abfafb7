// Exponent data, character indices, validation and Galois orbits. Everything
// here is exact rational arithmetic; no floating point enters.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "rational.hpp"

namespace cmp::params {

// Four exponents with alpha1+alpha2+beta1+beta2 == 1 exactly. Stored
// representatives may leave [0,1); canonical representatives are available on
// demand via frac().
struct ExponentData {
    Rational alpha1, alpha2, beta1, beta2;
    Rational sum() const { return alpha1 + alpha2 + beta1 + beta2; }
    std::array<Rational, 2> alpha() const { return {alpha1, alpha2}; }
    std::array<Rational, 2> beta() const { return {beta1, beta2}; }
    std::string str() const;
};

// q = k/l with 0 < k < l, gcd(k,l) = 1.
struct CharacterIndex {
    long k = 1, l = 2;
    Rational q() const { return Rational(k, l); }
    static CharacterIndex of(const Rational& q);  // Err::Config outside (0,1)
};

struct ValidationReport {
    bool normalized = false;      // sum == 1 exactly
    bool irreducible = false;     // no alpha_i + beta_j integral
    bool theorem_main_ok = false; // none of q+alpha_j, -q+beta_j integral
    std::vector<std::pair<std::string, Rational>> violations;
    bool ok() const { return normalized && irreducible && theorem_main_ok; }
};

ValidationReport validate(const ExponentData& e, const CharacterIndex& chi);

// (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1. Exact.
Rational pochhammer(const Rational& x, unsigned long n);

struct OrbitElement {
    unsigned long s;  // acting unit mod modulus
    ExponentData data;
    CharacterIndex chi;
};

struct GaloisOrbit {
    unsigned long modulus;  // lcm of the twisted-exponent denominators
    std::vector<OrbitElement> elements;
};

// Orbit of (e, chi) under s |-> (s(q+alpha_j), s(-q+beta_j)) mod Z for units
// s mod the modulus. Conjugates are re-split as (q', alpha', beta') with
// q' in (0,1), components sorted ascending by canonical representative, and
// stored representatives shifted by integers so the sum-1 invariant holds
// (adjustment order: beta2 down, beta1 down, beta2 up). Duplicates keep the
// smallest acting unit.
GaloisOrbit galois_orbit(const ExponentData& e, const CharacterIndex& chi);

}  // namespace cmp::params
