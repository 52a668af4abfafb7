// Independent numeric cross-checks: tanh-sinh quadrature of the Euler-type
// integrals behind I_m, K_n and J_m, and monodromy matrices obtained by
// integrating the second-order ODE around explicit loops. Everything here is
// deliberately disjoint from the closed-form code paths it checks: no Gamma
// products, no contiguous relations, no unit-argument series tricks.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "bigreal.hpp"
#include "params.hpp"
#include "period.hpp"
#include "rational.hpp"

namespace cmp::oracles {

struct QuadResult {
    Real value;
    double err_estimate;  // heuristic: level-to-level difference + rounding
    int levels;
    unsigned long evals;
};

// Integral of f over (0,1). f receives (t, 1-t) with both arguments accurate
// near their respective endpoints. Nodes with min(t, 1-t) below ~2^-360 are
// dropped; integrable endpoint behavior t^s with s > -0.8 keeps the dropped
// mass far below the achievable tolerances. Err::NonConvergence when the
// refinement stalls above tol.
QuadResult tanh_sinh(const std::function<Real(const Real&, const Real&)>& f, unsigned prec,
                     double tol, int max_level = 11);

// integral_0^1 t^{c-1} (1-t)^{e-c-1} 2F1(a, b; d; x t) dt.
// Pre: c > 0 and e - c > 0 (else Err::SingularIntegrand), 0 <= x <= 1;
// equals Gamma({c, e-c}/{e}) * 3F2(a, b, c; d, e; x) but is evaluated purely
// by quadrature here.
struct IntegralSpec {
    Rational a, b, d;  // 2F1 parameters
    Rational c, e;     // weight exponents
    Rational x = Rational(1);
};
QuadResult quad_euler(const IntegralSpec& spec, unsigned prec, double tol);

// integral_0^1 t^{q+m-1} (p0(t) F1(t) + p1(t) F1'(t)) dt  = I_m.
QuadResult quad_im(const period::PolynomialPair& p, const params::ExponentData& e,
                   const params::CharacterIndex& chi, long m, unsigned prec, double tol);

// integral_0^1 t^{q+n-1} F2(t) dt  = K_n.
QuadResult quad_kn(const params::ExponentData& e, const params::CharacterIndex& chi,
                   unsigned long n, unsigned prec, double tol);

// integral_0^1 t^{q+m-1} (p0(t) F2(t) + p1(t) F2'(t)) dt  = J_m.
QuadResult quad_jm(const period::PolynomialPair& p, const params::ExponentData& e,
                   const params::CharacterIndex& chi, long m, unsigned prec, double tol);

// ---- ODE transport ----------------------------------------------------

using C2 = std::complex<double>;

struct Mat2c {
    std::array<C2, 4> m{};  // row-major
    static Mat2c identity() { return {{C2(1), C2(0), C2(0), C2(1)}}; }
    Mat2c operator*(const Mat2c& o) const;
    Mat2c inverse() const;
    C2 trace() const { return m[0] + m[3]; }
    C2 det() const { return m[0] * m[3] - m[1] * m[2]; }
    std::array<C2, 2> eigenvalues() const;
};

// Counterclockwise polygonal loop: `segments` chords inscribed in the circle
// |z - center| = radius, starting and ending at center + radius*e^{i start}.
struct LoopSpec {
    C2 center;
    double radius = 0.5;
    double start_angle = 0.0;
    int segments = 24;
    std::vector<C2> vertices() const;
};
LoopSpec loop_around_zero();  // based at 1/2
LoopSpec loop_around_one();   // based at 1/2

// Monodromy of y'' + ((a+b+1)x - c)/(x(1-x)) y' + ab/(x(1-x)) ... the
// hypergeometric operator with parameters (a, b; c): the matrix M with
// (F, F') continued along the loop equal to the initial frame times M.
// Loops must stay >= 0.1 away from 0 and 1 except for the enclosed point
// (Err::PathTooClose); Err::StepFailure if the integrator's step collapses.
Mat2c ode_monodromy(const Rational& a, const Rational& b, const Rational& c, const LoopSpec& loop);

// Comparison of ODE transport against the symbolic local system for the
// fundamental pair: the t^{alpha1} twist maps the 2F1 monodromy M0 to
// T0 = e^{2 pi i alpha1} M0, and T1 = M1.
struct MonodromyComparison {
    bool ok = false;
    double max_dev = 0.0;  // worst deviation among all checked invariants
    std::array<C2, 2> t0_eigen{}, t0_eigen_expected{};
    C2 t1_trace{}, tinf_trace{}, tinf_trace_expected{};
    C2 t0_det{}, t0_det_expected{};
    C2 epsilon_num{}, epsilon_expected{};
    std::vector<std::string> failures;
};
MonodromyComparison compare_monodromy(const params::ExponentData& e, double tol = 1e-6);

}  // namespace cmp::oracles
