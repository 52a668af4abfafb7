#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "hyper.hpp"
#include "monodromy.hpp"

namespace cmp::oracles {

namespace {

// |f * (1-t)| at the deepest node pair evaluated so far. The tail dropped
// beyond the clip boundary is bounded by a small multiple of it (honest for
// integrands t^s, s > -0.8). Refreshed on every clip event: as levels refine,
// the deepest node approaches the boundary and the bound tightens; keeping a
// stale coarse-level value would freeze the estimate far above the true
// dropped mass.
struct ClipTracker {
    double deepest_u = -1.0;
    double deepest_mass = 0.0;
    double penalty = 0.0;
    void note(double u, double f1_mag, double f2_mag, double omt_mag) {
        if (u > deepest_u) {
            deepest_u = u;
            deepest_mass = (f1_mag + f2_mag) * omt_mag;
        }
    }
    void clipped() { penalty = 4.0 * deepest_mass; }
};

}  // namespace

QuadResult tanh_sinh(const std::function<Real(const Real&, const Real&)>& f, unsigned prec,
                     double tol, int max_level) {
    const unsigned wp = prec + 32;
    const double clip = std::ldexp(1.0, -360);
    const Real quarter_pi = Real::pi(wp) * Rational(1, 4);
    const Real half_pi = Real::pi(wp) * Rational(1, 2);
    const Real one = Real::of(Rational(1), wp);

    ClipTracker tracker;
    unsigned long evals = 0;

    // Node at u > 0: w = (pi/2) sinh u, t = 1/(1+exp(-2w)) -> 1, 1-t = q/(1+q)
    // with q = exp(-2w); weight dt/du = (pi/4) cosh u sech^2 w,
    // sech w = 2 exp(-w)/(1+q). Returns weight*(f(t,1-t)+f(1-t,t)) for the
    // symmetric node pair, or an empty optional when the pair is clipped.
    auto node_pair = [&](double u, bool& was_clipped) -> Real {
        Real ur = Real::of_double(u, wp);
        Real w = half_pi * sinh(ur);
        Real q = exp(-(w + w));
        Real denom = one + q;
        Real omt = q / denom;
        was_clipped = omt.mag_upper() < clip;
        if (was_clipped) {
            tracker.clipped();
            return Real(wp);
        }
        Real t = one / denom;
        Real sech = (Real::of(Rational(2), wp) * exp(-w)) / denom;
        Real weight = quarter_pi * cosh(ur) * sech * sech;
        Real f1 = f(t, omt);
        Real f2 = f(omt, t);
        evals += 2;
        tracker.note(u, f1.mag_upper(), f2.mag_upper(), omt.mag_upper());
        return weight * (f1 + f2);
    };

    Real gsum(wp);
    {
        Real half = Real::of(Rational(1, 2), wp);
        Real f0 = f(half, half);
        ++evals;
        gsum = quarter_pi * f0;
    }

    double h = 1.0;
    Real integral = gsum;  // h=1 times gsum
    double level_diff = std::numeric_limits<double>::infinity();
    int level = 0;
    for (level = 0; level <= max_level; ++level) {
        if (level > 0) h *= 0.5;
        double scale_hint = std::max(1.0, integral.mag_upper());
        double cutoff = std::ldexp(scale_hint, -static_cast<int>(wp) - 6) / h;
        int tiny_run = 0;
        // Level 0 sums all positive multiples of h; later levels add the odd
        // multiples interleaving the previous grid.
        double step = (level == 0) ? h : 2.0 * h;
        for (double u = h;; u += step) {
            if (u > 9.0) break;
            bool was_clipped = false;
            Real term = node_pair(u, was_clipped);
            if (was_clipped) break;
            gsum = gsum + term;
            if (u >= 1.5) {
                if (term.mag_upper() < cutoff) {
                    if (++tiny_run >= 2) break;
                } else {
                    tiny_run = 0;
                }
            }
        }
        Real new_integral = gsum * Rational(1, 1L << level);
        if (level >= 2) {
            level_diff = (new_integral - integral).mag_upper();
            integral = new_integral;
            double est = bslack(level_diff + integral.err() + tracker.penalty);
            if (est <= tol) {
                return {round_to(integral, prec), est, level, evals};
            }
        } else {
            integral = new_integral;
        }
    }
    double est = bslack(level_diff + integral.err() + tracker.penalty);
    throw Error(Err::NonConvergence, "quadrature stalled at estimated error " +
                                         std::to_string(est) + " above tolerance " +
                                         std::to_string(tol));
}

QuadResult quad_euler(const IntegralSpec& spec, unsigned prec, double tol) {
    if (spec.c.sgn() <= 0 || (spec.e - spec.c).sgn() <= 0)
        throw Error(Err::SingularIntegrand,
                    "weight exponents require c > 0 and e - c > 0, got c = " + spec.c.str() +
                        ", e - c = " + (spec.e - spec.c).str());
    if (spec.x.sgn() < 0 || Rational(1) < spec.x)
        throw Error(Err::Config, "quad_euler requires 0 <= x <= 1");
    const unsigned wp = prec + 32;
    const Rational we0 = spec.c - Rational(1);
    const Rational we1 = spec.e - spec.c - Rational(1);
    const bool x_is_one = spec.x == Rational(1);
    const Rational omx = Rational(1) - spec.x;
    auto f = [&, we0, we1](const Real& t, const Real& omt) -> Real {
        Real v = Real::of(Rational(1), wp);
        if (!we0.is_zero()) v = v * pow_q(t, we0);
        if (!we1.is_zero()) v = v * pow_q(omt, we1);
        Real xt(wp), omxt(wp);
        if (x_is_one) {
            xt = t;
            omxt = omt;
        } else {
            xt = Real::of(spec.x, wp) * t;
            omxt = omt + Real::of(omx, wp) * t;
        }
        hyper::F21 F = hyper::gauss_2f1(spec.a, spec.b, spec.d, xt, omxt, wp, false);
        return v * F.value;
    };
    return tanh_sinh(f, prec, tol);
}

namespace {

Real poly_at(const std::vector<Rational>& cs, const Real& t, unsigned wp) {
    Real acc(wp);
    for (size_t i = cs.size(); i-- > 0;) acc = acc * t + Real::of(cs[i], wp);
    return acc;
}

bool all_zero(const std::vector<Rational>& cs) {
    for (const Rational& c : cs)
        if (!c.is_zero()) return false;
    return true;
}

QuadResult quad_pair_integral(const period::PolynomialPair& p, const params::ExponentData& e,
                              const params::CharacterIndex& chi, long m, unsigned prec, double tol,
                              bool use_f2) {
    p.check();
    if (m < 1) throw Error(Err::Config, "integral oracle requires m >= 1");
    const unsigned wp = prec + 32;
    const hyper::Basis basis = hyper::basis_f1_f2(e);
    const Rational expo = chi.q() + Rational(m - 1);
    const bool want_deriv = !all_zero(p.dprime);
    auto f = [&, expo, want_deriv](const Real& t, const Real& omt) -> Real {
        hyper::F21 F = use_f2 ? basis.F2(t, omt, wp, want_deriv)
                              : basis.F1(t, omt, wp, want_deriv);
        Real g = poly_at(p.d, t, wp) * F.value;
        if (want_deriv) g = g + poly_at(p.dprime, t, wp) * F.deriv;
        if (!expo.is_zero()) g = pow_q(t, expo) * g;
        return g;
    };
    return tanh_sinh(f, prec, tol);
}

}  // namespace

QuadResult quad_im(const period::PolynomialPair& p, const params::ExponentData& e,
                   const params::CharacterIndex& chi, long m, unsigned prec, double tol) {
    return quad_pair_integral(p, e, chi, m, prec, tol, /*use_f2=*/false);
}

QuadResult quad_kn(const params::ExponentData& e, const params::CharacterIndex& chi,
                   unsigned long n, unsigned prec, double tol) {
    const unsigned wp = prec + 32;
    const hyper::Basis basis = hyper::basis_f1_f2(e);
    const Rational expo = chi.q() + Rational(static_cast<long>(n)) - Rational(1);
    auto f = [&, expo](const Real& t, const Real& omt) -> Real {
        hyper::F21 F = basis.F2(t, omt, wp, false);
        return expo.is_zero() ? F.value : pow_q(t, expo) * F.value;
    };
    return tanh_sinh(f, prec, tol);
}

QuadResult quad_jm(const period::PolynomialPair& p, const params::ExponentData& e,
                   const params::CharacterIndex& chi, long m, unsigned prec, double tol) {
    return quad_pair_integral(p, e, chi, m, prec, tol, /*use_f2=*/true);
}

// ---- ODE transport ----------------------------------------------------

Mat2c Mat2c::operator*(const Mat2c& o) const {
    return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
             m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

Mat2c Mat2c::inverse() const {
    C2 d = det();
    if (std::abs(d) < 1e-300) throw Error(Err::Eval, "singular transport matrix");
    return {{m[3] / d, -m[1] / d, -m[2] / d, m[0] / d}};
}

std::array<C2, 2> Mat2c::eigenvalues() const {
    C2 tr = trace(), d = det();
    C2 disc = std::sqrt(tr * tr - 4.0 * d);
    return {(tr + disc) * 0.5, (tr - disc) * 0.5};
}

std::vector<C2> LoopSpec::vertices() const {
    std::vector<C2> v;
    v.reserve(static_cast<size_t>(segments) + 1);
    for (int j = 0; j < segments; ++j) {
        double ang = start_angle + 2.0 * M_PI * j / segments;
        v.push_back(center + std::polar(radius, ang));
    }
    v.push_back(v.front());  // close exactly
    return v;
}

LoopSpec loop_around_zero() { return {C2(0.0, 0.0), 0.5, 0.0, 24}; }
LoopSpec loop_around_one() { return {C2(1.0, 0.0), 0.5, M_PI, 24}; }

namespace {

double dist_point_segment(C2 p, C2 a, C2 b) {
    C2 ab = b - a;
    double L2 = std::norm(ab);
    if (L2 == 0.0) return std::abs(p - a);
    double s = std::clamp(((p - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

using State = std::array<C2, 4>;

State axpy(const State& y, double h, const State& d) {
    return {y[0] + h * d[0], y[1] + h * d[1], y[2] + h * d[2], y[3] + h * d[3]};
}

double state_norm(const State& s) {
    double n = 0.0;
    for (const C2& z : s) n = std::max(n, std::abs(z));
    return n;
}

// One Cash-Karp embedded step of Phi' = dx * A(x(s)) * Phi on s in [s, s+h].
struct GaussField {
    double a, b, c;
    C2 x0, dx;
    State deriv(double s, const State& y) const {
        C2 x = x0 + s * dx;
        C2 den = x * (1.0 - x);
        C2 q = a * b / den;
        C2 p = ((a + b + 1.0) * x - c) / den;
        // A = [[0,1],[q,p]]; dPhi = dx * A * Phi
        return {dx * y[2], dx * y[3], dx * (q * y[0] + p * y[2]), dx * (q * y[1] + p * y[3])};
    }
};

State rk_segment(const GaussField& fld, State y) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 3.0 / 10, a42 = -9.0 / 10, a43 = 6.0 / 5;
    static constexpr double a51 = -11.0 / 54, a52 = 5.0 / 2, a53 = -70.0 / 27, a54 = 35.0 / 27;
    static constexpr double a61 = 1631.0 / 55296, a62 = 175.0 / 512, a63 = 575.0 / 13824,
                            a64 = 44275.0 / 110592, a65 = 253.0 / 4096;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 3.0 / 5, c5 = 1.0, c6 = 7.0 / 8;
    static constexpr double b1 = 37.0 / 378, b3 = 250.0 / 621, b4 = 125.0 / 594,
                            b6 = 512.0 / 1771;
    static constexpr double e1 = b1 - 2825.0 / 27648, e3 = b3 - 18575.0 / 48384,
                            e4 = b4 - 13525.0 / 55296, e5 = -277.0 / 14336, e6 = b6 - 1.0 / 4;

    double s = 0.0, h = 0.25;
    int steps = 0;
    while (s < 1.0) {
        if (s + h > 1.0) h = 1.0 - s;
        State k1 = fld.deriv(s, y);
        State k2 = fld.deriv(s + c2 * h, axpy(y, h * a21, k1));
        State y3 = axpy(axpy(y, h * a31, k1), h * a32, k2);
        State k3 = fld.deriv(s + c3 * h, y3);
        State y4 = axpy(axpy(axpy(y, h * a41, k1), h * a42, k2), h * a43, k3);
        State k4 = fld.deriv(s + c4 * h, y4);
        State y5 = axpy(axpy(axpy(axpy(y, h * a51, k1), h * a52, k2), h * a53, k3), h * a54, k4);
        State k5 = fld.deriv(s + c5 * h, y5);
        State y6 = axpy(axpy(axpy(axpy(axpy(y, h * a61, k1), h * a62, k2), h * a63, k3),
                             h * a64, k4),
                        h * a65, k5);
        State k6 = fld.deriv(s + c6 * h, y6);
        State ynew = axpy(axpy(axpy(axpy(y, h * b1, k1), h * b3, k3), h * b4, k4), h * b6, k6);
        State errv = axpy(axpy(axpy(axpy(axpy(State{}, h * e1, k1), h * e3, k3), h * e4, k4),
                               h * e5, k5),
                          h * e6, k6);
        double err = state_norm(errv);
        double tol = 1e-13 * std::max(1.0, state_norm(ynew));
        if (err <= tol) {
            y = ynew;
            s += h;
        }
        double grow = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
        h *= std::clamp(grow, 0.2, 4.0);
        if (h < 1e-12) throw Error(Err::StepFailure, "integrator step collapsed");
        if (++steps > 200000) throw Error(Err::StepFailure, "integrator step budget exhausted");
    }
    return y;
}

}  // namespace

Mat2c ode_monodromy(const Rational& a, const Rational& b, const Rational& c,
                    const LoopSpec& loop) {
    std::vector<C2> vs = loop.vertices();
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        for (C2 sing : {C2(0.0, 0.0), C2(1.0, 0.0)}) {
            if (std::abs(sing - loop.center) < 1e-9) continue;  // the enclosed point
            if (dist_point_segment(sing, vs[i], vs[i + 1]) < 0.1)
                throw Error(Err::PathTooClose, "loop passes within 0.1 of a singular point");
        }
    }
    double ad = a.to_double(), bd = b.to_double(), cd = c.to_double();
    State phi = {C2(1), C2(0), C2(0), C2(1)};
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        GaussField fld{ad, bd, cd, vs[i], vs[i + 1] - vs[i]};
        phi = rk_segment(fld, phi);
    }
    return Mat2c{{phi[0], phi[1], phi[2], phi[3]}};
}

namespace {

C2 to_c2(const Cplx& z) { return {z.re.to_double(), z.im.to_double()}; }

C2 root_c2(const Rational& r) {
    return std::polar(1.0, 2.0 * M_PI * r.to_double());
}

double eigen_pair_dev(const std::array<C2, 2>& got, const std::array<C2, 2>& want) {
    double d1 = std::max(std::abs(got[0] - want[0]), std::abs(got[1] - want[1]));
    double d2 = std::max(std::abs(got[0] - want[1]), std::abs(got[1] - want[0]));
    return std::min(d1, d2);
}

}  // namespace

MonodromyComparison compare_monodromy(const params::ExponentData& e, double tol) {
    monodromy::LocalSystem sys = monodromy::build_local_system(e);
    hyper::Basis basis = hyper::basis_f1_f2(e);

    Mat2c m0 = ode_monodromy(basis.a, basis.b, basis.c2, loop_around_zero());
    Mat2c m1 = ode_monodromy(basis.a, basis.b, basis.c2, loop_around_one());

    C2 twist = root_c2(e.alpha1);
    Mat2c t0 = m0;
    for (C2& z : t0.m) z *= twist;

    MonodromyComparison cmp;
    auto record = [&cmp, tol](const std::string& what, double dev) {
        cmp.max_dev = std::max(cmp.max_dev, dev);
        if (!(dev <= tol)) cmp.failures.push_back(what + " deviates by " + std::to_string(dev));
    };

    cmp.t0_eigen = t0.eigenvalues();
    cmp.t0_eigen_expected = {root_c2(e.alpha1), root_c2(e.alpha2)};
    if (e.alpha1.frac() == e.alpha2.frac()) {
        // Repeated expected eigenvalue: the transport matrix is (nearly)
        // defective and numeric eigenvalues lose half the working digits.
        // Trace and determinant carry the same conjugacy data unamplified.
        record("T0 trace (resonant)",
               std::abs(t0.trace() - (cmp.t0_eigen_expected[0] + cmp.t0_eigen_expected[1])));
    } else {
        record("T0 eigenvalues", eigen_pair_dev(cmp.t0_eigen, cmp.t0_eigen_expected));
    }

    cmp.t0_det = t0.det();
    cmp.t0_det_expected = root_c2(e.alpha1 + e.alpha2);
    record("T0 determinant", std::abs(cmp.t0_det - cmp.t0_det_expected));

    cmp.t1_trace = m1.trace();
    record("T1 trace", std::abs(cmp.t1_trace - 2.0));
    record("T1 determinant", std::abs(m1.det() - 1.0));

    Mat2c prod = m1 * t0;  // T1 T0
    Mat2c tinf = prod.inverse();
    cmp.tinf_trace = tinf.trace();
    cmp.tinf_trace_expected = root_c2(e.beta1) + root_c2(e.beta2);
    record("Tinf trace", std::abs(cmp.tinf_trace - cmp.tinf_trace_expected));
    record("Tinf determinant", std::abs(tinf.det() - root_c2(e.beta1 + e.beta2)));

    cmp.epsilon_num = prod.trace() - root_c2(e.alpha1) - root_c2(e.alpha2);
    cmp.epsilon_expected = to_c2(sys.epsilon.value(64));
    record("epsilon", std::abs(cmp.epsilon_num - cmp.epsilon_expected));

    // Symbolic side consistency: Tinf T1 T0 = identity.
    if (!(sys.Tinf * sys.T1 * sys.T0).is_identity())
        cmp.failures.push_back("symbolic Tinf T1 T0 is not the identity");

    cmp.ok = cmp.failures.empty();
    return cmp;
}

}  // namespace cmp::oracles
