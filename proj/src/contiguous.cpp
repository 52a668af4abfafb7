#include "contiguous.hpp"

#include "errors.hpp"

namespace cmp::contiguous {

hyper::PfqParams ThreeF2At1::params() const {
    return {{a, b, q}, {c, q + Rational(1)}};
}

Real ThreeF2At1::value(unsigned prec, hyper::EvalOpts opts) const {
    return hyper::pfq1(params(), prec, opts);
}

Otsubo2 otsubo2_relation(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                         unsigned prec) {
    if ((c + Rational(1) - a - b).sgn() <= 0)
        throw Error(Err::DivergentSeries, "shift relation needs c+1 > a+b");
    const Rational q1 = q + Rational(1);
    if (q1.is_nonpositive_integer() || q1.is_zero())
        throw Error(Err::Pole, "shift relation coefficient divides by q+1 = 0");
    Otsubo2 r{(q1 - a) * (q1 - b) / q1, q1 - c,
              specialfn::GammaSpec{{c, c + Rational(1) - a - b}, {c - a, c - b}}, Real(prec)};
    r.rhs = specialfn::gamma_product(r.rhs_spec, prec);
    return r;
}

Real otsubo2_residual(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                      unsigned prec, hyper::EvalOpts at_q, hyper::EvalOpts at_q1) {
    const auto rel = otsubo2_relation(a, b, c, q, prec + 32);
    const ThreeF2At1 fq{a, b, c, q};
    const ThreeF2At1 fq1{a, b, c, q + Rational(1)};
    const Real lhs = rel.A * fq1.value(prec + 32, at_q1) - rel.B * fq.value(prec + 32, at_q);
    return round_to(lhs - rel.rhs, prec);
}

namespace {

Real fq_value(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
              const Real& x, unsigned prec) {
    // F^q(x) = 3F2(1,c,q; a,b; x)
    return hyper::pfq({{Rational(1), c, q}, {a, b}}, x, prec);
}

}  // namespace

Real three_term(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                ThreeTermVariant variant, const Real& x, unsigned prec) {
    const unsigned wp = prec + 32;
    const bool at_one = x.exact() && mpfr_cmp_ui(x.raw(), 1) == 0;
    if (at_one && !(a + b > c + q + Rational(2)))
        throw Error(Err::DivergentSeries, "two-term form at 1 needs a+b > c+q+2");
    const Rational target = (a - Rational(1)) * (b - Rational(1));
    Real acc(wp);
    if (variant == ThreeTermVariant::QShift) {
        const Real f0 = fq_value(a, b, c, q, x, wp);
        const Real f1 = fq_value(a, b, c, q + Rational(1), x, wp);
        const Rational c0 = (a - q - Rational(1)) * (b - q - Rational(1));
        acc = c0 * f0;
        // q(a+b-3-2q - (c-q-1)x) splits into a constant and an x multiple
        const Rational k1 = q * (a + b - Rational(3) - q - q);
        const Rational k2 = q * (c - q - Rational(1));
        acc = acc + k1 * f1 - k2 * (x * f1);
        if (!at_one) {
            const Real f2 = fq_value(a, b, c, q + Rational(2), x, wp);
            const Rational k3 = q * (Rational(1) + q);
            const Real one_minus_x = Real::of_long(1, wp) - x;
            acc = acc + k3 * (one_minus_x * f2);
        }
    } else {
        // coefficients of F_{a-2}, F_{a-1}, F_a with the a-parameter lowered;
        // the F_{a-2} term carries 1-x and is skipped at 1, where its own
        // margin may fail
        const Real fm1 = fq_value(a - Rational(1), b, c, q, x, wp);
        const Real f0 = fq_value(a, b, c, q, x, wp);
        if (!at_one) {
            const Real fm2 = fq_value(a - Rational(2), b, c, q, x, wp);
            const Rational k0 = (a - Rational(2)) * (a - Rational(1));
            const Real one_minus_x = Real::of_long(1, wp) - x;
            acc = k0 * (one_minus_x * fm2);
        }
        const Rational k1c = (a - Rational(1)) * (b + Rational(1) - a);
        const Rational k1x = (a - Rational(1)) * (a + a - c - q - Rational(3));
        acc = acc + k1c * fm1 + k1x * (x * fm1);
        const Rational k2 = (a - q - Rational(1)) * (a - c - Rational(1));
        acc = acc - k2 * (x * f0);
    }
    return round_to(acc - Real::of(target, wp), prec);
}

Bailey bailey_transform(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                        unsigned prec) {
    const Rational m0 = c + Rational(1) - a - b;
    if (m0.sgn() <= 0) throw Error(Err::DivergentSeries, "transformation needs c+1 > a+b");
    if (q.sgn() <= 0) throw Error(Err::DivergentSeries, "transformation needs q > 0");
    Bailey out{q,
               specialfn::GammaSpec{{c, m0}, {c + Rational(1) - a, c + Rational(1) - b}},
               Real(prec),
               hyper::PfqParams{{Rational(1), m0, c - q},
                                {c + Rational(1) - a, c + Rational(1) - b}},
               hyper::margin(hyper::PfqParams{{Rational(1), m0, c - q},
                                              {c + Rational(1) - a, c + Rational(1) - b}})};
    out.prefactor = q * specialfn::gamma_product(out.prefactor_spec, prec);
    return out;
}

Real bailey_residual(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                     unsigned prec, hyper::EvalOpts lhs, hyper::EvalOpts rhs) {
    const auto tr = bailey_transform(a, b, c, q, prec + 32);
    const ThreeF2At1 f{a, b, c, q};
    const Real left = f.value(prec + 32, lhs);
    const Real right = tr.prefactor * hyper::pfq1(tr.transformed, prec + 32, rhs);
    return round_to(left - right, prec);
}

Cont2Closure cont2_chain(const Rational& a, const Rational& b, const Rational& c, const Rational& q,
                         unsigned long n) {
    // Normalizing by Gamma({c+1-a, c+1-b}/{c, c+1-a-b}) turns the shift
    // relation's right side into the exact rational (c-a)(c-b):
    //   A*Fhat(q+1) - B*Fhat(q) = (c-a)(c-b).
    // Compose Fhat(q) = R*Fhat(q+n) + S across n steps.
    const Rational g = (c - a) * (c - b);
    Rational R(1), S(0);
    for (unsigned long j = 0; j < n; ++j) {
        const Rational qj1 = q + Rational(static_cast<long>(j) + 1);
        if (qj1.is_zero()) throw Error(Err::Pole, "chain coefficient divides by q+1 = 0");
        const Rational A = (qj1 - a) * (qj1 - b) / qj1;
        const Rational B = qj1 - c;
        if (B.is_zero())
            throw Error(Err::Pole, "chain passes through a degenerate shift (q+1 = c)");
        S -= R * g / B;
        R *= A / B;
    }
    return {Rational(1), -R, -S};
}

ReductionCoefficients kn_reduce(const params::ExponentData& e, const params::CharacterIndex& chi,
                                unsigned long n) {
    const Rational q = chi.q();
    const Rational a = e.alpha1 + e.beta1, b = e.alpha1 + e.beta2;
    const Rational q0 = q + e.alpha1;
    // G(Q) = B(a,b)*3F2(a,b,Q;a+b,Q+1;1) obeys
    //   G(Q+1) = (Q+1)(1 + (Q+1-a-b) G(Q)) / ((Q+1-a)(Q+1-b));
    // track G(Q0+n) = u*G(Q0) + v with exact rationals.
    Rational uu(1), vv(0);
    for (unsigned long j = 1; j <= n; ++j) {
        const Rational Qj = q0 + Rational(static_cast<long>(j));
        const Rational da = Qj - a, db = Qj - b;
        if (da.is_zero() || db.is_zero())
            throw Error(Err::Pole,
                        "reduction chain hits a vanishing shift coefficient at Q = " + Qj.str());
        const Rational mj = Qj - a - b;
        vv = Qj * (Rational(1) + mj * vv) / (da * db);
        uu = Qj * mj * uu / (da * db);
    }
    const Rational qn = q0 + Rational(static_cast<long>(n));
    if (qn.is_zero()) throw Error(Err::Pole, "kernel index q + alpha1 + n vanishes");
    return {uu / qn, vv / qn};
}

}  // namespace cmp::contiguous
