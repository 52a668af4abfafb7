#include "report.hpp"

#include <cinttypes>
#include <cstdio>
#include <vector>

#include "../vendor/json.hpp"
#include "contiguous.hpp"
#include "errors.hpp"
#include "hyper.hpp"
#include "monodromy.hpp"
#include "oracles.hpp"
#include "regulator.hpp"
#include "specialfn.hpp"

namespace cmp::report {

namespace {

using njson = nlohmann::ordered_json;
using sjson = nlohmann::json;  // sorted keys; canonical form for hashing

[[noreturn]] void bad(const std::string& what) { throw Error(Err::Config, what); }

Rational rat(const sjson& j, const std::string& field) {
    if (!j.is_string()) bad(field + " must be a rational encoded as a string like \"2/3\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const Error&) {
        bad(field + " is not a valid rational: \"" + j.get<std::string>() + "\"");
    }
}

long integer(const sjson& j, const std::string& field) {
    if (!j.is_number_integer()) bad(field + " must be an integer");
    return j.get<long>();
}

std::vector<Rational> rat_list(const sjson& j, const std::string& field) {
    if (!j.is_array()) bad(field + " must be an array of rational strings");
    std::vector<Rational> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(rat(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::string fmt(const Real& x) { return x.dec(40); }

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

njson cplx_json(const Cplx& z) { return njson{{"re", fmt(z.re)}, {"im", fmt(z.im)}}; }

// One line of a residual table.
struct CheckRow {
    std::string name;
    double value;
    double tol;
    bool pass;
};

njson rows_json(const std::vector<CheckRow>& rows) {
    njson arr = njson::array();
    for (const CheckRow& r : rows)
        arr.push_back(njson{{"check", r.name},
                            {"value", fmt_double(r.value)},
                            {"tolerance", fmt_double(r.tol)},
                            {"pass", r.pass}});
    return arr;
}

bool all_pass(const std::vector<CheckRow>& rows) {
    for (const CheckRow& r : rows)
        if (!r.pass) return false;
    return true;
}

// ---- commands -------------------------------------------------------

njson cmd_validate(const RunConfig& cfg, bool& pass) {
    params::ValidationReport rep = params::validate(cfg.e, cfg.chi);
    njson viol = njson::array();
    for (const auto& [what, value] : rep.violations)
        viol.push_back(njson{{"constraint", what}, {"value", value.str()}});
    pass = rep.ok();
    return njson{{"normalized", rep.normalized},
                 {"irreducible", rep.irreducible},
                 {"theorem_main_ok", rep.theorem_main_ok},
                 {"ok", rep.ok()},
                 {"violations", viol}};
}

njson duality_json(const period::DualityResult& d, double tol, bool& pass) {
    double resid = d.residual.mag_upper();
    pass = resid <= tol;
    njson out{{"product", fmt(d.product)},
              {"expected", fmt(d.expected)},
              {"residual", fmt_double(resid)},
              {"tolerance", fmt_double(tol)},
              {"pass", pass}};
    if (d.sine_factor_exact) {
        out["sine_factor_exact"] = d.sine_factor_exact->str();
        out["symbolic_ok"] = d.symbolic_ok;
        pass = pass && d.symbolic_ok;
        out["pass"] = pass;
    }
    return out;
}

njson cmd_period(const RunConfig& cfg, bool& pass) {
    period::PeriodResult pr = period::period_value(cfg.e, cfg.chi, cfg.precision);
    double dtol = std::max(1e-20, std::ldexp(1.0, -static_cast<int>(cfg.precision) + 48));
    bool dpass = false;
    njson dual = duality_json(period::duality_check(cfg.e, cfg.chi, cfg.precision), dtol, dpass);
    pass = dpass;
    return njson{{"gamma_spec", pr.gamma_spec.str()},
                 {"rational_factor", pr.rational_factor.str()},
                 {"value", cplx_json(pr.value)},
                 {"hodge_type", pr.hodge_type},
                 {"im_conversion", pr.im_conversion.str()},
                 {"duality", dual}};
}

njson orbit_element_json(const params::OrbitElement& el) {
    return njson{{"s", el.s},
                 {"alpha", {el.data.alpha1.str(), el.data.alpha2.str()}},
                 {"beta", {el.data.beta1.str(), el.data.beta2.str()}},
                 {"k", el.chi.k},
                 {"l", el.chi.l}};
}

njson cmd_orbit(const RunConfig& cfg, bool& pass) {
    params::GaloisOrbit orb = params::galois_orbit(cfg.e, cfg.chi);
    njson els = njson::array();
    for (const auto& el : orb.elements) els.push_back(orbit_element_json(el));
    pass = true;
    return njson{{"modulus", orb.modulus}, {"size", orb.elements.size()}, {"elements", els}};
}

njson mat_json(const monodromy::CycMat2& m) {
    return njson{{"m00", m.m[0].str()}, {"m01", m.m[1].str()}, {"m10", m.m[2].str()},
                 {"m11", m.m[3].str()}};
}

njson cmd_monodromy(const RunConfig& cfg, bool& pass) {
    monodromy::LocalSystem sys = monodromy::build_local_system(cfg.e);
    monodromy::RiemannScheme sch = monodromy::riemann_scheme(cfg.e);
    monodromy::TwistedExponents tw = monodromy::twisted_exponents(cfg.e, cfg.chi);
    oracles::MonodromyComparison cmpn = oracles::compare_monodromy(cfg.e);

    njson fails = njson::array();
    for (const std::string& f : cmpn.failures) fails.push_back(f);
    pass = cmpn.ok;
    return njson{
        {"epsilon", sys.epsilon.str()},
        {"T1", mat_json(sys.T1)},
        {"T0", mat_json(sys.T0)},
        {"Tinf", mat_json(sys.Tinf)},
        {"riemann_scheme",
         njson{{"at0", {sch.at0[0].str(), sch.at0[1].str()}},
               {"at1", {sch.at1[0].str(), sch.at1[1].str()}},
               {"atinf", {sch.atinf[0].str(), sch.atinf[1].str()}},
               {"exponent_sum", sch.exponent_sum().str()}}},
        {"twisted_exponents",
         njson{{"at0", {tw.at0[0].str(), tw.at0[1].str()}},
               {"atinf", {tw.atinf[0].str(), tw.atinf[1].str()}}}},
        {"ode_transport",
         njson{{"max_dev", fmt_double(cmpn.max_dev)}, {"ok", cmpn.ok}, {"failures", fails}}}};
}

regulator::ConnectionConstants constants_of(const RunConfig& cfg, unsigned wp) {
    if (cfg.constants.use_default)
        return regulator::ConnectionConstants::defaults(cfg.e, wp);
    regulator::ConnectionConstants c;
    Real tau = Real::pi(wp) + Real::pi(wp);
    c.lambda0 = Cplx{Real(wp), tau};
    c.lambda1 = Cplx{Real::of(cfg.constants.l1_re, wp), Real::of(cfg.constants.l1_im, wp)};
    c.lambda2 = Cplx{Real::of(cfg.constants.l2_re, wp), Real::of(cfg.constants.l2_im, wp)};
    c.is_default = false;
    return c;
}

regulator::Multiplier multiplier_of(const RunConfig& cfg, unsigned wp) {
    if (cfg.multiplier.exactly_zero) return regulator::Multiplier::zero(wp);
    return regulator::Multiplier::of(
        Cplx{Real::of(cfg.multiplier.re, wp), Real::of(cfg.multiplier.im, wp)});
}

long pick_m(const RunConfig& cfg) {
    if (cfg.m) return *cfg.m;
    return period::find_nonvanishing_m(cfg.poly, cfg.e, cfg.chi, 50);
}

njson cmd_regulator(const RunConfig& cfg, bool& pass) {
    unsigned wp = cfg.precision;
    long m = pick_m(cfg);
    regulator::ConnectionConstants consts = constants_of(cfg, wp);
    regulator::Multiplier mult = multiplier_of(cfg, wp);
    regulator::RegulatorDecomposition dec =
        regulator::regulator_decompose(cfg.poly, cfg.e, cfg.chi, m, consts, mult, wp);

    // Reconstruction: B(a,b) J_m = coef * base + p'' with exact coef, p''.
    Rational a = cfg.e.alpha1 + cfg.e.beta1, b = cfg.e.alpha1 + cfg.e.beta2;
    Real bab = specialfn::beta(a, b, wp + 32);
    Real lhs = bab * dec.j_m;
    Real rhs = Real::of(dec.c_m / (cfg.chi.q() + cfg.e.alpha1), wp + 32) * dec.base_3f2 +
               Real::of(dec.pprime_m, wp + 32);
    double resid = (lhs - rhs).mag_upper();
    double tol = std::ldexp(1.0, -static_cast<int>(wp) + 64);
    pass = resid <= tol && (dec.coeff_3f2_nonzero || cfg.multiplier.exactly_zero);

    return njson{{"m", m},
                 {"c_m", dec.c_m.str()},
                 {"pprime_m", dec.pprime_m.str()},
                 {"gamma_term", fmt(dec.gamma_term)},
                 {"base_3f2", fmt(dec.base_3f2)},
                 {"i_m", fmt(dec.i_m)},
                 {"j_m", fmt(dec.j_m)},
                 {"coeff_unit", cplx_json(dec.coeff_unit)},
                 {"coeff_gamma", cplx_json(dec.coeff_gamma)},
                 {"coeff_3f2", cplx_json(dec.coeff_3f2)},
                 {"total", cplx_json(dec.total)},
                 {"certificate",
                  njson{{"exact", dec.certificate_exact},
                        {"cert_unit", dec.cert_unit.str()},
                        {"cert_gamma", dec.cert_gamma.str()},
                        {"cert_3f2", dec.cert_3f2.str()},
                        {"coeff_3f2_nonzero", dec.coeff_3f2_nonzero}}},
                 {"reconstruction",
                  njson{{"residual", fmt_double(resid)},
                        {"tolerance", fmt_double(tol)},
                        {"pass", resid <= tol}}}};
}

njson cmd_verify(const RunConfig& cfg, bool& pass) {
    std::vector<CheckRow> rows;
    const unsigned prec = cfg.precision;

    params::ValidationReport rep = params::validate(cfg.e, cfg.chi);
    rows.push_back({"validation", rep.ok() ? 0.0 : 1.0, 0.5, rep.ok()});
    if (!rep.ok()) {
        pass = false;
        return njson{{"checks", rows_json(rows)}};
    }

    {
        double tol = std::max(1e-20, std::ldexp(1.0, -static_cast<int>(prec) + 48));
        period::DualityResult d = period::duality_check(cfg.e, cfg.chi, prec);
        double v = d.residual.mag_upper();
        bool okd = v <= tol && (!d.sine_factor_exact || d.symbolic_ok);
        rows.push_back({"duality_residual", v, tol, okd});
    }

    long m = pick_m(cfg);
    {
        // Closed form I_m against quadrature, relative agreement.
        unsigned qp = std::min(prec, 160u);
        Real closed = period::i_m(cfg.poly, cfg.e, cfg.chi, m, qp);
        oracles::QuadResult quad = oracles::quad_im(cfg.poly, cfg.e, cfg.chi, m, qp, 1e-17);
        double scale = std::max(closed.mag_upper(), 1e-30);
        double v = (closed - quad.value).mag_upper() / scale;
        rows.push_back({"im_quadrature_rel", v, 1e-15, v <= 1e-15});
    }

    Rational a = cfg.e.alpha1 + cfg.e.beta1, b = cfg.e.alpha1 + cfg.e.beta2;
    Rational q0 = cfg.chi.q() + cfg.e.alpha1;
    {
        double tol = std::ldexp(1.0, -static_cast<int>(prec) + 56);
        Real r = contiguous::otsubo2_residual(a, b, a + b, q0, prec);
        double v = r.mag_upper();
        rows.push_back({"contiguous_shift_residual", v, tol, v <= tol});
        Real rb = contiguous::bailey_residual(a, b, a + b, q0, prec);
        double vb = rb.mag_upper();
        rows.push_back({"series_transform_residual", vb, tol, vb <= tol});
    }

    {
        regulator::JmReduction red = regulator::jm_reduction(cfg.poly, cfg.e, cfg.chi, m);
        unsigned wp = prec + 32;
        Real bab = specialfn::beta(a, b, wp);
        Real base = bab * hyper::pfq1(regulator::base_3f2_params(cfg.e, cfg.chi), wp);
        Real lhs = bab * regulator::j_m(cfg.poly, cfg.e, cfg.chi, m, wp);
        Real rhs = Real::of(red.coef, wp) * base + Real::of(red.pprime, wp);
        double v = (lhs - rhs).mag_upper();
        double tol = std::ldexp(1.0, -static_cast<int>(prec) + 64);
        rows.push_back({"jm_reduction_residual", v, tol, v <= tol});
    }

    {
        oracles::MonodromyComparison mc = oracles::compare_monodromy(cfg.e);
        rows.push_back({"monodromy_transport_dev", mc.max_dev, 1e-6, mc.ok});
    }

    pass = all_pass(rows);
    return njson{{"m", m}, {"checks", rows_json(rows)}};
}

// ---- rendering --------------------------------------------------------

void flatten_csv(const njson& j, const std::string& prefix, std::string& out) {
    auto emit = [&out](const std::string& key, const std::string& value) {
        std::string v = value;
        bool quote = v.find_first_of(",\"\n") != std::string::npos;
        if (quote) {
            std::string esc = "\"";
            for (char c : v) {
                if (c == '"') esc += "\"\"";
                else esc += c;
            }
            esc += "\"";
            v = esc;
        }
        out += key;
        out += ',';
        out += v;
        out += '\n';
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& el : j) flatten_csv(el, prefix + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        emit(prefix, j.get<std::string>());
    } else if (j.is_boolean()) {
        emit(prefix, j.get<bool>() ? "true" : "false");
    } else {
        emit(prefix, j.dump());
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    sjson j = sjson::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) bad("config is not valid JSON");
    if (!j.is_object()) bad("config must be a JSON object");

    RunConfig cfg;
    cfg.command = j.value("command", std::string("verify"));
    static const char* kCommands[] = {"validate", "period", "regulator",
                                      "orbit",    "monodromy", "verify"};
    bool known = false;
    for (const char* c : kCommands) known = known || cfg.command == c;
    if (!known) bad("unknown command \"" + cfg.command + "\"");

    if (!j.contains("exponents") || !j["exponents"].is_object())
        bad("config requires an \"exponents\" object");
    const sjson& ex = j["exponents"];
    std::vector<Rational> al = rat_list(ex.value("alpha", sjson::array()), "exponents.alpha");
    std::vector<Rational> be = rat_list(ex.value("beta", sjson::array()), "exponents.beta");
    if (al.size() != 2 || be.size() != 2)
        bad("exponents.alpha and exponents.beta must each hold exactly 2 rationals");
    cfg.e = params::ExponentData{al[0], al[1], be[0], be[1]};

    if (!j.contains("character") || !j["character"].is_object() ||
        !j["character"].contains("k") || !j["character"].contains("l"))
        bad("config requires a \"character\" object with integer k and l");
    long k = integer(j["character"]["k"], "character.k");
    long l = integer(j["character"]["l"], "character.l");
    if (l <= 0 || k <= 0 || k >= l) bad("character requires 0 < k < l");
    cfg.chi = params::CharacterIndex::of(Rational(k, l));

    if (j.contains("polynomial")) {
        if (!j["polynomial"].is_object()) bad("\"polynomial\" must be an object");
        cfg.poly.d = rat_list(j["polynomial"].value("p0", sjson::array()), "polynomial.p0");
        cfg.poly.dprime = rat_list(j["polynomial"].value("p1", sjson::array()), "polynomial.p1");
    } else {
        cfg.poly.d = {};
        cfg.poly.dprime = {Rational(-1), Rational(1)};  // t - 1
    }
    cfg.poly.check();

    if (j.contains("m")) {
        long m = integer(j["m"], "m");
        if (m < 1) bad("m must be >= 1");
        cfg.m = m;
    }

    if (j.contains("precision")) {
        long p = integer(j["precision"], "precision");
        if (p < static_cast<long>(kMinPrec) || p > static_cast<long>(kMaxPrec))
            bad("precision must lie in [" + std::to_string(kMinPrec) + ", " +
                std::to_string(kMaxPrec) + "]");
        cfg.precision = static_cast<unsigned>(p);
        cfg.precision_explicit = true;
    }

    if (j.contains("multiplier")) {
        const sjson& mj = j["multiplier"];
        if (mj.is_string()) {
            cfg.multiplier.re = rat(mj, "multiplier");
            cfg.multiplier.im = Rational(0);
            cfg.multiplier.exactly_zero = cfg.multiplier.re.is_zero();
        } else if (mj.is_object()) {
            cfg.multiplier.re = rat(mj.value("re", sjson("0")), "multiplier.re");
            cfg.multiplier.im = rat(mj.value("im", sjson("0")), "multiplier.im");
            cfg.multiplier.exactly_zero = mj.value("exactly_zero", false) ||
                                          (cfg.multiplier.re.is_zero() &&
                                           cfg.multiplier.im.is_zero());
        } else {
            bad("multiplier must be a rational string or an object {re, im}");
        }
    }

    if (j.contains("constants")) {
        const sjson& cj = j["constants"];
        if (!cj.is_object() || !cj.contains("lambda1") || !cj.contains("lambda2") ||
            !cj["lambda1"].is_object() || !cj["lambda2"].is_object())
            bad("constants must be an object with lambda1 and lambda2 objects {re, im}");
        cfg.constants.use_default = false;
        cfg.constants.l1_re = rat(cj["lambda1"].value("re", sjson("0")), "constants.lambda1.re");
        cfg.constants.l1_im = rat(cj["lambda1"].value("im", sjson("0")), "constants.lambda1.im");
        cfg.constants.l2_re = rat(cj["lambda2"].value("re", sjson("0")), "constants.lambda2.re");
        cfg.constants.l2_im = rat(cj["lambda2"].value("im", sjson("0")), "constants.lambda2.im");
    }

    if (j.contains("output")) {
        const sjson& oj = j["output"];
        if (!oj.is_object()) bad("\"output\" must be an object");
        cfg.format = oj.value("format", std::string("json"));
        cfg.out_path = oj.value("path", std::string());
    }
    if (cfg.format != "json" && cfg.format != "csv")
        bad("output.format must be \"json\" or \"csv\"");
    return cfg;
}

std::uint64_t config_hash(const RunConfig& cfg) {
    sjson canon;
    canon["command"] = cfg.command;
    canon["alpha"] = {cfg.e.alpha1.str(), cfg.e.alpha2.str()};
    canon["beta"] = {cfg.e.beta1.str(), cfg.e.beta2.str()};
    canon["k"] = cfg.chi.k;
    canon["l"] = cfg.chi.l;
    sjson p0 = sjson::array(), p1 = sjson::array();
    for (const Rational& c : cfg.poly.d) p0.push_back(c.str());
    for (const Rational& c : cfg.poly.dprime) p1.push_back(c.str());
    canon["p0"] = p0;
    canon["p1"] = p1;
    if (cfg.m) canon["m"] = *cfg.m;
    canon["precision"] = cfg.precision;
    canon["multiplier"] = {{"re", cfg.multiplier.re.str()},
                           {"im", cfg.multiplier.im.str()},
                           {"exactly_zero", cfg.multiplier.exactly_zero}};
    if (cfg.constants.use_default) {
        canon["constants"] = "default";
    } else {
        canon["constants"] = {{"lambda1",
                               {{"re", cfg.constants.l1_re.str()},
                                {"im", cfg.constants.l1_im.str()}}},
                              {"lambda2",
                               {{"re", cfg.constants.l2_re.str()},
                                {"im", cfg.constants.l2_im.str()}}}};
    }
    std::string s = canon.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, config_hash(cfg));
    return buf;
}

RunResult run(const RunConfig& cfg) {
    bool pass = false;
    njson results;
    if (cfg.command == "validate") results = cmd_validate(cfg, pass);
    else if (cfg.command == "period") results = cmd_period(cfg, pass);
    else if (cfg.command == "regulator") results = cmd_regulator(cfg, pass);
    else if (cfg.command == "orbit") results = cmd_orbit(cfg, pass);
    else if (cfg.command == "monodromy") results = cmd_monodromy(cfg, pass);
    else if (cfg.command == "verify") results = cmd_verify(cfg, pass);
    else bad("unknown command \"" + cfg.command + "\"");

    njson rep{{"tool", "cmperiods"},
              {"version", kVersion},
              {"command", cfg.command},
              {"config_hash", config_hash_hex(cfg)},
              {"precision", cfg.precision},
              {"data",
               njson{{"alpha", {cfg.e.alpha1.str(), cfg.e.alpha2.str()}},
                     {"beta", {cfg.e.beta1.str(), cfg.e.beta2.str()}},
                     {"k", cfg.chi.k},
                     {"l", cfg.chi.l}}},
              {"results", results},
              {"pass", pass}};

    RunResult rr;
    rr.exit_code = pass ? 0 : 1;
    if (cfg.format == "csv") {
        std::string csv = "key,value\n";
        flatten_csv(rep, "", csv);
        rr.report = csv;
    } else {
        rr.report = rep.dump(2) + "\n";
    }
    return rr;
}

}  // namespace cmp::report
