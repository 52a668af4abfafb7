#include "report.hpp"
#include "doctest.h"
#include "test_support.hpp"

#include <string>

using namespace cmp;
using report::RunConfig;

namespace {

const char* kLegendreValidate = R"({
  "command": "validate",
  "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
  "character": {"k": 1, "l": 3}
})";

void expect_config_error(const std::string& json) {
    try {
        report::parse_config(json);
        FAIL("expected a throw for: ", json);
    } catch (const Error& err) {
        CHECK(err.code() == Err::Config);
    }
}

}  // namespace

TEST_CASE("config parsing and defaults") {
    RunConfig cfg = report::parse_config(kLegendreValidate);
    CHECK(cfg.command == "validate");
    CHECK(cfg.e.alpha1 == Rational(0));
    CHECK(cfg.e.beta2 == Rational(1, 2));
    CHECK(cfg.chi.k == 1);
    CHECK(cfg.chi.l == 3);
    CHECK(cfg.poly.d.empty());
    REQUIRE(cfg.poly.dprime.size() == 2);
    CHECK(cfg.poly.dprime[0] == Rational(-1));
    CHECK(cfg.poly.dprime[1] == Rational(1));
    CHECK_FALSE(cfg.m.has_value());
    CHECK(cfg.precision == kDefaultPrec);
    CHECK_FALSE(cfg.precision_explicit);
    CHECK(cfg.format == "json");
    CHECK(cfg.multiplier.re == Rational(1));
    CHECK_FALSE(cfg.multiplier.exactly_zero);
    CHECK(cfg.constants.use_default);

    // Command defaults to verify when absent.
    RunConfig dft = report::parse_config(R"({
      "exponents": {"alpha": ["0", "1/3"], "beta": ["1/3", "1/3"]},
      "character": {"k": 1, "l": 5},
      "precision": 128,
      "m": 2,
      "multiplier": {"re": "0", "im": "2/3"},
      "output": {"format": "csv", "path": "x.csv"}
    })");
    CHECK(dft.command == "verify");
    CHECK(dft.precision == 128);
    CHECK(dft.precision_explicit);
    REQUIRE(dft.m.has_value());
    CHECK(*dft.m == 2);
    CHECK(dft.multiplier.im == Rational(2, 3));
    CHECK_FALSE(dft.multiplier.exactly_zero);
    CHECK(dft.format == "csv");
    CHECK(dft.out_path == "x.csv");

    // Zero multiplier string marks exact vanishing.
    RunConfig z = report::parse_config(R"({
      "command": "validate",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3},
      "multiplier": "0"
    })");
    CHECK(z.multiplier.exactly_zero);
}

TEST_CASE("config rejection") {
    expect_config_error("not json at all");
    expect_config_error("[1,2,3]");
    // Missing or malformed blocks.
    expect_config_error(R"({"command": "validate"})");
    expect_config_error(R"({
      "command": "validate",
      "exponents": {"alpha": ["0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate",
      "exponents": {"alpha": ["0", "junk"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 3, "l": 3}})");
    expect_config_error(R"({
      "command": "validate",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"l": 3}})");
    // Bad scalar fields.
    expect_config_error(R"({
      "command": "nonsense",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate", "m": 0,
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate", "precision": 32,
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate", "precision": 100000,
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate", "constants": "default",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    expect_config_error(R"({
      "command": "validate", "output": {"format": "xml"},
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
    // p1 must vanish at 1.
    expect_config_error(R"({
      "command": "validate", "polynomial": {"p1": ["1"]},
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
      "character": {"k": 1, "l": 3}})");
}

TEST_CASE("config hash") {
    RunConfig a = report::parse_config(kLegendreValidate);
    RunConfig b = report::parse_config(kLegendreValidate);
    CHECK(report::config_hash(a) == report::config_hash(b));
    CHECK(report::config_hash_hex(a).size() == 16);

    // Output routing does not participate.
    RunConfig c = a;
    c.format = "csv";
    c.out_path = "elsewhere.csv";
    CHECK(report::config_hash(c) == report::config_hash(a));

    // Everything semantic does.
    RunConfig d = a;
    d.precision = 128;
    CHECK(report::config_hash(d) != report::config_hash(a));
    RunConfig e = a;
    e.command = "period";
    CHECK(report::config_hash(e) != report::config_hash(a));
    RunConfig f = a;
    f.chi = params::CharacterIndex{2, 3};
    CHECK(report::config_hash(f) != report::config_hash(a));
}

TEST_CASE("validate command") {
    RunConfig cfg = report::parse_config(kLegendreValidate);
    report::RunResult rr = report::run(cfg);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report.find("\"pass\": true") != std::string::npos);
    CHECK(rr.report.find("config_hash") != std::string::npos);
    CHECK(rr.report.find(report::config_hash_hex(cfg)) != std::string::npos);
    // No wall-clock or host-dependent content sneaks in.
    CHECK(rr.report.find("time") == std::string::npos);

    // A non-normalized tuple fails the checks: exit 1, pass false.
    RunConfig bad = report::parse_config(R"({
      "command": "validate",
      "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/3"]},
      "character": {"k": 1, "l": 3}
    })");
    report::RunResult rb = report::run(bad);
    CHECK(rb.exit_code == 1);
    CHECK(rb.report.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("byte determinism") {
    RunConfig cfg = report::parse_config(kLegendreValidate);
    report::RunResult r1 = report::run(cfg);
    report::RunResult r2 = report::run(cfg);
    CHECK(r1.report == r2.report);

    cfg.command = "period";
    report::RunResult p1 = report::run(cfg);
    report::RunResult p2 = report::run(cfg);
    CHECK(p1.report == p2.report);
    CHECK(p1.exit_code == 0);
}

TEST_CASE("csv rendering") {
    RunConfig cfg = report::parse_config(kLegendreValidate);
    cfg.format = "csv";
    report::RunResult rr = report::run(cfg);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report.rfind("key,value\n", 0) == 0);
    CHECK(rr.report.find("pass,true") != std::string::npos);
    // Same bytes on a rerun.
    CHECK(report::run(cfg).report == rr.report);
}

TEST_CASE("orbit command") {
    RunConfig cfg = report::parse_config(R"({
      "command": "orbit",
      "exponents": {"alpha": ["0", "1/3"], "beta": ["1/3", "1/3"]},
      "character": {"k": 1, "l": 5}
    })");
    report::RunResult rr = report::run(cfg);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report.find("\"modulus\": 15") != std::string::npos);
}
