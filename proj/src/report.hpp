// Run configuration (JSON in, rationals as "p/q" strings), command dispatch,
// and deterministic JSON/CSV report rendering. Reports carry the hash of the
// effective configuration and the working precision; they never contain
// timestamps or machine-specific data, so identical inputs give identical
// bytes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "params.hpp"
#include "period.hpp"
#include "rational.hpp"

namespace cmp::report {

inline constexpr const char* kVersion = "1.0.0";

struct MultiplierConfig {
    Rational re = Rational(1), im = Rational(0);
    bool exactly_zero = false;
};

struct ConstantsConfig {
    bool use_default = true;
    Rational l1_re, l1_im;  // lambda1
    Rational l2_re, l2_im;  // lambda2
};

struct RunConfig {
    std::string command;  // validate | period | regulator | orbit | monodromy | verify
    params::ExponentData e;
    params::CharacterIndex chi;
    period::PolynomialPair poly;  // defaults to p0 = 0, p1 = t - 1
    std::optional<long> m;
    unsigned precision = kDefaultPrec;
    bool precision_explicit = false;  // precision came from the config itself
    MultiplierConfig multiplier;
    ConstantsConfig constants;
    std::string format = "json";  // json | csv
    std::string out_path;         // empty: caller decides (CLI prints to stdout)
};

// Err::Config on malformed JSON, missing fields, bad rationals, out-of-range
// precision, or an unknown command/format.
RunConfig parse_config(const std::string& json_text);

// FNV-1a 64 over the canonical serialization of the effective config
// (output location and format excluded).
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

struct RunResult {
    int exit_code = 0;     // 0 pass, 1 check failure (config errors throw)
    std::string report;    // rendered in cfg.format
};

// Executes cfg.command and renders the report. Math-level impossibilities
// (poles, reducible systems, exhausted searches) propagate as cmp::Error.
RunResult run(const RunConfig& cfg);

}  // namespace cmp::report
