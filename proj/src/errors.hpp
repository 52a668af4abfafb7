// Error taxonomy shared by all modules. Every throw carries a code so the C
// API and CLI can map failures to stable status values without string parsing.
#pragma once

#include <stdexcept>
#include <string>

namespace cmp {

enum class Err {
    Pole,             // Gamma/Beta argument at a nonpositive integer
    DivergentSeries,  // series outside its convergence domain
    NonConvergence,   // iteration/precision budget exhausted
    ReducibleSystem,  // local system has an integral alpha_i + beta_j
    DegenerateOrbit,  // Galois orbit construction hit invalid data
    VanishingCm,      // requested m has C_m == 0
    ExhaustedSearch,  // no nonvanishing m within the search bound
    SingularIntegrand,// endpoint weight not integrable
    PathTooClose,     // ODE path within the exclusion radius of a singularity
    StepFailure,      // adaptive ODE step size underflow
    Config,           // malformed user input
    Eval,             // internal evaluation invariant violated
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::Pole: return "PoleError";
        case Err::DivergentSeries: return "DivergentSeries";
        case Err::NonConvergence: return "NonConvergence";
        case Err::ReducibleSystem: return "ReducibleSystem";
        case Err::DegenerateOrbit: return "DegenerateOrbit";
        case Err::VanishingCm: return "VanishingCm";
        case Err::ExhaustedSearch: return "ExhaustedSearch";
        case Err::SingularIntegrand: return "SingularIntegrand";
        case Err::PathTooClose: return "PathTooClose";
        case Err::StepFailure: return "StepFailure";
        case Err::Config: return "ConfigError";
        case Err::Eval: return "EvalError";
    }
    return "Error";
}

}  // namespace cmp
