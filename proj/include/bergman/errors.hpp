#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Regime {
  LevelOutsideWindow,
  OutsideRadialGraphRegime,
  NonRegularValue,
  RecenteringLeftGraphClass,
  OutsideFugledeRegime,
  Normalization,
};

const char* regime_name(Regime r);

// Raised when a computation leaves the perturbative regime it is valid in.
struct RegimeError : std::runtime_error {
  Regime kind;
  RegimeError(Regime k, const std::string& detail)
      : std::runtime_error(std::string(regime_name(k)) + ": " + detail), kind(k) {}
};

struct SolverError : std::runtime_error {
  std::vector<std::string> trace;
  SolverError(const std::string& what, std::vector<std::string> tr = {})
      : std::runtime_error(what), trace(std::move(tr)) {}
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::LevelOutsideWindow: return "level outside window";
    case Regime::OutsideRadialGraphRegime: return "outside radial-graph regime";
    case Regime::NonRegularValue: return "non-regular value";
    case Regime::RecenteringLeftGraphClass: return "recentering left graph class";
    case Regime::OutsideFugledeRegime: return "outside Fuglede regime";
    case Regime::Normalization: return "normalization violated";
  }
  return "regime error";
}

}  // namespace bergman
