#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfwave/transform.hpp"
#include "lfwave/tree.hpp"

namespace lfwave {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::optional<double> deviation;  // numeric witness when one exists
  std::optional<double> tolerance;
  std::string detail;
};

struct VerifyOptions {
  std::optional<std::uint32_t> depth;  // defaults to N + 1
  int level_lo = -1;
  int level_hi = 1;
  double tolerance = 1e-9;  // for the checks documented as tol-defaulted
};

struct VerifyOutcome {
  std::vector<CheckResult> checks;
  bool pass = true;

  void add(CheckResult r) {
    pass = pass && r.pass;
    checks.push_back(std::move(r));
  }
};

/// Runs the full verification battery against a constructed system and its
/// provenance tree. Every entry wraps exactly one library operation.
VerifyOutcome verify_all(const ValidTree& tree, const WaveletSystem& system,
                         const VerifyOptions& options);

/// Family-level subset (refinement, oracle equivalence, Riesz envelope,
/// dual product, coefficient round-trip).
VerifyOutcome verify_family(const ValidTree& tree, const MRAFamily& family,
                            const VerifyOptions& options);

}  // namespace lfwave
