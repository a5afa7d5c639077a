#include "lfwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lfwave {

namespace {

CheckResult numeric_check(const std::string& name, double deviation,
                          double tolerance, std::string detail = {}) {
  CheckResult r;
  r.name = name;
  r.deviation = deviation;
  r.tolerance = tolerance;
  r.pass = deviation <= tolerance;
  r.detail = std::move(detail);
  return r;
}

CheckResult boolean_check(const std::string& name, bool pass,
                          std::string detail = {}) {
  CheckResult r;
  r.name = name;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

VerifyOutcome verify_family(const ValidTree& tree, const MRAFamily& family,
                            const VerifyOptions& options) {
  VerifyOutcome out;
  const double tol = options.tolerance;

  auto tree_report = validate_tree(tree);
  out.add(boolean_check("tree_valid", tree_report.valid(),
                        "height " + std::to_string(tree_report.height)));

  const ElementarySet tilde = ElementarySet::from_tree(tree);
  auto tilde_report = validate_elementary(tilde, tilde.N(), tilde.M());
  out.add(boolean_check("mask_support_elementary", tilde_report.valid(),
                        "M = " + std::to_string(tilde.M())));

  const ElementarySet support = family.support_set();
  auto support_report = validate_elementary(support, support.N(), support.M());
  out.add(boolean_check("scaling_support_elementary", support_report.valid(),
                        "M = " + std::to_string(support.M())));

  // Mask corridor: zero address exactly 1, moduli inside [A, B].
  {
    const CosetAddress zero(family.params(), static_cast<int>(family.N()));
    bool ok = family.mask().values().at(zero) == Complex{1.0, 0.0};
    for (const auto& [addr, v] : family.mask().values().values()) {
      const double m2 = std::norm(v);
      ok = ok && m2 >= family.riesz_floor() && m2 <= family.riesz_ceiling();
    }
    out.add(boolean_check("mask_corridor", ok));
  }

  {
    auto r = check_refinement(family);
    out.add(numeric_check("refinement_identity", r.max_deviation, 1e-12));
    out.add(numeric_check("dual_refinement_identity", r.max_dual_deviation,
                          1e-12));
  }

  out.add(numeric_check(
      "scaling_oracle_paths",
      spectral_max_abs_diff(family.scaling(),
                            scaling_hat_paths(tree, family.mask())),
      1e-12));
  out.add(numeric_check(
      "scaling_product_stabilization",
      spectral_max_abs_diff(family.scaling(),
                            scaling_hat(family.mask(), family.H(), 1)),
      1e-15));

  {
    const auto [lo, hi] = riesz_bounds(family);
    const double exponent = static_cast<double>(family.H()) - family.N() + 2;
    const double floor = std::pow(family.riesz_floor(), exponent);
    const double ceiling = std::pow(family.riesz_ceiling(), exponent);
    std::ostringstream detail;
    detail << "|phi|^2 in [" << lo << ", " << hi << "], envelope [" << floor
           << ", " << ceiling << "]";
    out.add(boolean_check("riesz_envelope",
                          lo >= floor - 1e-12 && hi <= ceiling + 1e-12 &&
                              lo > 0.0,
                          detail.str()));
  }

  out.add(numeric_check(
      "dual_product_unity",
      spectral_max_abs_diff(
          spectral_product(family.scaling(),
                           family.dual_scaling().conjugated()),
          family.support_set().indicator()),
      1e-12));

  {
    const auto beta = family.mask().coefficients();
    const SpectralStepFunction rebuilt =
        mask_from_coefficients(family.params(), family.N(), beta);
    out.add(numeric_check(
        "mask_coefficient_roundtrip",
        spectral_max_abs_diff(rebuilt, family.mask().values()), 1e-12,
        std::to_string(beta.size()) + " coefficients"));
  }

  out.add(numeric_check("spatial_refinement",
                        spatial_refinement_deviation(family), tol));
  return out;
}

VerifyOutcome verify_all(const ValidTree& tree, const WaveletSystem& system,
                         const VerifyOptions& options) {
  const MRAFamily& family = system.family();
  VerifyOutcome out = verify_family(tree, family, options);
  const double tol = options.tolerance;
  const std::uint32_t depth = options.depth.value_or(family.N() + 1);
  const std::vector<ShiftH0> shifts =
      h0_enumerate(family.params(), static_cast<int>(depth));

  {
    auto r = check_mask_properties(system);
    std::string detail;
    for (const auto& p : r.problems) detail += p + "; ";
    out.add(boolean_check("shifted_mask_supports", r.pass(), detail));
  }

  {
    auto r = check_matrix_condition(system);
    out.add(numeric_check("matrix_condition", r.max_deviation, tol,
                          std::to_string(r.sums_checked) + " sums"));
    out.add(boolean_check("matrix_condition_single_term", r.single_term));
  }

  {
    const SpectralStepFunction psi0 =
        wavelet_hat(system.mask(0), family.scaling());
    out.add(numeric_check("psi0_reproduces_scaling",
                          spectral_max_abs_diff(psi0, family.scaling()),
                          1e-12));
  }

  {
    bool ok = true;
    const CosetAddress zero(family.params(), static_cast<int>(family.N()));
    for (std::size_t i = 0; i < system.count(); ++i) {
      if (system.labels()[i].is_zero()) continue;
      ok = ok && system.psi(i).at(zero) == Complex{0.0, 0.0};
      const auto top = system.psi(i).max_digit_index();
      const int bound = static_cast<int>(family.H()) -
                        2 * static_cast<int>(family.N()) + 1;
      ok = ok && (!top || *top <= bound);
    }
    out.add(boolean_check("wavelet_support_bounds", ok));
  }

  out.add(numeric_check(
      "character_orthonormality",
      max_off_diagonal_deviation_from_identity(
          gram_matrix(family.support_set().indicator(), shifts)),
      1e-12, "Gram of (chi, h) over E"));

  {
    const auto [lo, hi] = riesz_bounds(family);
    auto gram = gram_matrix(family.scaling(), shifts);
    auto eigen = hermitian_eigenvalues(gram);
    bool ok = !eigen.eigenvalues.empty();
    for (double ev : eigen.eigenvalues)
      ok = ok && ev >= lo - tol && ev <= hi + tol;
    std::ostringstream detail;
    detail << eigen.method << "; eigenvalues in ["
           << (eigen.eigenvalues.empty() ? 0.0 : eigen.eigenvalues.front())
           << ", "
           << (eigen.eigenvalues.empty() ? 0.0 : eigen.eigenvalues.back())
           << "] vs [" << lo << ", " << hi << "]";
    out.add(boolean_check("gram_eigenvalue_envelope", ok, detail.str()));
  }

  {
    auto r = biorthogonality_report(system, depth, options.level_lo,
                                    options.level_hi);
    out.add(numeric_check("scaling_biorthogonality",
                          r.max_scaling_deviation, tol));
    out.add(numeric_check("wavelet_biorthogonality",
                          r.max_wavelet_deviation, tol,
                          std::to_string(r.pairs_checked) + " pairs"));
  }

  {
    double dev = 0.0;
    auto roundtrip = [&](const SpectralStepFunction& fhat) {
      const SpatialStepFunction f = inverse_fourier(fhat);
      dev = std::max(dev, std::abs(f.norm_sq() - spectral_norm_sq(fhat)));
      dev = std::max(dev,
                     spectral_max_abs_diff(forward_fourier(f), fhat));
    };
    roundtrip(family.scaling());
    roundtrip(family.dual_scaling());
    for (std::size_t i = 0; i < system.count(); ++i) roundtrip(system.psi(i));
    out.add(numeric_check("fourier_roundtrip_plancherel", dev, 1e-12));
  }

  {
    const auto [lo, hi] = riesz_bounds(family);
    auto table = periodization_diagnostic(family.scaling(),
                                          static_cast<int>(depth));
    bool ok = true;
    for (const auto& [addr, value] : table)
      ok = ok && value >= lo - tol && value <= hi + tol;
    out.add(boolean_check("periodization_range", ok,
                          std::to_string(table.size()) + " cosets"));
  }

  {
    auto r = check_decay_hypotheses(system);
    bool satisfied = r.witnesses_found;
    // Re-check the exhibited constants against the shell tables.
    for (const auto& shells : {r.scaling_shells, r.dual_scaling_shells})
      for (const ShellBound& b : shells) {
        const double rhs =
            r.C / std::pow(1.0 + std::pow(static_cast<double>(
                                              family.params().p),
                                          static_cast<double>(
                                              family.params().s) *
                                              b.n),
                           0.5 + r.epsilon);
        satisfied = satisfied && b.sup_abs <= rhs + 1e-12;
      }
    std::ostringstream detail;
    detail << "C = " << r.C << ", epsilon = " << r.epsilon;
    out.add(boolean_check("decay_witnesses", satisfied, detail.str()));
  }

  return out;
}

}  // namespace lfwave
