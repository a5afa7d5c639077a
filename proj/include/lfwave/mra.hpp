#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "lfwave/spectral.hpp"

namespace lfwave {

/// Mask of the refinement relation: a step function supported on the
/// p^{sN} cosets of a tree's elementary set (digits on [-N, 0]), value 1
/// at the all-zero address, and |value|^2 within the Riesz corridor
/// [A, B]. Because the unit value sits in the corridor, 0 < A <= 1 <= B.
class Mask {
 public:
  /// Validates the assignment against the set: every coset present, no
  /// extras, zero-address value exactly 1, bounds respected. The set must
  /// have one support coset per xi string (unique extension).
  static Mask build(const ElementarySet& set,
                    const std::map<CosetAddress, Complex>& assignment,
                    double A, double B);

  const SpectralStepFunction& values() const { return values_; }
  const FieldParams& params() const { return values_.params(); }
  std::uint32_t N() const { return static_cast<std::uint32_t>(values_.base()); }
  double riesz_floor() const { return A_; }
  double riesz_ceiling() const { return B_; }

  /// Periodized evaluation: digits at indices >= 1 are dropped. Digits
  /// below -N throw (callers at finer bases must slice by constancy).
  Complex periodized(const CosetAddress& addr) const;

  /// Dual mask: 1 / conj(value) on the same support, bounds (1/B, 1/A).
  /// For real masks this is the plain reciprocal.
  Mask dual() const;

  /// Coefficients beta_h of the refinement relation, supported on
  /// H_0^{(N+1)}: beta_h = p^{-sN} sum_cosets m(zeta) (zeta A^{-1}, h).
  std::map<ShiftH0, Complex> coefficients() const;

 private:
  Mask(SpectralStepFunction values, double A, double B)
      : values_(std::move(values)), A_(A), B_(B) {}

  SpectralStepFunction values_;
  double A_ = 1.0;
  double B_ = 1.0;
};

/// Deterministic mask fixture: moduli drawn from mt19937_64(seed) mapped
/// into [sqrt(A), sqrt(B)], phase 0, zero address forced to 1.
Mask default_mask(const ElementarySet& set, double A, double B,
                  std::uint64_t seed);

/// Rebuild the mask values from refinement coefficients on all p^{s(N+1)}
/// cosets of (K_1^+)^perp: m(zeta) = p^{-s} sum_h beta_h conj((zeta A^{-1},
/// h)). Round-trips coefficients() exactly up to rounding.
SpectralStepFunction mask_from_coefficients(
    FieldParams params, std::uint32_t N,
    const std::map<ShiftH0, Complex>& beta);

/// phi-hat as the finite product prod_{n=0}^{H-N+1} m(chi A^{-n}),
/// evaluated coset-wise on (K_{H-2N+1}^+)^perp; the factor for offset n
/// reads the digit slice [n-N, n]. extra_factors appends stabilized
/// factors beyond the nominal truncation (they are identically 1).
SpectralStepFunction scaling_hat(const Mask& mask, std::uint32_t H,
                                 std::uint32_t extra_factors = 0);

/// Independent route to phi-hat: walk the tree and multiply mask values
/// over the sliding (N+1)-windows along each node's ancestor path (zero
/// padded above the root). Must agree with scaling_hat exactly.
SpectralStepFunction scaling_hat_paths(const ValidTree& tree,
                                       const Mask& mask);

/// Scaling pair (phi-hat, dual) with construction metadata.
class MRAFamily {
 public:
  static MRAFamily build(const ValidTree& tree, const Mask& mask);
  /// For hand-supplied masks without tree provenance; H >= 2N-1.
  static MRAFamily build_with_height(const Mask& mask, std::uint32_t H);

  const Mask& mask() const { return mask_; }
  const Mask& dual_mask() const { return dual_mask_; }
  const SpectralStepFunction& scaling() const { return scaling_; }
  const SpectralStepFunction& dual_scaling() const { return dual_scaling_; }
  const FieldParams& params() const { return mask_.params(); }
  std::uint32_t N() const { return mask_.N(); }
  std::uint32_t H() const { return H_; }
  double riesz_floor() const { return mask_.riesz_floor(); }
  double riesz_ceiling() const { return mask_.riesz_ceiling(); }

  /// supp phi-hat as an (N, H-2N+1)-elementary set.
  ElementarySet support_set() const;

 private:
  MRAFamily(Mask mask, Mask dual_mask, SpectralStepFunction scaling,
            SpectralStepFunction dual_scaling, std::uint32_t H)
      : mask_(std::move(mask)),
        dual_mask_(std::move(dual_mask)),
        scaling_(std::move(scaling)),
        dual_scaling_(std::move(dual_scaling)),
        H_(H) {}

  Mask mask_;
  Mask dual_mask_;
  SpectralStepFunction scaling_;
  SpectralStepFunction dual_scaling_;
  std::uint32_t H_ = 1;
};

struct RefinementReport {
  double max_deviation = 0.0;       // phi-hat(chi) vs m(chi) phi-hat(chi A^{-1})
  double max_dual_deviation = 0.0;  // same for the dual pair
  std::size_t cosets_checked = 0;
};

/// Verifies the refinement identity on the union of both supports at the
/// common base (off the union both sides vanish identically).
RefinementReport check_refinement(const MRAFamily& family);

/// (min, max) of |phi-hat|^2 over the support; lies inside
/// [A^{H-N+2}, B^{H-N+2}].
std::pair<double, double> riesz_bounds(const MRAFamily& family);

}  // namespace lfwave
