#pragma once

#include <cstdint>
#include <vector>

#include "lfwave/mra.hpp"

namespace lfwave {

/// Scaling pair plus the full family of shifted masks m_l(chi) =
/// m_0(chi r_0^{-l}) and wavelet spectra psi-hat^(l) = m_l . phi-hat(. A^{-1})
/// for every l in GF(p)^s. The l = 0 entry reproduces the scaling relation
/// and is kept as a consistency check; the wavelets proper are l != 0.
class WaveletSystem {
 public:
  static WaveletSystem build(const MRAFamily& family);

  const MRAFamily& family() const { return family_; }
  const std::vector<GFBlock>& labels() const { return labels_; }
  std::size_t count() const { return labels_.size(); }

  const SpectralStepFunction& mask(std::size_t i) const { return masks_[i]; }
  const SpectralStepFunction& dual_mask(std::size_t i) const {
    return dual_masks_[i];
  }
  const SpectralStepFunction& psi(std::size_t i) const { return psis_[i]; }
  const SpectralStepFunction& dual_psi(std::size_t i) const {
    return dual_psis_[i];
  }

 private:
  explicit WaveletSystem(MRAFamily family) : family_(std::move(family)) {}

  MRAFamily family_;
  std::vector<GFBlock> labels_;
  std::vector<SpectralStepFunction> masks_;
  std::vector<SpectralStepFunction> dual_masks_;
  std::vector<SpectralStepFunction> psis_;
  std::vector<SpectralStepFunction> dual_psis_;
};

/// m_l as a step function on (K_1^+)^perp: the support of m_0 translated
/// by r_0^l, values carried along.
SpectralStepFunction wavelet_mask(const Mask& mask, const GFBlock& l);

/// psi-hat^(l)(chi) = m_l(chi) phi-hat(chi A^{-1}), assembled coset-wise on
/// the refined support of the dilated scaling function.
SpectralStepFunction wavelet_hat(const SpectralStepFunction& mask_l,
                                 const SpectralStepFunction& scaling);

struct MaskPropertiesReport {
  bool translated_support_nonempty = true;  // m_l nonzero on E~ r_0^l
  bool translated_support_exact = true;     // m_l zero on E~ r_0^a, a != l
  bool vanish_on_E = true;                  // m_l(E) = 0 for l != 0
  bool pairwise_disjoint = true;            // supp m_l and supp m_k disjoint
  std::vector<std::string> problems;

  bool pass() const {
    return translated_support_nonempty && translated_support_exact &&
           vanish_on_E && pairwise_disjoint;
  }
};

/// Support identities of the shifted masks, checked as exact set
/// operations (no tolerance).
MaskPropertiesReport check_mask_properties(const WaveletSystem& system);

struct MatrixConditionReport {
  double max_deviation = 0.0;  // max |sum - delta_{k,l}|
  std::size_t sums_checked = 0;
  bool single_term = true;  // diagonal sums carry exactly one nonzero term
};

/// The biorthogonality matrix condition: for every pair (k, l) and every
/// digit string a_{-N}..a_{-1}, sum over a_0 of m_k conj(dual m_l) equals
/// delta_{k,l}.
MatrixConditionReport check_matrix_condition(const WaveletSystem& system);

struct ShellBound {
  int n = 0;              // shell (K_n^+)^perp \ (K_{n-1}^+)^perp
  double sup_abs = 0.0;   // sup of |f| over the shell
};

struct DecayReport {
  double epsilon = 1.0;
  double C = 0.0;
  std::vector<ShellBound> scaling_shells;       // phi-hat
  std::vector<ShellBound> dual_scaling_shells;  // dual phi-hat
  double psi_annihilator_C = 0.0;  // min C with |psi^(l)((K_n)^perp)| <= C p^{ns}
  bool witnesses_found = false;
};

/// Exhibits constants (C, epsilon) for the decay and annihilator bounds.
/// Shell sups are computed over the finite supports; shells below index -N
/// sit inside the unit coset where |phi-hat| = 1, so the constraint there
/// is dominated by the shell at -N. The annihilator bound covers the
/// wavelets l != 0 (for l = 0 the spectrum equals phi-hat, which does not
/// vanish near the identity, and no such bound can hold).
DecayReport check_decay_hypotheses(const WaveletSystem& system);

}  // namespace lfwave
