#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfwave/characters.hpp"
#include "lfwave/tree.hpp"

namespace lfwave {

/// Finitely supported complex step function on the character group,
/// constant on cosets of (K_{-L}^+)^perp for its base L. All stored
/// addresses share the base; exact zeros are pruned. Integration uses the
/// coset measure nu = p^{-s L} and compensated summation, so refining the
/// base leaves integrals and inner products unchanged.
class SpectralStepFunction {
 public:
  SpectralStepFunction(FieldParams params, int base);
  SpectralStepFunction(FieldParams params, int base,
                       std::map<CosetAddress, Complex> values);

  const FieldParams& params() const { return params_; }
  int base() const { return base_; }
  const std::map<CosetAddress, Complex>& values() const { return values_; }
  std::size_t support_size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Value on the coset; 0 when absent. The address base must equal base().
  Complex at(const CosetAddress& addr) const;
  void set(const CosetAddress& addr, Complex v);  // prunes exact zeros

  SpectralStepFunction refined(int new_base) const;
  /// g with g(chi) = f(chi A^{-n}); addresses dilate by n, base L -> L - n.
  SpectralStepFunction dilated(int n) const;
  SpectralStepFunction scaled(Complex c) const;
  SpectralStepFunction conjugated() const;
  /// |f|^2 as a real-valued step function.
  SpectralStepFunction abs_squared() const;
  /// f * conj((., h)): modulation by a shift, refining the base when h
  /// reaches below it.
  SpectralStepFunction modulated(const FieldElement& h) const;

  double max_abs() const;
  double min_abs_on_support() const;
  std::optional<int> max_digit_index() const;  // over the support

 private:
  FieldParams params_;
  int base_ = 0;
  std::map<CosetAddress, Complex> values_;
};

/// integral f dnu = sum value * p^{-s L} (Kahan).
Complex spectral_integral(const SpectralStepFunction& f);
/// <f, g> = integral f conj(g) dnu at the common refinement.
Complex spectral_inner_product(const SpectralStepFunction& f,
                               const SpectralStepFunction& g);
/// integral |f|^2 dnu.
double spectral_norm_sq(const SpectralStepFunction& f);
/// Pointwise product at the common refinement.
SpectralStepFunction spectral_product(const SpectralStepFunction& f,
                                      const SpectralStepFunction& g);
/// max |f - g| over the union of refined supports.
double spectral_max_abs_diff(const SpectralStepFunction& f,
                             const SpectralStepFunction& g);

/// Evaluation of the periodized mask-style function f (support on digit
/// indices [-N, 0], base N) at an arbitrary address: digits at indices >= 1
/// are zeroed by periodicity. Throws if the address carries digits below
/// -N; finer callers must handle those by coset constancy.
Complex periodized_eval(const SpectralStepFunction& f,
                        const CosetAddress& addr);

/// Disjoint union of p^{sN} cosets of (K_{-N}^+)^perp with digits on
/// [-N, M-1]: the candidate (N, M)-elementary set.
class ElementarySet {
 public:
  ElementarySet(FieldParams params, std::uint32_t N, std::uint32_t M,
                std::vector<CosetAddress> cosets);

  /// One coset per (N+1)-window of the tree (windows padded with zeros
  /// above the root): the deepest label lands at digit index -N and the
  /// extension label at index 0. M is 1 when some extension is nonzero,
  /// else 0.
  static ElementarySet from_tree(const ValidTree& tree);

  const FieldParams& params() const { return params_; }
  std::uint32_t N() const { return N_; }
  std::uint32_t M() const { return M_; }
  const std::vector<CosetAddress>& cosets() const { return cosets_; }

  /// 1_E as a base-N step function.
  SpectralStepFunction indicator() const;

 private:
  FieldParams params_;
  std::uint32_t N_ = 1;
  std::uint32_t M_ = 0;
  std::vector<CosetAddress> cosets_;
};

struct ElementaryValidityReport {
  bool count_ok = false;
  bool bases_ok = false;
  bool digits_in_range = false;
  bool disjoint = false;
  bool xi_exhaustive = false;
  bool xi0_trivial = false;
  bool shells_hit = false;
  std::vector<int> missing_shells;  // l values with an empty shell
  /// The single M the set can qualify for (pinned by the top digit), when
  /// the base conditions hold and all shells up to it are hit.
  std::optional<std::uint32_t> maximal_M;
  std::vector<std::string> problems;

  bool valid() const {
    return count_ok && bases_ok && digits_in_range && disjoint &&
           xi_exhaustive && xi0_trivial && shells_hit;
  }
};

ElementaryValidityReport validate_elementary(
    const std::vector<CosetAddress>& cosets, FieldParams params,
    std::uint32_t N, std::uint32_t M);

inline ElementaryValidityReport validate_elementary(const ElementarySet& set,
                                                    std::uint32_t N,
                                                    std::uint32_t M) {
  return validate_elementary(set.cosets(), set.params(), N, M);
}

}  // namespace lfwave
