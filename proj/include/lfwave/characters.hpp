#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "lfwave/field.hpp"

namespace lfwave {

using Complex = std::complex<double>;

/// exp(2 pi i k / p). Exact +-1 for p = 2 so that binary fixtures stay
/// free of trigonometric rounding.
Complex unit_root(std::uint32_t p, std::uint32_t k);

/// A coset of the annihilator (K_{-L}^+)^perp in the character group X,
/// stored as a finite string of Rademacher exponents on indices >= -L.
/// Digits at indices < -L are absorbed by the annihilator and never stored;
/// zero digits are pruned, so equality is structural.
class CosetAddress {
 public:
  /// The identity coset (K_{-base}^+)^perp itself.
  CosetAddress(FieldParams params, int base);
  CosetAddress(FieldParams params, int base, std::map<int, GFBlock> digits);

  const FieldParams& params() const { return params_; }
  int base() const { return base_; }
  const std::map<int, GFBlock>& digits() const { return digits_; }
  GFBlock digit_at(int index) const;  // zero block if absent
  bool is_identity() const { return digits_.empty(); }
  /// Largest index with a nonzero digit; nullopt for the identity coset.
  std::optional<int> top_index() const;

  /// Group product: digit-wise block addition. Requires equal bases.
  CosetAddress operator*(const CosetAddress& other) const;
  CosetAddress inverse() const;
  /// Multiply by r_index^e. Requires index >= -base.
  CosetAddress translated(int index, const GFBlock& e) const;

  /// chi -> chi A^n: digit indices shift by +n, base L -> L - n.
  CosetAddress dilated(int n) const;

  /// The p^{s (newBase - base)} sub-cosets at the finer base, in
  /// lexicographic order of the appended digits. Requires newBase >= base.
  std::vector<CosetAddress> refined(int new_base) const;

  /// nu(coset) = p^{-s base}.
  double measure() const;

  /// Exponent e mod p with (chi, x) = exp(2 pi i e / p), evaluated as an
  /// exact integer sum of digit/block dot products. Throws if x has a block
  /// below index -base (the pairing is not constant on the coset then).
  std::uint32_t pairing_exponent(const FieldElement& x) const;
  Complex pairing(const FieldElement& x) const;

  friend bool operator==(const CosetAddress&, const CosetAddress&) = default;
  friend auto operator<=>(const CosetAddress&, const CosetAddress&) = default;

 private:
  FieldParams params_;
  int base_ = 0;
  std::map<int, GFBlock> digits_;
};

}  // namespace lfwave
