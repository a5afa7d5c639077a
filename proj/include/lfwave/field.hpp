#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace lfwave {

/// Parameters of the local field K = F^(s): characteristic p (prime) and
/// block width s. Every domain object carries a copy and cross-parameter
/// operations are rejected.
struct FieldParams {
  std::uint32_t p = 2;
  std::uint32_t s = 1;

  /// q = p^s, the alphabet size of one digit block.
  std::size_t q() const;

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
  friend auto operator<=>(const FieldParams&, const FieldParams&) = default;
};

bool is_prime(std::uint32_t n);

/// Throws std::invalid_argument unless p is prime and s >= 1.
void validate_params(const FieldParams& params);

/// One digit block: a vector of s residues mod p, i.e. an element of the
/// additive group GF(p)^s.
class GFBlock {
 public:
  explicit GFBlock(FieldParams params);  // zero block
  GFBlock(FieldParams params, std::vector<std::uint32_t> digits);

  /// The block (1, 0, ..., 0).
  static GFBlock unit(FieldParams params);

  /// Decode idx in [0, p^s) as a block, digit 0 most significant.
  static GFBlock from_index(FieldParams params, std::size_t idx);
  std::size_t to_index() const;

  const FieldParams& params() const { return params_; }
  const std::vector<std::uint32_t>& digits() const { return digits_; }
  bool is_zero() const;

  GFBlock operator+(const GFBlock& other) const;
  GFBlock operator-() const;
  GFBlock operator-(const GFBlock& other) const;
  /// Componentwise scalar multiple k*a mod p.
  GFBlock scaled(std::uint32_t k) const;
  /// sum_l a^(l) b^(l) mod p.
  std::uint32_t dot(const GFBlock& other) const;

  friend bool operator==(const GFBlock&, const GFBlock&) = default;
  friend auto operator<=>(const GFBlock&, const GFBlock&) = default;

 private:
  FieldParams params_;
  std::vector<std::uint32_t> digits_;
};

/// All p^s blocks in index order (zero block first).
std::vector<GFBlock> all_blocks(FieldParams params);

/// Element of K with finitely many nonzero digit blocks, stored sparsely as
/// index -> block. Canonical form: no stored block is zero, so equality is
/// structural. Values are immutable.
class FieldElement {
 public:
  explicit FieldElement(FieldParams params);  // zero element
  FieldElement(FieldParams params, std::map<int, GFBlock> blocks);

  /// Basic sequence element g_n: single block (1,0,...,0) at index n.
  static FieldElement basic(FieldParams params, int n);
  /// Single block b at index n.
  static FieldElement single(int n, const GFBlock& b);

  const FieldParams& params() const { return params_; }
  const std::map<int, GFBlock>& blocks() const { return blocks_; }
  bool is_zero() const { return blocks_.empty(); }
  GFBlock block_at(int index) const;  // zero block if absent

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-() const;
  FieldElement operator-(const FieldElement& other) const;

  /// A^n: every block index decreases by n (negative n inverts).
  FieldElement dilated(int n) const;

  /// Index of the first nonzero block; nullopt for the zero element.
  std::optional<int> norm_exponent() const;
  /// ||a|| = p^{-s n} with n = norm_exponent(); 0 for the zero element.
  double norm() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  FieldParams params_;
  std::map<int, GFBlock> blocks_;
};

/// Shift from the group H_0: a field element supported on negative indices
/// only. depth() is the largest nu with a block at index -nu (0 for zero).
class ShiftH0 {
 public:
  explicit ShiftH0(FieldElement value);
  static ShiftH0 zero(FieldParams params);

  const FieldElement& value() const { return value_; }
  const FieldParams& params() const { return value_.params(); }
  std::uint32_t depth() const;

  friend bool operator==(const ShiftH0&, const ShiftH0&) = default;
  friend auto operator<=>(const ShiftH0&, const ShiftH0&) = default;

 private:
  FieldElement value_;
};

/// All p^{s nu} shifts of depth <= nu in lexicographic order: block at
/// index -1 most significant, zero shift first. Throws on nu < 0.
std::vector<ShiftH0> h0_enumerate(FieldParams params, int nu);

}  // namespace lfwave
