#include "lfwave/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lfwave {

Complex unit_root(std::uint32_t p, std::uint32_t k) {
  k %= p;
  if (k == 0) return {1.0, 0.0};
  if (p == 2) return {-1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * k / p;
  return {std::cos(angle), std::sin(angle)};
}

CosetAddress::CosetAddress(FieldParams params, int base)
    : params_(params), base_(base) {
  validate_params(params_);
}

CosetAddress::CosetAddress(FieldParams params, int base,
                           std::map<int, GFBlock> digits)
    : params_(params), base_(base), digits_(std::move(digits)) {
  validate_params(params_);
  for (auto it = digits_.begin(); it != digits_.end();) {
    if (it->second.params() != params_)
      throw std::invalid_argument("coset digit with mismatched parameters");
    if (it->first < -base_)
      throw std::invalid_argument(
          "coset digit below index -L is absorbed by the annihilator and "
          "must not be stored");
    if (it->second.is_zero())
      it = digits_.erase(it);
    else
      ++it;
  }
}

GFBlock CosetAddress::digit_at(int index) const {
  auto it = digits_.find(index);
  return it == digits_.end() ? GFBlock(params_) : it->second;
}

std::optional<int> CosetAddress::top_index() const {
  if (digits_.empty()) return std::nullopt;
  return digits_.rbegin()->first;
}

CosetAddress CosetAddress::operator*(const CosetAddress& other) const {
  if (params_ != other.params_)
    throw std::invalid_argument("coset product with mismatched parameters");
  if (base_ != other.base_)
    throw std::invalid_argument(
        "coset product requires equal bases; refine first");
  std::map<int, GFBlock> digits = digits_;
  for (const auto& [idx, b] : other.digits_) {
    auto it = digits.find(idx);
    if (it == digits.end()) {
      digits.emplace(idx, b);
    } else {
      GFBlock sum = it->second + b;
      if (sum.is_zero())
        digits.erase(it);
      else
        it->second = sum;
    }
  }
  return CosetAddress(params_, base_, std::move(digits));
}

CosetAddress CosetAddress::inverse() const {
  std::map<int, GFBlock> digits;
  for (const auto& [idx, b] : digits_) digits.emplace(idx, -b);
  return CosetAddress(params_, base_, std::move(digits));
}

CosetAddress CosetAddress::translated(int index, const GFBlock& e) const {
  if (index < -base_)
    throw std::invalid_argument("translation index below the coset base");
  std::map<int, GFBlock> digits = digits_;
  auto it = digits.find(index);
  GFBlock sum = (it == digits.end()) ? e : it->second + e;
  if (it != digits.end()) digits.erase(it);
  if (!sum.is_zero()) digits.emplace(index, sum);
  return CosetAddress(params_, base_, std::move(digits));
}

CosetAddress CosetAddress::dilated(int n) const {
  std::map<int, GFBlock> digits;
  for (const auto& [idx, b] : digits_) digits.emplace(idx + n, b);
  return CosetAddress(params_, base_ - n, std::move(digits));
}

std::vector<CosetAddress> CosetAddress::refined(int new_base) const {
  if (new_base < base_)
    throw std::invalid_argument("refinement base must be >= current base");
  std::vector<CosetAddress> out;
  std::size_t count = 1;
  for (int i = base_; i < new_base; ++i) count *= params_.q();
  out.reserve(count);
  const int extra = new_base - base_;
  for (std::size_t k = 0; k < count; ++k) {
    std::map<int, GFBlock> digits = digits_;
    std::size_t rest = k;
    // Appended indices run over [-new_base, -base-1]; the index closest to
    // the old base is the most significant.
    for (int j = 0; j < extra; ++j) {
      GFBlock b = GFBlock::from_index(params_, rest % params_.q());
      rest /= params_.q();
      if (!b.is_zero()) digits.emplace(-new_base + j, b);
    }
    out.emplace_back(params_, new_base, std::move(digits));
  }
  return out;
}

double CosetAddress::measure() const {
  return std::pow(static_cast<double>(params_.p),
                  -static_cast<double>(params_.s) * base_);
}

std::uint32_t CosetAddress::pairing_exponent(const FieldElement& x) const {
  if (x.params() != params_)
    throw std::invalid_argument("pairing with mismatched parameters");
  if (!x.blocks().empty() && x.blocks().begin()->first < -base_)
    throw std::domain_error(
        "coset-nonconstant pairing: element has a block below index -L; "
        "refine the address first");
  std::uint64_t e = 0;
  for (const auto& [idx, b] : digits_) e += b.dot(x.block_at(idx));
  return static_cast<std::uint32_t>(e % params_.p);
}

Complex CosetAddress::pairing(const FieldElement& x) const {
  return unit_root(params_.p, pairing_exponent(x));
}

}  // namespace lfwave
