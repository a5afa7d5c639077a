#include "lfwave/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lfwave {

std::size_t FieldParams::q() const {
  std::size_t r = 1;
  for (std::uint32_t i = 0; i < s; ++i) r *= p;
  return r;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void validate_params(const FieldParams& params) {
  if (!is_prime(params.p))
    throw std::invalid_argument("field characteristic p must be prime, got " +
                                std::to_string(params.p));
  if (params.s < 1) throw std::invalid_argument("block width s must be >= 1");
}

namespace {

void require_same_params(const FieldParams& a, const FieldParams& b) {
  if (a != b)
    throw std::invalid_argument("mismatched field parameters (p, s)");
}

}  // namespace

GFBlock::GFBlock(FieldParams params)
    : params_(params), digits_(params.s, 0) {
  validate_params(params_);
}

GFBlock::GFBlock(FieldParams params, std::vector<std::uint32_t> digits)
    : params_(params), digits_(std::move(digits)) {
  validate_params(params_);
  if (digits_.size() != params_.s)
    throw std::invalid_argument("block must have exactly s digits");
  for (auto d : digits_)
    if (d >= params_.p)
      throw std::invalid_argument("block digit out of range [0, p)");
}

GFBlock GFBlock::unit(FieldParams params) {
  GFBlock b(params);
  b.digits_[0] = 1;
  return b;
}

GFBlock GFBlock::from_index(FieldParams params, std::size_t idx) {
  GFBlock b(params);
  for (std::uint32_t i = params.s; i-- > 0;) {
    b.digits_[i] = static_cast<std::uint32_t>(idx % params.p);
    idx /= params.p;
  }
  if (idx != 0) throw std::invalid_argument("block index out of range");
  return b;
}

std::size_t GFBlock::to_index() const {
  std::size_t idx = 0;
  for (auto d : digits_) idx = idx * params_.p + d;
  return idx;
}

bool GFBlock::is_zero() const {
  for (auto d : digits_)
    if (d != 0) return false;
  return true;
}

GFBlock GFBlock::operator+(const GFBlock& other) const {
  require_same_params(params_, other.params_);
  GFBlock r(params_);
  for (std::uint32_t i = 0; i < params_.s; ++i)
    r.digits_[i] = (digits_[i] + other.digits_[i]) % params_.p;
  return r;
}

GFBlock GFBlock::operator-() const {
  GFBlock r(params_);
  for (std::uint32_t i = 0; i < params_.s; ++i)
    r.digits_[i] = (params_.p - digits_[i]) % params_.p;
  return r;
}

GFBlock GFBlock::operator-(const GFBlock& other) const {
  return *this + (-other);
}

GFBlock GFBlock::scaled(std::uint32_t k) const {
  GFBlock r(params_);
  for (std::uint32_t i = 0; i < params_.s; ++i)
    r.digits_[i] = (digits_[i] * (k % params_.p)) % params_.p;
  return r;
}

std::uint32_t GFBlock::dot(const GFBlock& other) const {
  require_same_params(params_, other.params_);
  std::uint64_t acc = 0;
  for (std::uint32_t i = 0; i < params_.s; ++i)
    acc += static_cast<std::uint64_t>(digits_[i]) * other.digits_[i];
  return static_cast<std::uint32_t>(acc % params_.p);
}

std::vector<GFBlock> all_blocks(FieldParams params) {
  validate_params(params);
  std::vector<GFBlock> out;
  out.reserve(params.q());
  for (std::size_t i = 0; i < params.q(); ++i)
    out.push_back(GFBlock::from_index(params, i));
  return out;
}

FieldElement::FieldElement(FieldParams params) : params_(params) {
  validate_params(params_);
}

FieldElement::FieldElement(FieldParams params, std::map<int, GFBlock> blocks)
    : params_(params), blocks_(std::move(blocks)) {
  validate_params(params_);
  for (auto it = blocks_.begin(); it != blocks_.end();) {
    require_same_params(params_, it->second.params());
    if (it->second.is_zero())
      it = blocks_.erase(it);
    else
      ++it;
  }
}

FieldElement FieldElement::basic(FieldParams params, int n) {
  return single(n, GFBlock::unit(params));
}

FieldElement FieldElement::single(int n, const GFBlock& b) {
  FieldElement e(b.params());
  if (!b.is_zero()) e.blocks_.emplace(n, b);
  return e;
}

GFBlock FieldElement::block_at(int index) const {
  auto it = blocks_.find(index);
  return it == blocks_.end() ? GFBlock(params_) : it->second;
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  require_same_params(params_, other.params_);
  FieldElement r(params_);
  r.blocks_ = blocks_;
  for (const auto& [idx, b] : other.blocks_) {
    auto it = r.blocks_.find(idx);
    if (it == r.blocks_.end()) {
      r.blocks_.emplace(idx, b);
    } else {
      GFBlock sum = it->second + b;
      if (sum.is_zero())
        r.blocks_.erase(it);
      else
        it->second = sum;
    }
  }
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r(params_);
  for (const auto& [idx, b] : blocks_) r.blocks_.emplace(idx, -b);
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  return *this + (-other);
}

FieldElement FieldElement::dilated(int n) const {
  FieldElement r(params_);
  for (const auto& [idx, b] : blocks_) r.blocks_.emplace(idx - n, b);
  return r;
}

std::optional<int> FieldElement::norm_exponent() const {
  if (blocks_.empty()) return std::nullopt;
  return blocks_.begin()->first;
}

double FieldElement::norm() const {
  auto n = norm_exponent();
  if (!n) return 0.0;
  return std::pow(static_cast<double>(params_.p),
                  -static_cast<double>(params_.s) * *n);
}

ShiftH0::ShiftH0(FieldElement value) : value_(std::move(value)) {
  if (!value_.blocks().empty() && value_.blocks().rbegin()->first >= 0)
    throw std::invalid_argument(
        "H_0 shift must be supported on negative indices only");
}

ShiftH0 ShiftH0::zero(FieldParams params) {
  return ShiftH0(FieldElement(params));
}

std::uint32_t ShiftH0::depth() const {
  auto n = value_.norm_exponent();
  if (!n) return 0;
  return static_cast<std::uint32_t>(-*n);
}

std::vector<ShiftH0> h0_enumerate(FieldParams params, int nu) {
  validate_params(params);
  if (nu < 0) throw std::invalid_argument("h0_enumerate: depth must be >= 0");
  std::size_t total = 1;
  for (int i = 0; i < nu; ++i) total *= params.q();
  std::vector<ShiftH0> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::map<int, GFBlock> blocks;
    std::size_t rest = k;
    // Block at index -1 is the most significant position.
    for (int j = nu; j >= 1; --j) {
      GFBlock b = GFBlock::from_index(params, rest % params.q());
      rest /= params.q();
      if (!b.is_zero()) blocks.emplace(-j, b);
    }
    out.emplace_back(FieldElement(params, std::move(blocks)));
  }
  return out;
}

}  // namespace lfwave
