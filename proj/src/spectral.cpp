#include "lfwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lfwave {

namespace {

// Kahan-compensated accumulator for complex sums.
struct Kahan {
  Complex sum{0.0, 0.0};
  Complex c{0.0, 0.0};
  void add(Complex v) {
    Complex y = v - c;
    Complex t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

SpectralStepFunction::SpectralStepFunction(FieldParams params, int base)
    : params_(params), base_(base) {
  validate_params(params_);
}

SpectralStepFunction::SpectralStepFunction(
    FieldParams params, int base, std::map<CosetAddress, Complex> values)
    : params_(params), base_(base), values_(std::move(values)) {
  validate_params(params_);
  for (auto it = values_.begin(); it != values_.end();) {
    if (it->first.params() != params_ || it->first.base() != base_)
      throw std::invalid_argument(
          "spectral step function: address with foreign base or parameters");
    if (it->second == Complex{0.0, 0.0})
      it = values_.erase(it);
    else
      ++it;
  }
}

Complex SpectralStepFunction::at(const CosetAddress& addr) const {
  if (addr.base() != base_)
    throw std::invalid_argument("address base does not match function base");
  auto it = values_.find(addr);
  return it == values_.end() ? Complex{0.0, 0.0} : it->second;
}

void SpectralStepFunction::set(const CosetAddress& addr, Complex v) {
  if (addr.params() != params_ || addr.base() != base_)
    throw std::invalid_argument("address base does not match function base");
  if (v == Complex{0.0, 0.0})
    values_.erase(addr);
  else
    values_.insert_or_assign(addr, v);
}

SpectralStepFunction SpectralStepFunction::refined(int new_base) const {
  if (new_base == base_) return *this;
  if (new_base < base_)
    throw std::invalid_argument("refinement base must be >= current base");
  SpectralStepFunction out(params_, new_base);
  for (const auto& [addr, v] : values_)
    for (const CosetAddress& sub : addr.refined(new_base))
      out.values_.emplace(sub, v);
  return out;
}

SpectralStepFunction SpectralStepFunction::dilated(int n) const {
  SpectralStepFunction out(params_, base_ - n);
  for (const auto& [addr, v] : values_) out.values_.emplace(addr.dilated(n), v);
  return out;
}

SpectralStepFunction SpectralStepFunction::scaled(Complex c) const {
  SpectralStepFunction out(params_, base_);
  if (c == Complex{0.0, 0.0}) return out;
  for (const auto& [addr, v] : values_) out.values_.emplace(addr, c * v);
  return out;
}

SpectralStepFunction SpectralStepFunction::conjugated() const {
  SpectralStepFunction out(params_, base_);
  for (const auto& [addr, v] : values_)
    out.values_.emplace(addr, std::conj(v));
  return out;
}

SpectralStepFunction SpectralStepFunction::abs_squared() const {
  SpectralStepFunction out(params_, base_);
  for (const auto& [addr, v] : values_)
    out.values_.emplace(addr, Complex{std::norm(v), 0.0});
  return out;
}

SpectralStepFunction SpectralStepFunction::modulated(
    const FieldElement& h) const {
  int needed = base_;
  if (!h.blocks().empty())
    needed = std::max(needed, -h.blocks().begin()->first);
  SpectralStepFunction f = refined(needed);
  SpectralStepFunction out(params_, f.base_);
  for (const auto& [addr, v] : f.values_)
    out.values_.emplace(addr, v * std::conj(addr.pairing(h)));
  return out;
}

double SpectralStepFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [addr, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

double SpectralStepFunction::min_abs_on_support() const {
  double m = values_.empty() ? 0.0 : std::abs(values_.begin()->second);
  for (const auto& [addr, v] : values_) m = std::min(m, std::abs(v));
  return m;
}

std::optional<int> SpectralStepFunction::max_digit_index() const {
  std::optional<int> m;
  for (const auto& [addr, v] : values_) {
    auto t = addr.top_index();
    if (t && (!m || *t > *m)) m = t;
  }
  return m;
}

Complex spectral_integral(const SpectralStepFunction& f) {
  const double measure = std::pow(static_cast<double>(f.params().p),
                                  -static_cast<double>(f.params().s) *
                                      f.base());
  Kahan acc;
  for (const auto& [addr, v] : f.values()) acc.add(v);
  return acc.sum * measure;
}

Complex spectral_inner_product(const SpectralStepFunction& f,
                               const SpectralStepFunction& g) {
  if (f.params() != g.params())
    throw std::invalid_argument("inner product with mismatched parameters");
  const int base = std::max(f.base(), g.base());
  const SpectralStepFunction fr = f.refined(base);
  const SpectralStepFunction gr = g.refined(base);
  const double measure = std::pow(static_cast<double>(f.params().p),
                                  -static_cast<double>(f.params().s) * base);
  Kahan acc;
  const auto& small =
      fr.values().size() <= gr.values().size() ? fr : gr;
  const auto& large =
      fr.values().size() <= gr.values().size() ? gr : fr;
  for (const auto& [addr, v] : small.values()) {
    Complex w = large.at(addr);
    if (w == Complex{0.0, 0.0}) continue;
    acc.add(&small == &fr ? v * std::conj(w) : w * std::conj(v));
  }
  return acc.sum * measure;
}

double spectral_norm_sq(const SpectralStepFunction& f) {
  const double measure = std::pow(static_cast<double>(f.params().p),
                                  -static_cast<double>(f.params().s) *
                                      f.base());
  Kahan acc;
  for (const auto& [addr, v] : f.values()) acc.add(Complex{std::norm(v), 0.0});
  return acc.sum.real() * measure;
}

SpectralStepFunction spectral_product(const SpectralStepFunction& f,
                                      const SpectralStepFunction& g) {
  if (f.params() != g.params())
    throw std::invalid_argument("product with mismatched parameters");
  const int base = std::max(f.base(), g.base());
  const SpectralStepFunction fr = f.refined(base);
  const SpectralStepFunction gr = g.refined(base);
  SpectralStepFunction out(f.params(), base);
  for (const auto& [addr, v] : fr.values()) {
    Complex w = gr.at(addr);
    if (w == Complex{0.0, 0.0}) continue;
    out.set(addr, v * w);
  }
  return out;
}

double spectral_max_abs_diff(const SpectralStepFunction& f,
                             const SpectralStepFunction& g) {
  const int base = std::max(f.base(), g.base());
  const SpectralStepFunction fr = f.refined(base);
  const SpectralStepFunction gr = g.refined(base);
  double m = 0.0;
  for (const auto& [addr, v] : fr.values())
    m = std::max(m, std::abs(v - gr.at(addr)));
  for (const auto& [addr, v] : gr.values())
    m = std::max(m, std::abs(fr.at(addr) - v));
  return m;
}

Complex periodized_eval(const SpectralStepFunction& f,
                        const CosetAddress& addr) {
  const int N = f.base();
  if (auto top = f.max_digit_index(); top && *top > 0)
    throw std::invalid_argument(
        "periodized_eval: function support must carry digits on [-N, 0]");
  if (addr.params() != f.params())
    throw std::invalid_argument("periodized_eval: mismatched parameters");
  std::map<int, GFBlock> digits;
  for (const auto& [idx, b] : addr.digits()) {
    if (idx < -N)
      throw std::invalid_argument(
          "periodized_eval: address has digits below base -N");
    if (idx <= 0) digits.emplace(idx, b);  // indices >= 1 drop by periodicity
  }
  return f.at(CosetAddress(f.params(), N, std::move(digits)));
}

ElementarySet::ElementarySet(FieldParams params, std::uint32_t N,
                             std::uint32_t M,
                             std::vector<CosetAddress> cosets)
    : params_(params), N_(N), M_(M), cosets_(std::move(cosets)) {
  validate_params(params_);
  for (const CosetAddress& c : cosets_)
    if (c.params() != params_ || c.base() != static_cast<int>(N_))
      throw std::invalid_argument(
          "elementary set: coset with foreign base or parameters");
}

ElementarySet ElementarySet::from_tree(const ValidTree& tree) {
  const FieldParams params = tree.params();
  const int N = static_cast<int>(tree.window_length());
  std::vector<CosetAddress> cosets;
  bool extended = false;
  for (const TreeNode& v : tree.nodes()) {
    if (tree.depth(v.id) < N - 1) continue;
    // (N+1)-window (beta_0 ... beta_N), shallowest first; digit at index
    // -N+j is beta_{N-j}.
    std::vector<GFBlock> w = tree.window_ending_at(v.id, N + 1);
    std::map<int, GFBlock> digits;
    for (int j = 0; j <= N; ++j) {
      const GFBlock& b = w[N - j];
      if (!b.is_zero()) digits.emplace(-N + j, b);
    }
    if (!w[0].is_zero()) extended = true;
    cosets.emplace_back(params, N, std::move(digits));
  }
  return ElementarySet(params, tree.window_length(), extended ? 1 : 0,
                       std::move(cosets));
}

SpectralStepFunction ElementarySet::indicator() const {
  SpectralStepFunction f(params_, static_cast<int>(N_));
  for (const CosetAddress& c : cosets_) f.set(c, Complex{1.0, 0.0});
  return f;
}

ElementaryValidityReport validate_elementary(
    const std::vector<CosetAddress>& cosets, FieldParams params,
    std::uint32_t N, std::uint32_t M) {
  ElementaryValidityReport r;
  std::size_t expected = 1;
  for (std::uint32_t i = 0; i < N; ++i) expected *= params.q();

  r.count_ok = (cosets.size() == expected);
  if (!r.count_ok)
    r.problems.push_back("expected " + std::to_string(expected) +
                         " cosets, got " + std::to_string(cosets.size()));

  r.bases_ok = true;
  for (const CosetAddress& c : cosets)
    if (c.params() != params || c.base() != static_cast<int>(N)) {
      r.bases_ok = false;
      r.problems.push_back("coset with base != N");
      break;
    }
  if (!r.bases_ok) return r;

  r.digits_in_range = true;
  int max_top = -static_cast<int>(N) - 1;
  for (const CosetAddress& c : cosets) {
    auto t = c.top_index();
    if (t) max_top = std::max(max_top, *t);
    if (t && *t > static_cast<int>(M) - 1) {
      r.digits_in_range = false;
      r.problems.push_back("coset carries a digit above index M-1");
    }
  }

  std::set<CosetAddress> distinct(cosets.begin(), cosets.end());
  r.disjoint = (distinct.size() == cosets.size());
  if (!r.disjoint) r.problems.push_back("repeated coset");

  // xi parts (digits on [-N, -1]) must be pairwise distinct and exhaust
  // (K_0^+)^perp; the member with trivial xi must be the annihilator
  // itself.
  std::set<CosetAddress> xis;
  r.xi0_trivial = false;
  for (const CosetAddress& c : cosets) {
    std::map<int, GFBlock> xi_digits;
    for (const auto& [idx, b] : c.digits())
      if (idx < 0) xi_digits.emplace(idx, b);
    CosetAddress xi(params, static_cast<int>(N), std::move(xi_digits));
    xis.insert(xi);
    if (xi.is_identity() && c.is_identity()) r.xi0_trivial = true;
  }
  r.xi_exhaustive = (xis.size() == expected && cosets.size() == expected);
  if (!r.xi_exhaustive)
    r.problems.push_back("xi parts do not exhaust (K_0^+)^perp");
  if (!r.xi0_trivial)
    r.problems.push_back(
        "the trivial-xi member is not the annihilator itself");

  // Shell condition: for every l = 0..M+N-1 some member lies in
  // (K_{-N+l+1}^+)^perp \ (K_{-N+l}^+)^perp, i.e. has top digit -N+l.
  std::set<int> tops;
  for (const CosetAddress& c : cosets)
    if (auto t = c.top_index()) tops.insert(*t);
  r.shells_hit = true;
  for (int l = 0; l < static_cast<int>(M + N); ++l) {
    if (!tops.count(-static_cast<int>(N) + l)) {
      r.shells_hit = false;
      r.missing_shells.push_back(l);
    }
  }
  if (!r.shells_hit) r.problems.push_back("empty annihilator shell");

  if (r.count_ok && r.disjoint && r.xi_exhaustive && r.xi0_trivial) {
    std::uint32_t m_star =
        max_top < -static_cast<int>(N)
            ? 0
            : static_cast<std::uint32_t>(
                  std::max(0, max_top + 1));
    bool all_hit = true;
    for (int l = 0; l < static_cast<int>(m_star + N); ++l)
      if (!tops.count(-static_cast<int>(N) + l)) all_hit = false;
    if (all_hit) r.maximal_M = m_star;
  }
  return r;
}

}  // namespace lfwave
