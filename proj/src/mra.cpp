#include "lfwave/mra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace lfwave {

namespace {

CosetAddress xi_part(const CosetAddress& c) {
  std::map<int, GFBlock> digits;
  for (const auto& [idx, b] : c.digits())
    if (idx < 0) digits.emplace(idx, b);
  return CosetAddress(c.params(), c.base(), std::move(digits));
}

}  // namespace

Mask Mask::build(const ElementarySet& set,
                 const std::map<CosetAddress, Complex>& assignment, double A,
                 double B) {
  if (!(A > 0.0) || !(B >= A))
    throw std::invalid_argument("mask bounds must satisfy 0 < A <= B");
  const FieldParams params = set.params();
  const int N = static_cast<int>(set.N());

  std::set<CosetAddress> support(set.cosets().begin(), set.cosets().end());
  if (support.size() != set.cosets().size())
    throw std::invalid_argument("mask support set has repeated cosets");

  // Unique extension: one support coset per xi string.
  std::set<CosetAddress> xis;
  for (const CosetAddress& c : support) xis.insert(xi_part(c));
  if (xis.size() != support.size())
    throw std::invalid_argument(
        "mask support has two extensions of the same xi string");

  SpectralStepFunction values(params, N);
  const CosetAddress zero_addr(params, N);
  for (const CosetAddress& c : support) {
    auto it = assignment.find(c);
    if (it == assignment.end())
      throw std::invalid_argument("mask assignment misses a support coset");
    const Complex v = it->second;
    const double mod2 = std::norm(v);
    if (c == zero_addr) {
      if (v != Complex{1.0, 0.0})
        throw std::invalid_argument(
            "mask value at the all-zero address must be exactly 1");
    }
    if (mod2 < A || mod2 > B)
      throw std::invalid_argument(
          "mask value with |m|^2 outside [A, B] on a support coset");
    values.set(c, v);
  }
  for (const auto& [addr, v] : assignment)
    if (!support.count(addr))
      throw std::invalid_argument(
          "mask assignment contains a coset outside the support set");
  if (!support.count(zero_addr))
    throw std::invalid_argument(
        "mask support must contain the all-zero address");
  return Mask(std::move(values), A, B);
}

Complex Mask::periodized(const CosetAddress& addr) const {
  return periodized_eval(values_, addr);
}

Mask Mask::dual() const {
  SpectralStepFunction dual(params(), values_.base());
  for (const auto& [addr, v] : values_.values())
    dual.set(addr, 1.0 / std::conj(v));
  return Mask(std::move(dual), 1.0 / B_, 1.0 / A_);
}

std::map<ShiftH0, Complex> Mask::coefficients() const {
  const FieldParams p = params();
  const int N = static_cast<int>(this->N());
  const double scale = std::pow(static_cast<double>(p.p),
                                -static_cast<double>(p.s) * N);
  std::map<ShiftH0, Complex> beta;
  for (const ShiftH0& h : h0_enumerate(p, N + 1)) {
    Complex acc{0.0, 0.0};
    for (const auto& [addr, v] : values_.values())
      acc += v * addr.dilated(-1).pairing(h.value());
    Complex b = acc * scale;
    if (b != Complex{0.0, 0.0}) beta.emplace(h, b);
  }
  return beta;
}

Mask default_mask(const ElementarySet& set, double A, double B,
                  std::uint64_t seed) {
  if (!(A > 0.0) || !(A <= 1.0) || !(B >= 1.0))
    throw std::invalid_argument(
        "default mask needs 0 < A <= 1 <= B so the unit value fits");
  std::mt19937_64 rng(seed);
  const double lo = std::sqrt(A);
  const double hi = std::sqrt(B);
  const CosetAddress zero_addr(set.params(), static_cast<int>(set.N()));
  std::map<CosetAddress, Complex> assignment;
  for (const CosetAddress& c : set.cosets()) {
    if (c == zero_addr) {
      assignment.emplace(c, Complex{1.0, 0.0});
      continue;
    }
    // Portable uniform draw in [lo, hi): top 53 bits of the engine output.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    assignment.emplace(c, Complex{lo + (hi - lo) * u, 0.0});
  }
  return Mask::build(set, assignment, A, B);
}

SpectralStepFunction mask_from_coefficients(
    FieldParams params, std::uint32_t N,
    const std::map<ShiftH0, Complex>& beta) {
  const double scale = std::pow(static_cast<double>(params.p),
                                -static_cast<double>(params.s));
  SpectralStepFunction out(params, static_cast<int>(N));
  const CosetAddress coarse(params, -1);  // (K_1^+)^perp
  for (const CosetAddress& zeta : coarse.refined(static_cast<int>(N))) {
    Complex acc{0.0, 0.0};
    const CosetAddress shifted = zeta.dilated(-1);
    for (const auto& [h, b] : beta)
      acc += b * std::conj(shifted.pairing(h.value()));
    out.set(zeta, acc * scale);
  }
  return out;
}

namespace {

// Digit slice [lo, lo+N] of a digit string placed at [-N, 0]; positions
// outside the stored range read as zero.
CosetAddress slice_address(const FieldParams& params, int N,
                           const std::map<int, GFBlock>& digits, int lo) {
  std::map<int, GFBlock> out;
  for (int j = 0; j <= N; ++j) {
    auto it = digits.find(lo + j);
    if (it != digits.end() && !it->second.is_zero())
      out.emplace(-N + j, it->second);
  }
  return CosetAddress(params, N, std::move(out));
}

void scaling_dfs(const Mask& mask, int N, int top_index, int factors,
                 std::map<int, GFBlock>& digits, int next_index,
                 Complex partial, SpectralStepFunction& out) {
  if (partial == Complex{0.0, 0.0}) return;
  if (next_index > top_index) {
    // Remaining factors: slices that stick out above the digit range.
    Complex value = partial;
    for (int n = top_index + 1; n < factors; ++n) {
      value *= mask.periodized(
          slice_address(mask.params(), N, digits, n - N));
      if (value == Complex{0.0, 0.0}) return;
    }
    out.set(CosetAddress(mask.params(), N, digits), value);
    return;
  }
  for (const GFBlock& b : all_blocks(mask.params())) {
    if (!b.is_zero()) digits.emplace(next_index, b);
    Complex next = partial;
    if (next_index >= 0)
      next *= mask.periodized(
          slice_address(mask.params(), N, digits, next_index - N));
    scaling_dfs(mask, N, top_index, factors, digits, next_index + 1, next,
                out);
    digits.erase(next_index);
  }
}

}  // namespace

SpectralStepFunction scaling_hat(const Mask& mask, std::uint32_t H,
                                 std::uint32_t extra_factors) {
  const int N = static_cast<int>(mask.N());
  if (static_cast<int>(H) < 2 * N - 1)
    throw std::invalid_argument("scaling_hat: height must be >= 2N-1");
  const int top = static_cast<int>(H) - 2 * N;  // highest digit index
  const int factors = static_cast<int>(H) - N + 2 +
                      static_cast<int>(extra_factors);  // offsets 0..H-N+1
  SpectralStepFunction out(mask.params(), N);
  std::map<int, GFBlock> digits;
  scaling_dfs(mask, N, top, factors, digits, -N, Complex{1.0, 0.0}, out);
  return out;
}

SpectralStepFunction scaling_hat_paths(const ValidTree& tree,
                                       const Mask& mask) {
  const FieldParams params = tree.params();
  const int N = static_cast<int>(tree.window_length());
  if (static_cast<int>(mask.N()) != N || mask.params() != params)
    throw std::invalid_argument("mask was not built from this tree");
  const int H = static_cast<int>(tree.height());
  const int span = H - N + 1;  // digits [-N, H-2N]
  SpectralStepFunction out(params, N);
  for (const TreeNode& v : tree.nodes()) {
    if (tree.depth(v.id) < N - 1) continue;
    // Labels of v and its H-N ancestors, padded with zeros above the root;
    // digit at -N+i is the label i levels above v.
    std::vector<GFBlock> up(span, GFBlock(params));
    int u = v.id;
    for (int i = 0; i < span && u != -1; ++i) {
      up[i] = tree.node(u).label;
      u = tree.node(u).parent;
    }
    std::map<int, GFBlock> digits;
    for (int i = 0; i < span; ++i)
      if (!up[i].is_zero()) digits.emplace(-N + i, up[i]);
    // Product of mask values over the (N+1)-windows ending at v and at
    // each ancestor; windows that end above the root are all-zero and
    // contribute the unit mask value.
    Complex value{1.0, 0.0};
    u = v.id;
    while (u != -1 && value != Complex{0.0, 0.0}) {
      std::vector<GFBlock> w = tree.window_ending_at(u, N + 1);
      std::map<int, GFBlock> wd;
      for (int j = 0; j <= N; ++j)
        if (!w[N - j].is_zero()) wd.emplace(-N + j, w[N - j]);
      value *= mask.values().at(CosetAddress(params, N, std::move(wd)));
      u = tree.node(u).parent;
    }
    if (value != Complex{0.0, 0.0})
      out.set(CosetAddress(params, N, std::move(digits)), value);
  }
  return out;
}

MRAFamily MRAFamily::build(const ValidTree& tree, const Mask& mask) {
  auto report = validate_tree(tree);
  if (!report.valid())
    throw std::invalid_argument("MRA family requires an N-valid tree");
  const ElementarySet set = ElementarySet::from_tree(tree);
  std::set<CosetAddress> expected(set.cosets().begin(), set.cosets().end());
  std::set<CosetAddress> actual;
  for (const auto& [addr, v] : mask.values().values()) actual.insert(addr);
  if (expected != actual)
    throw std::invalid_argument(
        "mask support does not match the tree's elementary set");
  return build_with_height(mask, tree.height());
}

MRAFamily MRAFamily::build_with_height(const Mask& mask, std::uint32_t H) {
  Mask dual = mask.dual();
  SpectralStepFunction phi = scaling_hat(mask, H);
  SpectralStepFunction dual_phi = scaling_hat(dual, H);
  return MRAFamily(mask, std::move(dual), std::move(phi),
                   std::move(dual_phi), H);
}

ElementarySet MRAFamily::support_set() const {
  std::vector<CosetAddress> cosets;
  for (const auto& [addr, v] : scaling_.values()) cosets.push_back(addr);
  const std::uint32_t M =
      static_cast<std::uint32_t>(std::max(0, static_cast<int>(H_) -
                                                 2 * static_cast<int>(N()) +
                                                 1));
  return ElementarySet(params(), N(), M, std::move(cosets));
}

RefinementReport check_refinement(const MRAFamily& family) {
  RefinementReport report;
  const int N = static_cast<int>(family.N());
  auto run = [&](const Mask& m, const SpectralStepFunction& phi) {
    const SpectralStepFunction dil = phi.dilated(1).refined(N);
    std::set<CosetAddress> domain;
    for (const auto& [addr, v] : phi.values()) domain.insert(addr);
    for (const auto& [addr, v] : dil.values()) domain.insert(addr);
    double dev = 0.0;
    for (const CosetAddress& addr : domain) {
      const Complex lhs = phi.at(addr);
      const Complex rhs = m.periodized(addr) * dil.at(addr);
      dev = std::max(dev, std::abs(lhs - rhs));
    }
    report.cosets_checked += domain.size();
    return dev;
  };
  report.max_deviation = run(family.mask(), family.scaling());
  report.max_dual_deviation = run(family.dual_mask(), family.dual_scaling());
  return report;
}

std::pair<double, double> riesz_bounds(const MRAFamily& family) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& [addr, v] : family.scaling().values()) {
    const double m2 = std::norm(v);
    if (first) {
      lo = hi = m2;
      first = false;
    } else {
      lo = std::min(lo, m2);
      hi = std::max(hi, m2);
    }
  }
  return {lo, hi};
}

}  // namespace lfwave
