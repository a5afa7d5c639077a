#pragma once

#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "lfwave/mra.hpp"
#include "lfwave/transform.hpp"
#include "lfwave/verify.hpp"
#include "lfwave/wavelets.hpp"

namespace lfwave::testing {

inline FieldParams dyadic() { return {2, 1}; }

inline CosetAddress addr(FieldParams params, int base,
                         std::map<int, std::uint32_t> digits) {
  std::map<int, GFBlock> blocks;
  for (auto [idx, d] : digits)
    blocks.emplace(idx, GFBlock(params, std::vector<std::uint32_t>{d}));
  return CosetAddress(params, base, std::move(blocks));
}

/// The five-node chain 0 -> 0 -> 1 -> 1 -> 0 (p = 2, s = 1, N = 2), the
/// one tree reachable from the basic tree by a single admissible step.
inline ValidTree chain_tree() {
  return ValidTree::basic(dyadic(), 2).with_basic_step(3, 4);
}

/// Fixture mask on the chain tree's elementary set with corridor
/// [0.5, 1.6]: values 1, 0.8, 1.2, 0.9.
inline Mask chain_mask() {
  const FieldParams params = dyadic();
  const ElementarySet set = ElementarySet::from_tree(chain_tree());
  std::map<CosetAddress, Complex> assignment;
  assignment.emplace(addr(params, 2, {}), Complex{1.0, 0.0});
  assignment.emplace(addr(params, 2, {{-2, 1}}), Complex{0.8, 0.0});
  assignment.emplace(addr(params, 2, {{-2, 1}, {-1, 1}}), Complex{1.2, 0.0});
  assignment.emplace(addr(params, 2, {{-1, 1}, {0, 1}}), Complex{0.9, 0.0});
  return Mask::build(set, assignment, 0.5, 1.6);
}

inline MRAFamily chain_family() {
  return MRAFamily::build(chain_tree(), chain_mask());
}

/// Unit mask on the basic tree: the Haar family.
inline MRAFamily haar_family(FieldParams params = dyadic(),
                             std::uint32_t N = 2) {
  const ValidTree tree = ValidTree::basic(params, N);
  const ElementarySet set = ElementarySet::from_tree(tree);
  std::map<CosetAddress, Complex> assignment;
  for (const CosetAddress& c : set.cosets())
    assignment.emplace(c, Complex{1.0, 0.0});
  return MRAFamily::build(tree, Mask::build(set, assignment, 1.0, 1.0));
}

/// Random valid tree: the basic tree evolved by `steps` admissible basic
/// steps chosen by the seeded engine (resets to basic when stuck).
inline ValidTree random_tree(FieldParams params, std::uint32_t N,
                             int steps, std::mt19937_64& rng) {
  ValidTree t = ValidTree::basic(params, N);
  for (int i = 0; i < steps; ++i) {
    auto moves = t.admissible_moves();
    if (moves.empty()) {
      t = ValidTree::basic(params, N);
      continue;
    }
    const auto [node, target] = moves[rng() % moves.size()];
    t = t.with_basic_step(node, target);
  }
  return t;
}

/// Independent oracle for the refinement coefficients: solve the full
/// p^{s(N+1)} x p^{s(N+1)} character system by Gaussian elimination
/// instead of the character-sum inversion the library uses.
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> m,
                                        std::vector<Complex> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    if (std::abs(m[pivot][col]) < 1e-14)
      throw std::runtime_error("singular character system");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const Complex f = m[row][col] / m[col][col];
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline std::map<ShiftH0, Complex> coefficients_by_linear_system(
    const Mask& mask) {
  const FieldParams params = mask.params();
  const int N = static_cast<int>(mask.N());
  const auto shifts = h0_enumerate(params, N + 1);
  const auto cosets = CosetAddress(params, -1).refined(N);
  const double scale = std::pow(static_cast<double>(params.p),
                                -static_cast<double>(params.s));
  std::vector<std::vector<Complex>> m(cosets.size());
  std::vector<Complex> rhs(cosets.size());
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    const CosetAddress shifted = cosets[i].dilated(-1);
    for (const ShiftH0& h : shifts)
      m[i].push_back(scale * std::conj(shifted.pairing(h.value())));
    rhs[i] = mask.values().at(cosets[i]);
  }
  const std::vector<Complex> beta = solve_dense(std::move(m), std::move(rhs));
  std::map<ShiftH0, Complex> out;
  for (std::size_t j = 0; j < shifts.size(); ++j)
    if (std::abs(beta[j]) > 1e-13) out.emplace(shifts[j], beta[j]);
  return out;
}

}  // namespace lfwave::testing
