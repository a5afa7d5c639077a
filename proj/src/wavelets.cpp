#include "lfwave/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lfwave {

SpectralStepFunction wavelet_mask(const Mask& mask, const GFBlock& l) {
  SpectralStepFunction out(mask.params(), static_cast<int>(mask.N()));
  for (const auto& [addr, v] : mask.values().values())
    out.set(addr.translated(0, l), v);
  return out;
}

SpectralStepFunction wavelet_hat(const SpectralStepFunction& mask_l,
                                 const SpectralStepFunction& scaling) {
  const int N = mask_l.base();
  const SpectralStepFunction dil = scaling.dilated(1).refined(N);
  SpectralStepFunction out(mask_l.params(), N);
  for (const auto& [addr, v] : dil.values()) {
    const Complex m = periodized_eval(mask_l, addr);
    if (m == Complex{0.0, 0.0}) continue;
    out.set(addr, m * v);
  }
  return out;
}

WaveletSystem WaveletSystem::build(const MRAFamily& family) {
  WaveletSystem sys(family);
  sys.labels_ = all_blocks(family.params());
  for (const GFBlock& l : sys.labels_) {
    sys.masks_.push_back(wavelet_mask(family.mask(), l));
    sys.dual_masks_.push_back(wavelet_mask(family.dual_mask(), l));
    sys.psis_.push_back(wavelet_hat(sys.masks_.back(), family.scaling()));
    sys.dual_psis_.push_back(
        wavelet_hat(sys.dual_masks_.back(), family.dual_scaling()));
  }
  return sys;
}

MaskPropertiesReport check_mask_properties(const WaveletSystem& system) {
  MaskPropertiesReport r;
  const MRAFamily& family = system.family();
  const FieldParams params = family.params();
  const int N = static_cast<int>(family.N());

  // Support of m_0 and its digit-0 translates.
  std::set<CosetAddress> base_support;
  for (const auto& [addr, v] : family.mask().values().values())
    base_support.insert(addr);
  std::vector<std::set<CosetAddress>> translates;
  for (const GFBlock& a : system.labels()) {
    std::set<CosetAddress> s;
    for (const CosetAddress& c : base_support) s.insert(c.translated(0, a));
    translates.push_back(std::move(s));
  }

  std::vector<std::set<CosetAddress>> supports;
  for (std::size_t i = 0; i < system.count(); ++i) {
    std::set<CosetAddress> s;
    for (const auto& [addr, v] : system.mask(i).values()) s.insert(addr);
    std::set<CosetAddress> sd;
    for (const auto& [addr, v] : system.dual_mask(i).values())
      sd.insert(addr);
    if (s != sd) {
      r.translated_support_exact = false;
      r.problems.push_back("mask and dual mask supports differ");
    }
    supports.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < system.count(); ++i) {
    if (supports[i].empty()) {
      r.translated_support_nonempty = false;
      r.problems.push_back("empty shifted-mask support");
    }
    for (std::size_t a = 0; a < system.count(); ++a) {
      const bool expect = (a == i);
      std::vector<CosetAddress> inter;
      std::set_intersection(supports[i].begin(), supports[i].end(),
                            translates[a].begin(), translates[a].end(),
                            std::back_inserter(inter));
      if (expect && inter.size() != supports[i].size()) {
        r.translated_support_exact = false;
        r.problems.push_back("m_l support is not E~ r_0^l");
      }
      if (!expect && !inter.empty()) {
        r.translated_support_exact = false;
        r.problems.push_back("m_l meets a foreign translate E~ r_0^a");
      }
    }
  }

  // m_l(E) = 0 for l != 0: evaluate the periodized shifted mask on the
  // scaling support.
  for (std::size_t i = 0; i < system.count(); ++i) {
    if (system.labels()[i].is_zero()) continue;
    for (const auto& [addr, v] : family.scaling().values()) {
      std::map<int, GFBlock> sliced;
      for (const auto& [idx, b] : addr.digits())
        if (idx <= 0) sliced.emplace(idx, b);
      CosetAddress base_addr(params, N, std::move(sliced));
      if (supports[i].count(base_addr)) {
        r.vanish_on_E = false;
        r.problems.push_back("shifted mask does not vanish on E");
      }
    }
  }

  for (std::size_t i = 0; i < system.count(); ++i)
    for (std::size_t j = i + 1; j < system.count(); ++j) {
      std::vector<CosetAddress> inter;
      std::set_intersection(supports[i].begin(), supports[i].end(),
                            supports[j].begin(), supports[j].end(),
                            std::back_inserter(inter));
      if (!inter.empty()) {
        r.pairwise_disjoint = false;
        r.problems.push_back("shifted mask supports overlap");
      }
    }
  return r;
}

MatrixConditionReport check_matrix_condition(const WaveletSystem& system) {
  MatrixConditionReport report;
  const MRAFamily& family = system.family();
  const FieldParams params = family.params();
  const int N = static_cast<int>(family.N());

  // All digit strings on [-N, -1]: the xi cosets of (K_0^+)^perp.
  const CosetAddress unit_coset(params, 0);
  const std::vector<CosetAddress> xis =
      unit_coset.refined(N);  // base N, digits on [-N, -1]
  const std::vector<GFBlock> blocks = all_blocks(params);

  for (std::size_t k = 0; k < system.count(); ++k) {
    for (std::size_t l = 0; l < system.count(); ++l) {
      const double expect = (k == l) ? 1.0 : 0.0;
      for (const CosetAddress& xi : xis) {
        Complex sum{0.0, 0.0};
        std::size_t nonzero = 0;
        for (const GFBlock& a0 : blocks) {
          const CosetAddress addr = xi.translated(0, a0);
          const Complex mk = periodized_eval(system.mask(k), addr);
          const Complex ml = periodized_eval(system.dual_mask(l), addr);
          const Complex term = mk * std::conj(ml);
          if (term != Complex{0.0, 0.0}) ++nonzero;
          sum += term;
        }
        report.max_deviation =
            std::max(report.max_deviation, std::abs(sum - expect));
        if (k == l && nonzero != 1) report.single_term = false;
        ++report.sums_checked;
      }
    }
  }
  return report;
}

namespace {

// sup |f| over the shell (K_n^+)^perp \ (K_{n-1}^+)^perp. A support coset
// meets the shell iff its top nonzero digit index is exactly n-1; when the
// shell lies below the base (n <= -L) it is contained in the identity
// coset, whose value then gives the sup.
double shell_sup(const SpectralStepFunction& f, int n) {
  const int L = f.base();
  double sup = 0.0;
  for (const auto& [addr, v] : f.values()) {
    const auto top = addr.top_index();
    const bool meets = (n - 1 >= -L) ? (top && *top == n - 1) : !top;
    if (meets) sup = std::max(sup, std::abs(v));
  }
  return sup;
}

}  // namespace

DecayReport check_decay_hypotheses(const WaveletSystem& system) {
  DecayReport r;
  r.epsilon = 1.0;
  const MRAFamily& family = system.family();
  const FieldParams params = family.params();
  const int N = static_cast<int>(family.N());
  const int top = static_cast<int>(family.H()) - 2 * N + 2;

  auto scan = [&](const SpectralStepFunction& f,
                  std::vector<ShellBound>& out) {
    for (int n = -N; n <= top; ++n) {
      ShellBound b;
      b.n = n;
      b.sup_abs = shell_sup(f, n);
      out.push_back(b);
      const double needed =
          b.sup_abs * std::pow(1.0 + std::pow(static_cast<double>(params.p),
                                              static_cast<double>(params.s) *
                                                  n),
                               0.5 + r.epsilon);
      r.C = std::max(r.C, needed);
    }
  };
  scan(family.scaling(), r.scaling_shells);
  scan(family.dual_scaling(), r.dual_scaling_shells);

  // Annihilator bounds for the wavelets l != 0: sup over (K_n)^perp of
  // |psi| must be <= C p^{ns}. Supports vanish inside (K_{-N})^perp, so
  // only finitely many n constrain C.
  for (std::size_t i = 0; i < system.count(); ++i) {
    if (system.labels()[i].is_zero()) continue;
    for (const SpectralStepFunction* f :
         {&system.psi(i), &system.dual_psi(i)}) {
      for (int n = -N; n <= top; ++n) {
        double sup = 0.0;
        for (const auto& [addr, v] : f->values()) {
          const auto t = addr.top_index();
          if (!t || *t <= n - 1) sup = std::max(sup, std::abs(v));
        }
        if (sup > 0.0) {
          const double needed =
              sup * std::pow(static_cast<double>(params.p),
                             -static_cast<double>(params.s) * n);
          r.psi_annihilator_C = std::max(r.psi_annihilator_C, needed);
        }
      }
    }
  }
  r.C = std::max(r.C, r.psi_annihilator_C);
  r.witnesses_found = std::isfinite(r.C);
  return r;
}

}  // namespace lfwave
