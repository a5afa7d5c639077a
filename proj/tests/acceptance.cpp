// Acceptance suite: runs every shipped acceptance criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "lfwave/transform.hpp"
#include "lfwave/verify.hpp"

using namespace lfwave;
using namespace lfwave::testing;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& witness) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << " ("
            << name << "): " << witness << std::endl;
  if (!pass) ++failures;
}

struct Fixture {
  std::string name;
  ValidTree tree;
  MRAFamily family;
};

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"haar-2-1-2", ValidTree::basic({2, 1}, 2), haar_family()});
  out.push_back({"chain-2-1-2", chain_tree(), chain_family()});
  std::mt19937_64 rng(20240);
  const std::vector<std::pair<FieldParams, std::uint32_t>> params{
      {{2, 1}, 2}, {{2, 1}, 3}, {{3, 1}, 2}, {{2, 2}, 2}};
  for (const auto& [p, N] : params) {
    const ValidTree t = random_tree(p, N, 3, rng);
    const Mask m = default_mask(ElementarySet::from_tree(t), 0.5, 1.6, rng());
    std::ostringstream name;
    name << "random-" << p.p << "-" << p.s << "-" << N;
    out.push_back({name.str(), t, MRAFamily::build(t, m)});
  }
  return out;
}

void criterion_1() {
  const ValidTree t = ValidTree::basic({2, 2}, 2);
  const auto r = validate_tree(t);
  std::set<std::vector<GFBlock>> words;
  for (const auto& [w, id] : t.windows(2))
    if (t.depth(id) >= 1) words.insert(w);
  std::size_t window_count = 0;
  for (const TreeNode& v : t.nodes())
    if (t.depth(v.id) >= 1) ++window_count;
  const bool pass = t.size() == 17 && t.height() == 3 && r.valid() &&
                    words.size() == 16 && window_count == 16;
  std::ostringstream w;
  w << t.size() << " nodes, height " << t.height() << ", " << words.size()
    << " distinct 2-windows out of " << window_count;
  report(1, "smallest 2-valid tree over GF(4)", pass, w.str());
}

void criterion_2() {
  std::mt19937_64 rng(4711);
  const std::vector<std::pair<FieldParams, std::uint32_t>> params{
      {{2, 1}, 2}, {{2, 1}, 3}, {{3, 1}, 2}, {{2, 2}, 2}};
  int applied = 0;
  bool pass = true;
  for (const auto& [p, N] : params) {
    ValidTree t = ValidTree::basic(p, N);
    const auto reference = window_multiset(t);
    int goal = 250;
    while (goal > 0) {
      const auto moves = t.admissible_moves();
      if (moves.empty()) {
        t = ValidTree::basic(p, N);
        continue;
      }
      const auto [node, target] = moves[rng() % moves.size()];
      t = t.with_basic_step(node, target);
      pass = pass && validate_tree(t).valid() &&
             window_multiset(t) == reference;
      ++applied;
      --goal;
    }
  }
  std::ostringstream w;
  w << applied << " random admissible steps, all valid with the window "
    << "multiset preserved";
  report(2, "basic-step closure", pass, w.str());
}

void criterion_3() {
  FieldParams p21{2, 1};
  const ElementarySet tilde = ElementarySet::from_tree(chain_tree());
  const std::set<CosetAddress> expected{
      addr(p21, 2, {}),
      addr(p21, 2, {{-2, 1}}),
      addr(p21, 2, {{-2, 1}, {-1, 1}}),
      addr(p21, 2, {{-1, 1}, {0, 1}}),
  };
  const bool sets_equal =
      std::set<CosetAddress>(tilde.cosets().begin(), tilde.cosets().end()) ==
      expected;
  const ElementarySet support = chain_family().support_set();
  const auto r = validate_elementary(support, 2, 1);
  const bool pass = sets_equal && tilde.M() == 1 && r.valid() &&
                    r.maximal_M == 1;
  std::ostringstream w;
  w << "mask support matches the frozen four cosets: " << sets_equal
    << ", scaling support is (2,1)-elementary: " << r.valid();
  report(3, "chain-tree elementary sets", pass, w.str());
}

void criterion_4() {
  std::mt19937_64 rng(2024);
  int fixtures = 0;
  double worst_direct = 0.0, worst_extra = 0.0;
  for (FieldParams params : {FieldParams{2, 1}, {3, 1}, {2, 2}}) {
    for (std::uint32_t N : {1u, 2u, 3u}) {
      if (params.q() >= 4 && N >= 3) continue;
      for (int i = 0; i < 7; ++i) {
        const ValidTree t = random_tree(params, N, 1 + (i % 5), rng);
        const Mask m =
            default_mask(ElementarySet::from_tree(t), 0.5, 1.6, rng());
        worst_direct = std::max(
            worst_direct, spectral_max_abs_diff(scaling_hat(m, t.height()),
                                                scaling_hat_paths(t, m)));
        worst_extra = std::max(
            worst_extra,
            spectral_max_abs_diff(scaling_hat(m, t.height()),
                                  scaling_hat(m, t.height(), 1)));
        ++fixtures;
      }
    }
  }
  const bool pass =
      fixtures >= 50 && worst_direct < 1e-12 && worst_extra < 1e-15;
  std::ostringstream w;
  w << fixtures << " fixtures; max path-product deviation " << worst_direct
    << "; max extra-factor deviation " << worst_extra;
  report(4, "scaling construction vs path-product oracle", pass, w.str());
}

void criterion_5() {
  FieldParams p21{2, 1};
  const MRAFamily haar = haar_family();
  bool spectrum_ok = haar.scaling().support_size() == 4;
  for (const auto& [a, v] : haar.scaling().values()) {
    const auto top = a.top_index();
    spectrum_ok = spectrum_ok && v == Complex{1.0, 0.0} &&
                  (!top || *top <= -1);
  }
  const SpatialStepFunction phi = inverse_fourier(haar.scaling());
  double spatial_dev = 0.0;
  for (std::size_t i = 0; i < phi.grid_size(); ++i) {
    const Complex expect =
        phi.point(i).is_zero() ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    spatial_dev = std::max(spatial_dev, std::abs(phi.at_index(i) - expect));
  }
  const auto gram = gram_matrix(haar.scaling(), h0_enumerate(p21, 3));
  const double gram_dev = max_off_diagonal_deviation_from_identity(gram);
  double periodization_dev = 0.0;
  for (const auto& [a, v] : periodization_diagnostic(haar.scaling(), 3))
    periodization_dev = std::max(periodization_dev, std::abs(v - 1.0));
  const bool pass = spectrum_ok && spatial_dev < 1e-12 && gram_dev < 1e-12 &&
                    periodization_dev < 1e-12;
  std::ostringstream w;
  w << "unit-ball indicator pair; spatial dev " << spatial_dev
    << ", Gram dev " << gram_dev << ", periodization dev "
    << periodization_dev;
  report(5, "Haar degeneration of the basic tree", pass, w.str());
}

void criterion_6() {
  FieldParams p21{2, 1};
  const MRAFamily family = chain_family();
  const auto [lo, hi] = riesz_bounds(family);
  const double floor = std::pow(0.5, 4);
  const double ceiling = std::pow(1.6, 4);
  const bool envelope_ok = lo >= floor && hi <= ceiling;

  const auto eigen =
      hermitian_eigenvalues(gram_matrix(family.scaling(),
                                        h0_enumerate(p21, 3)));
  const double ev_lo = eigen.eigenvalues.front();
  const double ev_hi = eigen.eigenvalues.back();
  const bool eigen_in_achieved =
      ev_lo >= lo - 1e-9 && ev_hi <= hi + 1e-9;

  // Stated reference interval [0.746496, 1]: inconsistent with the
  // fixture's own spectrum table {1, 0.8, 0.96, 0.864}, whose minimum
  // modulus is 0.8 (so the floor is 0.64 and the nu=3 section attains it).
  const bool stated_range_ok =
      std::abs(lo - 0.746496) < 1e-9 && std::abs(hi - 1.0) < 1e-9;
  const bool stated_eigen_ok = ev_lo >= 0.746496 - 1e-9 && ev_hi <= 1.0 + 1e-9;

  const bool pass =
      envelope_ok && eigen_in_achieved && stated_range_ok && stated_eigen_ok;
  std::ostringstream w;
  w << "|phi|^2 range [" << lo << ", " << hi << "] vs stated [0.746496, 1]"
    << "; envelope within [0.0625, 6.5536]: " << envelope_ok
    << "; eigenvalues [" << ev_lo << ", " << ev_hi
    << "] within achieved bounds: " << eigen_in_achieved
    << "; stated interval holds: " << stated_range_ok
    << " (the fixture's own table {1, 0.8, 0.96, 0.864} has minimum "
       "modulus 0.8, so the floor is 0.64, not 0.864^2)";
  report(6, "chain Riesz envelope", pass, w.str());
}

void criterion_7(const std::vector<Fixture>& fixtures) {
  double worst_refine = 0.0, worst_spatial = 0.0, worst_coeff = 0.0;
  for (const Fixture& f : fixtures) {
    const auto r = check_refinement(f.family);
    worst_refine =
        std::max({worst_refine, r.max_deviation, r.max_dual_deviation});
    worst_spatial =
        std::max(worst_spatial, spatial_refinement_deviation(f.family));
    const auto beta = f.family.mask().coefficients();
    worst_coeff = std::max(
        worst_coeff,
        spectral_max_abs_diff(
            mask_from_coefficients(f.family.params(), f.family.N(), beta),
            f.family.mask().values()));
  }
  const bool pass = worst_refine < 1e-12 && worst_spatial < 1e-9 &&
                    worst_coeff < 1e-12;
  std::ostringstream w;
  w << "spectral dev " << worst_refine << ", spatial dev " << worst_spatial
    << ", coefficient round-trip dev " << worst_coeff;
  report(7, "refinement identity in both domains", pass, w.str());
}

void criterion_8(const std::vector<Fixture>& fixtures) {
  double worst = 0.0;
  bool single = true;
  std::size_t sums = 0;
  for (const Fixture& f : fixtures) {
    const WaveletSystem system = WaveletSystem::build(f.family);
    const auto r = check_matrix_condition(system);
    worst = std::max(worst, r.max_deviation);
    single = single && r.single_term;
    sums += r.sums_checked;
  }
  const bool pass = worst < 1e-9 && single;
  std::ostringstream w;
  w << sums << " sums, max |sum - delta| = " << worst
    << ", one nonzero term per diagonal sum: " << single;
  report(8, "shifted-mask matrix condition", pass, w.str());
}

void criterion_9() {
  double worst_scaling = 0.0, worst_wavelet = 0.0;
  std::size_t pairs = 0;
  for (const MRAFamily& family : {haar_family(), chain_family()}) {
    const WaveletSystem system = WaveletSystem::build(family);
    const auto r = biorthogonality_report(system, 3, -1, 1);
    worst_scaling = std::max(worst_scaling, r.max_scaling_deviation);
    worst_wavelet = std::max(worst_wavelet, r.max_wavelet_deviation);
    pairs += r.pairs_checked;
  }
  const bool pass = worst_scaling < 1e-9 && worst_wavelet < 1e-9;
  std::ostringstream w;
  w << pairs << " pairs over levels {-1,0,1} and depth-3 shifts; scaling dev "
    << worst_scaling << ", wavelet dev " << worst_wavelet;
  report(9, "biorthogonality of the constructed systems", pass, w.str());
}

void criterion_10() {
  std::mt19937_64 rng(61);
  double worst = 0.0;
  int count = 0;
  for (FieldParams params : {FieldParams{2, 1}, {3, 1}, {2, 2}}) {
    const auto blocks = all_blocks(params);
    int span = 1;
    while (std::pow(static_cast<double>(params.q()), span + 1) <= 256)
      ++span;
    for (int i = 0; i < 100; ++i) {
      const int base = static_cast<int>(rng() % 3);
      const int top = -base + (span - 1);
      SpectralStepFunction fhat(params, base);
      const int entries = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < entries; ++k) {
        std::map<int, GFBlock> digits;
        for (int t = 0; t < 2; ++t) {
          int idx = -base + static_cast<int>(rng() % (top + base + 1));
          GFBlock b = blocks[rng() % blocks.size()];
          if (!b.is_zero()) digits.insert_or_assign(idx, b);
        }
        const double re = static_cast<double>(rng() % 4000) / 1000.0 - 2.0;
        const double im = static_cast<double>(rng() % 4000) / 1000.0 - 2.0;
        fhat.set(CosetAddress(params, base, std::move(digits)), {re, im});
      }
      const SpatialStepFunction f = inverse_fourier(fhat);
      worst = std::max(worst, std::abs(f.norm_sq() - spectral_norm_sq(fhat)));
      worst = std::max(worst, spectral_max_abs_diff(forward_fourier(f), fhat));
      ++count;
    }
  }
  const bool pass = worst < 1e-12 && count == 300;
  std::ostringstream w;
  w << count << " random step functions; max round-trip/Plancherel dev "
    << worst;
  report(10, "Fourier round trip and Plancherel", pass, w.str());
}

void criterion_11(const std::vector<Fixture>& fixtures) {
  double worst = 0.0;
  for (const Fixture& f : fixtures) {
    const auto gram =
        gram_matrix(f.family.support_set().indicator(),
                    h0_enumerate(f.family.params(), 3));
    worst = std::max(worst, max_off_diagonal_deviation_from_identity(gram));
  }
  const bool pass = worst < 1e-12;
  std::ostringstream w;
  w << "max |Gram - I| over every fixture's scaling support: " << worst;
  report(11, "character orthonormality on elementary sets", pass, w.str());
}

void criterion_12(const std::vector<Fixture>& fixtures) {
  bool pass = true;
  double worst_c = 0.0;
  for (const Fixture& f : fixtures) {
    const WaveletSystem system = WaveletSystem::build(f.family);
    const auto r = check_decay_hypotheses(system);
    pass = pass && r.witnesses_found && r.C > 0.0;
    for (const auto& shells : {r.scaling_shells, r.dual_scaling_shells})
      for (const ShellBound& b : shells) {
        const double rhs =
            r.C /
            std::pow(1.0 + std::pow(static_cast<double>(f.family.params().p),
                                    static_cast<double>(f.family.params().s) *
                                        b.n),
                     0.5 + r.epsilon);
        pass = pass && b.sup_abs <= rhs + 1e-12;
      }
    worst_c = std::max(worst_c, r.C);
  }
  std::ostringstream w;
  w << "witnesses with epsilon = 1 exist for every fixture; largest C = "
    << worst_c;
  report(12, "decay and annihilator bound witnesses", pass, w.str());
}

}  // namespace

int main() {
  const std::vector<Fixture> fixtures = make_fixtures();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7(fixtures);
  criterion_8(fixtures);
  criterion_9();
  criterion_10();
  criterion_11(fixtures);
  criterion_12(fixtures);
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) +
                                    " criterion(s) failed")
            << std::endl;
  return failures;
}
