#include "lfwave/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfwave {

namespace {

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

double pow_ps(const FieldParams& params, int exponent) {
  return std::pow(static_cast<double>(params.p),
                  static_cast<double>(params.s) * exponent);
}

}  // namespace

SpatialStepFunction::SpatialStepFunction(FieldParams params, int resolution,
                                         int radius)
    : params_(params), resolution_(resolution), radius_(radius) {
  validate_params(params_);
  if (resolution_ + radius_ < 0)
    throw std::invalid_argument(
        "spatial grid needs resolution + radius >= 0");
  std::size_t size = 1;
  for (int i = 0; i < resolution_ + radius_; ++i) size *= params_.q();
  values_.assign(size, Complex{0.0, 0.0});
}

FieldElement SpatialStepFunction::point(std::size_t idx) const {
  std::map<int, GFBlock> blocks;
  // Lowest block index is the most significant position.
  for (int j = resolution_ - 1; j >= -radius_; --j) {
    GFBlock b = GFBlock::from_index(params_, idx % params_.q());
    idx /= params_.q();
    if (!b.is_zero()) blocks.emplace(j, b);
  }
  return FieldElement(params_, std::move(blocks));
}

std::size_t SpatialStepFunction::index_of(const FieldElement& x) const {
  std::size_t idx = 0;
  for (int j = -radius_; j < resolution_; ++j)
    idx = idx * params_.q() + x.block_at(j).to_index();
  return idx;
}

Complex SpatialStepFunction::at_point(const FieldElement& x) const {
  if (!x.blocks().empty() && x.blocks().begin()->first < -radius_)
    return {0.0, 0.0};
  return values_[index_of(x)];
}

double SpatialStepFunction::norm_sq() const {
  Kahan acc;
  for (const Complex& v : values_) acc.add(Complex{std::norm(v), 0.0});
  return acc.sum.real() * pow_ps(params_, -resolution_);
}

double SpatialStepFunction::max_abs() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

SpatialStepFunction inverse_fourier(const SpectralStepFunction& fhat) {
  const FieldParams params = fhat.params();
  const int rho = fhat.base();
  const auto top = fhat.max_digit_index();
  const int resolution = top ? *top + 1 : -rho;
  SpatialStepFunction f(params, resolution, rho);
  const double measure = pow_ps(params, -rho);
  for (std::size_t i = 0; i < f.grid_size(); ++i) {
    const FieldElement x = f.point(i);
    Kahan acc;
    for (const auto& [addr, v] : fhat.values())
      acc.add(v * addr.pairing(x));
    f.set_index(i, acc.sum * measure);
  }
  return f;
}

SpectralStepFunction forward_fourier(const SpatialStepFunction& f) {
  const FieldParams params = f.params();
  const int base = f.radius();
  const double scale = pow_ps(params, -f.resolution());
  SpectralStepFunction out(params, base);
  // Candidate addresses mirror the grid: digits on [-rho, R-1].
  const CosetAddress whole(params, -f.resolution());  // (K_R^+)^perp
  for (const CosetAddress& addr : whole.refined(base)) {
    Kahan acc;
    for (std::size_t i = 0; i < f.grid_size(); ++i) {
      const Complex v = f.at_index(i);
      if (v == Complex{0.0, 0.0}) continue;
      acc.add(v * std::conj(addr.pairing(f.point(i))));
    }
    out.set(addr, acc.sum * scale);
  }
  return out;
}

HermitianMatrix gram_matrix(const SpectralStepFunction& fhat,
                            const std::vector<ShiftH0>& shifts) {
  int base = fhat.base();
  for (const ShiftH0& h : shifts)
    base = std::max(base, static_cast<int>(h.depth()));
  const SpectralStepFunction density = fhat.abs_squared().refined(base);
  const double measure = pow_ps(fhat.params(), -base);
  const std::size_t n = shifts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (shifts[i] == shifts[j])
        throw std::invalid_argument("gram_matrix: shifts must be distinct");
  HermitianMatrix g(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = row; col < n; ++col) {
      const FieldElement diff =
          shifts[col].value() - shifts[row].value();
      Kahan acc;
      for (const auto& [addr, v] : density.values())
        acc.add(v * addr.pairing(diff));
      g[row][col] = acc.sum * measure;
      g[col][row] = std::conj(g[row][col]);
    }
  }
  return g;
}

EigenResult hermitian_eigenvalues(HermitianMatrix a) {
  EigenResult result;
  result.method = "cyclic Jacobi (complex Hermitian)";
  const std::size_t n = a.size();
  if (n == 0) return result;
  for (const auto& row : a)
    if (row.size() != n)
      throw std::invalid_argument("eigensolver: matrix must be square");

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a[i][j]);
    return s;
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
  const double stop = std::max(1e-300, 1e-30 * scale * scale);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= stop) break;
    result.sweeps = sweep + 1;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p][q];
        if (std::abs(apq) == 0.0) continue;
        // Unitary rotation annihilating a[p][q]: factor out the phase,
        // then a real Jacobi rotation on the 2x2 block.
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        const Complex phase = apq / std::abs(apq);
        const double g = std::abs(apq);
        const double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex sp = s * phase;  // rotation entries: [c, sp; -conj(sp), c]
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k][p];
          const Complex akq = a[k][q];
          a[k][p] = c * akp + std::conj(sp) * akq;
          a[k][q] = -sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p][k];
          const Complex aqk = a[q][k];
          a[p][k] = c * apk + sp * aqk;
          a[q][k] = -std::conj(sp) * apk + c * aqk;
        }
      }
    }
  }
  result.eigenvalues.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    result.eigenvalues.push_back(a[i][i].real());
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

double max_off_diagonal_deviation_from_identity(const HermitianMatrix& g) {
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      dev = std::max(dev, std::abs(g[i][j] - expect));
    }
  return dev;
}

SpectralStepFunction dilated_shifted_spectrum(const SpectralStepFunction& fhat,
                                              int level,
                                              const ShiftH0& shift) {
  const FieldParams params = fhat.params();
  const double scale = std::pow(pow_ps(params, -level), 0.5);
  return fhat.dilated(level)
      .modulated(shift.value().dilated(-level))
      .scaled(Complex{scale, 0.0});
}

BiorthReport biorthogonality_report(const WaveletSystem& system,
                                    std::uint32_t depth, int n_lo, int n_hi) {
  if (n_lo > n_hi)
    throw std::invalid_argument("biorthogonality: empty level range");
  BiorthReport report;
  const MRAFamily& family = system.family();
  const std::vector<ShiftH0> shifts =
      h0_enumerate(family.params(), static_cast<int>(depth));

  // Level-0 scaling shifts against their duals.
  for (const ShiftH0& h : shifts) {
    const SpectralStepFunction lhs =
        dilated_shifted_spectrum(family.scaling(), 0, h);
    for (const ShiftH0& g : shifts) {
      const SpectralStepFunction rhs =
          dilated_shifted_spectrum(family.dual_scaling(), 0, g);
      const Complex ip = spectral_inner_product(lhs, rhs);
      const double expect = (h == g) ? 1.0 : 0.0;
      report.max_scaling_deviation =
          std::max(report.max_scaling_deviation, std::abs(ip - expect));
      ++report.pairs_checked;
    }
  }

  // Wavelet grid over k, l != 0 and all level pairs in range.
  struct Entry {
    std::size_t label;
    int level;
    ShiftH0 shift;
    SpectralStepFunction spec;
  };
  std::vector<Entry> left, right;
  for (std::size_t i = 0; i < system.count(); ++i) {
    if (system.labels()[i].is_zero()) continue;
    for (int level = n_lo; level <= n_hi; ++level) {
      for (const ShiftH0& h : shifts) {
        left.push_back(
            {i, level, h, dilated_shifted_spectrum(system.psi(i), level, h)});
        right.push_back({i, level, h,
                         dilated_shifted_spectrum(system.dual_psi(i), level,
                                                  h)});
      }
    }
  }
  for (const Entry& a : left) {
    for (const Entry& b : right) {
      const Complex ip = spectral_inner_product(a.spec, b.spec);
      const double expect =
          (a.label == b.label && a.level == b.level && a.shift == b.shift)
              ? 1.0
              : 0.0;
      report.max_wavelet_deviation =
          std::max(report.max_wavelet_deviation, std::abs(ip - expect));
      ++report.pairs_checked;
    }
  }
  return report;
}

std::vector<std::pair<CosetAddress, double>> periodization_diagnostic(
    const SpectralStepFunction& fhat, int L) {
  const FieldParams params = fhat.params();
  if (L < fhat.base())
    throw std::invalid_argument(
        "periodization diagnostic needs resolution >= the function base");
  const SpectralStepFunction density = fhat.abs_squared().refined(L);
  // Group |f-hat|^2 by the digit string on [-L, -1]; digits at indices
  // >= 0 run over the translate lattice.
  std::map<CosetAddress, double> table;
  const CosetAddress unit_coset(params, 0);
  for (const CosetAddress& xi : unit_coset.refined(L))
    table.emplace(xi, 0.0);
  for (const auto& [addr, v] : density.values()) {
    std::map<int, GFBlock> xi_digits;
    for (const auto& [idx, b] : addr.digits())
      if (idx < 0) xi_digits.emplace(idx, b);
    table[CosetAddress(params, L, std::move(xi_digits))] += v.real();
  }
  return {table.begin(), table.end()};
}

double spatial_refinement_deviation(const MRAFamily& family) {
  const SpatialStepFunction phi = inverse_fourier(family.scaling());
  const auto beta = family.mask().coefficients();
  double dev = 0.0;
  for (std::size_t i = 0; i < phi.grid_size(); ++i) {
    const FieldElement x = phi.point(i);
    const FieldElement ax = x.dilated(1);
    Kahan acc;
    for (const auto& [h, b] : beta) acc.add(b * phi.at_point(ax - h.value()));
    dev = std::max(dev, std::abs(phi.at_index(i) - acc.sum));
  }
  return dev;
}

}  // namespace lfwave
