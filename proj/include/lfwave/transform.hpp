#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfwave/wavelets.hpp"

namespace lfwave {

/// Complex step function on K: constant on cosets of K_R^+ (resolution R)
/// and supported in K_{-rho}^+ (radius rho). Values live on the dense grid
/// of digit strings over block indices [-rho, R-1], enumerated
/// lexicographically with the lowest block index most significant.
class SpatialStepFunction {
 public:
  SpatialStepFunction(FieldParams params, int resolution, int radius);

  const FieldParams& params() const { return params_; }
  int resolution() const { return resolution_; }
  int radius() const { return radius_; }
  std::size_t grid_size() const { return values_.size(); }

  Complex at_index(std::size_t idx) const { return values_[idx]; }
  void set_index(std::size_t idx, Complex v) { values_[idx] = v; }
  /// Representative of grid cell idx: blocks on [-rho, R-1].
  FieldElement point(std::size_t idx) const;
  std::size_t index_of(const FieldElement& x) const;
  /// Value at an arbitrary point: 0 outside K_{-rho}^+; blocks at indices
  /// >= R are invisible at this resolution.
  Complex at_point(const FieldElement& x) const;

  /// L2 norm squared: sum |value|^2 p^{-sR}.
  double norm_sq() const;
  double max_abs() const;

 private:
  FieldParams params_;
  int resolution_ = 0;
  int radius_ = 0;
  std::vector<Complex> values_;
};

/// f(x) = sum_cosets value p^{-sL} (zeta, x) on K_{-L}^+. The output grid
/// has radius L and resolution 1 + max support digit index.
SpatialStepFunction inverse_fourier(const SpectralStepFunction& fhat);

/// f-hat(chi) = p^{-sR} sum_grid f(x) conj((chi, x)) on (K_R^+)^perp,
/// constant on cosets of (K_{-rho}^+)^perp. Exact inverse of
/// inverse_fourier on step functions.
SpectralStepFunction forward_fourier(const SpatialStepFunction& f);

using HermitianMatrix = std::vector<std::vector<Complex>>;

/// Gram matrix of the shift system: G[h][g] = <f(.-h), f(.-g)> =
/// integral |f-hat|^2 (chi, g - h) dnu, rows/columns in the given shift
/// order (h0_enumerate order in all callers).
HermitianMatrix gram_matrix(const SpectralStepFunction& fhat,
                            const std::vector<ShiftH0>& shifts);

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::string method;
  int sweeps = 0;
};

/// Self-contained cyclic Jacobi diagonalization for Hermitian matrices.
EigenResult hermitian_eigenvalues(HermitianMatrix a);

double max_off_diagonal_deviation_from_identity(const HermitianMatrix& g);

/// Spectrum of p^{ns/2} f(A^n x - h): p^{-ns/2} conj((chi A^{-n}, h))
/// f-hat(chi A^{-n}).
SpectralStepFunction dilated_shifted_spectrum(const SpectralStepFunction& fhat,
                                              int level, const ShiftH0& shift);

struct BiorthReport {
  double max_scaling_deviation = 0.0;  // <phi(.-h), dual phi(.-g)> vs delta
  double max_wavelet_deviation = 0.0;  // wavelet grid vs delta delta delta
  std::size_t pairs_checked = 0;
};

/// Biorthogonality of the constructed system over a finite section: the
/// level-0 scaling shifts against their duals, and the wavelet grid
/// (k, l != 0; levels n, m in [n_lo, n_hi]; shifts of depth <= depth). The
/// l = 0 spectra reproduce the scaling function, whose cross-level inner
/// products are not delta and are not part of the claim.
BiorthReport biorthogonality_report(const WaveletSystem& system,
                                    std::uint32_t depth, int n_lo, int n_hi);

/// Translate-and-sum of |f-hat|^2 over the characters with digits at
/// indices >= 0 only, tabulated per coset of (K_{-L}^+)^perp inside
/// (K_0^+)^perp. Identically 1 exactly for orthonormal shift systems.
std::vector<std::pair<CosetAddress, double>> periodization_diagnostic(
    const SpectralStepFunction& fhat, int L);

/// Max deviation of the spatial refinement identity phi(x) = sum_h beta_h
/// phi(A x - h) over the full grid of phi, with beta from
/// Mask::coefficients.
double spatial_refinement_deviation(const MRAFamily& family);

}  // namespace lfwave
