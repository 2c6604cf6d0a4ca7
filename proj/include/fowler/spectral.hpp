#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fowler {

using Complex = std::complex<double>;

/// Periodic 1-D grid on [0, length) with a power-of-two number of nodes.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n_nodes, double length = 1.0);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(n_); }

  double node(std::size_t j) const noexcept {
    return static_cast<double>(j) * length_ / static_cast<double>(n_);
  }

  /// Signed wavenumber of DFT bin k: k for k < N/2, k - N otherwise.
  /// The Nyquist bin maps to -N/2.
  long signed_index(std::size_t bin) const noexcept;

  /// Frequency xi_k = signed_index(k) / length.
  double frequency(std::size_t bin) const noexcept {
    return static_cast<double>(signed_index(bin)) / length_;
  }

  std::size_t nyquist_bin() const noexcept { return n_ / 2; }

  bool operator==(const SpectralGrid&) const = default;

 private:
  std::size_t n_;
  double length_;
};

/// Real nodal values on a grid. Values are always finite.
class Field {
 public:
  Field(SpectralGrid grid, std::vector<double> values);

  static Field zeros(const SpectralGrid& grid);
  static Field sample(const SpectralGrid& grid, const std::function<double(double)>& f);

  const SpectralGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  double mean() const;
  double max_abs() const;

  friend Field operator-(const Field& a, const Field& b);

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
};

/// DFT coefficients in bin order (0..N-1).
class SpectralField {
 public:
  SpectralField(SpectralGrid grid, std::vector<Complex> coeffs);

  const SpectralGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const noexcept { return coeffs_[k]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// max_k |c(-k) - conj(c(k))| relative to max_k |c(k)|; 0 for the zero array.
  double hermitian_defect() const;

 private:
  SpectralGrid grid_;
  std::vector<Complex> coeffs_;
};

/// coeffs[k] = sum_j values[j] exp(-2 pi i j k / N), unnormalized.
SpectralField forward_dft(const Field& f);

/// values[j] = (1/N) sum_k coeffs[k] exp(2 pi i j k / N). The imaginary part of
/// the result is discarded when it is below 1e-10 of the output norm, and
/// rejected with NonHermitianInput otherwise.
Field inverse_dft(const SpectralField& F);

/// ||Im v|| / ||v|| for v the complex inverse transform of F; 0 for F == 0.
double imaginary_residue(const SpectralField& F);

/// Multiply every bin by symbol(xi_k) and transform back to a real field. The
/// Nyquist bin is treated as a cosine mode: only Re(symbol * c) is kept there.
Field apply_multiplier(const Field& f, const std::function<Complex(double)>& symbol);

/// Same as apply_multiplier with a precomputed multiplier per bin.
Field apply_multiplier(const Field& f, std::span<const Complex> multipliers);

/// sqrt(dx * sum_j u_j^2).
double l2_norm(const Field& f);

/// Parseval-weighted Sobolev norm with weight (1 + xi_k^2)^s; hs_norm(f, 0) == l2_norm(f).
double hs_norm(const Field& f, double s);
double hs_norm(const SpectralField& F, double s);

}  // namespace fowler
