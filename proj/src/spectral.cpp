#include "fowler/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fowler/error.hpp"

namespace fowler {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (size, direction) and never destroyed.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> in(n), out(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(std::vector<Complex>& in, std::vector<Complex>& out, int sign) {
  fftw_plan p = plan_cache().get(in.size(), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
  if (!(a == b)) throw SolverError(ErrorCode::InvalidArgument, "fields live on different grids");
}

}  // namespace

SpectralGrid::SpectralGrid(std::size_t n_nodes, double length) : n_(n_nodes), length_(length) {
  if (!is_power_of_two(n_nodes) || n_nodes < 16)
    throw SolverError(ErrorCode::InvalidArgument,
                      "n_nodes must be a power of two >= 16, got " + std::to_string(n_nodes));
  if (!(length > 0.0) || !std::isfinite(length))
    throw SolverError(ErrorCode::InvalidArgument, "grid length must be positive");
}

long SpectralGrid::signed_index(std::size_t bin) const noexcept {
  auto k = static_cast<long>(bin);
  auto n = static_cast<long>(n_);
  return k < n / 2 ? k : k - n;
}

Field::Field(SpectralGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw SolverError(ErrorCode::InvalidArgument, "field size does not match grid");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j]))
      throw SolverError(ErrorCode::NonFiniteField, "non-finite value at node " + std::to_string(j));
  }
}

Field Field::zeros(const SpectralGrid& grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0));
}

Field Field::sample(const SpectralGrid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
  return Field(grid, std::move(v));
}

double Field::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = a[j] - b[j];
  return Field(a.grid(), std::move(d));
}

SpectralField::SpectralField(SpectralGrid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw SolverError(ErrorCode::InvalidArgument, "coefficient count does not match grid");
}

double SpectralField::hermitian_defect() const {
  const std::size_t n = coeffs_.size();
  double scale = 0.0, defect = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max(scale, std::abs(coeffs_[k]));
    defect = std::max(defect, std::abs(coeffs_[(n - k) % n] - std::conj(coeffs_[k])));
  }
  return scale == 0.0 ? 0.0 : defect / scale;
}

SpectralField forward_dft(const Field& f) {
  std::vector<Complex> in(f.values().begin(), f.values().end());
  std::vector<Complex> out(in.size());
  execute(in, out, FFTW_FORWARD);
  return SpectralField(f.grid(), std::move(out));
}

namespace {

struct InverseResult {
  std::vector<double> real;
  double norm2 = 0.0;
  double imag2 = 0.0;
};

InverseResult complex_inverse(const SpectralField& F) {
  std::vector<Complex> in(F.coeffs().begin(), F.coeffs().end());
  std::vector<Complex> out(in.size());
  execute(in, out, FFTW_BACKWARD);

  const double inv_n = 1.0 / static_cast<double>(in.size());
  InverseResult r{std::vector<double>(out.size())};
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Complex v = out[j] * inv_n;
    r.norm2 += std::norm(v);
    r.imag2 += v.imag() * v.imag();
    r.real[j] = v.real();
  }
  return r;
}

}  // namespace

double imaginary_residue(const SpectralField& F) {
  const InverseResult r = complex_inverse(F);
  return r.norm2 == 0.0 ? 0.0 : std::sqrt(r.imag2 / r.norm2);
}

Field inverse_dft(const SpectralField& F) {
  InverseResult r = complex_inverse(F);
  if (std::sqrt(r.imag2) > 1e-10 * std::sqrt(r.norm2))
    throw SolverError(ErrorCode::NonHermitianInput,
                      "imaginary residue " + std::to_string(std::sqrt(r.imag2 / r.norm2)) +
                          " of output norm");
  return Field(F.grid(), std::move(r.real));
}

Field apply_multiplier(const Field& f, std::span<const Complex> multipliers) {
  if (multipliers.size() != f.size())
    throw SolverError(ErrorCode::InvalidArgument, "multiplier count does not match grid");
  const SpectralField F = forward_dft(f);
  std::vector<Complex> c(F.coeffs().begin(), F.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= multipliers[k];
  const std::size_t nyq = f.grid().nyquist_bin();
  c[nyq] = Complex(c[nyq].real(), 0.0);
  return inverse_dft(SpectralField(f.grid(), std::move(c)));
}

Field apply_multiplier(const Field& f, const std::function<Complex(double)>& symbol) {
  const SpectralGrid& g = f.grid();
  std::vector<Complex> m(g.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = symbol(g.frequency(k));
  return apply_multiplier(f, m);
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(f.grid().dx() * s);
}

double hs_norm(const SpectralField& F, double s) {
  const SpectralGrid& g = F.grid();
  const double n = static_cast<double>(g.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double xi = g.frequency(k);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(F[k]);
  }
  return std::sqrt(g.length() * acc / (n * n));
}

double hs_norm(const Field& f, double s) { return hs_norm(forward_dft(f), s); }

}  // namespace fowler
