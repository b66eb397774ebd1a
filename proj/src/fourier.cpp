#include "curveflow/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "curveflow/errors.hpp"

namespace curveflow::fourier {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer    = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer make_real(std::size_t n) {
  return RealBuffer(static_cast<double*>(fftw_malloc(sizeof(double) * std::max<std::size_t>(n, 1))));
}
ComplexBuffer make_complex(std::size_t n) {
  return ComplexBuffer(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max<std::size_t>(n, 1))));
}

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created once per size and never destroyed; fftw_execute_dft_* on
// fftw_malloc'd arrays is safe to call concurrently.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) { return it->second; }
    auto in   = make_real(n);
    auto out  = make_complex(n / 2 + 1);
    const int size = static_cast<int>(n);
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_1d(size, in.get(), out.get(), FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_1d(size, out.get(), in.get(), FFTW_ESTIMATE);
    if (p.r2c == nullptr || p.c2r == nullptr) { throw NumericalAbort("FFTW plan creation failed"); }
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

}  // namespace

Spectrum forward(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) { throw InvalidInput("fourier::forward: empty input"); }
  const auto plan = PlanCache::instance().get(n);
  auto in         = make_real(n);
  auto out        = make_complex(n / 2 + 1);
  std::copy(values.begin(), values.end(), in.get());
  fftw_execute_dft_r2c(plan.r2c, in.get(), out.get());
  Spectrum result(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) { result[k] = {out[k][0], out[k][1]}; }
  return result;
}

std::vector<double> inverse(const Spectrum& coefficients, std::size_t n) {
  if (coefficients.size() != n / 2 + 1) { throw InvalidInput("fourier::inverse: spectrum size mismatch"); }
  const auto plan = PlanCache::instance().get(n);
  auto in         = make_complex(n / 2 + 1);
  auto out        = make_real(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    in[k][0] = coefficients[k].real();
    in[k][1] = coefficients[k].imag();
  }
  fftw_execute_dft_c2r(plan.c2r, in.get(), out.get());
  std::vector<double> result(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) { result[i] = out[i] * scale; }
  return result;
}

std::vector<double> derivative(std::span<const double> values, int order) {
  if (order != 1 && order != 2) { throw InvalidInput("fourier::derivative: order must be 1 or 2"); }
  const std::size_t n = values.size();
  auto spec           = forward(values);
  const bool even     = n % 2 == 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double kk = static_cast<double>(k);
    if (order == 1) {
      spec[k] = (even && k == n / 2) ? std::complex<double>{0.0, 0.0}
                                     : spec[k] * std::complex<double>{0.0, kk};
    } else {
      spec[k] *= -kk * kk;
    }
  }
  return inverse(spec, n);
}

Antiderivative antiderivative(std::span<const double> values) {
  const std::size_t n = values.size();
  auto spec           = forward(values);
  Antiderivative result;
  result.mean      = spec[0].real() / static_cast<double>(n);
  spec[0]          = 0.0;
  const bool even  = n % 2 == 0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    if (even && k == n / 2) {
      // cos(n theta / 2) has no band-limited antiderivative on the grid.
      spec[k] = 0.0;
      continue;
    }
    spec[k] /= std::complex<double>{0.0, static_cast<double>(k)};
  }
  result.oscillatory = inverse(spec, n);
  const double shift = result.oscillatory[0];
  for (auto& v : result.oscillatory) { v -= shift; }
  return result;
}

namespace {

// Direct evaluation of the trigonometric interpolant. The phase e^{ik theta}
// is advanced by multiplication and recomputed every 32 modes.
std::vector<double> interpolate_direct(std::span<const double> values, std::span<const double> angles) {
  const std::size_t n = values.size();
  const auto spec     = forward(values);
  const std::size_t top = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
  std::vector<double> result(angles.size());
  for (std::size_t a = 0; a < angles.size(); ++a) {
    const double t = angles[a];
    const std::complex<double> step = std::polar(1.0, t);
    std::complex<double> phase      = 1.0;
    double sum                      = spec[0].real();
    for (std::size_t k = 1; k <= top; ++k) {
      phase = (k % 32 == 0) ? std::polar(1.0, static_cast<double>(k) * t) : phase * step;
      const double term = (spec[k] * phase).real();
      sum += (n % 2 == 0 && k == n / 2) ? term : 2.0 * term;
    }
    result[a] = sum / static_cast<double>(n);
  }
  return result;
}

}  // namespace

std::vector<double> interpolate(std::span<const double> values, std::span<const double> angles) {
  if (values.size() * angles.size() <= (std::size_t{1} << 22)) { return interpolate_direct(values, angles); }
  constexpr std::size_t kOversample = 4;
  constexpr int kStencil            = 16;
  const std::size_t n               = values.size();
  const std::size_t fine            = n * kOversample;

  // Zero-pad the spectrum; split the Nyquist mode symmetrically.
  auto spec = forward(values);
  Spectrum padded(fine / 2 + 1, {0.0, 0.0});
  for (std::size_t k = 0; k < spec.size(); ++k) { padded[k] = spec[k]; }
  if (n % 2 == 0) { padded[n / 2] *= 0.5; }
  auto up = inverse(padded, fine);
  for (auto& v : up) { v *= static_cast<double>(kOversample); }

  // Barycentric weights for equispaced nodes: w_j = (-1)^j binom(m-1, j).
  std::array<double, kStencil> weights{};
  {
    double b = 1.0;
    for (int j = 0; j < kStencil; ++j) {
      weights[j] = (j % 2 == 0 ? 1.0 : -1.0) * b;
      b          = b * static_cast<double>(kStencil - 1 - j) / static_cast<double>(j + 1);
    }
  }

  const double h = 2.0 * std::numbers::pi / static_cast<double>(fine);
  std::vector<double> result(angles.size());
  for (std::size_t a = 0; a < angles.size(); ++a) {
    const double pos   = angles[a] / h;
    const double base  = std::floor(pos);
    const double local = pos - base + (kStencil / 2 - 1);  // position within stencil
    const auto first   = static_cast<long long>(base) - (kStencil / 2 - 1);

    double num = 0.0;
    double den = 0.0;
    bool exact = false;
    for (int j = 0; j < kStencil; ++j) {
      const double diff = local - static_cast<double>(j);
      long long idx     = (first + j) % static_cast<long long>(fine);
      if (idx < 0) { idx += static_cast<long long>(fine); }
      if (diff == 0.0) {
        result[a] = up[static_cast<std::size_t>(idx)];
        exact     = true;
        break;
      }
      const double t = weights[j] / diff;
      num += t * up[static_cast<std::size_t>(idx)];
      den += t;
    }
    if (!exact) { result[a] = num / den; }
  }
  return result;
}

}  // namespace curveflow::fourier
