#pragma once

// Real-to-complex transforms on the uniform periodic grid theta_i = 2*pi*i/n.
//
// Coefficient convention: forward() returns the n/2+1 unnormalized DFT
// coefficients c_k = sum_i f_i exp(-i k theta_i); inverse() divides by n, so
// inverse(forward(f)) == f up to roundoff. Plans are cached per size behind a
// mutex; execution is thread-safe.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace curveflow::fourier {

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(std::span<const double> values);
std::vector<double> inverse(const Spectrum& coefficients, std::size_t n);

// Spectral derivative of order 1 or 2. Odd orders drop the Nyquist mode,
// even orders keep it with multiplier -(n/2)^2.
std::vector<double> derivative(std::span<const double> values, int order);

// Zero-mean periodic part of the antiderivative: returns g with g' = f - mean(f)
// and g(0) = 0, together with the mean of f.
struct Antiderivative {
  std::vector<double> oscillatory;
  double mean = 0.0;
};
Antiderivative antiderivative(std::span<const double> values);

// Band-limited interpolation of a periodic sample set at arbitrary angles.
// Moderate sizes sum the trigonometric interpolant directly, with the Nyquist
// mode taken as a cosine. Larger inputs oversample by zero padding and apply
// local barycentric Lagrange interpolation.
std::vector<double> interpolate(std::span<const double> values, std::span<const double> angles);

}  // namespace curveflow::fourier
