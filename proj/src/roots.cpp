#include "rhotica/roots.hpp"

#include <cmath>
#include <numbers>

#include "rhotica/errors.hpp"

namespace rhotica {

std::complex<double> evaluate_polynomial(std::span<const double> coefficients,
                                         std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * z + coefficients[i];
  return acc;
}

std::vector<std::complex<double>> find_polynomial_roots(std::span<const double> coefficients,
                                                        double tol, int max_iterations) {
  // Strip negligible leading coefficients to get the true degree.
  std::size_t deg = coefficients.size();
  double scale = 0.0;
  for (double c : coefficients) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw NumericError("root finder: zero polynomial");
  while (deg > 0 && std::abs(coefficients[deg - 1]) < 1e-14 * scale) --deg;
  if (deg <= 1) return {};  // constant polynomial, no roots

  // Exact zero roots deflate immediately (z | p(z)).
  std::vector<std::complex<double>> roots;
  std::size_t low = 0;
  while (low + 1 < deg && coefficients[low] == 0.0) {
    roots.emplace_back(0.0, 0.0);
    ++low;
  }

  const std::size_t n = deg - 1 - low;  // remaining degree
  std::vector<std::complex<double>> monic(n + 1);
  const double lead = coefficients[deg - 1];
  for (std::size_t i = 0; i <= n; ++i) monic[i] = coefficients[low + i] / lead;

  std::vector<std::complex<double>> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) +
                         0.25;  // offset keeps start points off the real axis
    z[k] = std::polar(0.9, angle);
  }

  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = monic.size(); i-- > 0;) acc = acc * x + monic[i];
    return acc;
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    double max_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom == std::complex<double>(0.0, 0.0)) {
        // Coincident iterates: nudge and continue.
        z[i] += std::complex<double>(1e-8, 1e-8);
        max_delta = std::max(max_delta, 1e-8);
        continue;
      }
      const std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      max_delta = std::max(max_delta, std::abs(delta));
    }
    if (max_delta < tol) {
      roots.insert(roots.end(), z.begin(), z.end());
      return roots;
    }
  }
  throw NumericError("root finder: no convergence after " + std::to_string(max_iterations) +
                     " iterations");
}

}  // namespace rhotica
