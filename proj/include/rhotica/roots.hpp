#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rhotica {

// All complex roots of a real polynomial c[0] + c[1] z + ... + c[n] z^n via
// simultaneous (Durand-Kerner) iteration. Start points sit on a circle of
// radius 0.9 with a fixed angular offset, so results are deterministic across
// platforms. Converges when the largest root update falls below `tol`; throws
// NumericError after `max_iterations` sweeps without convergence.
std::vector<std::complex<double>> find_polynomial_roots(std::span<const double> coefficients,
                                                        double tol = 1e-12,
                                                        int max_iterations = 200);

std::complex<double> evaluate_polynomial(std::span<const double> coefficients,
                                         std::complex<double> z);

}  // namespace rhotica
