#pragma once

#include <complex>
#include <vector>

namespace bcdiag {

/// All complex roots of a polynomial given by coefficients in increasing-degree
/// order, via Aberth-Ehrlich simultaneous iteration with Newton polish.
/// Negligible leading coefficients are trimmed first (roots escaping to
/// infinity, e.g. reflections of interior zeros at the origin).
/// Throws NumericalError if the iteration does not settle.
std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs);

}  // namespace bcdiag
