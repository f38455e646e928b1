#pragma once

#include "forest_spectra/matrix.hpp"

#include <complex>
#include <vector>

namespace forest_spectra {

inline constexpr int kNumericEigenMaxN = 50;

struct Eigenpair {
    std::complex<double> lambda;
    std::vector<std::complex<double>> vector;
};

// All eigenpairs of a dense real matrix via a standard dense solve.
// Approximate by nature; exactness claims live in the rational mode.
std::vector<Eigenpair> numeric_eigenpairs(const SquareMatrix<double>& g);

// max-norm of (lambda I - G) v
double residual(const SquareMatrix<double>& g, std::complex<double> lambda,
                const std::vector<std::complex<double>>& v);
double residual(const SquareMatrix<double>& g, double lambda, const std::vector<double>& v);

// max row sum of absolute values
double inf_norm(const SquareMatrix<double>& g);

}  // namespace forest_spectra
