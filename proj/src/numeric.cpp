#include "forest_spectra/numeric.hpp"

#include "forest_spectra/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace forest_spectra {

std::vector<Eigenpair> numeric_eigenpairs(const SquareMatrix<double>& g) {
    const int n = g.size();
    if (n > kNumericEigenMaxN)
        throw TooLarge("dense eigensolve refused for N > " + std::to_string(kNumericEigenMaxN));

    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(i, j);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("dense eigensolver did not converge");

    std::vector<Eigenpair> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[k].lambda = solver.eigenvalues()(k);
        out[k].vector.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out[k].vector[i] = solver.eigenvectors()(i, k);
    }
    return out;
}

double residual(const SquareMatrix<double>& g, std::complex<double> lambda,
                const std::vector<std::complex<double>>& v) {
    if (static_cast<int>(v.size()) != g.size())
        throw DimensionMismatch("vector length does not match matrix side");
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        std::complex<double> acc = lambda * v[i];
        for (int j = 0; j < g.size(); ++j) acc -= g(i, j) * v[j];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

double residual(const SquareMatrix<double>& g, double lambda, const std::vector<double>& v) {
    std::vector<std::complex<double>> cv(v.begin(), v.end());
    return residual(g, std::complex<double>(lambda, 0.0), cv);
}

double inf_norm(const SquareMatrix<double>& g) {
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        double row = 0.0;
        for (int j = 0; j < g.size(); ++j) row += std::abs(g(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

}  // namespace forest_spectra
