#pragma once

#include <Eigen/Dense>

namespace dqpt {

// Full spectral decomposition of a dense Hermitian matrix, eigenvalues
// ascending. Dispatches to LAPACKE zheevd when built with it (large ED
// blocks are ~10x faster there); otherwise Eigen's SelfAdjointEigenSolver.
void hermitian_eig(const Eigen::MatrixXcd& h, Eigen::VectorXd& evals, Eigen::MatrixXcd& evecs);

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

}  // namespace dqpt
