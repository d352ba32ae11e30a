#include "dqpt/dense_eig.hpp"

#include <stdexcept>

#ifdef DQPT_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace dqpt {

void hermitian_eig(const Eigen::MatrixXcd& h, Eigen::VectorXd& evals, Eigen::MatrixXcd& evecs) {
  const auto n = h.rows();
#ifdef DQPT_HAVE_LAPACKE
  if (n >= 64) {
    evecs = h;
    evals.resize(n);
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                    reinterpret_cast<lapack_complex_double*>(evecs.data()),
                                    static_cast<lapack_int>(n), evals.data());
    if (info != 0) throw std::runtime_error("hermitian_eig: zheevd failed, info=" + std::to_string(info));
    return;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: eigensolver failed");
  evals = es.eigenvalues();
  evecs = es.eigenvectors();
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
#ifdef DQPT_HAVE_LAPACKE
  const auto n = h.rows();
  if (n >= 64) {
    Eigen::MatrixXcd work = h;
    Eigen::VectorXd evals(n);
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
                                    reinterpret_cast<lapack_complex_double*>(work.data()),
                                    static_cast<lapack_int>(n), evals.data());
    if (info != 0) throw std::runtime_error("hermitian_eig: zheevd failed, info=" + std::to_string(info));
    return evals;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace dqpt
