#include "covobs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "covobs/errors.hpp"

namespace covobs {

double frob_dist(const Mat& a, const Mat& b) { return (a - b).norm(); }

double unitarity_defect(const Mat& m) {
  return (m.adjoint() * m - Mat::Identity(m.cols(), m.cols())).norm();
}

double hermiticity_defect(const Mat& m) { return (m - m.adjoint()).norm(); }

double min_eigenvalue(const Mat& m) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double commutator_norm(const Mat& a, const Mat& b) {
  return (a * b - b * a).norm();
}

Mat psd_sqrt(const Mat& m, double negative_slack) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -negative_slack)
      throw AdmissibilityError("psd_sqrt: eigenvalue " + std::to_string(ev(i)) +
                               " below -" + std::to_string(negative_slack));
    // eigenvalues this small are roundoff in the null space; taking their
    // square root would amplify the noise to sqrt(eps)
    if (ev(i) < 1e-12) ev(i) = 0.0;
  }
  Eigen::VectorXd root = ev.cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() *
         es.eigenvectors().adjoint();
}

Mat orthonormalize_columns(const Mat& m, double drop_tol) {
  double scale = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    scale = std::max(scale, m.col(j).norm());
  if (scale == 0.0) return Mat(m.rows(), 0);

  std::vector<Vec> basis;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Vec v = m.col(j);
    for (const Vec& b : basis) v -= b.dot(v) * b;
    // second pass stabilizes against loss of orthogonality
    for (const Vec& b : basis) v -= b.dot(v) * b;
    double n = v.norm();
    if (n > drop_tol * scale) basis.push_back(v / n);
  }
  Mat out(m.rows(), static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) = basis[j];
  return out;
}

Mat nullspace(const Mat& m, double rel_tol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = rel_tol * (sv.size() > 0 ? std::max(sv(0), 1.0) : 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int numeric_rank(const Mat& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  double cutoff = rel_tol * std::max(sv(0), 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

std::pair<double, double> singular_value_range(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return {0.0, 0.0};
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace covobs
