#include "covobs/random.hpp"

#include <Eigen/QR>

#include "covobs/errors.hpp"

namespace covobs {

Mat random_gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      m(i, j) = cdouble(re, im);
    }
  return m;
}

namespace {

// QR with the R diagonal rotated to the positive real axis, so the Q
// factor is uniquely determined by the input matrix.
Mat phase_fixed_q(const Mat& m, int cols) {
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(m.rows(), cols);
  Mat r = q.adjoint() * m;
  for (int j = 0; j < cols; ++j) {
    cdouble d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

}  // namespace

Mat random_unitary(Rng& rng, int n) {
  return phase_fixed_q(random_gaussian_matrix(rng, n, n), n);
}

Mat random_isometry(Rng& rng, int rows, int cols) {
  if (cols > rows)
    throw SchemaError("random_isometry: more columns than rows");
  return phase_fixed_q(random_gaussian_matrix(rng, rows, cols), cols);
}

Vec random_state(Rng& rng, int n) {
  Vec v = random_gaussian_matrix(rng, n, 1).col(0);
  return v / v.norm();
}

}  // namespace covobs
