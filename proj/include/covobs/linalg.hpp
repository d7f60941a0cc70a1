#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace covobs {

using cdouble = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// ‖A − B‖_F
double frob_dist(const Mat& a, const Mat& b);

/// ‖A†A − 1‖_F
double unitarity_defect(const Mat& m);

/// ‖A − A†‖_F
double hermiticity_defect(const Mat& m);

/// Smallest eigenvalue of the Hermitian part (A + A†)/2.
double min_eigenvalue(const Mat& m);

/// Kronecker product a ⊗ b.
Mat kron(const Mat& a, const Mat& b);

/// ‖[A, B]‖_F
double commutator_norm(const Mat& a, const Mat& b);

/// Positive-semidefinite square root of a Hermitian matrix. Eigenvalues in
/// [-negative_slack, 0) are clamped to 0; anything below -negative_slack
/// throws AdmissibilityError.
Mat psd_sqrt(const Mat& m, double negative_slack = 1e-9);

/// Orthonormalize the columns of m in index order (modified Gram-Schmidt),
/// dropping columns whose residual falls below drop_tol times the largest
/// column norm. Returns the surviving orthonormal columns.
Mat orthonormalize_columns(const Mat& m, double drop_tol = 1e-8);

/// Orthonormal basis of {x : Mx = 0}, as columns. Relative singular value
/// threshold rel_tol.
Mat nullspace(const Mat& m, double rel_tol = 1e-8);

/// Rank with relative singular value threshold.
int numeric_rank(const Mat& m, double rel_tol = 1e-8);

/// Smallest and largest singular values.
std::pair<double, double> singular_value_range(const Mat& m);

}  // namespace covobs
