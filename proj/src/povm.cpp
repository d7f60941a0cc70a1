#include "covobs/povm.hpp"

#include <algorithm>

#include "covobs/errors.hpp"

namespace covobs {

POVM make_povm(int dim, std::vector<Mat> atoms) {
  if (dim <= 0) throw SchemaError("make_povm: dimension must be positive");
  if (atoms.empty()) throw SchemaError("make_povm: no atoms");
  for (const Mat& a : atoms)
    if (a.rows() != dim || a.cols() != dim)
      throw SchemaError("make_povm: atom shape mismatch");
  POVM p;
  p.space_size = static_cast<int>(atoms.size());
  p.dim = dim;
  p.atoms = std::move(atoms);
  return p;
}

Report verify_povm(const POVM& p, const Tolerances& tol) {
  Report r;
  double worst_herm = 0.0;
  double worst_neg = 0.0;
  for (const Mat& a : p.atoms) {
    worst_herm = std::max(worst_herm, hermiticity_defect(a));
    worst_neg = std::max(worst_neg, -min_eigenvalue(a));
  }
  r.add("hermitian", worst_herm, tol.hermitian);
  r.add("positive", std::max(worst_neg, 0.0), tol.positivity_slack);

  Mat sum = Mat::Zero(p.dim, p.dim);
  for (const Mat& a : p.atoms) sum += a;
  r.add("normalized", frob_dist(sum, Mat::Identity(p.dim, p.dim)), tol.verify);
  return r;
}

Report verify_spectral(const POVM& p, const Tolerances& tol) {
  Report r = verify_povm(p, tol);
  double worst_idem = 0.0;
  for (const Mat& a : p.atoms)
    worst_idem = std::max(worst_idem, frob_dist(a * a, a));
  r.add("idempotent", worst_idem, tol.verify);

  double worst_orth = 0.0;
  for (int x = 0; x < p.space_size; ++x)
    for (int y = x + 1; y < p.space_size; ++y)
      worst_orth = std::max(worst_orth, (p.atoms[x] * p.atoms[y]).norm());
  r.add("orthogonal", worst_orth, tol.verify);
  return r;
}

bool is_projective(const POVM& p, double tol) {
  for (int x = 0; x < p.space_size; ++x)
    for (int y = 0; y < p.space_size; ++y) {
      Mat prod = p.atoms[x] * p.atoms[y];
      if (x == y) prod -= p.atoms[x];
      if (prod.norm() > tol) return false;
    }
  return true;
}

double max_self_commutator(const POVM& p) {
  double worst = 0.0;
  for (int x = 0; x < p.space_size; ++x)
    for (int y = x + 1; y < p.space_size; ++y)
      worst = std::max(worst, commutator_norm(p.atoms[x], p.atoms[y]));
  return worst;
}

SpectralMeasure as_spectral(const POVM& p, const Tolerances& tol) {
  if (!verify_spectral(p, tol).pass())
    throw AdmissibilityError("as_spectral: atoms are not orthogonal projectors");
  SpectralMeasure e;
  e.space_size = p.space_size;
  e.dim = p.dim;
  e.atoms = p.atoms;
  return e;
}

}  // namespace covobs
