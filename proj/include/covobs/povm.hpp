#pragma once

#include <vector>

#include "covobs/linalg.hpp"
#include "covobs/report.hpp"

namespace covobs {

/// Check tolerances. `verify` guards identities between constructed
/// operators, `construct` guards construction consistency, `projective`
/// guards the atom-product idempotence test. The CLI exposes a single
/// override for `verify`.
struct Tolerances {
  double verify = 1e-9;
  double hermitian = 1e-10;
  double positivity_slack = 1e-9;
  double construct = 1e-10;
  double projective = 1e-8;
};

/// Outcome-indexed positive operators on a finite outcome space. Atoms may
/// be zero; the family must sum to the identity.
struct POVM {
  int space_size = 0;
  int dim = 0;
  std::vector<Mat> atoms;

  const Mat& atom(int x) const { return atoms[x]; }
};

/// POVM whose atoms are mutually orthogonal projectors.
struct SpectralMeasure : POVM {};

POVM make_povm(int dim, std::vector<Mat> atoms);

/// hermitian, positive (min eigenvalue), normalized (sum to identity).
Report verify_povm(const POVM& p, const Tolerances& tol = {});

/// POVM axioms plus idempotent and mutually orthogonal atoms.
Report verify_spectral(const POVM& p, const Tolerances& tol = {});

/// τ(x)τ(y) = δ_xy τ(x) within tol for all atom pairs.
bool is_projective(const POVM& p, double tol = 1e-8);

/// Largest ‖[τ(x), τ(y)]‖_F over atom pairs.
double max_self_commutator(const POVM& p);

/// Promote after verify_spectral passes; throws AdmissibilityError otherwise.
SpectralMeasure as_spectral(const POVM& p, const Tolerances& tol = {});

}  // namespace covobs
