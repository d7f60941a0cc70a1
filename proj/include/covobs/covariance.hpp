#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covobs/group.hpp"
#include "covobs/linalg.hpp"
#include "covobs/povm.hpp"
#include "covobs/rep.hpp"

namespace covobs {

/// POVM together with the action and representation it transforms under:
/// U(g) τ(x) U(g)† = τ(Λ(g)x).
struct CovarianceSystem {
  GroupAction action;
  UnitaryRep rep;  // U
  POVM povm;       // τ
};

/// Covariance system whose POVM is a spectral measure.
struct ImprimitivitySystem {
  GroupAction action;
  UnitaryRep rep;  // V
  SpectralMeasure spectral;  // E
};

/// POVM axioms plus the covariance identity, worst violation per axiom.
Report verify_covariance(const CovarianceSystem& s, const Tolerances& tol = {});
Report verify_imprimitivity(const ImprimitivitySystem& s,
                            const Tolerances& tol = {});

/// Isometry A with AU(g) = V(g)A. When assembled block-wise, `blocks`
/// holds the per-irrep isometries A_λ (empty otherwise).
struct Intertwiner {
  Mat matrix;
  std::vector<std::pair<std::string, Mat>> blocks;
};

/// AU(g)=V(g)A and A†A=1 against tol.
Report verify_intertwiner(const Mat& a, const UnitaryRep& u,
                          const UnitaryRep& v, double tol = 1e-9);

/// τ(x) = A† E(x) A.
POVM compress(const Mat& a, const SpectralMeasure& e);

/// Covariant Naimark dilation: block carrier of |S| copies of the state
/// space, E(x) the x-th block projector, (Aφ)_x = τ(x)^{1/2}φ,
/// [V(g)ψ]_x = U(g)ψ_{Λ(g⁻¹)x}.
std::pair<ImprimitivitySystem, Intertwiner> dilate(const CovarianceSystem& s);

/// The dilation identities (A†A=1, A†E(x)A=τ(x), AU(g)=V(g)A) evaluated
/// block-wise, without materializing the |S|·dim carrier.
Report verify_dilation(const CovarianceSystem& s, double tol = 1e-10);

/// Diagnostic: dimension of the invariant subspace generated from the
/// compressed range {E(x)Aφ} under the dilated system. Equals |S|·dim
/// exactly when the canonical dilation is minimal-free of slack.
int dilation_reach_dimension(const ImprimitivitySystem& sys, const Mat& a,
                             double rel_tol = 1e-8);

/// Existence side of the intertwiner theorem: for every block λ of the
/// source, the target must carry λ with at least the same multiplicity.
struct ExistenceCertificate {
  struct Deficit {
    std::string label;
    int required = 0;   // m_λ in the source
    int available = 0;  // m'_λ in the target
  };
  bool exists = false;
  std::vector<Deficit> deficits;  // violating λ when exists == false
};

ExistenceCertificate intertwiner_exists(const IsotypicDecomposition& source,
                                        const IsotypicDecomposition& target);

/// A = W_V · blockdiag(1_{d_λ} ⊗ A_λ) · W_U† from per-irrep isometries
/// A_λ : m_λ → m'_λ. Requires one block per source label; each A_λ must be
/// isometric within 1e-10.
Intertwiner build_intertwiner(
    const IsotypicDecomposition& source, const IsotypicDecomposition& target,
    const std::vector<std::pair<std::string, Mat>>& choice);

/// Brute-force oracle: orthonormal basis of {A : AU(g) = V(g)A} via the
/// stacked linear constraints over all group elements. Refuses above the
/// oracle bound.
std::vector<Mat> solve_intertwiners(const UnitaryRep& u, const UnitaryRep& v,
                                    int oracle_bound = 16,
                                    double rel_tol = 1e-8);

/// ρ(x) = ‖E(x)Aφ‖² for a normalized state φ.
Eigen::VectorXd probability_density(const Vec& state, const Mat& a,
                                    const SpectralMeasure& e,
                                    double norm_tol = 1e-10);

/// ρ(x) = ⟨φ, τ(x)φ⟩.
Eigen::VectorXd probability_density(const Vec& state, const POVM& povm,
                                    double norm_tol = 1e-10);

/// ρ(x) = tr[ρ_op τ(x)] for a density operator.
Eigen::VectorXd probability_density(const Mat& density_operator,
                                    const POVM& povm);

}  // namespace covobs
