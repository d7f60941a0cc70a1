#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covobs/catalogs.hpp"
#include "covobs/covariance.hpp"
#include "covobs/group.hpp"
#include "covobs/povm.hpp"
#include "covobs/rep.hpp"

namespace covobs {

/// A physical system playing the role of a reference frame: carrier
/// representation, its central decomposition, a normalized state, and the
/// intertwiner choice that fixes its frame observable.
struct QuantumFrame {
  std::string label;
  GroupPtr group;
  UnitaryRep rep;  // U
  IsotypicDecomposition decomp;
  Vec state;       // ‖φ‖ = 1
  int copies = 1;  // number of regular-representation copies in the carrier
  std::vector<std::pair<std::string, Mat>> choice;  // A_λ per irrep label
};

/// m copies of the left regular representation with its canonical position
/// spectral measure, plus the central decomposition used to assemble
/// intertwiners into it.
struct FrameCarrier {
  GroupPtr group;
  int copies = 1;
  UnitaryRep rep;            // V = m · (left regular)
  SpectralMeasure position;  // E(g) = block projectors at position g
  IsotypicDecomposition decomp;
};

FrameCarrier make_frame_carrier(const GroupPtr& group,
                                const IrrepCatalog& catalog, int copies);

/// Covariant POVM on S = G obtained by compressing the canonical position
/// measure through a block intertwiner.
struct FrameObservable {
  GroupPtr group;
  int copies = 1;
  Intertwiner isometry;
  POVM povm;  // τ on S = G, left covariant
};

/// Existence gate: m·d_λ ≥ m_λ for every λ in the support of U. On failure
/// the error names the deficient irreps and the minimal sufficient number
/// of copies.
FrameObservable build_frame_observable(
    const UnitaryRep& u, const IrrepCatalog& catalog, int copies,
    const std::vector<std::pair<std::string, Mat>>& choice);

FrameObservable build_frame_observable(
    const IsotypicDecomposition& state_decomp, const FrameCarrier& carrier,
    const std::vector<std::pair<std::string, Mat>>& choice);

/// Smallest m with m·d_λ ≥ m_λ for all λ.
int minimal_copies(const IsotypicDecomposition& state_decomp);

/// ρ(g) = ⟨φ, τ(g)φ⟩.
Eigen::VectorXd frame_density(const QuantumFrame& frame,
                              const FrameObservable& obs);

/// Pushforward of a frame observable along G → G/H, with the quotient
/// action it is covariant under.
struct QuotientObservable {
  LeftCosets cosets;
  GroupAction action;  // g', gH ↦ (g'g)H
  POVM povm;
};

QuotientObservable marginalize_to_quotient(const FrameObservable& obs,
                                           const Subgroup& h);

/// τ̂_i = 1 ⊗ τ_i and τ̂_j = τ_j ⊗ 1 on the joint space H_j ⊗ H_i.
std::pair<POVM, POVM> extend_to_product(const POVM& tau_i, const POVM& tau_j);

/// op acting on one tensor leg, identity elsewhere. dims are the leg
/// dimensions left-to-right in Kronecker order.
Mat embed_operator(const Mat& op, const std::vector<int>& dims, int leg);
POVM embed_povm(const POVM& p, const std::vector<int>& dims, int leg);

/// g ↦ U_0(g) ⊗ … ⊗ U_{k-1}(g).
UnitaryRep diagonal_product_rep(const std::vector<const UnitaryRep*>& factors);

/// Observable relative to a quantum frame: the convolution
/// τ_ij(y) = Σ_g τ̂_i(g) τ̂_j(Λ(g)y), invariant under the diagonal action.
struct RelativeObservable {
  int space_size = 0;
  POVM povm;  // atoms on the joint space
};

/// Requires the two extended POVMs to have mutually commuting ranges
/// within commute_tol; refuses otherwise.
RelativeObservable convolve(const POVM& ext_i, const POVM& ext_j,
                            const GroupAction& lambda,
                            double commute_tol = 1e-10);

/// Operator-path density ⟨ψ, τ_ij(y) ψ⟩ on a normalized joint state.
Eigen::VectorXd relative_density(const Vec& joint_state,
                                 const RelativeObservable& rel,
                                 double norm_tol = 1e-10);

/// Scalar convolution ρ_ij(y) = Σ_g ρ_i(g) ρ_j(Λ(g)y); cross-check for
/// product states.
Eigen::VectorXd scalar_convolution(const Eigen::VectorXd& rho_i,
                                   const Eigen::VectorXd& rho_j,
                                   const GroupAction& lambda);

struct CommutationWitness {
  double max_norm = 0.0;  // max ‖[τ_ik(x), τ_ij(y)]‖_F
  int atom_left = 0;
  int atom_right = 0;
  // sufficient condition: the shared frame POVM commutes with itself
  bool frame_checked = false;
  double frame_self_commutator = 0.0;
  bool sufficient_condition_holds = false;
};

/// Max commutator over atom pairs of two relative observables on the same
/// joint space; optionally evaluates the commuting-frame sufficient
/// condition on the shared frame's POVM.
CommutationWitness commutation_witness(const POVM& tau_ik, const POVM& tau_ij,
                                       const POVM* shared_frame = nullptr,
                                       double sufficient_tol = 1e-10);

/// The three-frame configuration: frame observables for i, j, k are built
/// on their own spaces, embedded into H_k ⊗ H_j ⊗ H_i, and convolved into
/// τ_ij and τ_ik; returns their commutation witness.
CommutationWitness paradox_witness(const QuantumFrame& frame_i,
                                   const QuantumFrame& frame_j,
                                   const QuantumFrame& frame_k,
                                   const IrrepCatalog& catalog);

}  // namespace covobs
