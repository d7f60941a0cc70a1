#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covobs/group.hpp"
#include "covobs/linalg.hpp"
#include "covobs/povm.hpp"
#include "covobs/report.hpp"

namespace covobs {

/// Unitary representation as one matrix per group element.
struct UnitaryRep {
  GroupPtr group;
  int dim = 0;
  std::vector<Mat> matrices;

  const Mat& operator()(int g) const { return matrices[g]; }
};

UnitaryRep make_rep(GroupPtr group, std::vector<Mat> matrices);

/// unitarity ‖M†M−1‖_F ≤ 1e-9, homomorphism M(g)M(h)=M(gh) ≤ 1e-9,
/// M(identity)=1 ≤ 1e-12.
Report verify_rep(const UnitaryRep& u, double tol_unitary = 1e-9,
                  double tol_hom = 1e-9, double tol_identity = 1e-12);

std::vector<cdouble> character_of(const UnitaryRep& u);

/// Left regular representation: V(g)δ_h = δ_{gh}.
UnitaryRep regular_representation(GroupPtr g);

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);
UnitaryRep direct_sum_copies(const UnitaryRep& a, int copies);
/// q U(g) q† for unitary q.
UnitaryRep conjugate_rep(const UnitaryRep& u, const Mat& q);

struct Irrep {
  std::string label;
  UnitaryRep rep;
  std::vector<cdouble> character;

  int dim() const { return rep.dim; }
};

Irrep make_irrep(std::string label, UnitaryRep rep);

/// Irreducibility criterion Σ_g |χ(g)|² = |G| and character/trace
/// consistency.
Report verify_irrep(const Irrep& irr, double tol = 1e-9);

/// Complete list of pairwise-inequivalent irreps, sorted by (dim, label).
struct IrrepCatalog {
  GroupPtr group;
  std::vector<Irrep> irreps;

  int size() const { return static_cast<int>(irreps.size()); }
  int index_of(std::string_view label) const;
  const Irrep& at(std::string_view label) const;
};

IrrepCatalog make_catalog(GroupPtr group, std::vector<Irrep> irreps);

/// Completeness Σ d² = |G|, character orthogonality, and every member's
/// irrep invariants.
Report verify_catalog(const IrrepCatalog& cat, double tol_orth = 1e-10);

/// Finite analog of equivalence of irreducibles: equal characters.
bool equivalent(const Irrep& a, const Irrep& b, double tol = 1e-9);
bool equivalent(const UnitaryRep& a, const UnitaryRep& b, double tol = 1e-9);

/// ⟨χ_λ, χ_U⟩ rounded to the nearest integer; deviation beyond 1e-6 signals
/// a broken catalog and throws AdmissibilityError.
int multiplicity(const UnitaryRep& u, const Irrep& irr);

struct IsotypicBlock {
  std::string label;
  int dim = 0;           // d_λ
  int multiplicity = 0;  // m_λ ≥ 1
  int offset = 0;        // column offset of the block inside the basis
};

/// Central decomposition: basis W with W†U(g)W = ⊕_λ D^λ(g) ⊗ 1_{m_λ}.
/// Blocks follow the catalog's (dim, label) order and carry only m_λ ≥ 1.
struct IsotypicDecomposition {
  GroupPtr group;
  int dim = 0;
  std::vector<IsotypicBlock> blocks;
  Mat basis;  // W, dim×dim unitary

  int multiplicity_of(std::string_view label) const;  // 0 when absent
  const IsotypicBlock* block_of(std::string_view label) const;
};

IsotypicDecomposition decompose(const UnitaryRep& u, const IrrepCatalog& cat);

/// The model matrix ⊕_λ D^λ(g) ⊗ 1_{m_λ} for group element g.
Mat isotypic_model(const IsotypicDecomposition& d, const IrrepCatalog& cat,
                   int g);

/// ‖W†U(g)W − model(g)‖_F over all g, against tol.
Report verify_decomposition(const IsotypicDecomposition& d,
                            const UnitaryRep& u, const IrrepCatalog& cat,
                            double tol = 1e-9);

/// Mackey induction from a representation R of the little group: carrier of
/// wave functions on the homogeneous space, [V(g)ψ](x) = R(g_x⁻¹gg_{x'})ψ(x')
/// with x' = Λ(g⁻¹)x, together with the canonical diagonal spectral measure.
std::pair<UnitaryRep, SpectralMeasure> induce(const CosetSpace& cs,
                                              const UnitaryRep& sub_rep);

}  // namespace covobs
