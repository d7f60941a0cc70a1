#include "covobs/rep.hpp"

#include <algorithm>
#include <cmath>

#include "covobs/errors.hpp"

namespace covobs {

UnitaryRep make_rep(GroupPtr group, std::vector<Mat> matrices) {
  if (!group) throw SchemaError("make_rep: null group");
  if (static_cast<int>(matrices.size()) != group->order)
    throw SchemaError("make_rep: need one matrix per group element");
  const auto d = matrices[0].rows();
  if (d == 0) throw SchemaError("make_rep: zero-dimensional carrier");
  for (const Mat& m : matrices)
    if (m.rows() != d || m.cols() != d)
      throw SchemaError("make_rep: matrix shape mismatch");
  UnitaryRep u;
  u.dim = static_cast<int>(d);
  u.matrices = std::move(matrices);
  u.group = std::move(group);
  return u;
}

Report verify_rep(const UnitaryRep& u, double tol_unitary, double tol_hom,
                  double tol_identity) {
  Report r;
  const FiniteGroup& g = *u.group;

  double worst_unitary = 0.0;
  for (const Mat& m : u.matrices)
    worst_unitary = std::max(worst_unitary, unitarity_defect(m));
  r.add("unitary", worst_unitary, tol_unitary);

  double worst_hom = 0.0;
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      worst_hom = std::max(
          worst_hom, frob_dist(u.matrices[a] * u.matrices[b],
                               u.matrices[g.mul(a, b)]));
  r.add("homomorphism", worst_hom, tol_hom);

  r.add("identity_matrix",
        frob_dist(u.matrices[g.identity], Mat::Identity(u.dim, u.dim)),
        tol_identity);
  return r;
}

std::vector<cdouble> character_of(const UnitaryRep& u) {
  std::vector<cdouble> chi(u.group->order);
  for (int g = 0; g < u.group->order; ++g) chi[g] = u.matrices[g].trace();
  return chi;
}

UnitaryRep regular_representation(GroupPtr g) {
  const int n = g->order;
  std::vector<Mat> mats(n, Mat::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h) mats[a](g->mul(a, h), h) = 1.0;
  return make_rep(std::move(g), std::move(mats));
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  if (a.group->cayley != b.group->cayley)
    throw SchemaError("direct_sum: representations of different groups");
  const int d = a.dim + b.dim;
  std::vector<Mat> mats(a.group->order, Mat::Zero(d, d));
  for (int g = 0; g < a.group->order; ++g) {
    mats[g].topLeftCorner(a.dim, a.dim) = a.matrices[g];
    mats[g].bottomRightCorner(b.dim, b.dim) = b.matrices[g];
  }
  return make_rep(a.group, std::move(mats));
}

UnitaryRep direct_sum_copies(const UnitaryRep& a, int copies) {
  if (copies < 1) throw SchemaError("direct_sum_copies: copies must be >= 1");
  const int d = a.dim * copies;
  std::vector<Mat> mats(a.group->order, Mat::Zero(d, d));
  for (int g = 0; g < a.group->order; ++g)
    for (int c = 0; c < copies; ++c)
      mats[g].block(c * a.dim, c * a.dim, a.dim, a.dim) = a.matrices[g];
  return make_rep(a.group, std::move(mats));
}

UnitaryRep conjugate_rep(const UnitaryRep& u, const Mat& q) {
  if (q.rows() != u.dim || q.cols() != u.dim)
    throw SchemaError("conjugate_rep: conjugator shape mismatch");
  std::vector<Mat> mats(u.group->order);
  for (int g = 0; g < u.group->order; ++g)
    mats[g] = q * u.matrices[g] * q.adjoint();
  return make_rep(u.group, std::move(mats));
}

Irrep make_irrep(std::string label, UnitaryRep rep) {
  Irrep irr;
  irr.label = std::move(label);
  irr.character = character_of(rep);
  irr.rep = std::move(rep);
  return irr;
}

Report verify_irrep(const Irrep& irr, double tol) {
  Report r = verify_rep(irr.rep);
  const int n = irr.rep.group->order;

  double norm2 = 0.0;
  for (const cdouble& c : irr.character) norm2 += std::norm(c);
  r.add("irreducible", std::abs(norm2 - static_cast<double>(n)), tol);

  double worst = 0.0;
  for (int g = 0; g < n; ++g)
    worst = std::max(worst,
                     std::abs(irr.character[g] - irr.rep.matrices[g].trace()));
  r.add("character_trace", worst, tol);
  return r;
}

int IrrepCatalog::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (irreps[i].label == label) return i;
  return -1;
}

const Irrep& IrrepCatalog::at(std::string_view label) const {
  int i = index_of(label);
  if (i < 0)
    throw SchemaError("catalog has no irrep labeled '" + std::string(label) +
                      "'");
  return irreps[i];
}

IrrepCatalog make_catalog(GroupPtr group, std::vector<Irrep> irreps) {
  std::sort(irreps.begin(), irreps.end(), [](const Irrep& a, const Irrep& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.label < b.label;
  });
  for (std::size_t i = 1; i < irreps.size(); ++i)
    if (irreps[i].label == irreps[i - 1].label)
      throw SchemaError("catalog has duplicate label '" + irreps[i].label +
                        "'");
  return IrrepCatalog{std::move(group), std::move(irreps)};
}

namespace {

cdouble char_inner(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  cdouble acc = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) acc += std::conj(a[g]) * b[g];
  return acc / static_cast<double>(a.size());
}

}  // namespace

Report verify_catalog(const IrrepCatalog& cat, double tol_orth) {
  Report r;
  int dim2 = 0;
  for (const Irrep& irr : cat.irreps) dim2 += irr.dim() * irr.dim();
  r.checks.push_back({"completeness", dim2 == cat.group->order,
                      std::abs(static_cast<double>(dim2 - cat.group->order))});

  double worst = 0.0;
  for (int i = 0; i < cat.size(); ++i)
    for (int j = 0; j < cat.size(); ++j) {
      cdouble inner = char_inner(cat.irreps[i].character,
                                 cat.irreps[j].character);
      worst = std::max(worst, std::abs(inner - (i == j ? 1.0 : 0.0)));
    }
  r.add("character_orthogonality", worst, tol_orth);

  for (const Irrep& irr : cat.irreps) {
    Report ir = verify_irrep(irr);
    for (auto& c : ir.checks) c.axiom = irr.label + ":" + c.axiom;
    r.merge(ir);
  }
  return r;
}

bool equivalent(const Irrep& a, const Irrep& b, double tol) {
  if (a.character.size() != b.character.size()) return false;
  double worst = 0.0;
  for (std::size_t g = 0; g < a.character.size(); ++g)
    worst = std::max(worst, std::abs(a.character[g] - b.character[g]));
  return worst <= tol;
}

bool equivalent(const UnitaryRep& a, const UnitaryRep& b, double tol) {
  if (a.group->order != b.group->order) return false;
  auto ca = character_of(a);
  auto cb = character_of(b);
  double worst = 0.0;
  for (std::size_t g = 0; g < ca.size(); ++g)
    worst = std::max(worst, std::abs(ca[g] - cb[g]));
  return worst <= tol;
}

int multiplicity(const UnitaryRep& u, const Irrep& irr) {
  if (u.group->order != irr.rep.group->order)
    throw SchemaError("multiplicity: group order mismatch");
  cdouble m = char_inner(irr.character, character_of(u));
  double rounded = std::round(m.real());
  if (std::abs(m - cdouble(rounded, 0.0)) > 1e-6)
    throw AdmissibilityError(
        "multiplicity of '" + irr.label + "' is " + std::to_string(m.real()) +
        " + " + std::to_string(m.imag()) +
        "i, not within 1e-6 of an integer; catalog inconsistent with rep");
  if (rounded < 0)
    throw AdmissibilityError("multiplicity of '" + irr.label + "' is negative");
  return static_cast<int>(rounded);
}

int IsotypicDecomposition::multiplicity_of(std::string_view label) const {
  const IsotypicBlock* b = block_of(label);
  return b ? b->multiplicity : 0;
}

const IsotypicBlock* IsotypicDecomposition::block_of(
    std::string_view label) const {
  for (const auto& b : blocks)
    if (b.label == label) return &b;
  return nullptr;
}

namespace {

/// Matrix-element transfer operator
/// P^λ_{i0} = (d_λ/|G|) Σ_g conj(D^λ(g)_{i0}) U(g).
Mat transfer_operator(const UnitaryRep& u, const Irrep& irr, int i) {
  const int n = u.group->order;
  Mat p = Mat::Zero(u.dim, u.dim);
  for (int g = 0; g < n; ++g)
    p += std::conj(irr.rep.matrices[g](i, 0)) * u.matrices[g];
  return p * (static_cast<double>(irr.dim()) / n);
}

}  // namespace

IsotypicDecomposition decompose(const UnitaryRep& u, const IrrepCatalog& cat) {
  if (u.group->cayley != cat.group->cayley)
    throw SchemaError("decompose: catalog is for a different group");

  IsotypicDecomposition out;
  out.group = u.group;
  out.dim = u.dim;
  out.basis = Mat::Zero(u.dim, u.dim);

  int offset = 0;
  for (const Irrep& irr : cat.irreps) {
    const int m = multiplicity(u, irr);
    if (m == 0) continue;
    const int d = irr.dim();

    Mat p00 = transfer_operator(u, irr, 0);
    Mat seeds = orthonormalize_columns(p00);
    if (seeds.cols() != m)
      throw AdmissibilityError(
          "decompose: projector rank for '" + irr.label + "' is " +
          std::to_string(seeds.cols()) + ", expected multiplicity " +
          std::to_string(m));

    // Column (i·m + α) carries row index i of D^λ and multiplicity
    // coordinate α, so the block reads D^λ(g) ⊗ 1_m.
    for (int i = 0; i < d; ++i) {
      Mat rows = i == 0 ? seeds : Mat(transfer_operator(u, irr, i) * seeds);
      for (int alpha = 0; alpha < m; ++alpha)
        out.basis.col(offset + i * m + alpha) = rows.col(alpha);
    }
    out.blocks.push_back({irr.label, d, m, offset});
    offset += d * m;
  }
  if (offset != u.dim)
    throw AdmissibilityError(
        "decompose: multiplicities account for dimension " +
        std::to_string(offset) + " of " + std::to_string(u.dim) +
        "; catalog incomplete for this representation");
  if (unitarity_defect(out.basis) > 1e-8 * u.dim)
    throw AdmissibilityError("decompose: assembled basis is not unitary");
  return out;
}

Mat isotypic_model(const IsotypicDecomposition& d, const IrrepCatalog& cat,
                   int g) {
  Mat model = Mat::Zero(d.dim, d.dim);
  for (const auto& b : d.blocks) {
    const Irrep& irr = cat.at(b.label);
    model.block(b.offset, b.offset, b.dim * b.multiplicity,
                b.dim * b.multiplicity) =
        kron(irr.rep.matrices[g],
             Mat::Identity(b.multiplicity, b.multiplicity));
  }
  return model;
}

Report verify_decomposition(const IsotypicDecomposition& d,
                            const UnitaryRep& u, const IrrepCatalog& cat,
                            double tol) {
  Report r;
  r.add("basis_unitary", unitarity_defect(d.basis), tol);
  double worst = 0.0;
  for (int g = 0; g < u.group->order; ++g) {
    Mat lhs = d.basis.adjoint() * u.matrices[g] * d.basis;
    worst = std::max(worst, frob_dist(lhs, isotypic_model(d, cat, g)));
  }
  r.add("block_diagonalizes", worst, tol);
  return r;
}

std::pair<UnitaryRep, SpectralMeasure> induce(const CosetSpace& cs,
                                              const UnitaryRep& sub_rep) {
  if (sub_rep.group->cayley != cs.subgroup.as_group->cayley)
    throw SchemaError(
        "induce: representation is not defined on the little group");

  const GroupAction& act = cs.action;
  const FiniteGroup& g = *act.group;
  const int s = act.space_size;
  const int dr = sub_rep.dim;
  const int dim = s * dr;

  std::vector<Mat> mats(g.order, Mat::Zero(dim, dim));
  for (int a = 0; a < g.order; ++a)
    for (int x = 0; x < s; ++x) {
      int x2 = act.table[g.inv(a)][x];
      mats[a].block(x * dr, x2 * dr, dr, dr) =
          sub_rep.matrices[cs.cocycle(a, x)];
    }
  UnitaryRep v = make_rep(act.group, std::move(mats));

  std::vector<Mat> atoms(s, Mat::Zero(dim, dim));
  for (int x = 0; x < s; ++x)
    atoms[x].block(x * dr, x * dr, dr, dr) = Mat::Identity(dr, dr);
  SpectralMeasure e;
  e.space_size = s;
  e.dim = dim;
  e.atoms = std::move(atoms);
  return {std::move(v), std::move(e)};
}

}  // namespace covobs
