#include "covobs/frames.hpp"

#include <algorithm>
#include <cmath>

#include "covobs/errors.hpp"

namespace covobs {

FrameCarrier make_frame_carrier(const GroupPtr& group,
                                const IrrepCatalog& catalog, int copies) {
  if (copies < 1) throw SchemaError("frame carrier needs copies >= 1");
  FrameCarrier c;
  c.group = group;
  c.copies = copies;
  c.rep = direct_sum_copies(regular_representation(group), copies);

  const int n = group->order;
  std::vector<Mat> atoms(n, Mat::Zero(c.rep.dim, c.rep.dim));
  for (int x = 0; x < n; ++x)
    for (int copy = 0; copy < copies; ++copy)
      atoms[x](copy * n + x, copy * n + x) = 1.0;
  c.position.space_size = n;
  c.position.dim = c.rep.dim;
  c.position.atoms = std::move(atoms);

  c.decomp = decompose(c.rep, catalog);
  return c;
}

int minimal_copies(const IsotypicDecomposition& state_decomp) {
  int m = 1;
  for (const auto& b : state_decomp.blocks)
    m = std::max(m, (b.multiplicity + b.dim - 1) / b.dim);
  return m;
}

namespace {

void check_existence_gate(const IsotypicDecomposition& state_decomp,
                          int copies) {
  std::string deficit_msg;
  for (const auto& b : state_decomp.blocks)
    if (copies * b.dim < b.multiplicity)
      deficit_msg += " irrep '" + b.label + "' needs multiplicity " +
                     std::to_string(b.multiplicity) + " but " +
                     std::to_string(copies) + " copies provide " +
                     std::to_string(copies * b.dim) + ";";
  if (!deficit_msg.empty())
    throw AdmissibilityError(
        "frame observable does not exist with " + std::to_string(copies) +
        " regular copies;" + deficit_msg + " minimal sufficient copies: " +
        std::to_string(minimal_copies(state_decomp)));
}

}  // namespace

FrameObservable build_frame_observable(
    const IsotypicDecomposition& state_decomp, const FrameCarrier& carrier,
    const std::vector<std::pair<std::string, Mat>>& choice) {
  check_existence_gate(state_decomp, carrier.copies);
  Intertwiner a = build_intertwiner(state_decomp, carrier.decomp, choice);
  FrameObservable obs;
  obs.group = carrier.group;
  obs.copies = carrier.copies;
  obs.povm = compress(a.matrix, carrier.position);
  obs.isometry = std::move(a);
  return obs;
}

FrameObservable build_frame_observable(
    const UnitaryRep& u, const IrrepCatalog& catalog, int copies,
    const std::vector<std::pair<std::string, Mat>>& choice) {
  IsotypicDecomposition du = decompose(u, catalog);
  // gate first: cheaper than building the carrier, and the error names
  // the minimal sufficient number of copies
  check_existence_gate(du, copies);
  return build_frame_observable(du, make_frame_carrier(u.group, catalog, copies),
                                choice);
}

Eigen::VectorXd frame_density(const QuantumFrame& frame,
                              const FrameObservable& obs) {
  if (frame.state.size() != obs.povm.dim)
    throw SchemaError("frame_density: state dimension mismatch");
  return probability_density(frame.state, obs.povm);
}

QuotientObservable marginalize_to_quotient(const FrameObservable& obs,
                                           const Subgroup& h) {
  QuotientObservable q;
  q.cosets = left_cosets(obs.group, h);
  q.action = q.cosets.quotient_action();
  std::vector<Mat> atoms(q.cosets.count(),
                         Mat::Zero(obs.povm.dim, obs.povm.dim));
  for (int c = 0; c < q.cosets.count(); ++c)
    for (int g : q.cosets.cosets[c]) atoms[c] += obs.povm.atoms[g];
  q.povm = make_povm(obs.povm.dim, std::move(atoms));
  return q;
}

Mat embed_operator(const Mat& op, const std::vector<int>& dims, int leg) {
  if (leg < 0 || leg >= static_cast<int>(dims.size()))
    throw SchemaError("embed_operator: leg index out of range");
  if (op.rows() != dims[leg] || op.cols() != dims[leg])
    throw SchemaError("embed_operator: operator does not fit its leg");
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i == leg)
      out = kron(out, op);
    else
      out = kron(out, Mat::Identity(dims[i], dims[i]));
  }
  return out;
}

POVM embed_povm(const POVM& p, const std::vector<int>& dims, int leg) {
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<Mat> atoms(p.space_size);
  for (int x = 0; x < p.space_size; ++x)
    atoms[x] = embed_operator(p.atoms[x], dims, leg);
  return make_povm(total, std::move(atoms));
}

std::pair<POVM, POVM> extend_to_product(const POVM& tau_i, const POVM& tau_j) {
  std::vector<int> dims = {tau_j.dim, tau_i.dim};
  return {embed_povm(tau_i, dims, 1), embed_povm(tau_j, dims, 0)};
}

UnitaryRep diagonal_product_rep(
    const std::vector<const UnitaryRep*>& factors) {
  if (factors.empty())
    throw SchemaError("diagonal_product_rep: no factors");
  const GroupPtr& g = factors[0]->group;
  for (const UnitaryRep* f : factors)
    if (f->group->cayley != g->cayley)
      throw SchemaError("diagonal_product_rep: factor group mismatch");
  std::vector<Mat> mats(g->order);
  for (int a = 0; a < g->order; ++a) {
    Mat m = factors[0]->matrices[a];
    for (std::size_t i = 1; i < factors.size(); ++i)
      m = kron(m, factors[i]->matrices[a]);
    mats[a] = std::move(m);
  }
  return make_rep(g, std::move(mats));
}

RelativeObservable convolve(const POVM& ext_i, const POVM& ext_j,
                            const GroupAction& lambda, double commute_tol) {
  if (ext_i.dim != ext_j.dim)
    throw SchemaError("convolve: POVMs act on different joint spaces");
  if (ext_i.space_size != lambda.group->order)
    throw SchemaError("convolve: frame POVM must be indexed by the group");
  if (ext_j.space_size != lambda.space_size)
    throw SchemaError("convolve: system POVM outcome space mismatch");

  double worst = 0.0;
  for (const Mat& a : ext_i.atoms)
    for (const Mat& b : ext_j.atoms)
      worst = std::max(worst, commutator_norm(a, b));
  if (worst > commute_tol)
    throw AdmissibilityError(
        "convolve: POVM ranges do not commute (worst commutator " +
        std::to_string(worst) + "); the convolution would not be positive");

  const int n = lambda.group->order;
  std::vector<Mat> atoms(lambda.space_size,
                         Mat::Zero(ext_i.dim, ext_i.dim));
  for (int y = 0; y < lambda.space_size; ++y)
    for (int g = 0; g < n; ++g)
      atoms[y] += ext_i.atoms[g] * ext_j.atoms[lambda.table[g][y]];
  RelativeObservable rel;
  rel.space_size = lambda.space_size;
  rel.povm = make_povm(ext_i.dim, std::move(atoms));
  return rel;
}

Eigen::VectorXd relative_density(const Vec& joint_state,
                                 const RelativeObservable& rel,
                                 double norm_tol) {
  return probability_density(joint_state, rel.povm, norm_tol);
}

Eigen::VectorXd scalar_convolution(const Eigen::VectorXd& rho_i,
                                   const Eigen::VectorXd& rho_j,
                                   const GroupAction& lambda) {
  if (rho_i.size() != lambda.group->order)
    throw SchemaError("scalar_convolution: frame density size mismatch");
  if (rho_j.size() != lambda.space_size)
    throw SchemaError("scalar_convolution: system density size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(lambda.space_size);
  for (int y = 0; y < lambda.space_size; ++y)
    for (int g = 0; g < lambda.group->order; ++g)
      out(y) += rho_i(g) * rho_j(lambda.table[g][y]);
  return out;
}

CommutationWitness commutation_witness(const POVM& tau_ik, const POVM& tau_ij,
                                       const POVM* shared_frame,
                                       double sufficient_tol) {
  if (tau_ik.dim != tau_ij.dim)
    throw SchemaError("commutation_witness: joint space mismatch");
  CommutationWitness w;
  for (int x = 0; x < tau_ik.space_size; ++x)
    for (int y = 0; y < tau_ij.space_size; ++y) {
      double norm = commutator_norm(tau_ik.atoms[x], tau_ij.atoms[y]);
      if (norm > w.max_norm) {
        w.max_norm = norm;
        w.atom_left = x;
        w.atom_right = y;
      }
    }
  if (shared_frame != nullptr) {
    w.frame_checked = true;
    w.frame_self_commutator = max_self_commutator(*shared_frame);
    w.sufficient_condition_holds = w.frame_self_commutator <= sufficient_tol;
  }
  return w;
}

CommutationWitness paradox_witness(const QuantumFrame& frame_i,
                                   const QuantumFrame& frame_j,
                                   const QuantumFrame& frame_k,
                                   const IrrepCatalog& catalog) {
  const GroupPtr& g = frame_i.group;
  if (frame_j.group->cayley != g->cayley ||
      frame_k.group->cayley != g->cayley)
    throw SchemaError("paradox_witness: frames over different groups");

  auto obs_of = [&](const QuantumFrame& f) {
    return build_frame_observable(f.rep, catalog, f.copies, f.choice);
  };
  FrameObservable obs_i = obs_of(frame_i);
  FrameObservable obs_j = obs_of(frame_j);
  FrameObservable obs_k = obs_of(frame_k);

  // joint space H_k ⊗ H_j ⊗ H_i
  std::vector<int> dims = {obs_k.povm.dim, obs_j.povm.dim, obs_i.povm.dim};
  POVM hat_i = embed_povm(obs_i.povm, dims, 2);
  POVM hat_j = embed_povm(obs_j.povm, dims, 1);
  POVM hat_k = embed_povm(obs_k.povm, dims, 0);

  GroupAction left = left_translation_action(g);
  RelativeObservable tau_ij = convolve(hat_i, hat_j, left);
  RelativeObservable tau_ik = convolve(hat_i, hat_k, left);
  return commutation_witness(tau_ik.povm, tau_ij.povm, &obs_i.povm);
}

}  // namespace covobs
