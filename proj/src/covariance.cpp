#include "covobs/covariance.hpp"

#include <algorithm>
#include <cmath>

#include "covobs/errors.hpp"

namespace covobs {

namespace {

double covariance_defect(const GroupAction& act, const UnitaryRep& rep,
                         const std::vector<Mat>& atoms) {
  double worst = 0.0;
  for (int g = 0; g < act.group->order; ++g) {
    for (int x = 0; x < act.space_size; ++x) {
      Mat lhs = rep.matrices[g] * atoms[x] * rep.matrices[g].adjoint();
      worst = std::max(worst, frob_dist(lhs, atoms[act.table[g][x]]));
    }
  }
  return worst;
}

void check_system_shapes(const GroupAction& act, const UnitaryRep& rep,
                         const POVM& povm) {
  if (act.group->cayley != rep.group->cayley)
    throw SchemaError("covariance system: action and rep group mismatch");
  if (act.space_size != povm.space_size)
    throw SchemaError("covariance system: outcome space size mismatch");
  if (rep.dim != povm.dim)
    throw SchemaError("covariance system: state space dimension mismatch");
}

}  // namespace

Report verify_covariance(const CovarianceSystem& s, const Tolerances& tol) {
  check_system_shapes(s.action, s.rep, s.povm);
  Report r = verify_povm(s.povm, tol);
  r.add("covariance", covariance_defect(s.action, s.rep, s.povm.atoms),
        tol.verify);
  return r;
}

Report verify_imprimitivity(const ImprimitivitySystem& s,
                            const Tolerances& tol) {
  check_system_shapes(s.action, s.rep, s.spectral);
  Report r = verify_spectral(s.spectral, tol);
  r.add("covariance", covariance_defect(s.action, s.rep, s.spectral.atoms),
        tol.verify);
  return r;
}

Report verify_intertwiner(const Mat& a, const UnitaryRep& u,
                          const UnitaryRep& v, double tol) {
  if (a.cols() != u.dim || a.rows() != v.dim)
    throw SchemaError("intertwiner shape does not match the representations");
  Report r;
  double worst = 0.0;
  for (int g = 0; g < u.group->order; ++g)
    worst = std::max(
        worst, frob_dist(a * u.matrices[g], v.matrices[g] * a));
  r.add("intertwines", worst, tol);
  r.add("isometric", unitarity_defect(a), tol);
  return r;
}

POVM compress(const Mat& a, const SpectralMeasure& e) {
  if (a.rows() != e.dim)
    throw SchemaError("compress: isometry target dimension mismatch");
  std::vector<Mat> atoms(e.space_size);
  for (int x = 0; x < e.space_size; ++x)
    atoms[x] = a.adjoint() * e.atoms[x] * a;
  return make_povm(static_cast<int>(a.cols()), std::move(atoms));
}

std::pair<ImprimitivitySystem, Intertwiner> dilate(const CovarianceSystem& s) {
  check_system_shapes(s.action, s.rep, s.povm);
  const int d = s.povm.dim;
  const int n_out = s.povm.space_size;
  const int big = n_out * d;

  Mat a = Mat::Zero(big, d);
  for (int x = 0; x < n_out; ++x)
    a.block(x * d, 0, d, d) = psd_sqrt(s.povm.atoms[x]);

  std::vector<Mat> vmats(s.action.group->order, Mat::Zero(big, big));
  for (int g = 0; g < s.action.group->order; ++g) {
    int ginv = s.action.group->inv(g);
    for (int x = 0; x < n_out; ++x) {
      int src = s.action.table[ginv][x];
      vmats[g].block(x * d, src * d, d, d) = s.rep.matrices[g];
    }
  }

  std::vector<Mat> atoms(n_out, Mat::Zero(big, big));
  for (int x = 0; x < n_out; ++x)
    atoms[x].block(x * d, x * d, d, d) = Mat::Identity(d, d);

  ImprimitivitySystem sys;
  sys.action = s.action;
  sys.rep = make_rep(s.action.group, std::move(vmats));
  sys.spectral.space_size = n_out;
  sys.spectral.dim = big;
  sys.spectral.atoms = std::move(atoms);
  return {std::move(sys), Intertwiner{std::move(a), {}}};
}

Report verify_dilation(const CovarianceSystem& s, double tol) {
  check_system_shapes(s.action, s.rep, s.povm);
  const int n_out = s.povm.space_size;
  std::vector<Mat> roots(n_out);
  for (int x = 0; x < n_out; ++x) roots[x] = psd_sqrt(s.povm.atoms[x]);

  Report r;
  Mat gram = Mat::Zero(s.povm.dim, s.povm.dim);
  for (int x = 0; x < n_out; ++x) gram += roots[x].adjoint() * roots[x];
  r.add("isometric", frob_dist(gram, Mat::Identity(s.povm.dim, s.povm.dim)),
        tol);

  double worst_rt = 0.0;  // compress(dilate) atom-wise
  for (int x = 0; x < n_out; ++x)
    worst_rt = std::max(
        worst_rt, frob_dist(roots[x].adjoint() * roots[x], s.povm.atoms[x]));
  r.add("round_trip", worst_rt, tol);

  // (AU(g))_x = τ(x)^{1/2}U(g) must match (V(g)A)_x = U(g)τ(Λ(g⁻¹)x)^{1/2}
  double worst_int = 0.0;
  for (int g = 0; g < s.action.group->order; ++g) {
    int ginv = s.action.group->inv(g);
    for (int x = 0; x < n_out; ++x) {
      Mat lhs = roots[x] * s.rep.matrices[g];
      Mat rhs = s.rep.matrices[g] * roots[s.action.table[ginv][x]];
      worst_int = std::max(worst_int, frob_dist(lhs, rhs));
    }
  }
  r.add("intertwines", worst_int, tol);
  return r;
}

int dilation_reach_dimension(const ImprimitivitySystem& sys, const Mat& a,
                             double rel_tol) {
  // close the span of the compressed range under E(x) and V(g)
  Mat span = orthonormalize_columns(a, rel_tol);
  for (;;) {
    std::vector<Mat> grown{span};
    for (const Mat& atom : sys.spectral.atoms) grown.push_back(atom * span);
    for (const Mat& vg : sys.rep.matrices) grown.push_back(vg * span);
    Mat all(span.rows(),
            static_cast<Eigen::Index>(grown.size()) * span.cols());
    Eigen::Index col = 0;
    for (const Mat& m : grown) {
      all.middleCols(col, m.cols()) = m;
      col += m.cols();
    }
    Mat next = orthonormalize_columns(all, rel_tol);
    if (next.cols() == span.cols()) return static_cast<int>(span.cols());
    span = std::move(next);
  }
}

ExistenceCertificate intertwiner_exists(const IsotypicDecomposition& source,
                                        const IsotypicDecomposition& target) {
  ExistenceCertificate cert;
  cert.exists = true;
  for (const auto& b : source.blocks) {
    int avail = target.multiplicity_of(b.label);
    if (avail < b.multiplicity) {
      cert.exists = false;
      cert.deficits.push_back({b.label, b.multiplicity, avail});
    }
  }
  return cert;
}

Intertwiner build_intertwiner(
    const IsotypicDecomposition& source, const IsotypicDecomposition& target,
    const std::vector<std::pair<std::string, Mat>>& choice) {
  ExistenceCertificate cert = intertwiner_exists(source, target);
  if (!cert.exists) {
    std::string msg = "build_intertwiner: target lacks multiplicity for";
    for (const auto& d : cert.deficits)
      msg += " " + d.label + " (needs " + std::to_string(d.required) +
             ", has " + std::to_string(d.available) + ")";
    throw AdmissibilityError(msg);
  }

  auto find_block = [&choice](const std::string& label) -> const Mat* {
    for (const auto& [l, m] : choice)
      if (l == label) return &m;
    return nullptr;
  };

  Mat b = Mat::Zero(target.dim, source.dim);
  std::vector<std::pair<std::string, Mat>> used;
  for (const auto& sb : source.blocks) {
    const Mat* a_lambda = find_block(sb.label);
    if (a_lambda == nullptr)
      throw AdmissibilityError("build_intertwiner: missing isometry for '" +
                               sb.label + "'");
    const IsotypicBlock* tb = target.block_of(sb.label);
    if (a_lambda->rows() != tb->multiplicity ||
        a_lambda->cols() != sb.multiplicity)
      throw SchemaError("build_intertwiner: isometry for '" + sb.label +
                        "' must be " + std::to_string(tb->multiplicity) + "x" +
                        std::to_string(sb.multiplicity));
    if (unitarity_defect(*a_lambda) > 1e-10)
      throw AdmissibilityError("build_intertwiner: choice for '" + sb.label +
                               "' is not isometric");
    b.block(tb->offset, sb.offset, tb->dim * tb->multiplicity,
            sb.dim * sb.multiplicity) =
        kron(Mat::Identity(sb.dim, sb.dim), *a_lambda);
    used.emplace_back(sb.label, *a_lambda);
  }
  return Intertwiner{target.basis * b * source.basis.adjoint(),
                     std::move(used)};
}

std::vector<Mat> solve_intertwiners(const UnitaryRep& u, const UnitaryRep& v,
                                    int oracle_bound, double rel_tol) {
  if (u.group->cayley != v.group->cayley)
    throw SchemaError("solve_intertwiners: representations of different groups");
  if (u.dim > oracle_bound || v.dim > oracle_bound)
    throw AdmissibilityError(
        "solve_intertwiners: dimensions " + std::to_string(u.dim) + "x" +
        std::to_string(v.dim) + " exceed the oracle bound " +
        std::to_string(oracle_bound));

  const int n = u.group->order;
  const int unknowns = u.dim * v.dim;
  Mat constraints(static_cast<Eigen::Index>(n) * unknowns, unknowns);
  Mat eye_v = Mat::Identity(v.dim, v.dim);
  Mat eye_u = Mat::Identity(u.dim, u.dim);
  for (int g = 0; g < n; ++g)
    constraints.middleRows(static_cast<Eigen::Index>(g) * unknowns, unknowns) =
        kron(u.matrices[g].transpose(), eye_v) - kron(eye_u, v.matrices[g]);

  Mat null = nullspace(constraints, rel_tol);
  std::vector<Mat> basis;
  basis.reserve(null.cols());
  for (Eigen::Index j = 0; j < null.cols(); ++j) {
    Mat a(v.dim, u.dim);
    for (int col = 0; col < u.dim; ++col)
      a.col(col) = null.col(j).segment(static_cast<Eigen::Index>(col) * v.dim,
                                       v.dim);
    basis.push_back(std::move(a));
  }
  return basis;
}

Eigen::VectorXd probability_density(const Vec& state, const Mat& a,
                                    const SpectralMeasure& e,
                                    double norm_tol) {
  if (state.size() != a.cols())
    throw SchemaError("probability_density: state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > norm_tol)
    throw AdmissibilityError("probability_density: state is not normalized");
  Vec image = a * state;
  Eigen::VectorXd rho(e.space_size);
  for (int x = 0; x < e.space_size; ++x)
    rho(x) = (e.atoms[x] * image).squaredNorm();
  return rho;
}

Eigen::VectorXd probability_density(const Vec& state, const POVM& povm,
                                    double norm_tol) {
  if (state.size() != povm.dim)
    throw SchemaError("probability_density: state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > norm_tol)
    throw AdmissibilityError("probability_density: state is not normalized");
  Eigen::VectorXd rho(povm.space_size);
  for (int x = 0; x < povm.space_size; ++x)
    rho(x) = std::real(state.dot(povm.atoms[x] * state));
  return rho;
}

Eigen::VectorXd probability_density(const Mat& density_operator,
                                    const POVM& povm) {
  if (density_operator.rows() != povm.dim ||
      density_operator.cols() != povm.dim)
    throw SchemaError("probability_density: density operator shape mismatch");
  Eigen::VectorXd rho(povm.space_size);
  for (int x = 0; x < povm.space_size; ++x)
    rho(x) = std::real((density_operator * povm.atoms[x]).trace());
  return rho;
}

}  // namespace covobs
