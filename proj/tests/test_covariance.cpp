#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covobs/catalogs.hpp"
#include "covobs/covariance.hpp"
#include "covobs/errors.hpp"
#include "covobs/random.hpp"

using namespace covobs;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Independent construction of the Z3 worked example: U = diag(χ0, χ1),
// A's columns are the corresponding Fourier columns of the regular carrier.
struct Z3Example {
  GroupPtr group;
  IrrepCatalog catalog;
  UnitaryRep u;
  UnitaryRep v;
  SpectralMeasure e;
  Mat a;  // hand-built 3×2 intertwiner
};

Z3Example z3_example() {
  auto [z3, catalog] = builtin("Z3");
  std::vector<Mat> umats(3, Mat::Zero(2, 2));
  for (int g = 0; g < 3; ++g) {
    umats[g](0, 0) = 1.0;
    umats[g](1, 1) = std::polar(1.0, -kTwoPi * g / 3.0);  // χ1(g)
  }
  UnitaryRep u = make_rep(z3, std::move(umats));

  UnitaryRep v = regular_representation(z3);
  std::vector<Mat> atoms(3, Mat::Zero(3, 3));
  for (int x = 0; x < 3; ++x) atoms[x](x, x) = 1.0;
  SpectralMeasure e;
  e.space_size = 3;
  e.dim = 3;
  e.atoms = std::move(atoms);

  // column λ spans the χ_λ line of the regular rep: V(g)v = χ_λ(g)v with
  // χ_λ(g) = e^{-2πiλg/3} forces v(x) ∝ e^{+2πiλx/3}
  Mat a(3, 2);
  for (int x = 0; x < 3; ++x) {
    a(x, 0) = 1.0 / std::sqrt(3.0);
    a(x, 1) = std::polar(1.0 / std::sqrt(3.0), kTwoPi * x / 3.0);
  }
  return {z3, std::move(catalog), std::move(u), std::move(v), std::move(e),
          std::move(a)};
}

// random covariant POVM on Z_n: compress the regular carrier through a
// random isometry assembled irrep-blockwise
CovarianceSystem random_cyclic_system(int n, std::uint64_t seed, int dim) {
  auto [zn, catalog] = builtin("Z" + std::to_string(n));
  Rng rng = make_rng(seed);
  // dim distinct characters give a multiplicity-free U
  REQUIRE(dim <= n);
  std::vector<Mat> umats(n, Mat::Zero(dim, dim));
  for (int g = 0; g < n; ++g)
    for (int k = 0; k < dim; ++k)
      umats[g](k, k) = catalog.irreps[k].rep.matrices[g](0, 0);
  UnitaryRep u = make_rep(zn, std::move(umats));

  UnitaryRep v = regular_representation(zn);
  IsotypicDecomposition du = decompose(u, catalog);
  IsotypicDecomposition dv = decompose(v, catalog);
  std::vector<std::pair<std::string, Mat>> choice;
  for (const auto& b : du.blocks) {
    Mat phase(1, 1);
    phase(0, 0) = std::polar(1.0, std::uniform_real_distribution<double>(
                                      0.0, kTwoPi)(rng));
    choice.emplace_back(b.label, phase);
  }
  Intertwiner a = build_intertwiner(du, dv, choice);

  std::vector<Mat> atoms(n, Mat::Zero(n, n));
  for (int x = 0; x < n; ++x) atoms[x](x, x) = 1.0;
  SpectralMeasure e;
  e.space_size = n;
  e.dim = n;
  e.atoms = std::move(atoms);

  CovarianceSystem sys;
  sys.action = left_translation_action(zn);
  sys.rep = std::move(u);
  sys.povm = compress(a.matrix, e);
  return sys;
}

}  // namespace

TEST_CASE("compress with the identity returns the spectral measure") {
  Z3Example ex = z3_example();
  POVM tau = compress(Mat::Identity(3, 3), ex.e);
  for (int x = 0; x < 3; ++x)
    CHECK(frob_dist(tau.atoms[x], ex.e.atoms[x]) == 0.0);
}

TEST_CASE("Z2 uniform compression") {
  auto z2 = make_cyclic(2);
  UnitaryRep v = regular_representation(z2);
  std::vector<Mat> atoms(2, Mat::Zero(2, 2));
  atoms[0](0, 0) = 1.0;
  atoms[1](1, 1) = 1.0;
  SpectralMeasure e;
  e.space_size = 2;
  e.dim = 2;
  e.atoms = std::move(atoms);

  Mat a(2, 1);
  a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  POVM tau = compress(a, e);
  CHECK(std::abs(tau.atoms[0](0, 0) - cdouble(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(tau.atoms[1](0, 0) - cdouble(0.5, 0.0)) < 1e-15);
}

TEST_CASE("compression through any isometry is normalized") {
  Rng rng = make_rng(17);
  Z3Example ex = z3_example();
  for (int trial = 0; trial < 5; ++trial) {
    Mat a = random_isometry(rng, 3, 2);
    POVM tau = compress(a, ex.e);
    CHECK(verify_povm(tau).find("normalized")->pass);
  }
}

TEST_CASE("Z3 worked example: intertwiner, atoms, density") {
  Z3Example ex = z3_example();

  SUBCASE("hand-built A intertwines and is isometric") {
    CHECK(verify_intertwiner(ex.a, ex.u, ex.v).pass());
  }

  SUBCASE("build_intertwiner with zero phases reproduces the Fourier A") {
    IsotypicDecomposition du = decompose(ex.u, ex.catalog);
    IsotypicDecomposition dv = decompose(ex.v, ex.catalog);
    Mat one = Mat::Identity(1, 1);
    Intertwiner a = build_intertwiner(
        du, dv, {{"chi0", one}, {"chi1", one}});
    CHECK(frob_dist(a.matrix, ex.a) < 1e-12);
  }

  SUBCASE("atoms are the rank-one Fourier projectors") {
    POVM tau = compress(ex.a, ex.e);
    for (int k = 0; k < 3; ++k) {
      Vec v(2);
      v << 1.0, std::polar(1.0, -kTwoPi * k / 3.0);
      Mat expect = (v * v.adjoint()) / 3.0;
      CHECK(frob_dist(tau.atoms[k], expect) < 1e-14);
    }
  }

  SUBCASE("density of (1,1)/sqrt(2) is (2/3, 1/6, 1/6)") {
    Vec phi(2);
    phi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Eigen::VectorXd rho = probability_density(phi, ex.a, ex.e);
    CHECK(std::abs(rho(0) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(rho(1) - 1.0 / 6.0) < 1e-12);
    CHECK(std::abs(rho(2) - 1.0 / 6.0) < 1e-12);
    CHECK(std::abs(rho.sum() - 1.0) < 1e-12);

    // τ-path and E-path agree
    POVM tau = compress(ex.a, ex.e);
    Eigen::VectorXd rho2 = probability_density(phi, tau);
    CHECK((rho - rho2).cwiseAbs().maxCoeff() < 1e-12);

    // mixed-state path on the rank-one density operator
    Mat rho_op = phi * phi.adjoint();
    Eigen::VectorXd rho3 = probability_density(rho_op, tau);
    CHECK((rho - rho3).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("left covariance of the compressed POVM") {
    POVM tau = compress(ex.a, ex.e);
    CovarianceSystem sys{left_translation_action(ex.group), ex.u, tau};
    CHECK(verify_covariance(sys).pass());
  }
}

TEST_CASE("uniform POVM gives uniform density") {
  std::vector<Mat> atoms(4, Mat::Identity(3, 3) / 4.0);
  POVM tau = make_povm(3, std::move(atoms));
  Rng rng = make_rng(23);
  Eigen::VectorXd rho = probability_density(random_state(rng, 3), tau);
  for (int x = 0; x < 4; ++x) CHECK(std::abs(rho(x) - 0.25) < 1e-12);
}

TEST_CASE("unnormalized states are rejected") {
  std::vector<Mat> atoms(2, 0.5 * Mat::Identity(2, 2));
  POVM tau = make_povm(2, std::move(atoms));
  Vec phi(2);
  phi << 1.0, 1.0;
  CHECK_THROWS_AS(probability_density(phi, tau), AdmissibilityError);
}

TEST_CASE("dilation of a covariant POVM") {
  CovarianceSystem sys = random_cyclic_system(3, 41, 2);
  REQUIRE(verify_covariance(sys).pass());

  auto [imp, a] = dilate(sys);
  CHECK(imp.spectral.dim == 3 * 2);

  SUBCASE("dilated system is imprimitive") {
    CHECK(verify_imprimitivity(imp).pass());
  }
  SUBCASE("A is an isometric intertwiner into the dilation") {
    CHECK(verify_intertwiner(a.matrix, sys.rep, imp.rep, 1e-10).pass());
  }
  SUBCASE("compress(dilate) is the identity on atoms") {
    POVM back = compress(a.matrix, imp.spectral);
    for (int x = 0; x < 3; ++x)
      CHECK(frob_dist(back.atoms[x], sys.povm.atoms[x]) < 1e-10);
  }
  SUBCASE("A†E(x)A = τ(x) directly") {
    for (int x = 0; x < 3; ++x)
      CHECK(frob_dist(a.matrix.adjoint() * imp.spectral.atoms[x] * a.matrix,
                      sys.povm.atoms[x]) < 1e-10);
  }
  SUBCASE("blockwise verifier agrees") {
    Report r = verify_dilation(sys, 1e-10);
    CHECK(r.pass());
  }
}

TEST_CASE("dilation of the uniform POVM under the trivial rep") {
  auto z2 = make_cyclic(2);
  std::vector<Mat> atoms(2, 0.5 * Mat::Identity(1, 1));
  CovarianceSystem sys;
  sys.action = left_translation_action(z2);
  sys.rep = make_rep(z2, std::vector<Mat>(2, Mat::Identity(1, 1)));
  sys.povm = make_povm(1, std::move(atoms));

  auto [imp, a] = dilate(sys);
  // A lands in the symmetric subspace of C²
  CHECK(std::abs(a.matrix(0, 0) - a.matrix(1, 0)) < 1e-15);
  CHECK(verify_imprimitivity(imp).pass());
  POVM back = compress(a.matrix, imp.spectral);
  CHECK(std::abs(back.atoms[0](0, 0) - cdouble(0.5, 0.0)) < 1e-12);
}

TEST_CASE("dilate refuses a genuinely negative atom") {
  auto z2 = make_cyclic(2);
  Mat bad = Mat::Identity(1, 1);
  bad(0, 0) = -0.2;
  CovarianceSystem sys;
  sys.action = left_translation_action(z2);
  sys.rep = make_rep(z2, std::vector<Mat>(2, Mat::Identity(1, 1)));
  sys.povm = make_povm(1, {bad, Mat::Identity(1, 1) - bad});
  CHECK_THROWS_AS(dilate(sys), AdmissibilityError);
}

TEST_CASE("canonical dilation of a spectral measure reaches only dim(H)") {
  // τ already projective: the invariant subspace generated by E(x)Aφ has
  // the dimension of the original space, showing the slack of the
  // non-minimal block construction
  auto z3 = make_cyclic(3);
  UnitaryRep reg = regular_representation(z3);
  std::vector<Mat> atoms(3, Mat::Zero(3, 3));
  for (int x = 0; x < 3; ++x) atoms[x](x, x) = 1.0;
  CovarianceSystem sys{left_translation_action(z3), reg,
                       make_povm(3, std::move(atoms))};
  auto [imp, a] = dilate(sys);
  CHECK(dilation_reach_dimension(imp, a.matrix) == 3);
}

TEST_CASE("existence gate") {
  auto [z2, catalog] = builtin("Z2");
  UnitaryRep reg = regular_representation(z2);
  IsotypicDecomposition dreg = decompose(reg, catalog);

  SUBCASE("equal multiplicities pass") {
    ExistenceCertificate cert = intertwiner_exists(dreg, dreg);
    CHECK(cert.exists);
    CHECK(cert.deficits.empty());
  }
  SUBCASE("sign-containing source fails against trivial-only target") {
    std::vector<Mat> ones(2, Mat::Identity(1, 1));
    UnitaryRep triv = make_rep(z2, std::move(ones));
    IsotypicDecomposition dtriv = decompose(triv, catalog);
    ExistenceCertificate cert = intertwiner_exists(dreg, dtriv);
    CHECK_FALSE(cert.exists);
    REQUIRE(cert.deficits.size() == 1);
    CHECK(cert.deficits[0].label == "chi1");
    CHECK(cert.deficits[0].required == 1);
    CHECK(cert.deficits[0].available == 0);
  }
}

TEST_CASE("multiplicity overflow against a single regular copy") {
  auto [s3, catalog] = builtin("S3");
  const Irrep& standard = catalog.at("standard");
  UnitaryRep u = direct_sum_copies(standard.rep, 3);  // m = 3 > d = 2
  IsotypicDecomposition du = decompose(u, catalog);
  IsotypicDecomposition dv = decompose(regular_representation(s3), catalog);
  ExistenceCertificate cert = intertwiner_exists(du, dv);
  CHECK_FALSE(cert.exists);
  REQUIRE(cert.deficits.size() == 1);
  CHECK(cert.deficits[0].label == "standard");
  CHECK(cert.deficits[0].required == 3);
  CHECK(cert.deficits[0].available == 2);
}

TEST_CASE("build_intertwiner validates the choice") {
  Z3Example ex = z3_example();
  IsotypicDecomposition du = decompose(ex.u, ex.catalog);
  IsotypicDecomposition dv = decompose(ex.v, ex.catalog);
  Mat one = Mat::Identity(1, 1);
  Mat stretched = 2.0 * one;
  CHECK_THROWS_AS(build_intertwiner(du, dv, {{"chi0", one}}),
                  AdmissibilityError);  // missing chi1
  CHECK_THROWS_AS(
      build_intertwiner(du, dv, {{"chi0", one}, {"chi1", stretched}}),
      AdmissibilityError);  // not isometric
}

TEST_CASE("unitary intertwiner between identical decompositions") {
  auto [d3, catalog] = builtin("D3");
  UnitaryRep reg = regular_representation(d3);
  IsotypicDecomposition d = decompose(reg, catalog);
  std::vector<std::pair<std::string, Mat>> choice;
  for (const auto& b : d.blocks)
    choice.emplace_back(b.label,
                        Mat::Identity(b.multiplicity, b.multiplicity));
  Intertwiner a = build_intertwiner(d, d, choice);
  CHECK(unitarity_defect(a.matrix) < 1e-10);
  CHECK(unitarity_defect(a.matrix.adjoint()) < 1e-10);  // square unitary

  std::vector<Mat> atoms(6, Mat::Zero(6, 6));
  for (int x = 0; x < 6; ++x) atoms[x](x, x) = 1.0;
  SpectralMeasure e;
  e.space_size = 6;
  e.dim = 6;
  e.atoms = std::move(atoms);
  CHECK(is_projective(compress(a.matrix, e)));
}

TEST_CASE("solver dimensions follow Schur's lemma") {
  auto [s3, catalog] = builtin("S3");

  SUBCASE("irreducible against itself: dimension one") {
    const UnitaryRep& st = catalog.at("standard").rep;
    CHECK(solve_intertwiners(st, st).size() == 1);
  }
  SUBCASE("inequivalent irreducibles: dimension zero") {
    CHECK(solve_intertwiners(catalog.at("trivial").rep,
                             catalog.at("sign").rep)
              .empty());
  }
  SUBCASE("Z3 worked example: two free phases") {
    Z3Example ex = z3_example();
    auto basis = solve_intertwiners(ex.u, ex.v);
    CHECK(basis.size() == 2);
    // the hand-built A lies in the span
    Vec vec_a = Eigen::Map<const Vec>(ex.a.data(), ex.a.size());
    Vec residual = vec_a;
    for (const Mat& b : basis) {
      Vec vb = Eigen::Map<const Vec>(b.data(), b.size());
      residual -= vb.dot(vec_a) * vb;
    }
    CHECK(residual.norm() < 1e-10);
  }
  SUBCASE("every basis element intertwines") {
    Z3Example ex = z3_example();
    for (const Mat& b : solve_intertwiners(ex.u, ex.v))
      for (int g = 0; g < 3; ++g)
        CHECK(frob_dist(b * ex.u.matrices[g], ex.v.matrices[g] * b) < 1e-9);
  }
}

TEST_CASE("solver refuses beyond the oracle bound") {
  auto [s4, catalog] = builtin("S4");
  UnitaryRep reg = regular_representation(s4);  // dim 24 > 16
  CHECK_THROWS_AS(solve_intertwiners(reg, reg), AdmissibilityError);
  CHECK_NOTHROW(solve_intertwiners(reg, reg, 24));
}

TEST_CASE("isometric span members are reachable by block assembly") {
  // polar factors of full-rank span members are isometric intertwiners;
  // extracting the per-irrep blocks and rebuilding must reproduce them
  for (const std::string& name : {"Z3", "S3"}) {
    CAPTURE(name);
    auto gc = builtin(name);
    Rng rng = make_rng(name == "Z3" ? 71 : 73);

    UnitaryRep u = conjugate_rep(
        name == "Z3" ? regular_representation(gc.group)
                     : gc.catalog.at("standard").rep,
        random_unitary(rng, name == "Z3" ? 3 : 2));
    UnitaryRep v = conjugate_rep(
        direct_sum_copies(name == "Z3" ? regular_representation(gc.group)
                                       : gc.catalog.at("standard").rep,
                          name == "Z3" ? 1 : 2),
        random_unitary(rng, name == "Z3" ? 3 : 4));

    auto basis = solve_intertwiners(u, v);
    REQUIRE_FALSE(basis.empty());
    Mat member = Mat::Zero(v.dim, u.dim);
    std::normal_distribution<double> gauss;
    for (const Mat& b : basis)
      member += cdouble(gauss(rng), gauss(rng)) * b;

    // polar factor: member (member† member)^(-1/2)
    Eigen::SelfAdjointEigenSolver<Mat> es(member.adjoint() * member);
    REQUIRE(es.eigenvalues().minCoeff() > 1e-6);
    Mat inv_root = es.eigenvectors() *
                   es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                   es.eigenvectors().adjoint();
    Mat isometric = member * inv_root;
    REQUIRE(unitarity_defect(isometric) < 1e-10);
    REQUIRE(verify_intertwiner(isometric, u, v).pass());

    IsotypicDecomposition du = decompose(u, gc.catalog);
    IsotypicDecomposition dv = decompose(v, gc.catalog);
    Mat tilde = dv.basis.adjoint() * isometric * du.basis;
    std::vector<std::pair<std::string, Mat>> choice;
    for (const auto& sb : du.blocks) {
      const IsotypicBlock* tb = dv.block_of(sb.label);
      REQUIRE(tb != nullptr);
      Mat a_lambda = Mat::Zero(tb->multiplicity, sb.multiplicity);
      for (int i = 0; i < sb.dim; ++i)
        a_lambda += tilde.block(tb->offset + i * tb->multiplicity,
                                sb.offset + i * sb.multiplicity,
                                tb->multiplicity, sb.multiplicity);
      choice.emplace_back(sb.label, a_lambda / sb.dim);
    }
    Intertwiner rebuilt = build_intertwiner(du, dv, choice);
    CHECK(frob_dist(rebuilt.matrix, isometric) < 1e-8);
  }
}

TEST_CASE("random covariant systems verify and dilate across groups") {
  for (int n : {2, 4, 5}) {
    CAPTURE(n);
    CovarianceSystem sys = random_cyclic_system(n, 100 + n, n > 2 ? 2 : 1);
    CHECK(verify_covariance(sys).pass());
    CHECK(verify_dilation(sys, 1e-10).pass());
  }
}
