#include "covobs/catalogs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "covobs/errors.hpp"

namespace covobs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cdouble root_of_unity(int n, long long power) {
  // e^{-2πi·power/n}; the forward Fourier direction used by all built-ins
  double angle = -kTwoPi * static_cast<double>(power % n) / n;
  return {std::cos(angle), std::sin(angle)};
}

Irrep one_dim_irrep(const GroupPtr& g, std::string label,
                    const std::vector<cdouble>& values) {
  std::vector<Mat> mats(g->order, Mat(1, 1));
  for (int a = 0; a < g->order; ++a) mats[a](0, 0) = values[a];
  return make_irrep(std::move(label), make_rep(g, std::move(mats)));
}

/// Orthonormal basis of the hyperplane orthogonal to (1,…,1) in R^n.
Eigen::MatrixXd helmert_basis(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = scale;
    b(k, k - 1) = -static_cast<double>(k) * scale;
  }
  return b;
}

int permutation_parity(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> lex_permutations(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

IrrepCatalog cyclic_catalog(GroupPtr zn) {
  const int n = zn->order;
  std::vector<Irrep> irreps;
  for (int lam = 0; lam < n; ++lam) {
    std::vector<cdouble> values(n);
    for (int g = 0; g < n; ++g)
      values[g] = root_of_unity(n, static_cast<long long>(lam) * g);
    irreps.push_back(one_dim_irrep(zn, "chi" + std::to_string(lam), values));
  }
  return make_catalog(std::move(zn), std::move(irreps));
}

IrrepCatalog dihedral_catalog(GroupPtr dn) {
  const int n = dn->order / 2;
  if (dn->order != 2 * n || n < 1)
    throw SchemaError("dihedral_catalog: group order must be even");
  std::vector<Irrep> irreps;

  std::vector<cdouble> triv(2 * n, 1.0);
  irreps.push_back(one_dim_irrep(dn, "trivial", triv));

  std::vector<cdouble> sgn(2 * n);
  for (int a = 0; a < n; ++a) {
    sgn[a] = 1.0;
    sgn[n + a] = -1.0;
  }
  irreps.push_back(one_dim_irrep(dn, "sign", sgn));

  if (n % 2 == 0) {
    std::vector<cdouble> alt(2 * n), alt_sign(2 * n);
    for (int a = 0; a < n; ++a) {
      double r = a % 2 == 0 ? 1.0 : -1.0;
      alt[a] = r;
      alt[n + a] = r;
      alt_sign[a] = r;
      alt_sign[n + a] = -r;
    }
    irreps.push_back(one_dim_irrep(dn, "alt", alt));
    irreps.push_back(one_dim_irrep(dn, "alt_sign", alt_sign));
  }

  // n odd: (n-1)/2 two-dim irreps; n even: n/2 - 1
  const int count = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
  for (int k = 1; k <= count; ++k) {
    std::vector<Mat> mats(2 * n, Mat::Zero(2, 2));
    for (int a = 0; a < n; ++a) {
      mats[a](0, 0) = root_of_unity(n, static_cast<long long>(k) * a);
      mats[a](1, 1) = root_of_unity(n, -static_cast<long long>(k) * a);
      mats[n + a](0, 1) = root_of_unity(n, -static_cast<long long>(k) * a);
      mats[n + a](1, 0) = root_of_unity(n, static_cast<long long>(k) * a);
    }
    irreps.push_back(
        make_irrep("E" + std::to_string(k), make_rep(dn, std::move(mats))));
  }
  return make_catalog(std::move(dn), std::move(irreps));
}

IrrepCatalog symmetric_catalog(GroupPtr sn) {
  int n = 1;
  int fact = 1;
  while (fact < sn->order) fact *= ++n;
  if (fact != sn->order || n > 4)
    throw SchemaError("symmetric_catalog: supported for S1..S4");
  auto perms = lex_permutations(n);
  const int order = sn->order;

  std::vector<Irrep> irreps;
  irreps.push_back(one_dim_irrep(sn, "trivial",
                                 std::vector<cdouble>(order, 1.0)));
  if (n >= 2) {
    std::vector<cdouble> sgn(order);
    for (int g = 0; g < order; ++g) sgn[g] = permutation_parity(perms[g]);
    irreps.push_back(one_dim_irrep(sn, "sign", sgn));
  }

  auto perm_matrix = [](const std::vector<int>& p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m(p[i], i) = 1.0;
    return m;
  };

  if (n >= 3) {
    Eigen::MatrixXd basis = helmert_basis(n);
    std::vector<Mat> std_mats(order);
    std::vector<Mat> std_sign_mats(order);
    for (int g = 0; g < order; ++g) {
      Eigen::MatrixXd m = basis.transpose() * perm_matrix(perms[g]) * basis;
      std_mats[g] = m.cast<cdouble>();
      std_sign_mats[g] =
          (static_cast<double>(permutation_parity(perms[g])) * m)
              .cast<cdouble>();
    }
    irreps.push_back(make_irrep("standard", make_rep(sn, std::move(std_mats))));
    if (n == 4)
      irreps.push_back(
          make_irrep("standard_sign", make_rep(sn, std::move(std_sign_mats))));
  }

  if (n == 4) {
    // Two-dimensional irrep through the quotient S4 -> S3 acting on the
    // three pairings {01|23, 02|13, 03|12}, labeled by the partner of 0.
    auto pairing_image = [&](const std::vector<int>& p) {
      std::vector<int> inv(4);
      for (int i = 0; i < 4; ++i) inv[p[i]] = i;
      std::vector<int> image(3);
      for (int t = 0; t < 3; ++t) {
        // pairing t joins {0, t+1} and the remaining two points
        int x = inv[0];
        int partner_x;
        if (x == 0)
          partner_x = t + 1;
        else if (x == t + 1)
          partner_x = 0;
        else
          partner_x = 6 - (t + 1) - x;
        image[t] = p[partner_x] - 1;
      }
      return image;
    };
    Eigen::MatrixXd basis3 = helmert_basis(3);
    std::vector<Mat> mats(order);
    for (int g = 0; g < order; ++g) {
      Eigen::MatrixXd pm = Eigen::MatrixXd::Zero(3, 3);
      std::vector<int> image = pairing_image(perms[g]);
      for (int t = 0; t < 3; ++t) pm(image[t], t) = 1.0;
      mats[g] = (basis3.transpose() * pm * basis3).cast<cdouble>();
    }
    irreps.push_back(make_irrep("E", make_rep(sn, std::move(mats))));
  }
  return make_catalog(std::move(sn), std::move(irreps));
}

IrrepCatalog quaternion_catalog(GroupPtr q8) {
  if (q8->order != 8)
    throw SchemaError("quaternion_catalog: group order must be 8");
  // element index = 2*axis + (negative ? 1 : 0), axes 1, i, j, k
  auto axis = [](int g) { return g / 2; };
  std::vector<Irrep> irreps;
  irreps.push_back(one_dim_irrep(q8, "trivial",
                                 std::vector<cdouble>(8, 1.0)));
  auto axis_character = [&](int plus_axis) {
    std::vector<cdouble> chi(8);
    for (int g = 0; g < 8; ++g)
      chi[g] = (axis(g) == 0 || axis(g) == plus_axis) ? 1.0 : -1.0;
    return chi;
  };
  irreps.push_back(one_dim_irrep(q8, "chi_i", axis_character(1)));
  irreps.push_back(one_dim_irrep(q8, "chi_j", axis_character(2)));
  irreps.push_back(one_dim_irrep(q8, "chi_k", axis_character(3)));

  const cdouble im(0.0, 1.0);
  std::vector<Mat> base(4, Mat::Zero(2, 2));
  base[0] << 1, 0, 0, 1;
  base[1] << im, 0, 0, -im;
  base[2] << 0, 1, -1, 0;
  base[3] << 0, im, im, 0;
  std::vector<Mat> mats(8);
  for (int g = 0; g < 8; ++g)
    mats[g] = (g % 2 == 0 ? 1.0 : -1.0) * base[axis(g)];
  irreps.push_back(make_irrep("E", make_rep(q8, std::move(mats))));
  return make_catalog(std::move(q8), std::move(irreps));
}

namespace {

bool parse_indexed(const std::string& name, char prefix, int& n) {
  if (name.size() < 2 || name[0] != prefix) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  n = std::stoi(name.substr(1));
  return true;
}

}  // namespace

bool has_builtin(const std::string& name) {
  int n = 0;
  if (name == "Q8") return true;
  if (parse_indexed(name, 'Z', n)) return n >= 1;
  if (parse_indexed(name, 'D', n)) return n >= 1;
  if (parse_indexed(name, 'S', n)) return n >= 1 && n <= 4;
  return false;
}

GroupPtr builtin_group(const std::string& name) {
  int n = 0;
  if (name == "Q8") return make_quaternion();
  if (parse_indexed(name, 'Z', n) && n >= 1) return make_cyclic(n);
  if (parse_indexed(name, 'D', n) && n >= 1) return make_dihedral(n);
  if (parse_indexed(name, 'S', n) && n >= 1 && n <= 4)
    return make_symmetric(n);
  throw SchemaError("unknown built-in group '" + name + "'");
}

IrrepCatalog builtin_catalog(const GroupPtr& group) {
  const std::string& name = group->name;
  int n = 0;
  if (name == "Q8") return quaternion_catalog(group);
  if (parse_indexed(name, 'Z', n)) return cyclic_catalog(group);
  if (parse_indexed(name, 'D', n)) return dihedral_catalog(group);
  if (parse_indexed(name, 'S', n)) return symmetric_catalog(group);
  throw SchemaError("no built-in catalog for group '" + name + "'");
}

GroupWithCatalog builtin(const std::string& name) {
  GroupPtr g = builtin_group(name);
  IrrepCatalog cat = builtin_catalog(g);
  return {std::move(g), std::move(cat)};
}

std::vector<std::string> builtin_names() {
  return {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
          "D3", "D4", "D5", "Q8", "S3", "S4"};
}

}  // namespace covobs
