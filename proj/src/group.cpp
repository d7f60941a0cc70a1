#include "covobs/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "covobs/errors.hpp"

namespace covobs {

std::string FiniteGroup::element_name(int g) const {
  if (g >= 0 && g < static_cast<int>(element_names.size()))
    return element_names[g];
  return std::to_string(g);
}

GroupPtr make_group(std::string name, std::vector<std::vector<int>> cayley,
                    int identity, std::vector<std::string> element_names) {
  const int n = static_cast<int>(cayley.size());
  if (n == 0) throw SchemaError("group '" + name + "': empty cayley table");
  for (const auto& row : cayley)
    if (static_cast<int>(row.size()) != n)
      throw SchemaError("group '" + name + "': cayley table is not square");
  if (identity < 0 || identity >= n)
    throw SchemaError("group '" + name + "': identity index out of range");
  if (!element_names.empty() && static_cast<int>(element_names.size()) != n)
    throw SchemaError("group '" + name + "': element_names length mismatch");

  auto g = std::make_shared<FiniteGroup>();
  g->name = std::move(name);
  g->order = n;
  g->cayley = std::move(cayley);
  g->identity = identity;
  g->element_names = std::move(element_names);
  g->inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int ab = g->cayley[a][b];
      int ba = g->cayley[b][a];
      if (ab == identity && ba == identity) {
        g->inverse[a] = b;
        break;
      }
    }
  }
  return g;
}

Report verify_group(const FiniteGroup& g) {
  Report r;
  const int n = g.order;

  int out_of_range = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.cayley[a][b] < 0 || g.cayley[a][b] >= n) ++out_of_range;
  r.checks.push_back({"closure", out_of_range == 0,
                      static_cast<double>(out_of_range)});
  if (out_of_range > 0) {
    // remaining axioms would index out of bounds
    r.checks.push_back({"identity", false, 0.0});
    r.checks.push_back({"inverse", false, 0.0});
    r.checks.push_back({"associativity", false, 0.0});
    return r;
  }

  int identity_fail = 0;
  for (int a = 0; a < n; ++a)
    if (g.cayley[g.identity][a] != a || g.cayley[a][g.identity] != a)
      ++identity_fail;
  r.checks.push_back({"identity", identity_fail == 0,
                      static_cast<double>(identity_fail)});

  int inverse_fail = 0;
  for (int a = 0; a < n; ++a)
    if (g.inverse[a] < 0) ++inverse_fail;
  r.checks.push_back({"inverse", inverse_fail == 0,
                      static_cast<double>(inverse_fail)});

  int assoc_fail = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.cayley[g.cayley[a][b]][c] != g.cayley[a][g.cayley[b][c]])
          ++assoc_fail;
  r.checks.push_back({"associativity", assoc_fail == 0,
                      static_cast<double>(assoc_fail)});
  return r;
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw SchemaError("make_cyclic: order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return make_group("Z" + std::to_string(n), std::move(t), 0, std::move(names));
}

GroupPtr make_dihedral(int n) {
  if (n < 1) throw SchemaError("make_dihedral: order must be positive");
  // indices: rotation r^a = a, reflection s r^a = n + a; s r^a s = r^{-a}
  const int order = 2 * n;
  auto rot = [n](int a) { return ((a % n) + n) % n; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t[a][b] = rot(a + b);              // r^a r^b
      t[a][n + b] = n + rot(b - a);      // r^a (s r^b) = s r^{b-a}
      t[n + a][b] = n + rot(a + b);      // (s r^a) r^b
      t[n + a][n + b] = rot(b - a);      // (s r^a)(s r^b) = r^{b-a}
    }
  }
  std::vector<std::string> names(order);
  for (int a = 0; a < n; ++a) {
    names[a] = "r" + std::to_string(a);
    names[n + a] = "sr" + std::to_string(a);
  }
  return make_group("D" + std::to_string(n), std::move(t), 0, std::move(names));
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

GroupPtr make_symmetric(int n) {
  if (n < 1 || n > 5)
    throw SchemaError("make_symmetric: supported for 1 <= n <= 5");
  auto perms = all_permutations(n);
  const int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[perms[i]] = i;

  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);  // a∘b: apply b first
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
  }
  std::vector<std::string> names(order);
  for (int i = 0; i < order; ++i) {
    std::string s;
    for (int x : perms[i]) s += std::to_string(x);
    names[i] = s;
  }
  return make_group("S" + std::to_string(n), std::move(t), 0, std::move(names));
}

GroupPtr make_quaternion() {
  // index = 2*axis + (negative ? 1 : 0), axes 0..3 = 1, i, j, k
  struct Q {
    int axis;
    int sign;
  };
  auto mul = [](Q a, Q b) -> Q {
    static const int axis_table[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_table[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return {axis_table[a.axis][b.axis],
            a.sign * b.sign * sign_table[a.axis][b.axis]};
  };
  auto index = [](Q q) { return 2 * q.axis + (q.sign < 0 ? 1 : 0); };
  auto element = [](int i) -> Q { return {i / 2, i % 2 == 0 ? 1 : -1}; };

  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t[a][b] = index(mul(element(a), element(b)));
  std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return make_group("Q8", std::move(t), 0, std::move(names));
}

GroupPtr make_semidirect(const FiniteGroup& n_part, const FiniteGroup& k_part,
                         const std::vector<std::vector<int>>& phi,
                         std::string name) {
  const int nn = n_part.order;
  const int nk = k_part.order;
  if (static_cast<int>(phi.size()) != nk)
    throw SchemaError("make_semidirect: phi needs one table per element of K");
  for (const auto& row : phi)
    if (static_cast<int>(row.size()) != nn)
      throw SchemaError("make_semidirect: phi rows must have |N| entries");

  auto is_automorphism = [&](const std::vector<int>& f) {
    std::vector<bool> hit(nn, false);
    for (int x : f) {
      if (x < 0 || x >= nn || hit[x]) return false;
      hit[x] = true;
    }
    if (f[n_part.identity] != n_part.identity) return false;
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        if (f[n_part.mul(a, b)] != n_part.mul(f[a], f[b])) return false;
    return true;
  };
  for (int k = 0; k < nk; ++k)
    if (!is_automorphism(phi[k]))
      throw AdmissibilityError("make_semidirect: phi[" + std::to_string(k) +
                               "] is not an automorphism of N");
  for (int k1 = 0; k1 < nk; ++k1)
    for (int k2 = 0; k2 < nk; ++k2)
      for (int x = 0; x < nn; ++x)
        if (phi[k_part.mul(k1, k2)][x] != phi[k1][phi[k2][x]])
          throw AdmissibilityError(
              "make_semidirect: phi is not a homomorphism K -> Aut(N)");

  const int order = nn * nk;
  auto index = [nn](int n, int k) { return n + nn * k; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int n1 = 0; n1 < nn; ++n1)
    for (int k1 = 0; k1 < nk; ++k1)
      for (int n2 = 0; n2 < nn; ++n2)
        for (int k2 = 0; k2 < nk; ++k2)
          t[index(n1, k1)][index(n2, k2)] =
              index(n_part.mul(n1, phi[k1][n2]), k_part.mul(k1, k2));

  if (name.empty()) name = n_part.name + ":" + k_part.name;
  std::vector<std::string> names(order);
  for (int n1 = 0; n1 < nn; ++n1)
    for (int k1 = 0; k1 < nk; ++k1)
      names[index(n1, k1)] =
          "(" + n_part.element_name(n1) + "," + k_part.element_name(k1) + ")";
  auto g = make_group(std::move(name), std::move(t),
                      index(n_part.identity, k_part.identity),
                      std::move(names));
  if (!verify_group(*g).pass())
    throw AdmissibilityError("make_semidirect: result fails group axioms");
  return g;
}

GroupAction make_action(GroupPtr g, std::vector<std::vector<int>> table) {
  if (!g) throw SchemaError("make_action: null group");
  if (static_cast<int>(table.size()) != g->order)
    throw SchemaError("action table must have one row per group element");
  if (table.empty() || table[0].empty())
    throw SchemaError("action table must be non-empty");
  const int s = static_cast<int>(table[0].size());
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != s)
      throw SchemaError("action table rows must have equal length");
    for (int x : row)
      if (x < 0 || x >= s)
        throw SchemaError("action table entry out of range");
  }
  return GroupAction{std::move(g), s, std::move(table)};
}

Report verify_action(const GroupAction& a) {
  Report r;
  const FiniteGroup& g = *a.group;
  int id_fail = 0;
  for (int x = 0; x < a.space_size; ++x)
    if (a.table[g.identity][x] != x) ++id_fail;
  r.checks.push_back({"identity_acts_trivially", id_fail == 0,
                      static_cast<double>(id_fail)});

  int compat_fail = 0;
  for (int p = 0; p < g.order; ++p)
    for (int q = 0; q < g.order; ++q)
      for (int x = 0; x < a.space_size; ++x)
        if (a.table[p][a.table[q][x]] != a.table[g.mul(p, q)][x])
          ++compat_fail;
  r.checks.push_back({"action_compatibility", compat_fail == 0,
                      static_cast<double>(compat_fail)});
  return r;
}

GroupAction left_translation_action(GroupPtr g) {
  std::vector<std::vector<int>> t = g->cayley;
  return GroupAction{std::move(g), t.empty() ? 0 : static_cast<int>(t.size()),
                     std::move(t)};
}

GroupAction trivial_action(GroupPtr g, int space_size) {
  std::vector<std::vector<int>> t(g->order, std::vector<int>(space_size));
  for (auto& row : t)
    std::iota(row.begin(), row.end(), 0);
  return GroupAction{std::move(g), space_size, std::move(t)};
}

GroupAction dihedral_vertex_action(GroupPtr dn) {
  const int n = dn->order / 2;
  if (dn->order != 2 * n || n < 1)
    throw SchemaError("dihedral_vertex_action: group order must be even");
  auto rot = [n](int a) { return ((a % n) + n) % n; };
  std::vector<std::vector<int>> t(dn->order, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      t[a][x] = rot(x + a);       // r^a
      t[n + a][x] = rot(-x - a);  // s r^a
    }
  return GroupAction{std::move(dn), n, std::move(t)};
}

GroupAction symmetric_natural_action(GroupPtr sn) {
  int n = 1;
  int fact = 1;
  while (fact < sn->order) fact *= ++n;
  if (fact != sn->order)
    throw SchemaError("symmetric_natural_action: order is not a factorial");
  auto perms = all_permutations(n);
  std::vector<std::vector<int>> t(sn->order, std::vector<int>(n));
  for (int g = 0; g < sn->order; ++g)
    for (int x = 0; x < n; ++x) t[g][x] = perms[g][x];
  return GroupAction{std::move(sn), n, std::move(t)};
}

std::vector<int> orbit(const GroupAction& a, int q) {
  std::set<int> seen;
  for (int g = 0; g < a.group->order; ++g) seen.insert(a.table[g][q]);
  return {seen.begin(), seen.end()};
}

bool is_transitive(const GroupAction& a) {
  return static_cast<int>(orbit(a, 0).size()) == a.space_size;
}

Subgroup make_subgroup(GroupPtr parent, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  const FiniteGroup& g = *parent;
  for (int e : elements)
    if (e < 0 || e >= g.order)
      throw SchemaError("make_subgroup: element index out of range");

  std::vector<int> parent_to_sub(g.order, -1);
  for (int i = 0; i < static_cast<int>(elements.size()); ++i)
    parent_to_sub[elements[i]] = i;

  if (parent_to_sub[g.identity] < 0)
    throw AdmissibilityError("make_subgroup: identity not in subset");
  for (int a : elements) {
    if (g.inv(a) < 0 || parent_to_sub[g.inv(a)] < 0)
      throw AdmissibilityError("make_subgroup: subset not closed under inverse");
    for (int b : elements)
      if (parent_to_sub[g.mul(a, b)] < 0)
        throw AdmissibilityError("make_subgroup: subset not closed under product");
  }

  const int m = static_cast<int>(elements.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    names[i] = g.element_name(elements[i]);
    for (int j = 0; j < m; ++j)
      t[i][j] = parent_to_sub[g.mul(elements[i], elements[j])];
  }
  Subgroup sub;
  sub.as_group = make_group(g.name + ":H" + std::to_string(m), std::move(t),
                            parent_to_sub[g.identity], std::move(names));
  sub.parent = std::move(parent);
  sub.elements = std::move(elements);
  sub.parent_to_sub = std::move(parent_to_sub);
  return sub;
}

Subgroup generated_subgroup(GroupPtr parent, const std::vector<int>& generators) {
  const FiniteGroup& g = *parent;
  std::set<int> seen{g.identity};
  std::vector<int> todo{g.identity};
  for (int x : generators)
    if (seen.insert(x).second) todo.push_back(x);
  while (!todo.empty()) {
    int a = todo.back();
    todo.pop_back();
    for (int b : std::vector<int>(seen.begin(), seen.end())) {
      for (int c : {g.mul(a, b), g.mul(b, a)})
        if (seen.insert(c).second) todo.push_back(c);
    }
  }
  return make_subgroup(std::move(parent),
                       std::vector<int>(seen.begin(), seen.end()));
}

Subgroup stabilizer(const GroupAction& a, int q) {
  if (q < 0 || q >= a.space_size)
    throw SchemaError("stabilizer: base point out of range");
  std::vector<int> elems;
  for (int g = 0; g < a.group->order; ++g)
    if (a.table[g][q] == q) elems.push_back(g);
  return make_subgroup(a.group, std::move(elems));
}

LeftCosets left_cosets(GroupPtr g, const Subgroup& h) {
  const FiniteGroup& grp = *g;
  LeftCosets lc;
  lc.coset_of.assign(grp.order, -1);
  for (int a = 0; a < grp.order; ++a) {
    if (lc.coset_of[a] >= 0) continue;
    std::vector<int> coset;
    for (int x : h.elements) coset.push_back(grp.mul(a, x));
    std::sort(coset.begin(), coset.end());
    for (int member : coset)
      lc.coset_of[member] = static_cast<int>(lc.cosets.size());
    lc.cosets.push_back(std::move(coset));
  }
  lc.group = std::move(g);
  lc.subgroup = h;
  return lc;
}

GroupAction LeftCosets::quotient_action() const {
  std::vector<std::vector<int>> t(group->order,
                                  std::vector<int>(cosets.size()));
  for (int g = 0; g < group->order; ++g)
    for (int c = 0; c < static_cast<int>(cosets.size()); ++c)
      t[g][c] = coset_of[group->mul(g, cosets[c][0])];
  return GroupAction{group, static_cast<int>(cosets.size()), std::move(t)};
}

std::string LeftCosets::coset_name(int c) const {
  return group->element_name(cosets[c][0]) + "H";
}

CosetSpace coset_space(const GroupAction& a, const Subgroup& h, int q) {
  if (q < 0 || q >= a.space_size)
    throw SchemaError("coset_space: base point out of range");
  if (!is_transitive(a))
    throw AdmissibilityError("coset_space: action is not transitive");
  Subgroup stab = stabilizer(a, q);
  if (stab.elements != h.elements)
    throw AdmissibilityError(
        "coset_space: subgroup is not the stabilizer of the base point");

  CosetSpace cs;
  cs.action = a;
  cs.subgroup = h;
  cs.base_point = q;
  cs.representatives.assign(a.space_size, -1);
  cs.quotient_map.resize(a.group->order);
  for (int g = 0; g < a.group->order; ++g) {
    int x = a.table[g][q];
    cs.quotient_map[g] = x;
    if (cs.representatives[x] < 0) cs.representatives[x] = g;  // least index
  }
  return cs;
}

int CosetSpace::cocycle(int g, int x) const {
  const FiniteGroup& grp = *action.group;
  int x2 = action.table[grp.inv(g)][x];
  int h = grp.mul(grp.mul(grp.inv(representatives[x]), g), representatives[x2]);
  int local = subgroup.local_index(h);
  if (local < 0)
    throw AdmissibilityError("coset cocycle left the little group");
  return local;
}

}  // namespace covobs
