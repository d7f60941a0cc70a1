#pragma once

#include <memory>
#include <string>
#include <vector>

#include "covobs/report.hpp"

namespace covobs {

/// Finite group given by its Cayley table. Immutable after construction;
/// derived tables (inverses) are precomputed eagerly.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> cayley;  // cayley[a][b] = a*b
  int identity = 0;
  std::vector<int> inverse;  // -1 where no inverse exists (broken tables)
  std::vector<std::string> element_names;  // cosmetic; may be empty

  int mul(int a, int b) const { return cayley[a][b]; }
  int inv(int a) const { return inverse[a]; }
  std::string element_name(int g) const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds a group value from a raw table. Shape errors throw SchemaError;
/// axiom violations do not throw here (verify_group reports them).
GroupPtr make_group(std::string name, std::vector<std::vector<int>> cayley,
                    int identity, std::vector<std::string> element_names = {});

/// Per-axiom check: closure (table entries in range), identity, inverse,
/// associativity. Exhaustive over the table.
Report verify_group(const FiniteGroup& g);

GroupPtr make_cyclic(int n);
GroupPtr make_dihedral(int n);  // order 2n
GroupPtr make_symmetric(int n); // n <= 5 keeps tables small
GroupPtr make_quaternion();     // Q_8

/// Semidirect product N ⋊ K. phi[k] is the automorphism of N assigned to
/// k in K, as an image table; phi must be a homomorphism K -> Aut(N).
/// Element (n, k) has index n + |N|*k; product
/// (n1,k1)(n2,k2) = (n1 * phi[k1](n2), k1*k2).
GroupPtr make_semidirect(const FiniteGroup& n_part, const FiniteGroup& k_part,
                         const std::vector<std::vector<int>>& phi,
                         std::string name = {});

/// Group action on a finite outcome space: table[g][x] = Λ(g)x.
struct GroupAction {
  GroupPtr group;
  int space_size = 0;
  std::vector<std::vector<int>> table;

  int apply(int g, int x) const { return table[g][x]; }
};

GroupAction make_action(GroupPtr g, std::vector<std::vector<int>> table);

/// identity fixes every point; Λ(g)Λ(h) = Λ(gh).
Report verify_action(const GroupAction& a);

GroupAction left_translation_action(GroupPtr g);
GroupAction trivial_action(GroupPtr g, int space_size = 1);
/// Natural action of make_dihedral(n) on the n vertices of the n-gon.
GroupAction dihedral_vertex_action(GroupPtr dn);
/// Natural action of make_symmetric(n) on n points.
GroupAction symmetric_natural_action(GroupPtr sn);

std::vector<int> orbit(const GroupAction& a, int q);
bool is_transitive(const GroupAction& a);

/// Subgroup of a parent group, with its own standalone Cayley table over
/// local indices (needed to define representations of the little group).
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;       // sorted parent indices
  std::vector<int> parent_to_sub;  // |G|-sized, -1 outside the subgroup
  GroupPtr as_group;               // same product, local indices

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const { return parent_to_sub[g] >= 0; }
  int local_index(int g) const { return parent_to_sub[g]; }
};

/// Validates closure under product and inverse and membership of the
/// identity; throws AdmissibilityError otherwise.
Subgroup make_subgroup(GroupPtr parent, std::vector<int> elements);
Subgroup generated_subgroup(GroupPtr parent, const std::vector<int>& generators);

/// The little group {g : Λ(g)q = q}.
Subgroup stabilizer(const GroupAction& a, int q);

/// Left cosets gH, ordered by least member; coset_of maps elements to
/// coset indices.
struct LeftCosets {
  GroupPtr group;
  Subgroup subgroup;
  std::vector<std::vector<int>> cosets;
  std::vector<int> coset_of;

  int count() const { return static_cast<int>(cosets.size()); }
  /// g' , gH ↦ (g'g)H
  GroupAction quotient_action() const;
  std::string coset_name(int c) const;
};

LeftCosets left_cosets(GroupPtr g, const Subgroup& h);

/// Transitive homogeneous space S ≅ G/H with a section x ↦ g_x.
/// Representatives are the lexicographically least element indices, so
/// builds are deterministic.
struct CosetSpace {
  GroupAction action;
  Subgroup subgroup;  // the little group of base_point
  int base_point = 0;
  std::vector<int> representatives;  // g_x with Λ(g_x)q = x
  std::vector<int> quotient_map;     // g ↦ Λ(g)q

  /// Local H-index of g_x⁻¹ g g_{x'} where x' = Λ(g⁻¹)x.
  int cocycle(int g, int x) const;
};

/// Requires a transitive action and h == stabilizer(q).
CosetSpace coset_space(const GroupAction& a, const Subgroup& h, int q);

}  // namespace covobs
