#pragma once

#include <string>
#include <vector>

#include "covobs/rep.hpp"

namespace covobs {

/// Built-in groups with closed-form irrep catalogs. Recognized names:
/// Z<n>, D<n>, S2..S4, Q8.
bool has_builtin(const std::string& name);
GroupPtr builtin_group(const std::string& name);
IrrepCatalog builtin_catalog(const GroupPtr& group);

struct GroupWithCatalog {
  GroupPtr group;
  IrrepCatalog catalog;
};
GroupWithCatalog builtin(const std::string& name);

/// The groups exercised by the regression suites.
std::vector<std::string> builtin_names();

IrrepCatalog cyclic_catalog(GroupPtr zn);
IrrepCatalog dihedral_catalog(GroupPtr dn);
IrrepCatalog symmetric_catalog(GroupPtr sn);  // n <= 4
IrrepCatalog quaternion_catalog(GroupPtr q8);

}  // namespace covobs
