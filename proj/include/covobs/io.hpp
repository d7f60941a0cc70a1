#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "covobs/frames.hpp"
#include "covobs/group.hpp"
#include "covobs/povm.hpp"
#include "covobs/rep.hpp"
#include "covobs/report.hpp"

namespace covobs::io {

using json = nlohmann::json;

json read_json_file(const std::string& path);
/// temp file in the same directory, then rename
void write_text_atomic(const std::string& path, const std::string& text);

/// complex numbers are [re, im]; matrices are row-major nested arrays
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j);

/// {"name", "order", "cayley", "identity", "element_names"?}. With
/// verify=true a table violating a group axiom is rejected with a message
/// citing the axiom.
GroupPtr group_from_json(const json& j, bool verify = true);
json group_to_json(const FiniteGroup& g);

/// {"group", "space_size", "table"}
GroupAction action_from_json(const json& j, GroupPtr group,
                             bool verify = true);
json action_to_json(const GroupAction& a);

/// {"group", "dim", "matrices"}
UnitaryRep rep_from_json(const json& j, GroupPtr group, bool verify = true);
json rep_to_json(const UnitaryRep& u);

/// {"group", "irreps": [{"label", "dim", "matrices"}]}
IrrepCatalog catalog_from_json(const json& j, GroupPtr group,
                               bool verify = true);
json catalog_to_json(const IrrepCatalog& c);

/// {"space_size", "dim", "atoms"}
POVM povm_from_json(const json& j);
json povm_to_json(const POVM& p);

/// {"blocks": [{"label", "dim", "multiplicity"}], "basis"}
json decomposition_to_json(const IsotypicDecomposition& d);

/// {"group", "label"?, "irrep_support": [{"label", "multiplicity"}],
///  "state", "copies", "phases_or_isometries": {label: angle | matrix}}
QuantumFrame frame_from_json(const json& j, GroupPtr group,
                             const IrrepCatalog& catalog,
                             bool normalize_state = false);
json frame_to_json(const QuantumFrame& f);

json report_to_json(const Report& r);

std::string format_significant(double value, int digits = 12);

/// outcome_index, outcome_name, probability — 12 significant digits
std::string density_csv(const Eigen::VectorXd& rho,
                        const std::vector<std::string>& names);
json density_to_json(const Eigen::VectorXd& rho,
                     const std::vector<std::string>& names);

}  // namespace covobs::io
