#include "covobs/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "covobs/errors.hpp"

namespace covobs::io {

namespace {

const json& require(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string(context) + ": missing field '" + key + "'");
  return j.at(key);
}

int require_int(const json& j, const char* key, const char* context) {
  const json& v = require(j, key, context);
  if (!v.is_number_integer())
    throw SchemaError(std::string(context) + ": field '" + key +
                      "' must be an integer");
  return v.get<int>();
}

std::string require_string(const json& j, const char* key,
                           const char* context) {
  const json& v = require(j, key, context);
  if (!v.is_string())
    throw SchemaError(std::string(context) + ": field '" + key +
                      "' must be a string");
  return v.get<std::string>();
}

cdouble complex_from_json(const json& j, const char* context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw SchemaError(std::string(context) +
                      ": complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void reject_on_failure(const Report& r, const char* what) {
  for (const auto& c : r.checks)
    if (!c.pass)
      throw AdmissibilityError(std::string(what) + " rejected: violates " +
                               c.axiom + " (worst violation " +
                               std::to_string(c.worst_violation) + ")");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot write file '" + tmp.string() + "'");
    out << text;
    if (!out) throw SchemaError("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw SchemaError("matrix: expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw SchemaError("matrix: rows must be non-empty arrays");
  Mat m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw SchemaError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(j[r][c], "matrix");
  }
  return m;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw SchemaError("vector: expected a non-empty array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(i) = complex_from_json(j[i], "vector");
  return v;
}

GroupPtr group_from_json(const json& j, bool verify) {
  const char* ctx = "group file";
  std::string name = require_string(j, "name", ctx);
  int order = require_int(j, "order", ctx);
  const json& table = require(j, "cayley", ctx);
  if (!table.is_array() || static_cast<int>(table.size()) != order)
    throw SchemaError("group file: cayley must have 'order' rows");
  std::vector<std::vector<int>> cayley(order);
  for (int r = 0; r < order; ++r) {
    if (!table[r].is_array() || static_cast<int>(table[r].size()) != order)
      throw SchemaError("group file: cayley row " + std::to_string(r) +
                        " must have 'order' entries");
    for (const json& e : table[r]) {
      if (!e.is_number_integer())
        throw SchemaError("group file: cayley entries must be integers");
      cayley[r].push_back(e.get<int>());
    }
  }
  int identity = require_int(j, "identity", ctx);
  std::vector<std::string> names;
  if (j.contains("element_names")) {
    for (const json& e : j.at("element_names")) {
      if (!e.is_string())
        throw SchemaError("group file: element_names must be strings");
      names.push_back(e.get<std::string>());
    }
  }
  GroupPtr g = make_group(std::move(name), std::move(cayley), identity,
                          std::move(names));
  if (verify) reject_on_failure(verify_group(*g), "group file");
  return g;
}

json group_to_json(const FiniteGroup& g) {
  json out;
  out["name"] = g.name;
  out["order"] = g.order;
  out["cayley"] = g.cayley;
  out["identity"] = g.identity;
  if (!g.element_names.empty()) out["element_names"] = g.element_names;
  return out;
}

GroupAction action_from_json(const json& j, GroupPtr group, bool verify) {
  const char* ctx = "action file";
  std::string gname = require_string(j, "group", ctx);
  if (!group->name.empty() && gname != group->name)
    throw SchemaError("action file: group '" + gname +
                      "' does not match loaded group '" + group->name + "'");
  int space = require_int(j, "space_size", ctx);
  const json& table = require(j, "table", ctx);
  if (!table.is_array() || static_cast<int>(table.size()) != group->order)
    throw SchemaError("action file: table must have one row per element");
  std::vector<std::vector<int>> t(group->order);
  for (int r = 0; r < group->order; ++r) {
    if (!table[r].is_array() || static_cast<int>(table[r].size()) != space)
      throw SchemaError("action file: table row " + std::to_string(r) +
                        " must have space_size entries");
    for (const json& e : table[r]) {
      if (!e.is_number_integer())
        throw SchemaError("action file: table entries must be integers");
      t[r].push_back(e.get<int>());
    }
  }
  GroupAction a = make_action(std::move(group), std::move(t));
  if (verify) reject_on_failure(verify_action(a), "action file");
  return a;
}

json action_to_json(const GroupAction& a) {
  json out;
  out["group"] = a.group->name;
  out["space_size"] = a.space_size;
  out["table"] = a.table;
  return out;
}

UnitaryRep rep_from_json(const json& j, GroupPtr group, bool verify) {
  const char* ctx = "rep file";
  std::string gname = require_string(j, "group", ctx);
  if (!group->name.empty() && gname != group->name)
    throw SchemaError("rep file: group '" + gname +
                      "' does not match loaded group '" + group->name + "'");
  int dim = require_int(j, "dim", ctx);
  const json& mats = require(j, "matrices", ctx);
  if (!mats.is_array() || static_cast<int>(mats.size()) != group->order)
    throw SchemaError("rep file: need one matrix per group element");
  std::vector<Mat> matrices;
  for (const json& m : mats) {
    Mat mat = matrix_from_json(m);
    if (mat.rows() != dim || mat.cols() != dim)
      throw SchemaError("rep file: matrix shape does not match dim");
    matrices.push_back(std::move(mat));
  }
  UnitaryRep u = make_rep(std::move(group), std::move(matrices));
  if (verify) reject_on_failure(verify_rep(u), "rep file");
  return u;
}

json rep_to_json(const UnitaryRep& u) {
  json out;
  out["group"] = u.group->name;
  out["dim"] = u.dim;
  json mats = json::array();
  for (const Mat& m : u.matrices) mats.push_back(matrix_to_json(m));
  out["matrices"] = std::move(mats);
  return out;
}

IrrepCatalog catalog_from_json(const json& j, GroupPtr group, bool verify) {
  const char* ctx = "catalog file";
  std::string gname = require_string(j, "group", ctx);
  if (!group->name.empty() && gname != group->name)
    throw SchemaError("catalog file: group '" + gname +
                      "' does not match loaded group '" + group->name + "'");
  const json& irreps_json = require(j, "irreps", ctx);
  if (!irreps_json.is_array() || irreps_json.empty())
    throw SchemaError("catalog file: irreps must be a non-empty array");
  std::vector<Irrep> irreps;
  for (const json& e : irreps_json) {
    std::string label = require_string(e, "label", ctx);
    json rep_json = e;
    rep_json["group"] = gname;
    irreps.push_back(
        make_irrep(std::move(label), rep_from_json(rep_json, group, false)));
  }
  IrrepCatalog cat = make_catalog(std::move(group), std::move(irreps));
  if (verify) reject_on_failure(verify_catalog(cat), "catalog file");
  return cat;
}

json catalog_to_json(const IrrepCatalog& c) {
  json out;
  out["group"] = c.group->name;
  json irreps = json::array();
  for (const Irrep& irr : c.irreps) {
    json e = rep_to_json(irr.rep);
    e.erase("group");
    e["label"] = irr.label;
    irreps.push_back(std::move(e));
  }
  out["irreps"] = std::move(irreps);
  return out;
}

POVM povm_from_json(const json& j) {
  const char* ctx = "povm file";
  int space = require_int(j, "space_size", ctx);
  int dim = require_int(j, "dim", ctx);
  const json& atoms_json = require(j, "atoms", ctx);
  if (!atoms_json.is_array() || static_cast<int>(atoms_json.size()) != space)
    throw SchemaError("povm file: need one atom per outcome");
  std::vector<Mat> atoms;
  for (const json& a : atoms_json) {
    Mat m = matrix_from_json(a);
    if (m.rows() != dim || m.cols() != dim)
      throw SchemaError("povm file: atom shape does not match dim");
    atoms.push_back(std::move(m));
  }
  return make_povm(dim, std::move(atoms));
}

json povm_to_json(const POVM& p) {
  json out;
  out["space_size"] = p.space_size;
  out["dim"] = p.dim;
  json atoms = json::array();
  for (const Mat& a : p.atoms) atoms.push_back(matrix_to_json(a));
  out["atoms"] = std::move(atoms);
  return out;
}

json decomposition_to_json(const IsotypicDecomposition& d) {
  json out;
  json blocks = json::array();
  for (const auto& b : d.blocks)
    blocks.push_back({{"label", b.label},
                      {"dim", b.dim},
                      {"multiplicity", b.multiplicity}});
  out["blocks"] = std::move(blocks);
  out["basis"] = matrix_to_json(d.basis);
  return out;
}

QuantumFrame frame_from_json(const json& j, GroupPtr group,
                             const IrrepCatalog& catalog,
                             bool normalize_state) {
  const char* ctx = "frame file";
  std::string gname = require_string(j, "group", ctx);
  if (!group->name.empty() && gname != group->name)
    throw SchemaError("frame file: group '" + gname +
                      "' does not match loaded group '" + group->name + "'");

  const json& support = require(j, "irrep_support", ctx);
  if (!support.is_array() || support.empty())
    throw SchemaError("frame file: irrep_support must be a non-empty array");

  // assemble U = ⊕ D^λ ⊗ 1_{m_λ} in catalog order
  std::vector<int> mult(catalog.size(), 0);
  for (const json& e : support) {
    std::string label = require_string(e, "label", ctx);
    int m = require_int(e, "multiplicity", ctx);
    int idx = catalog.index_of(label);
    if (idx < 0)
      throw SchemaError("frame file: catalog has no irrep labeled '" + label +
                        "'");
    if (m < 1)
      throw SchemaError("frame file: multiplicity for '" + label +
                        "' must be >= 1");
    if (mult[idx] != 0)
      throw SchemaError("frame file: duplicate irrep_support label '" + label +
                        "'");
    mult[idx] = m;
  }
  int dim = 0;
  for (int i = 0; i < catalog.size(); ++i)
    dim += mult[i] * catalog.irreps[i].dim();

  std::vector<Mat> mats(group->order, Mat::Zero(dim, dim));
  for (int g = 0; g < group->order; ++g) {
    int off = 0;
    for (int i = 0; i < catalog.size(); ++i) {
      if (mult[i] == 0) continue;
      const Mat& d = catalog.irreps[i].rep.matrices[g];
      Mat block = kron(d, Mat::Identity(mult[i], mult[i]));
      mats[g].block(off, off, block.rows(), block.cols()) = block;
      off += static_cast<int>(block.rows());
    }
  }

  QuantumFrame f;
  if (j.contains("label")) f.label = j.at("label").get<std::string>();
  f.group = group;
  f.rep = make_rep(group, std::move(mats));
  f.decomp = decompose(f.rep, catalog);

  f.state = vector_from_json(require(j, "state", ctx));
  if (f.state.size() != dim)
    throw SchemaError("frame file: state has dimension " +
                      std::to_string(f.state.size()) + ", support requires " +
                      std::to_string(dim));
  double norm = f.state.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    if (!normalize_state || norm == 0.0)
      throw AdmissibilityError("frame file: state is not normalized (norm " +
                               std::to_string(norm) + ")");
    f.state /= norm;
  }

  f.copies = require_int(j, "copies", ctx);
  if (f.copies < 1) throw SchemaError("frame file: copies must be >= 1");

  const json& phases = require(j, "phases_or_isometries", ctx);
  if (!phases.is_object())
    throw SchemaError("frame file: phases_or_isometries must map labels");
  for (const auto& [label, value] : phases.items()) {
    int idx = catalog.index_of(label);
    if (idx < 0)
      throw SchemaError("frame file: phases_or_isometries names unknown "
                        "irrep '" + label + "'");
    Mat a;
    if (value.is_number()) {
      a = Mat(1, 1);
      double theta = value.get<double>();
      a(0, 0) = cdouble(std::cos(theta), std::sin(theta));
    } else {
      a = matrix_from_json(value);
    }
    f.choice.emplace_back(label, std::move(a));
  }
  return f;
}

json frame_to_json(const QuantumFrame& f) {
  json out;
  out["group"] = f.group->name;
  if (!f.label.empty()) out["label"] = f.label;
  json support = json::array();
  for (const auto& b : f.decomp.blocks)
    support.push_back({{"label", b.label}, {"multiplicity", b.multiplicity}});
  out["irrep_support"] = std::move(support);
  out["state"] = vector_to_json(f.state);
  out["copies"] = f.copies;
  json phases = json::object();
  for (const auto& [label, m] : f.choice) phases[label] = matrix_to_json(m);
  out["phases_or_isometries"] = std::move(phases);
  return out;
}

json report_to_json(const Report& r) {
  json out = json::array();
  for (const auto& c : r.checks)
    out.push_back({{"axiom", c.axiom},
                   {"pass", c.pass},
                   {"worst_violation", c.worst_violation}});
  return out;
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string density_csv(const Eigen::VectorXd& rho,
                        const std::vector<std::string>& names) {
  std::string out = "outcome_index,outcome_name,probability\n";
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    std::string name =
        i < static_cast<Eigen::Index>(names.size()) ? names[i] : "";
    out += std::to_string(i) + "," + name + "," +
           format_significant(rho(i)) + "\n";
  }
  return out;
}

json density_to_json(const Eigen::VectorXd& rho,
                     const std::vector<std::string>& names) {
  json out = json::array();
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    std::string name =
        i < static_cast<Eigen::Index>(names.size()) ? names[i] : "";
    out.push_back({{"outcome_index", i},
                   {"outcome_name", name},
                   {"probability", rho(i)}});
  }
  return out;
}

}  // namespace covobs::io
