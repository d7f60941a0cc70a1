#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "covobs/catalogs.hpp"
#include "covobs/config.hpp"
#include "covobs/covariance.hpp"
#include "covobs/errors.hpp"
#include "covobs/frames.hpp"
#include "covobs/io.hpp"

namespace {

using covobs::AdmissibilityError;
using covobs::SchemaError;
using json = nlohmann::json;

struct Loaded {
  covobs::GroupPtr group;
  covobs::IrrepCatalog catalog;
};

// A group argument is either a built-in name (Z3, D4, Q8, S3, ...) or a
// path to a group file. Catalogs resolve the same way, falling back to
// $COVOBS_CATALOG_DIR/<name>.json for named non-built-in catalogs.
covobs::GroupPtr resolve_group(const std::string& spec) {
  if (covobs::has_builtin(spec)) return covobs::builtin_group(spec);
  return covobs::io::group_from_json(covobs::io::read_json_file(spec));
}

covobs::IrrepCatalog resolve_catalog(const std::string& spec,
                                     const covobs::GroupPtr& group) {
  if (spec.empty() || spec == "builtin") {
    if (covobs::has_builtin(group->name)) {
      const char* dir = std::getenv("COVOBS_CATALOG_DIR");
      if (dir != nullptr) {
        std::filesystem::path candidate =
            std::filesystem::path(dir) / (group->name + ".json");
        if (std::filesystem::exists(candidate))
          return covobs::io::catalog_from_json(
              covobs::io::read_json_file(candidate.string()), group);
      }
      return covobs::builtin_catalog(group);
    }
    throw SchemaError("group '" + group->name +
                      "' has no built-in catalog; pass --catalog");
  }
  if (std::filesystem::exists(spec))
    return covobs::io::catalog_from_json(covobs::io::read_json_file(spec),
                                         group);
  const char* dir = std::getenv("COVOBS_CATALOG_DIR");
  if (dir != nullptr) {
    std::filesystem::path candidate =
        std::filesystem::path(dir) / (spec + ".json");
    if (std::filesystem::exists(candidate))
      return covobs::io::catalog_from_json(
          covobs::io::read_json_file(candidate.string()), group);
  }
  throw SchemaError("cannot resolve catalog '" + spec + "'");
}

Loaded load_for_frame(const json& frame_json, const std::string& group_opt,
                      const std::string& catalog_opt) {
  std::string name = group_opt;
  if (name.empty()) {
    if (!frame_json.contains("group") || !frame_json.at("group").is_string())
      throw SchemaError("frame file: missing field 'group'");
    name = frame_json.at("group").get<std::string>();
  }
  covobs::GroupPtr g = resolve_group(name);
  covobs::IrrepCatalog cat = resolve_catalog(catalog_opt, g);
  return {std::move(g), std::move(cat)};
}

void emit(const covobs::RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    covobs::io::write_text_atomic(cfg.out, text);
}

void emit_json(const covobs::RunConfig& cfg, const json& j) {
  emit(cfg, j.dump(2) + "\n");
}

std::vector<std::string> element_names(const covobs::FiniteGroup& g) {
  std::vector<std::string> names(g.order);
  for (int i = 0; i < g.order; ++i) names[i] = g.element_name(i);
  return names;
}

void emit_density(const covobs::RunConfig& cfg, const Eigen::VectorXd& rho,
                  const std::vector<std::string>& names) {
  if (cfg.format == "json")
    emit_json(cfg, covobs::io::density_to_json(rho, names));
  else
    emit(cfg, covobs::io::density_csv(rho, names));
}

int report_exit(const covobs::Report& r) { return r.pass() ? 0 : 1; }

covobs::QuantumFrame load_frame_file(const std::string& path,
                                     const Loaded& loaded, bool normalize) {
  json j = covobs::io::read_json_file(path);
  if (normalize && j.contains("state")) {
    double norm = covobs::io::vector_from_json(j.at("state")).norm();
    if (std::abs(norm - 1.0) > 1e-10)
      std::cerr << "warning: normalizing frame state (norm " << norm << ")\n";
  }
  return covobs::io::frame_from_json(j, loaded.group, loaded.catalog,
                                     normalize);
}

covobs::FrameObservable observable_of(const covobs::QuantumFrame& f,
                                      const covobs::IrrepCatalog& catalog) {
  return covobs::build_frame_observable(f.rep, catalog, f.copies, f.choice);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covariant POVM construction over finite symmetry groups"};
  app.require_subcommand(1);

  covobs::RunConfig cfg;
  app.add_option("--tolerance", cfg.tolerance,
                 "verification tolerance override");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--format", cfg.format, "output format: csv | json");
  app.add_option("--oracle-bound", cfg.oracle_bound,
                 "dimension cap for the intertwiner solver");
  app.add_option("--out", cfg.out,
                 "output path (atomic write); default stdout");

  // group verify
  auto* group_cmd = app.add_subcommand("group", "group-table operations");
  group_cmd->require_subcommand(1);
  std::string group_file;
  auto* group_verify =
      group_cmd->add_subcommand("verify", "check group axioms");
  group_verify->add_option("file", group_file, "group JSON file")->required();

  // rep decompose / induce
  auto* rep_cmd = app.add_subcommand("rep", "representation operations");
  rep_cmd->require_subcommand(1);
  std::string rep_file, rep_group, rep_catalog;
  auto* rep_decompose =
      rep_cmd->add_subcommand("decompose", "isotypic decomposition");
  rep_decompose->add_option("file", rep_file, "rep JSON file")->required();
  rep_decompose->add_option("--group", rep_group, "group (built-in or file)")
      ->required();
  rep_decompose->add_option("--catalog", rep_catalog,
                            "catalog (built-in, file, or name)");

  std::string ind_group, ind_action, ind_subrep;
  int ind_base = 0;
  auto* rep_induce = rep_cmd->add_subcommand(
      "induce",
      "induced representation from a little-group representation");
  rep_induce->add_option("--group", ind_group, "group (built-in or file)")
      ->required();
  rep_induce->add_option("--action", ind_action, "action JSON file")
      ->required();
  rep_induce->add_option("--base-point", ind_base, "orbit base point q");
  rep_induce
      ->add_option("--little-rep", ind_subrep,
                   "rep JSON file over the stabilizer subgroup")
      ->required();

  // povm verify / dilate
  auto* povm_cmd = app.add_subcommand("povm", "POVM operations");
  povm_cmd->require_subcommand(1);
  std::string povm_file;
  bool povm_spectral = false;
  auto* povm_verify = povm_cmd->add_subcommand("verify", "check POVM axioms");
  povm_verify->add_option("file", povm_file, "POVM JSON file")->required();
  povm_verify->add_flag("--spectral", povm_spectral,
                        "also require projector atoms");

  std::string dil_file, dil_group, dil_action, dil_rep;
  auto* povm_dilate =
      povm_cmd->add_subcommand("dilate", "covariant Naimark dilation");
  povm_dilate->add_option("file", dil_file, "POVM JSON file")->required();
  povm_dilate->add_option("--group", dil_group, "group (built-in or file)")
      ->required();
  povm_dilate->add_option("--action", dil_action,
                          "action JSON file (default: left translation)");
  povm_dilate->add_option("--rep", dil_rep, "rep JSON file for U")->required();

  // intertwiner solve
  auto* int_cmd = app.add_subcommand("intertwiner", "intertwiner operations");
  int_cmd->require_subcommand(1);
  std::string sol_group, sol_u, sol_v;
  auto* int_solve = int_cmd->add_subcommand(
      "solve", "basis of {A : AU(g) = V(g)A} by brute force");
  int_solve->add_option("--group", sol_group, "group (built-in or file)")
      ->required();
  int_solve->add_option("--rep-u", sol_u, "source rep JSON file")->required();
  int_solve->add_option("--rep-v", sol_v, "target rep JSON file")->required();

  // frame build / density / marginalize
  auto* frame_cmd = app.add_subcommand("frame", "quantum reference frames");
  frame_cmd->require_subcommand(1);
  std::string fr_file, fr_group, fr_catalog, fr_subgroup;
  bool fr_normalize = false;
  auto* frame_build =
      frame_cmd->add_subcommand("build", "frame observable POVM on S = G");
  auto* frame_density_cmd =
      frame_cmd->add_subcommand("density", "frame probability density");
  auto* frame_marginalize =
      frame_cmd->add_subcommand("marginalize", "pushforward to a quotient G/H");
  for (auto* sub : {frame_build, frame_density_cmd, frame_marginalize}) {
    sub->add_option("file", fr_file, "frame JSON file")->required();
    sub->add_option("--group", fr_group, "override the frame's group");
    sub->add_option("--catalog", fr_catalog, "catalog (built-in, file, name)");
    sub->add_flag("--normalize", fr_normalize,
                  "normalize an unnormalized state instead of failing");
  }
  frame_marginalize
      ->add_option("--subgroup", fr_subgroup,
                   "comma-separated generator element indices of H")
      ->required();

  // relative build / density
  auto* rel_cmd =
      app.add_subcommand("relative", "observables relative to a frame");
  rel_cmd->require_subcommand(1);
  std::string rel_i, rel_j, rel_group, rel_catalog;
  bool rel_normalize = false;
  auto* rel_build = rel_cmd->add_subcommand(
      "build", "convolution POVM of two frames on the joint space");
  auto* rel_density =
      rel_cmd->add_subcommand("density", "relative density between two frames");
  for (auto* sub : {rel_build, rel_density}) {
    sub->add_option("frame_i", rel_i, "reference frame JSON file")->required();
    sub->add_option("frame_j", rel_j, "system frame JSON file")->required();
    sub->add_option("--group", rel_group, "override the frames' group");
    sub->add_option("--catalog", rel_catalog, "catalog (built-in, file, name)");
    sub->add_flag("--normalize", rel_normalize,
                  "normalize unnormalized states instead of failing");
  }

  // paradox witness
  auto* par_cmd = app.add_subcommand("paradox", "quantum-frames paradox");
  par_cmd->require_subcommand(1);
  std::string par_i, par_j, par_k, par_group, par_catalog;
  auto* par_witness = par_cmd->add_subcommand(
      "witness", "max commutator of relative observables sharing a frame");
  par_witness->add_option("frame_i", par_i, "shared frame JSON file")
      ->required();
  par_witness->add_option("frame_j", par_j, "second frame JSON file")
      ->required();
  par_witness->add_option("frame_k", par_k, "third frame JSON file")
      ->required();
  par_witness->add_option("--group", par_group, "override the frames' group");
  par_witness->add_option("--catalog", par_catalog,
                          "catalog (built-in, file, name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    cfg.validate();
    covobs::Tolerances tol = cfg.tolerances();

    if (group_verify->parsed()) {
      covobs::GroupPtr g = covobs::io::group_from_json(
          covobs::io::read_json_file(group_file), false);
      covobs::Report r = verify_group(*g);
      emit_json(cfg, covobs::io::report_to_json(r));
      return report_exit(r);
    }

    if (rep_decompose->parsed()) {
      covobs::GroupPtr g = resolve_group(rep_group);
      covobs::IrrepCatalog cat = resolve_catalog(rep_catalog, g);
      covobs::UnitaryRep u =
          covobs::io::rep_from_json(covobs::io::read_json_file(rep_file), g);
      covobs::IsotypicDecomposition d = covobs::decompose(u, cat);
      covobs::Report r = covobs::verify_decomposition(d, u, cat, tol.verify);
      if (!r.pass())
        throw AdmissibilityError("decomposition failed verification");
      emit_json(cfg, covobs::io::decomposition_to_json(d));
      return 0;
    }

    if (rep_induce->parsed()) {
      covobs::GroupPtr g = resolve_group(ind_group);
      covobs::GroupAction action = covobs::io::action_from_json(
          covobs::io::read_json_file(ind_action), g);
      covobs::Subgroup little = covobs::stabilizer(action, ind_base);
      json little_json = covobs::io::read_json_file(ind_subrep);
      // the little group of G is named "G:H<order>"; accept plain "G" too
      if (little_json.contains("group") &&
          little_json.at("group") == g->name)
        little_json["group"] = little.as_group->name;
      covobs::UnitaryRep sub_rep =
          covobs::io::rep_from_json(little_json, little.as_group);
      covobs::CosetSpace cs = covobs::coset_space(action, little, ind_base);
      auto [v, e] = covobs::induce(cs, sub_rep);
      json out;
      out["rep"] = covobs::io::rep_to_json(v);
      out["spectral"] = covobs::io::povm_to_json(e);
      emit_json(cfg, out);
      return 0;
    }

    if (povm_verify->parsed()) {
      covobs::POVM p =
          covobs::io::povm_from_json(covobs::io::read_json_file(povm_file));
      covobs::Report r =
          povm_spectral ? verify_spectral(p, tol) : verify_povm(p, tol);
      emit_json(cfg, covobs::io::report_to_json(r));
      return report_exit(r);
    }

    if (povm_dilate->parsed()) {
      covobs::GroupPtr g = resolve_group(dil_group);
      covobs::CovarianceSystem sys;
      sys.action = dil_action.empty()
                       ? covobs::left_translation_action(g)
                       : covobs::io::action_from_json(
                             covobs::io::read_json_file(dil_action), g);
      sys.rep =
          covobs::io::rep_from_json(covobs::io::read_json_file(dil_rep), g);
      sys.povm =
          covobs::io::povm_from_json(covobs::io::read_json_file(dil_file));
      covobs::Report pre = verify_covariance(sys, tol);
      if (!pre.pass())
        throw AdmissibilityError(
            "input is not a covariance system; run povm verify for details");
      auto [imp, a] = covobs::dilate(sys);
      json out;
      out["rep"] = covobs::io::rep_to_json(imp.rep);
      out["spectral"] = covobs::io::povm_to_json(imp.spectral);
      out["intertwiner"] = covobs::io::matrix_to_json(a.matrix);
      emit_json(cfg, out);
      return 0;
    }

    if (int_solve->parsed()) {
      covobs::GroupPtr g = resolve_group(sol_group);
      covobs::UnitaryRep u =
          covobs::io::rep_from_json(covobs::io::read_json_file(sol_u), g);
      covobs::UnitaryRep v =
          covobs::io::rep_from_json(covobs::io::read_json_file(sol_v), g);
      std::vector<covobs::Mat> basis =
          covobs::solve_intertwiners(u, v, cfg.oracle_bound);
      json out;
      out["dimension"] = basis.size();
      json jb = json::array();
      for (const covobs::Mat& b : basis)
        jb.push_back(covobs::io::matrix_to_json(b));
      out["basis"] = std::move(jb);
      emit_json(cfg, out);
      return 0;
    }

    if (frame_build->parsed() || frame_density_cmd->parsed() ||
        frame_marginalize->parsed()) {
      json fj = covobs::io::read_json_file(fr_file);
      Loaded loaded = load_for_frame(fj, fr_group, fr_catalog);
      covobs::QuantumFrame f = load_frame_file(fr_file, loaded, fr_normalize);
      covobs::FrameObservable obs = observable_of(f, loaded.catalog);

      if (frame_build->parsed()) {
        emit_json(cfg, covobs::io::povm_to_json(obs.povm));
        return 0;
      }
      if (frame_density_cmd->parsed()) {
        emit_density(cfg, covobs::frame_density(f, obs),
                     element_names(*loaded.group));
        return 0;
      }
      std::vector<int> generators;
      std::stringstream parts(fr_subgroup);
      for (std::string part; std::getline(parts, part, ',');) {
        try {
          generators.push_back(std::stoi(part));
        } catch (const std::exception&) {
          throw SchemaError("--subgroup expects comma-separated indices");
        }
      }
      if (generators.empty())
        throw SchemaError("--subgroup expects comma-separated indices");
      covobs::Subgroup h =
          covobs::generated_subgroup(loaded.group, generators);
      covobs::QuotientObservable q = covobs::marginalize_to_quotient(obs, h);
      covobs::Report r = verify_covariance({q.action, f.rep, q.povm}, tol);
      json out = covobs::io::povm_to_json(q.povm);
      out["cosets"] = q.cosets.cosets;
      json names = json::array();
      for (int c = 0; c < q.cosets.count(); ++c)
        names.push_back(q.cosets.coset_name(c));
      out["coset_names"] = std::move(names);
      out["report"] = covobs::io::report_to_json(r);
      emit_json(cfg, out);
      return report_exit(r);
    }

    if (rel_build->parsed() || rel_density->parsed()) {
      json fi_json = covobs::io::read_json_file(rel_i);
      Loaded loaded = load_for_frame(fi_json, rel_group, rel_catalog);
      covobs::QuantumFrame frame_i =
          load_frame_file(rel_i, loaded, rel_normalize);
      covobs::QuantumFrame frame_j =
          load_frame_file(rel_j, loaded, rel_normalize);
      covobs::FrameObservable obs_i = observable_of(frame_i, loaded.catalog);
      covobs::FrameObservable obs_j = observable_of(frame_j, loaded.catalog);
      auto [hat_i, hat_j] =
          covobs::extend_to_product(obs_i.povm, obs_j.povm);
      covobs::GroupAction left =
          covobs::left_translation_action(loaded.group);
      covobs::RelativeObservable rel = covobs::convolve(hat_i, hat_j, left);
      if (rel_build->parsed()) {
        emit_json(cfg, covobs::io::povm_to_json(rel.povm));
        return 0;
      }
      covobs::Vec joint =
          covobs::kron(frame_j.state, frame_i.state).col(0);
      emit_density(cfg, covobs::relative_density(joint, rel),
                   element_names(*loaded.group));
      return 0;
    }

    if (par_witness->parsed()) {
      json fi_json = covobs::io::read_json_file(par_i);
      Loaded loaded = load_for_frame(fi_json, par_group, par_catalog);
      covobs::QuantumFrame frame_i = load_frame_file(par_i, loaded, false);
      covobs::QuantumFrame frame_j = load_frame_file(par_j, loaded, false);
      covobs::QuantumFrame frame_k = load_frame_file(par_k, loaded, false);
      covobs::CommutationWitness w =
          covobs::paradox_witness(frame_i, frame_j, frame_k, loaded.catalog);
      json out;
      out["max_commutator_norm"] = w.max_norm;
      out["witness_atoms"] = {w.atom_left, w.atom_right};
      out["frame_self_commutator"] = w.frame_self_commutator;
      out["sufficient_condition_holds"] = w.sufficient_condition_holds;
      emit_json(cfg, out);
      return 0;
    }

    std::cerr << "unknown subcommand\n" << app.help();
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AdmissibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
