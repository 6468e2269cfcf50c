// Writes the shipped workspace corpus: make_corpus <output-dir>.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dgw/instances.hpp"
#include "dgw/resolution.hpp"
#include "dgw/workspace.hpp"

using namespace dgw;

namespace {

void write(const std::filesystem::path& dir, const std::string& name, const Workspace& ws) {
  const json j = serialize(ws);
  // Reload before writing so nothing unloadable is ever shipped.
  load_workspace(j);
  std::ofstream(dir / (name + ".json")) << j.dump(2) << "\n";
}

json expect_of(const std::map<int, std::size_t>& dims) {
  json e = json::object();
  for (const auto& [k, n] : dims)
    if (n != 0) e[std::to_string(k)] = n;
  return e;
}

TaskSpec task(std::string kind, json params) { return {std::move(kind), std::move(params)}; }

Workspace complexes_workspace() {
  Workspace ws;
  const auto corpus = complex_corpus();
  for (const auto& [name, c] : corpus) {
    ws.complexes[name] = c;
    ws.tasks["cohomology_" + name] = task("cohomology", {{"object", name}, {"expect", expect_of(cohomology(c).dims)}});
  }
  gen::Rng rng(2024);
  // Identity maps are quasi-isomorphisms; maps into acyclic complexes are null-homotopic.
  for (const auto& [name, c] : corpus) {
    if (c.dim() == 0) continue;
    const std::string id = "id_" + name;
    ws.chain_maps[id] = {name, name, Matrix::identity(c.dim())};
    ws.tasks["quasi_iso_" + id] = task("quasi-iso", {{"map", id}});
    ws.tasks["cone_" + id] = task("cone", {{"map", id}});
  }
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"random_1", "random_4"}, {"random_2", "random_8"}, {"random_3", "random_12"},
      {"random_5", "random_16"}, {"sign_cancel", "random_20"}, {"random_6", "acyclic_pair"}};
  for (const auto& [src, dst] : pairs) {
    const auto& v = ws.complexes.at(src);
    const auto& w = ws.complexes.at(dst);
    const std::string name = "map_" + src + "_" + dst;
    ws.chain_maps[name] = {src, dst, gen::random_chain_map(rng, v, w)};
    ws.tasks["null_homotopy_" + name] = task("null-homotopy", {{"map", name}});
    ws.tasks["cone_" + name] = task("cone", {{"map", name}});
    ws.tasks["quasi_iso_" + name] =
        task("quasi-iso", {{"map", name}, {"expect", is_quasi_iso(v, w, ws.chain_maps.at(name).map).quasi_iso}});
  }
  // Filtered modules over the ground field: pieces by descending degree.
  ws.algebras["k"] = ground_field();
  for (const auto& src : {"random_7", "random_10"}) {
    const auto& c = ws.complexes.at(src);
    const std::string m = std::string("module_") + src;
    ws.modules[m] = {"k", trivial_module(ground_field(), c)};
    std::vector<std::vector<std::size_t>> pieces;
    const auto support = c.space().support();
    for (auto it = support.rbegin(); it != support.rend(); ++it) pieces.push_back(c.space().indices_of_degree(*it));
    ws.filtrations["filtration_" + std::string(src)] = {m, pieces, filtration_from_pieces(ws.modules[m].module, pieces)};
  }
  ws.modules["module_acyclic"] = {"k", trivial_module(ground_field(), ws.complexes.at("random_12"))};
  ws.tasks["filtered_homotopy_random_7"] =
      task("filtered-homotopy", {{"filtration", "filtration_random_7"}, {"target", "module_acyclic"}, {"seed", 7}});
  ws.tasks["filtered_homotopy_random_10"] =
      task("filtered-homotopy", {{"filtration", "filtration_random_10"}, {"target", "module_acyclic"}, {"seed", 10}});
  return ws;
}

Workspace algebras_workspace() {
  Workspace ws;
  ws.algebras["k"] = ground_field();
  ws.algebras["delta"] = delta_algebra();
  ws.algebras["lambda"] = lambda_algebra();
  ws.algebras["t2"] = upper_triangular_algebra();
  ws.morphisms["eps_delta"] = {"delta", "k", augmentation(ws.algebras["delta"])};
  ws.morphisms["eps_lambda"] = {"lambda", "k", augmentation(ws.algebras["lambda"])};
  // Rebind the morphism endpoints to the workspace's own algebra objects.
  ws.morphisms["eps_delta"].morphism = make_algebra_morphism(ws.algebras["delta"], ws.algebras["k"],
                                                             ws.morphisms["eps_delta"].morphism.map);
  ws.morphisms["unit_t2"] = {"k", "t2", unit_inclusion(ws.algebras["t2"])};
  for (auto& [name, m] : upper_triangular_modules()) ws.modules[name] = {"t2", m};
  ws.modules["k_point"] = {"k", trivial_point(ground_field())};
  ws.modules["k_pair"] = {"k", trivial_module(ground_field(), complex_corpus()[3].complex)};
  ws.tasks["cohomology_delta"] = task("cohomology", {{"object", "delta"}, {"expect", {{"0", 1}}}});
  ws.tasks["cohomology_lambda"] = task("cohomology", {{"object", "lambda"}, {"expect", {{"-1", 1}, {"0", 1}}}});
  ws.tasks["cohomology_t2"] = task("cohomology", {{"object", "t2"}, {"expect", {{"0", 3}}}});
  ws.tasks["adjunction_extension_t2_point"] = task(
      "adjunction", {{"pair", "extension"}, {"morphism", "unit_t2"}, {"source", "k_point"}, {"target", "t2_regular"}});
  ws.tasks["adjunction_extension_t2_pair"] = task(
      "adjunction", {{"pair", "extension"}, {"morphism", "unit_t2"}, {"source", "k_pair"}, {"target", "t2_simple_2"}});
  ws.tasks["adjunction_tensor_t2"] = task(
      "adjunction", {{"pair", "tensor"}, {"morphism", "unit_t2"}, {"source", "k_pair"}, {"target", "t2_simple_1"}});
  return ws;
}

Workspace delta_workspace() {
  Workspace ws;
  const auto a = delta_algebra();
  const auto mods = delta_modules();
  ws.algebras["delta"] = mods.front().module.algebra_ptr();
  ws.algebras["k"] = ground_field();
  ws.morphisms["eps"] = {"delta", "k", make_algebra_morphism(ws.algebras["delta"], ground_field(), [] {
                           Matrix m(1, 3);
                           m(0, 1) = 1;
                           return m;
                         }())};
  for (const auto& [name, m] : mods) ws.modules[name] = {"delta", m};
  ws.modules["k_point"] = {"k", trivial_point(ground_field())};
  // Trivial Delta-actions on dense complexes.
  for (const auto& [name, c] : complex_corpus())
    if (name == "random_9" || name == "random_14")
      ws.modules["delta_trivial_" + name] = {"delta", trivial_module(ws.algebras["delta"], c)};
  for (const auto& [name, m] : mods)
    ws.tasks["cohomology_" + name] =
        task("cohomology", {{"object", name}, {"expect", expect_of(cohomology(m.carrier()).dims)}});
  for (const auto& name : {"delta_trivial_random_9", "delta_trivial_random_14"})
    ws.tasks[std::string("cohomology_") + name] = task(
        "cohomology", {{"object", name}, {"expect", expect_of(cohomology(ws.modules[name].module.carrier()).dims)}});
  for (int depth : {3, 4, 5})
    ws.tasks["resolve_delta_k_depth_" + std::to_string(depth)] =
        task("resolve", {{"module", "delta_k"}, {"depth", depth}});
  ws.tasks["resolve_delta_mod_y"] = task("resolve", {{"module", "delta_mod_y"}, {"depth", 3}});
  ws.tasks["derived_tensor_delta_k"] = task("derived-tensor", {{"module", "delta_k"}, {"morphism", "eps"}, {"depth", 3}});
  ws.tasks["derived_hom_delta_k"] = task(
      "derived-hom", {{"source", "delta_k"}, {"target", "delta_k"}, {"window", {0, 2}}, {"depth", 4}, {"expect", {{"0", 1}}}});
  ws.tasks["verify_equivalence"] =
      task("verify-equivalence", {{"morphism", "eps"},
                                  {"modules", {"delta_k", "delta_mod_y", "delta_k_shift_up", "delta_k_sum", "delta_regular"}},
                                  {"targets", {"k_point"}},
                                  {"window", {0, 1}},
                                  {"depth", 3}});
  ws.tasks["kprojective_resolution_delta_k"] =
      task("kprojective", {{"module", "delta_k"},
                           {"resolve_depth", 2},
                           {"acyclic", {"delta_cone_id_k", "delta_cone_augmentation", "delta_trivial_acyclic"}},
                           {"maps", 5},
                           {"seed", 3}});
  ws.tasks["adjunction_tensor_delta"] =
      task("adjunction", {{"pair", "tensor"}, {"morphism", "eps"}, {"source", "delta_mod_y"}, {"target", "k_point"}});
  ws.tasks["adjunction_extension_delta"] =
      task("adjunction", {{"pair", "extension"}, {"morphism", "eps"}, {"source", "delta_k_sum"}, {"target", "k_point"}});
  // Resolution total filtered by columns: column 0 is a submodule, then each further column.
  {
    const auto r = build_resolution(ws.modules["delta_k"].module, 2);
    const auto perm = degree_permutation(r.total.space());
    std::vector<std::size_t> new_index(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) new_index[perm[i]] = i;
    ws.modules["delta_k_resolution"] = {"delta", permute(r.total, perm)};
    std::vector<std::vector<std::size_t>> pieces;
    std::size_t offset = r.total.dim();
    for (std::size_t j = 0; j < r.columns.size(); ++j) {
      // Columns sit in the total in the order P_{-n}, ..., P_0.
      offset -= r.columns[j].dim();
      std::vector<std::size_t> piece;
      for (std::size_t b = 0; b < r.columns[j].dim(); ++b) piece.push_back(new_index[offset + b]);
      pieces.push_back(std::move(piece));
    }
    ws.filtrations["delta_k_resolution_columns"] = {
        "delta_k_resolution", pieces, filtration_from_pieces(ws.modules["delta_k_resolution"].module, pieces)};
    ws.tasks["filtered_homotopy_delta_resolution"] = task(
        "filtered-homotopy",
        {{"filtration", "delta_k_resolution_columns"}, {"target", "delta_cone_augmentation"}, {"seed", 5}});
  }
  return ws;
}

Workspace lambda_workspace() {
  Workspace ws;
  const auto mods = lambda_modules();
  ws.algebras["lambda"] = mods.front().module.algebra_ptr();
  for (const auto& [name, m] : mods) ws.modules[name] = {"lambda", m};
  ws.tasks["resolve_lambda_k"] = task("resolve", {{"module", "lambda_k"}, {"depth", 4}});
  ws.tasks["derived_hom_lambda_k"] =
      task("derived-hom", {{"source", "lambda_k"}, {"target", "lambda_k"}, {"window", {0, 5}}, {"depth", 8}});
  return ws;
}

Workspace equivariant_workspace() {
  Workspace ws;
  ws.groups["torus1"] = GroupData::torus(1);
  ws.groups["z2"] = GroupData::finite({2});
  ws.groups["z3"] = GroupData::finite({3});
  for (const auto& [name, v] : equivariant_corpus()) {
    const std::string group = v.group.is_finite() ? (v.group.orders[0] == 2 ? "z2" : "z3") : "torus1";
    ws.equivariant[name] = {group, v};
    ws.tasks["validate_" + name] = task("validate-equivariant", {{"object", name}});
  }
  ws.complexes["point"] = complex_corpus()[1].complex;
  ws.complexes["pair"] = complex_corpus()[2].complex;
  ws.tasks["resolution_koszul_rank1_split"] =
      task("equivariant-resolution", {{"object", "koszul_rank1_split"}, {"depth", 2}});
  ws.tasks["resolution_strong_weight_pair"] =
      task("equivariant-resolution", {{"object", "strong_weight_pair"}, {"depth", 2}});
  ws.tasks["ind_z2_regular_point"] = task("ind-adjunction", {{"object", "z2_regular"}, {"complex", "point"}});
  ws.tasks["ind_z3_characters_pair"] = task("ind-adjunction", {{"object", "z3_characters"}, {"complex", "pair"}});
  return ws;
}

Workspace pbw_workspace() {
  Workspace ws;
  ws.pbw_contexts["sl2"] = sl2_context();
  ws.pbw_contexts["abelian"] = abelian_context(3, 1);
  ws.tasks["pbw_sl2_n4"] = task("pbw-check", {{"context", "sl2"}, {"degree", 4}});
  ws.tasks["pbw_sl2_n1"] = task("pbw-check", {{"context", "sl2"}, {"degree", 1}});
  ws.tasks["pbw_abelian_n4"] = task("pbw-check", {{"context", "abelian"}, {"degree", 4}});
  ws.tasks["symmetrize_ef"] = task("symmetrize", {{"context", "sl2"}, {"monomial", {"E", "F"}}, {"expect", "EF - 1/2*H"}});
  ws.tasks["symmetrize_ee"] = task("symmetrize", {{"context", "sl2"}, {"monomial", {"E", "E"}}, {"expect", "E^2"}});
  ws.tasks["symmetrize_e"] = task("symmetrize", {{"context", "sl2"}, {"monomial", {"E"}}, {"expect", "E"}});
  ws.tasks["normal_form_fe"] = task("normal-form", {{"context", "sl2"}, {"word", {"F", "E"}}, {"expect", "EF - H"}});
  ws.tasks["normal_form_efh"] = task("normal-form", {{"context", "sl2"}, {"word", {"E", "F", "H"}}});
  ws.tasks["normal_form_ordered"] = task("normal-form", {{"context", "sl2"}, {"word", {"H", "E", "F"}}, {"expect", "HEF"}});
  return ws;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  write(dir, "algebras", algebras_workspace());
  write(dir, "complexes", complexes_workspace());
  write(dir, "delta_modules", delta_workspace());
  write(dir, "equivariant", equivariant_workspace());
  write(dir, "lambda_modules", lambda_workspace());
  write(dir, "pbw", pbw_workspace());
  return 0;
}
