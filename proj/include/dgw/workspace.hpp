#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgw/dg.hpp"
#include "dgw/equivariant.hpp"
#include "dgw/pbw.hpp"

namespace dgw {

using json = nlohmann::json;

inline constexpr int workspace_version = 1;

struct NamedAlgebraMorphism {
  std::string source, target;
  DGAlgebraMorphism morphism;
};

struct NamedDGModule {
  std::string algebra;
  DGModule module;
};

struct NamedChainMap {
  std::string source, target;
  Matrix map;
};

struct NamedEquivariantComplex {
  std::string group;
  EquivariantComplex complex;
};

/// Pieces are disjoint lists of basis indices of the module covering it; F_i
/// is spanned by the first i pieces.
struct NamedFiltration {
  std::string module;
  std::vector<std::vector<std::size_t>> pieces;
  FilteredDGModule filtered;  // module permuted so the pieces come in order
};

FilteredDGModule filtration_from_pieces(const DGModule& m, const std::vector<std::vector<std::size_t>>& pieces);

struct TaskSpec {
  std::string kind;
  json params;  // every key except "kind"
};

/// Everything a workspace file declares, validated.
struct Workspace {
  std::map<std::string, Complex> complexes;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, NamedAlgebraMorphism> morphisms;
  std::map<std::string, NamedDGModule> modules;
  std::map<std::string, NamedChainMap> chain_maps;
  std::map<std::string, GroupData> groups;
  std::map<std::string, NamedEquivariantComplex> equivariant;
  std::map<std::string, NamedFiltration> filtrations;
  std::map<std::string, PBWContext> pbw_contexts;
  std::map<std::string, TaskSpec> tasks;

  std::size_t object_count() const;
  /// Complex carried by any named object (complex, algebra, module, equivariant).
  const Complex* find_carrier(const std::string& name) const;
  const DGModule& module(const std::string& name) const;
  const Complex& complex(const std::string& name) const;
  const DGAlgebraMorphism& morphism(const std::string& name) const;
  const EquivariantComplex& equivariant_complex(const std::string& name) const;
  const PBWContext& pbw(const std::string& name) const;
};

/// Parses and validates; every error is a StructuralError whose message names
/// the object (validation failures keep their witness text).
Workspace load_workspace(const json& j);
Workspace load_workspace_file(const std::string& path);
json serialize(const Workspace& ws);

// Block-level codecs, shared with the corpus generator.
json complex_to_json(const Complex& c);
Complex complex_from_json(const json& j);
json sparse_to_json(const Matrix& m);
Matrix sparse_from_json(const json& j, std::size_t rows, std::size_t cols);
json algebra_to_json(const DGAlgebra& a);
json module_to_json(const std::string& algebra, const DGModule& m);
json morphism_to_json(const std::string& source, const std::string& target, const DGAlgebraMorphism& m);
json group_to_json(const GroupData& g);
json equivariant_to_json(const std::string& group, const EquivariantComplex& v);
json pbw_to_json(const PBWContext& ctx);

}  // namespace dgw
