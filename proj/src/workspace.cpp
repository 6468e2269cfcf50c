#include "dgw/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dgw/errors.hpp"
#include "dgw/instances.hpp"

namespace dgw {

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw StructuralError(context + ": " + message);
}

void check_keys(const json& j, const std::string& context, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(context, "expected an object");
  std::set<std::string> allowed;
  for (auto k : required) {
    allowed.insert(k);
    if (!j.contains(k)) fail(context, std::string("missing key \"") + k + "\"");
  }
  for (auto k : optional) allowed.insert(k);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(context, "unknown key \"" + k + "\"");
}

Rational rational_from(const json& j) {
  if (!j.is_string()) throw StructuralError("rationals must be strings, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

std::size_t index_from(const json& j, std::size_t bound, const std::string& what) {
  if (!j.is_number_unsigned()) throw StructuralError(what + " must be a nonnegative integer");
  const auto i = j.get<std::size_t>();
  if (i >= bound) throw StructuralError(what + " " + std::to_string(i) + " out of range (< " + std::to_string(bound) + ")");
  return i;
}

int degree_from_key(const std::string& key) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw StructuralError("degree key \"" + key + "\" is not an integer");
  return k;
}

Weight weight_from(const json& j) {
  if (!j.is_array()) throw StructuralError("weights must be integer arrays");
  Weight w;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw StructuralError("weights must be integer arrays");
    w.push_back(x.get<long long>());
  }
  return w;
}

bool sorted_by_degree(const GradedSpace& g) { return std::is_sorted(g.degrees.begin(), g.degrees.end()); }

json dense_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix dense_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw StructuralError("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw StructuralError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from(j[i][c]);
  }
  return m;
}

template <class F>
auto guarded(const std::string& context, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw StructuralError(context + ": " + e.what());
  } catch (const StructuralError& e) {
    throw StructuralError(context + ": " + e.what());
  } catch (const json::exception& e) {
    throw StructuralError(context + ": " + e.what());
  }
}

}  // namespace

// ---- blocks ---------------------------------------------------------------

json sparse_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) out.push_back({i, j, format_rational(m(i, j))});
  return out;
}

Matrix sparse_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw StructuralError("sparse matrix must be an array of [row, col, \"value\"] triples");
  Matrix m(rows, cols);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw StructuralError("sparse entry must be [row, col, \"value\"]");
    const auto r = index_from(t[0], rows, "row");
    const auto c = index_from(t[1], cols, "column");
    if (!seen.insert({r, c}).second) throw StructuralError("duplicate sparse entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
    m(r, c) = rational_from(t[2]);
  }
  return m;
}

json complex_to_json(const Complex& input) {
  const Complex c = sorted_by_degree(input.space()) ? input : sort_by_degree(input);
  const auto& g = c.space();
  json j;
  j["support"] = json::array();
  j["dims"] = json::object();
  j["d"] = json::object();
  if (!g.labels.empty()) j["labels"] = json::object();
  if (g.has_weights()) j["weights"] = json::object();
  for (int k : g.support()) {
    const auto key = std::to_string(k);
    const auto idx = g.indices_of_degree(k);
    j["support"].push_back(k);
    j["dims"][key] = idx.size();
    if (!g.labels.empty()) {
      json labels = json::array();
      for (auto i : idx) labels.push_back(g.labels[i]);
      j["labels"][key] = std::move(labels);
    }
    if (g.has_weights()) {
      json ws = json::array();
      for (auto i : idx) ws.push_back(g.weights[i]);
      j["weights"][key] = std::move(ws);
    }
    if (g.dim_of_degree(k + 1) > 0) j["d"][key] = dense_to_json(c.block(k));
  }
  return j;
}

Complex complex_from_json(const json& j) {
  check_keys(j, "complex", {"support", "dims"}, {"labels", "weights", "d"});
  if (!j["support"].is_array()) throw StructuralError("support must be an array of degrees");
  std::vector<int> support;
  for (const auto& x : j["support"]) {
    if (!x.is_number_integer()) throw StructuralError("support entries must be integers");
    support.push_back(x.get<int>());
  }
  if (!std::is_sorted(support.begin(), support.end()) || std::adjacent_find(support.begin(), support.end()) != support.end())
    throw StructuralError("support must be strictly increasing");
  if (!j["dims"].is_object() || j["dims"].size() != support.size())
    throw StructuralError("dims must list exactly the support degrees");
  std::map<int, std::size_t> dims;
  for (int k : support) {
    const auto key = std::to_string(k);
    if (!j["dims"].contains(key)) throw StructuralError("dims missing degree " + key);
    const auto& n = j["dims"][key];
    if (!n.is_number_unsigned() || n.get<std::size_t>() == 0)
      throw StructuralError("dims of degree " + key + " must be a positive integer");
    dims[k] = n.get<std::size_t>();
  }
  GradedSpace g;
  const bool has_labels = j.contains("labels");
  const bool has_weights = j.contains("weights");
  for (const auto& block : {"labels", "weights", "d"})
    if (j.contains(block)) {
      if (!j[block].is_object()) throw StructuralError(std::string(block) + " must be an object keyed by degree");
      for (const auto& [key, v] : j[block].items())
        if (!dims.count(degree_from_key(key))) throw StructuralError(std::string(block) + " has degree " + key + " outside the support");
    }
  for (const auto& [k, n] : dims) {
    const auto key = std::to_string(k);
    for (std::size_t i = 0; i < n; ++i) g.degrees.push_back(k);
    if (has_labels) {
      const auto& l = j["labels"].contains(key) ? j["labels"][key] : json();
      if (!l.is_array() || l.size() != n) throw StructuralError("labels of degree " + key + " must list " + std::to_string(n) + " strings");
      for (const auto& s : l) {
        if (!s.is_string()) throw StructuralError("labels must be strings");
        g.labels.push_back(s.get<std::string>());
      }
    }
    if (has_weights) {
      const auto& w = j["weights"].contains(key) ? j["weights"][key] : json();
      if (!w.is_array() || w.size() != n) throw StructuralError("weights of degree " + key + " must list " + std::to_string(n) + " weights");
      for (const auto& x : w) g.weights.push_back(weight_from(x));
    }
  }
  g.validate();
  Matrix d(g.dim(), g.dim());
  if (j.contains("d"))
    for (const auto& [key, m] : j["d"].items()) {
      const int k = degree_from_key(key);
      if (!dims.count(k + 1)) throw StructuralError("d of degree " + key + " has no target degree in the support");
      const Matrix block = dense_from_json(m, dims[k + 1], dims[k]);
      d.scatter(g.indices_of_degree(k + 1), g.indices_of_degree(k), block);
    }
  return Complex::make(std::move(g), std::move(d));
}

json algebra_to_json(const DGAlgebra& a) {
  if (!sorted_by_degree(a.space())) throw StructuralError("serialize: algebra basis must be sorted by degree");
  json j;
  j["complex"] = complex_to_json(a.carrier());
  j["unit"] = a.unit();
  json products = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t jj = 0; jj < a.dim(); ++jj)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (sgn(a.left(i)(k, jj)) != 0) products.push_back({i, jj, k, format_rational(a.left(i)(k, jj))});
  j["products"] = std::move(products);
  if (a.declared_iota()) j["iota"] = sparse_to_json(*a.declared_iota());
  return j;
}

json module_to_json(const std::string& algebra, const DGModule& input) {
  const DGModule m = sorted_by_degree(input.space()) ? input : sort_by_degree(input);
  json j;
  j["algebra"] = algebra;
  j["complex"] = complex_to_json(m.carrier());
  json actions = json::array();
  for (std::size_t a = 0; a < m.algebra().dim(); ++a) {
    if (a == m.algebra().unit()) continue;
    for (const auto& e : sparse_to_json(m.action(a))) actions.push_back({a, e[0], e[1], e[2]});
  }
  j["actions"] = std::move(actions);
  return j;
}

json morphism_to_json(const std::string& source, const std::string& target, const DGAlgebraMorphism& m) {
  return {{"source", source}, {"target", target}, {"map", sparse_to_json(m.map)}};
}

json group_to_json(const GroupData& g) {
  if (g.is_finite()) return {{"kind", "finite"}, {"orders", g.orders}};
  return {{"kind", "torus"}, {"rank", g.torus_rank}};
}

json equivariant_to_json(const std::string& group, const EquivariantComplex& v) {
  if (!sorted_by_degree(v.carrier.space()))
    throw StructuralError("serialize: equivariant carrier must be sorted by degree");
  json j;
  j["group"] = group;
  j["complex"] = complex_to_json(v.carrier);
  json gens = json::array();
  for (std::size_t a = 0; a < v.pi.size(); ++a)
    gens.push_back({{"name", v.generator_names.empty() ? "g" + std::to_string(a) : v.generator_names[a]},
                    {"weight", v.pi_weights[a]},
                    {"matrix", sparse_to_json(v.pi[a])}});
  j["generators"] = std::move(gens);
  json psi = json::array(), i_ops = json::array();
  for (const auto& p : v.psi) {
    json coeffs = json::array();
    for (std::size_t r = 0; r < p.rows(); ++r) coeffs.push_back(format_rational(p(r, 0)));
    psi.push_back(std::move(coeffs));
  }
  for (const auto& i : v.i_ops) i_ops.push_back(sparse_to_json(i));
  j["psi"] = std::move(psi);
  j["i"] = std::move(i_ops);
  return j;
}

json pbw_to_json(const PBWContext& ctx) {
  json brackets = json::array();
  for (const auto& [key, terms] : ctx.brackets)
    for (const auto& [c, coeff] : terms)
      if (sgn(coeff) != 0) brackets.push_back({key.first, key.second, c, format_rational(coeff)});
  return {{"basis", ctx.names},
          {"k_dim", ctx.k_dim},
          {"weights", ctx.weights},
          {"brackets", std::move(brackets)},
          {"degree_bound", ctx.degree_bound}};
}

FilteredDGModule filtration_from_pieces(const DGModule& m, const std::vector<std::vector<std::size_t>>& pieces) {
  std::vector<std::size_t> perm, steps;
  for (const auto& piece : pieces) {
    if (piece.empty()) throw StructuralError("filtration pieces must be nonempty");
    perm.insert(perm.end(), piece.begin(), piece.end());
    steps.push_back(perm.size());
  }
  if (perm.size() != m.dim()) throw StructuralError("filtration pieces must cover the module exactly once");
  FilteredDGModule fv{permute(m, perm), std::move(steps)};
  validate_filtered(fv);
  return fv;
}

// ---- workspace ------------------------------------------------------------

std::size_t Workspace::object_count() const {
  return complexes.size() + algebras.size() + morphisms.size() + modules.size() + chain_maps.size() + groups.size() +
         equivariant.size() + filtrations.size() + pbw_contexts.size();
}

const Complex* Workspace::find_carrier(const std::string& name) const {
  if (auto it = complexes.find(name); it != complexes.end()) return &it->second;
  if (auto it = algebras.find(name); it != algebras.end()) return &it->second->carrier();
  if (auto it = modules.find(name); it != modules.end()) return &it->second.module.carrier();
  if (auto it = equivariant.find(name); it != equivariant.end()) return &it->second.complex.carrier;
  return nullptr;
}

namespace {

template <class M>
const auto& lookup(const M& m, const std::string& name, const char* what) {
  const auto it = m.find(name);
  if (it == m.end()) throw StructuralError(std::string("unknown ") + what + " \"" + name + "\"");
  return it->second;
}

}  // namespace

const DGModule& Workspace::module(const std::string& name) const { return lookup(modules, name, "module").module; }
const Complex& Workspace::complex(const std::string& name) const { return lookup(complexes, name, "complex"); }
const DGAlgebraMorphism& Workspace::morphism(const std::string& name) const {
  return lookup(morphisms, name, "morphism").morphism;
}
const EquivariantComplex& Workspace::equivariant_complex(const std::string& name) const {
  return lookup(equivariant, name, "equivariant complex").complex;
}
const PBWContext& Workspace::pbw(const std::string& name) const { return lookup(pbw_contexts, name, "pbw context"); }

Workspace load_workspace(const json& j) {
  check_keys(j, "workspace", {"dgw_version"},
             {"complexes", "dg_algebras", "dg_morphisms", "dg_modules", "chain_maps", "groups", "equivariant_complexes",
              "filtrations", "pbw_contexts", "tasks"});
  if (!j["dgw_version"].is_number_integer() || j["dgw_version"].get<int>() != workspace_version)
    throw StructuralError("workspace: unsupported dgw_version " + j["dgw_version"].dump());
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    if (!j.contains(key)) return empty;
    if (!j[key].is_object()) throw StructuralError(std::string("workspace: \"") + key + "\" must be an object");
    return j[key];
  };
  Workspace ws;
  std::set<std::string> names;
  auto claim = [&](const std::string& name, const std::string& context) {
    if (name.empty()) fail(context, "empty name");
    if (!names.insert(name).second) fail(context, "name \"" + name + "\" is used twice");
  };

  for (const auto& [name, g] : section("groups").items()) {
    const std::string ctx = "group \"" + name + "\"";
    claim(name, ctx);
    ws.groups[name] = guarded(ctx, [&] {
      if (!g.is_object() || !g.contains("kind")) fail(ctx, "missing kind");
      if (g["kind"] == "torus") {
        check_keys(g, ctx, {"kind", "rank"});
        if (!g["rank"].is_number_unsigned() || g["rank"].get<std::size_t>() == 0) fail(ctx, "rank must be positive");
        return GroupData::torus(g["rank"].get<std::size_t>());
      }
      if (g["kind"] == "finite") {
        check_keys(g, ctx, {"kind", "orders"});
        return GroupData::finite(g["orders"].get<std::vector<long long>>());
      }
      fail(ctx, "kind must be \"torus\" or \"finite\"");
    });
  }
  for (const auto& [name, c] : section("complexes").items()) {
    const std::string ctx = "complex \"" + name + "\"";
    claim(name, ctx);
    ws.complexes[name] = guarded(ctx, [&] { return complex_from_json(c); });
  }
  for (const auto& [name, a] : section("dg_algebras").items()) {
    const std::string ctx = "dg_algebra \"" + name + "\"";
    claim(name, ctx);
    ws.algebras[name] = guarded(ctx, [&] {
      check_keys(a, ctx, {"complex", "unit", "products"}, {"iota"});
      const Complex carrier = complex_from_json(a["complex"]);
      const std::size_t n = carrier.dim();
      std::vector<DGAlgebra::Constant> constants;
      if (!a["products"].is_array()) fail(ctx, "products must be an array");
      for (const auto& t : a["products"]) {
        if (!t.is_array() || t.size() != 4) fail(ctx, "product entries must be [i, j, k, \"c\"]");
        constants.push_back({index_from(t[0], n, "product index"), index_from(t[1], n, "product index"),
                             index_from(t[2], n, "product index"), rational_from(t[3])});
      }
      std::optional<Matrix> iota;
      if (a.contains("iota")) iota = sparse_from_json(a["iota"], n, n);
      return share(DGAlgebra::from_constants(carrier.space(), carrier.d(), index_from(a["unit"], n, "unit"),
                                             constants, iota));
    });
  }
  for (const auto& [name, m] : section("dg_morphisms").items()) {
    const std::string ctx = "dg_morphism \"" + name + "\"";
    claim(name, ctx);
    ws.morphisms[name] = guarded(ctx, [&] {
      check_keys(m, ctx, {"source", "target", "map"});
      const auto src = m["source"].get<std::string>(), dst = m["target"].get<std::string>();
      const auto& s = lookup(ws.algebras, src, "dg_algebra");
      const auto& t = lookup(ws.algebras, dst, "dg_algebra");
      return NamedAlgebraMorphism{src, dst, make_algebra_morphism(s, t, sparse_from_json(m["map"], t->dim(), s->dim()))};
    });
  }
  for (const auto& [name, m] : section("dg_modules").items()) {
    const std::string ctx = "dg_module \"" + name + "\"";
    claim(name, ctx);
    ws.modules[name] = guarded(ctx, [&] {
      check_keys(m, ctx, {"algebra", "complex", "actions"});
      const auto alg = m["algebra"].get<std::string>();
      const auto& a = lookup(ws.algebras, alg, "dg_algebra");
      const Complex carrier = complex_from_json(m["complex"]);
      const std::size_t n = carrier.dim();
      std::vector<Matrix> actions(a->dim(), Matrix(n, n));
      actions[a->unit()] = Matrix::identity(n);
      if (!m["actions"].is_array()) fail(ctx, "actions must be an array");
      std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
      for (const auto& t : m["actions"]) {
        if (!t.is_array() || t.size() != 4) fail(ctx, "action entries must be [a, row, col, \"c\"]");
        const auto x = index_from(t[0], a->dim(), "algebra basis index");
        if (x == a->unit()) fail(ctx, "the unit acts as the identity and is not listed");
        const auto r = index_from(t[1], n, "row"), c = index_from(t[2], n, "column");
        if (!seen.insert({x, r, c}).second) fail(ctx, "duplicate action entry");
        actions[x](r, c) = rational_from(t[3]);
      }
      return NamedDGModule{alg, DGModule::make(a, carrier, std::move(actions))};
    });
  }
  for (const auto& [name, m] : section("chain_maps").items()) {
    const std::string ctx = "chain_map \"" + name + "\"";
    claim(name, ctx);
    ws.chain_maps[name] = guarded(ctx, [&] {
      check_keys(m, ctx, {"source", "target", "map"});
      const auto src = m["source"].get<std::string>(), dst = m["target"].get<std::string>();
      const auto& s = lookup(ws.complexes, src, "complex");
      const auto& t = lookup(ws.complexes, dst, "complex");
      Matrix f = sparse_from_json(m["map"], t.dim(), s.dim());
      chain_map(s, t, f);
      return NamedChainMap{src, dst, std::move(f)};
    });
  }
  for (const auto& [name, e] : section("equivariant_complexes").items()) {
    const std::string ctx = "equivariant_complex \"" + name + "\"";
    claim(name, ctx);
    ws.equivariant[name] = guarded(ctx, [&] {
      check_keys(e, ctx, {"group", "complex"}, {"generators", "psi", "i"});
      const auto group = e["group"].get<std::string>();
      EquivariantComplex v;
      v.group = lookup(ws.groups, group, "group");
      v.carrier = complex_from_json(e["complex"]);
      const std::size_t n = v.dim();
      if (e.contains("generators"))
        for (const auto& g : e["generators"]) {
          check_keys(g, ctx + " generator", {"name", "weight", "matrix"});
          v.generator_names.push_back(g["name"].get<std::string>());
          v.pi_weights.push_back(weight_from(g["weight"]));
          v.pi.push_back(sparse_from_json(g["matrix"], n, n));
        }
      if (e.contains("psi"))
        for (const auto& p : e["psi"]) {
          if (!p.is_array()) fail(ctx, "psi entries must be coefficient arrays");
          Matrix col(p.size(), 1);
          for (std::size_t r = 0; r < p.size(); ++r) col(r, 0) = rational_from(p[r]);
          v.psi.push_back(std::move(col));
        }
      if (e.contains("i"))
        for (const auto& i : e["i"]) v.i_ops.push_back(sparse_from_json(i, n, n));
      validate_equivariant(v);
      return NamedEquivariantComplex{group, std::move(v)};
    });
  }
  for (const auto& [name, f] : section("filtrations").items()) {
    const std::string ctx = "filtration \"" + name + "\"";
    claim(name, ctx);
    ws.filtrations[name] = guarded(ctx, [&] {
      check_keys(f, ctx, {"module", "pieces"});
      NamedFiltration out;
      out.module = f["module"].get<std::string>();
      out.pieces = f["pieces"].get<std::vector<std::vector<std::size_t>>>();
      out.filtered = filtration_from_pieces(lookup(ws.modules, out.module, "dg_module").module, out.pieces);
      return out;
    });
  }
  for (const auto& [name, p] : section("pbw_contexts").items()) {
    const std::string ctx = "pbw_context \"" + name + "\"";
    claim(name, ctx);
    ws.pbw_contexts[name] = guarded(ctx, [&] {
      check_keys(p, ctx, {"basis", "k_dim", "weights", "brackets"}, {"degree_bound"});
      PBWContext c;
      c.names = p["basis"].get<std::vector<std::string>>();
      c.k_dim = p["k_dim"].get<std::size_t>();
      for (const auto& w : p["weights"]) c.weights.push_back(weight_from(w));
      if (p.contains("degree_bound")) c.degree_bound = p["degree_bound"].get<std::size_t>();
      for (const auto& t : p["brackets"]) {
        if (!t.is_array() || t.size() != 4) fail(ctx, "bracket entries must be [a, b, c, \"coeff\"]");
        const auto a = index_from(t[0], c.dim(), "bracket index"), b = index_from(t[1], c.dim(), "bracket index");
        c.brackets[{a, b}].push_back({index_from(t[2], c.dim(), "bracket index"), rational_from(t[3])});
      }
      validate_pbw(c);
      return c;
    });
  }
  for (const auto& [name, t] : section("tasks").items()) {
    const std::string ctx = "task \"" + name + "\"";
    if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) fail(ctx, "missing kind");
    TaskSpec spec;
    spec.kind = t["kind"].get<std::string>();
    spec.params = json::object();
    for (const auto& [k, v] : t.items())
      if (k != "kind") spec.params[k] = v;
    ws.tasks[name] = std::move(spec);
  }
  return ws;
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path + ": parse error: " + e.what());
  }
  return load_workspace(j);
}

json serialize(const Workspace& ws) {
  json j;
  j["dgw_version"] = workspace_version;
  auto put = [&](const char* section, const std::string& name, json value) { j[section][name] = std::move(value); };
  for (const auto& [n, c] : ws.complexes) put("complexes", n, complex_to_json(c));
  for (const auto& [n, a] : ws.algebras) put("dg_algebras", n, algebra_to_json(*a));
  for (const auto& [n, m] : ws.morphisms) put("dg_morphisms", n, morphism_to_json(m.source, m.target, m.morphism));
  for (const auto& [n, m] : ws.modules) put("dg_modules", n, module_to_json(m.algebra, m.module));
  for (const auto& [n, m] : ws.chain_maps)
    put("chain_maps", n, {{"source", m.source}, {"target", m.target}, {"map", sparse_to_json(m.map)}});
  for (const auto& [n, g] : ws.groups) put("groups", n, group_to_json(g));
  for (const auto& [n, e] : ws.equivariant) put("equivariant_complexes", n, equivariant_to_json(e.group, e.complex));
  for (const auto& [n, f] : ws.filtrations) put("filtrations", n, {{"module", f.module}, {"pieces", f.pieces}});
  for (const auto& [n, p] : ws.pbw_contexts) put("pbw_contexts", n, pbw_to_json(p));
  for (const auto& [n, t] : ws.tasks) {
    json task = t.params;
    task["kind"] = t.kind;
    put("tasks", n, std::move(task));
  }
  return j;
}

}  // namespace dgw
