#include "dgw/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "dgw/errors.hpp"
#include "dgw/resolution.hpp"

namespace dgw {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::partial: return "partial";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
  }
  return "error";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
    case Verdict::partial: return 0;
    case Verdict::fail: return 1;
    case Verdict::error: return 2;
  }
  return 2;
}

std::pair<int, int> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    std::size_t used_a = 0, used_b = 0;
    const auto a_text = text.substr(0, colon), b_text = text.substr(colon + 1);
    const int a = std::stoi(a_text, &used_a), b = std::stoi(b_text, &used_b);
    if (used_a != a_text.size() || used_b != b_text.size() || a > b) throw std::invalid_argument("bad window");
    return {a, b};
  } catch (const std::exception&) {
    throw StructuralError("window must look like a:b with a <= b, got \"" + text + "\"");
  }
}

json TaskReport::to_json() const {
  json j;
  j["task"] = task;
  j["kind"] = kind;
  j["verdict"] = to_string(verdict);
  if (!witness.empty()) j["witness"] = witness;
  j["data"] = data;
  if (timed) j["seconds"] = seconds;
  return j;
}

std::string TaskReport::to_text() const {
  std::ostringstream out;
  out << "task: " << task << "\n";
  out << "kind: " << kind << "\n";
  out << "verdict: " << to_string(verdict) << "\n";
  if (!witness.empty()) out << "witness: " << witness << "\n";
  for (const auto& [k, v] : data.items()) out << k << ": " << v.dump() << "\n";
  if (timed) out << "seconds: " << seconds << "\n";
  return out.str();
}

namespace {

// ---- parameter access -------------------------------------------------------

struct Params {
  const json& j;
  const std::string& task;

  const json& at(const char* key) const {
    if (!j.contains(key)) throw StructuralError("task \"" + task + "\": missing parameter \"" + key + "\"");
    return j[key];
  }
  std::string str(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw StructuralError("task \"" + task + "\": parameter \"" + key + "\" must be a string");
    return v.get<std::string>();
  }
  std::vector<std::string> names(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) throw StructuralError("task \"" + task + "\": parameter \"" + key + "\" must be a list of names");
    std::vector<std::string> out;
    for (const auto& x : v) {
      if (!x.is_string()) throw StructuralError("task \"" + task + "\": parameter \"" + key + "\" must be a list of names");
      out.push_back(x.get<std::string>());
    }
    return out;
  }
  long long integer(const char* key, long long fallback) const {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw StructuralError("task \"" + task + "\": parameter \"" + key + "\" must be an integer");
    return j[key].get<long long>();
  }
  bool flag(const char* key, bool fallback) const {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw StructuralError("task \"" + task + "\": parameter \"" + key + "\" must be a boolean");
    return j[key].get<bool>();
  }
  std::optional<std::pair<int, int>> window() const {
    if (!j.contains("window")) return std::nullopt;
    const auto& w = j["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer() ||
        w[0].get<int>() > w[1].get<int>())
      throw StructuralError("task \"" + task + "\": window must be [lo, hi] with lo <= hi");
    return std::pair{w[0].get<int>(), w[1].get<int>()};
  }
};

struct Context {
  const Workspace& ws;
  const std::string& name;
  const RunOptions& options;
  Params p;

  int depth(int fallback) const {
    const int d = options.depth ? *options.depth : static_cast<int>(p.integer("depth", fallback));
    if (d < 0) throw StructuralError("depth must be nonnegative");
    return d;
  }
  std::optional<std::pair<int, int>> window() const { return options.window ? options.window : p.window(); }
};

json window_json(const Window& w) {
  if (w.all) return "all";
  if (w.empty) return "empty";
  return json::array({w.lo, w.hi});
}

json dims_json(const std::map<int, std::size_t>& dims) {
  json out = json::object();
  for (const auto& [k, n] : dims) out[std::to_string(k)] = n;
  return out;
}

std::map<int, std::size_t> expected_dims(const json& j, const std::string& task) {
  if (!j.is_object()) throw StructuralError("task \"" + task + "\": expect must map degrees to dimensions");
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : j.items()) {
    std::size_t used = 0;
    int deg = 0;
    try {
      deg = std::stoi(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || !v.is_number_unsigned())
      throw StructuralError("task \"" + task + "\": expect must map degrees to dimensions");
    out[deg] = v.get<std::size_t>();
  }
  return out;
}

void set_fail(TaskReport& r, std::string witness) {
  if (r.verdict == Verdict::fail) return;
  r.verdict = Verdict::fail;
  r.witness = std::move(witness);
}

const Complex& carrier_of(const Context& c, const std::string& name) {
  const Complex* v = c.ws.find_carrier(name);
  if (!v) throw StructuralError("unknown object \"" + name + "\"");
  return *v;
}

const NamedChainMap& chain_map_of(const Context& c, const std::string& name) {
  const auto it = c.ws.chain_maps.find(name);
  if (it == c.ws.chain_maps.end()) throw StructuralError("unknown chain map \"" + name + "\"");
  return it->second;
}

std::vector<std::string> word_names(const PBWContext& ctx, const Word& w) {
  std::vector<std::string> out;
  for (auto a : w) out.push_back(ctx.names[a]);
  return out;
}

Word word_of(const PBWContext& ctx, const std::vector<std::string>& letters) {
  Word w;
  for (const auto& l : letters) {
    const auto it = std::find(ctx.names.begin(), ctx.names.end(), l);
    if (it == ctx.names.end()) throw StructuralError("unknown letter \"" + l + "\"");
    w.push_back(static_cast<std::size_t>(it - ctx.names.begin()));
  }
  return w;
}

// ---- tasks ------------------------------------------------------------------

void task_cohomology(const Context& c, TaskReport& r) {
  const auto& v = carrier_of(c, c.p.str("object"));
  auto dims = cohomology(v).dims;
  if (const auto w = c.window()) {
    std::map<int, std::size_t> inside;
    for (int k = w->first; k <= w->second; ++k) inside[k] = dims.count(k) ? dims[k] : 0;
    dims = std::move(inside);
    r.data["window"] = json::array({w->first, w->second});
  }
  r.data["dims"] = dims_json(dims);
  if (c.p.j.contains("expect")) {
    for (const auto& [k, n] : expected_dims(c.p.j["expect"], c.name)) {
      const std::size_t got = dims.count(k) ? dims.at(k) : 0;
      if (got != n)
        set_fail(r, "degree " + std::to_string(k) + ": expected " + std::to_string(n) + ", found " + std::to_string(got));
    }
    for (const auto& [k, n] : dims)
      if (n != 0 && !expected_dims(c.p.j["expect"], c.name).count(k))
        set_fail(r, "degree " + std::to_string(k) + ": expected 0, found " + std::to_string(n));
  }
}

void task_quasi_iso(const Context& c, TaskReport& r) {
  const auto& m = chain_map_of(c, c.p.str("map"));
  const auto rep = is_quasi_iso(c.ws.complex(m.source), c.ws.complex(m.target), m.map);
  json degrees = json::object();
  std::string first_bad;
  for (const auto& [k, d] : rep.degrees) {
    degrees[std::to_string(k)] = {{"source", d.source_dim}, {"target", d.target_dim}, {"rank", d.rank}};
    if (!d.iso() && first_bad.empty())
      first_bad = "degree " + std::to_string(k) + ": H(source) = " + std::to_string(d.source_dim) +
                  ", H(target) = " + std::to_string(d.target_dim) + ", rank " + std::to_string(d.rank);
  }
  r.data["degrees"] = std::move(degrees);
  r.data["quasi_iso"] = rep.quasi_iso;
  const bool expect = c.p.flag("expect", true);
  if (rep.quasi_iso != expect)
    set_fail(r, expect ? first_bad : "the map is a quasi-isomorphism, expected it not to be");
}

void task_null_homotopy(const Context& c, TaskReport& r) {
  const auto& m = chain_map_of(c, c.p.str("map"));
  const auto& v = c.ws.complex(m.source);
  const auto& w = c.ws.complex(m.target);
  const auto h = homotopy_solve(v, w, m.map);
  r.data["null_homotopic"] = h.has_value();
  if (h) {
    if (!(w.d() * *h + *h * v.d() == m.map)) throw std::logic_error("homotopy fails f = d h + h d");
    r.data["homotopy"] = sparse_to_json(*h);
  }
  const bool expect = c.p.flag("expect", true);
  if (h.has_value() != expect)
    set_fail(r, expect ? "f = d h + h d has no solution" : "a null-homotopy exists, expected none");
}

void task_cone(const Context& c, TaskReport& r) {
  const auto& m = chain_map_of(c, c.p.str("map"));
  const auto res = cone(c.ws.complex(m.source), c.ws.complex(m.target), m.map);
  r.data["cone_dims"] = dims_json([&] {
    std::map<int, std::size_t> d;
    for (int k : res.cone.space().support()) d[k] = res.cone.space().dim_of_degree(k);
    return d;
  }());
  r.data["cohomology"] = dims_json(cohomology(res.cone).dims);
  const bool base = is_distinguished(res.triangle);
  const bool rotated = is_distinguished(rotate(res.triangle));
  const bool shifted = is_distinguished(shift(res.triangle));
  r.data["distinguished"] = {{"cone", base}, {"rotated", rotated}, {"shifted", shifted}};
  if (!base) set_fail(r, "cone triangle is not distinguished");
  else if (!rotated) set_fail(r, "rotated cone triangle is not distinguished");
  else if (!shifted) set_fail(r, "shifted cone triangle is not distinguished");
}

void task_resolve(const Context& c, TaskReport& r) {
  const auto& v = c.ws.module(c.p.str("module"));
  const int depth = c.depth(3);
  const auto cert = certify_resolution(v, depth);
  json cols = json::array();
  for (const auto& col : cert.resolution.columns) cols.push_back(col.dim());
  r.data["depth"] = depth;
  r.data["check_depth"] = depth + 1;
  r.data["column_dims"] = std::move(cols);
  r.data["total_dim"] = cert.resolution.total.dim();
  r.data["short_circuit"] = cert.resolution.short_circuit;
  r.data["structural_window"] = window_json(cert.structural);
  r.data["certified_window"] = window_json(cert.window);
  json degrees = json::object();
  for (const auto& [k, d] : cert.degrees)
    degrees[std::to_string(k)] = {{"dim", d.dim_n},    {"dim_next", d.dim_next}, {"rank", d.rank_n},
                                  {"rank_next", d.rank_next}, {"target", d.target_dim}, {"certified", d.certified},
                                  {"iso", d.iso}};
  r.data["degrees"] = std::move(degrees);
  r.data["checks"] = {{"covers_surjective", cert.checks.covers_surjective},
                      {"cohomology_surjective", cert.checks.cohomology_surjective},
                      {"kernel_cohomology", cert.checks.kernel_cohomology},
                      {"bounded_above", cert.checks.bounded_above}};
  r.data["quasi_iso_in_window"] = cert.quasi_iso_in_window;
  if (!cert.checks.ok()) set_fail(r, cert.checks.witness);
  else if (!cert.quasi_iso_in_window) set_fail(r, "augmentation is not a quasi-isomorphism in the certified window");
}

void task_derived_tensor(const Context& c, TaskReport& r) {
  const auto& v = c.ws.module(c.p.str("module"));
  const auto& eps = c.ws.morphism(c.p.str("morphism"));
  const int depth = c.depth(3);
  const auto t = derived_tensor(v, eps, depth);
  r.data["depth"] = depth;
  r.data["check_depth"] = depth + 1;
  r.data["certified_window"] = window_json(t.window);
  r.data["dims"] = dims_json(t.dims);
  json cert = json::object();
  for (const auto& [k, ok] : t.certified) cert[std::to_string(k)] = ok;
  r.data["certified"] = std::move(cert);
  if (std::any_of(t.certified.begin(), t.certified.end(), [](const auto& e) { return !e.second; }))
    r.verdict = Verdict::partial;
}

void task_derived_hom(const Context& c, TaskReport& r) {
  const auto& v = c.ws.module(c.p.str("source"));
  const auto& w = c.ws.module(c.p.str("target"));
  const auto win = c.window();
  if (!win) throw StructuralError("derived-hom needs a window");
  const int depth = c.depth(4);
  const auto table = derived_hom_dims(v, w, win->first, win->second, depth);
  r.data["depth"] = depth;
  r.data["check_depth"] = depth + 1;
  r.data["window"] = json::array({win->first, win->second});
  r.data["short_circuit"] = table.short_circuit;
  json entries = json::object();
  bool all_certified = true;
  for (const auto& [k, e] : table.entries) {
    entries[std::to_string(k)] = {{"dim", e.dim}, {"certified", e.certified}, {"structural", e.in_structural_window}};
    all_certified = all_certified && e.certified;
  }
  r.data["entries"] = std::move(entries);
  if (c.p.j.contains("expect"))
    for (const auto& [k, n] : expected_dims(c.p.j["expect"], c.name)) {
      const auto it = table.entries.find(k);
      if (it == table.entries.end() || !it->second.certified) continue;
      if (it->second.dim != n)
        set_fail(r, "degree " + std::to_string(k) + ": expected " + std::to_string(n) + ", found " +
                        std::to_string(it->second.dim));
    }
  if (r.verdict == Verdict::pass && !all_certified) r.verdict = Verdict::partial;
}

void task_kprojective(const Context& c, TaskReport& r) {
  DGModule p = c.ws.module(c.p.str("module"));
  if (c.p.j.contains("resolve_depth")) {
    const int d = static_cast<int>(c.p.integer("resolve_depth", 2));
    p = build_resolution(p, d).total;
    r.data["resolve_depth"] = d;
  }
  std::vector<DGModule> acyclic;
  for (const auto& n : c.p.names("acyclic")) acyclic.push_back(c.ws.module(n));
  const auto maps = static_cast<std::size_t>(c.p.integer("maps", 5));
  const auto seed = static_cast<std::uint64_t>(c.p.integer("seed", 1));
  const auto rep = kprojective_property_test(p, acyclic, maps, seed);
  r.data["by_construction"] = rep.by_construction;
  r.data["maps_tested"] = rep.maps_tested;
  r.data["nonzero_maps"] = rep.nonzero_maps;
  r.data["all_null_homotopic"] = rep.all_null_homotopic;
  if (!rep.all_null_homotopic) set_fail(r, rep.failures.empty() ? "a map is not null-homotopic" : rep.failures.front());
}

void task_verify_equivalence(const Context& c, TaskReport& r) {
  const auto& eps = c.ws.morphism(c.p.str("morphism"));
  std::vector<DGModule> vs, ws;
  for (const auto& n : c.p.names("modules")) vs.push_back(c.ws.module(n));
  for (const auto& n : c.p.names("targets")) ws.push_back(c.ws.module(n));
  const auto win = c.window();
  if (!win) throw StructuralError("verify-equivalence needs a window");
  const int depth = c.depth(3);
  const auto rep = verify_equivalence(eps, vs, ws, depth, win->first, win->second);
  r.data["depth"] = depth;
  r.data["check_depth"] = depth + 1;
  r.data["window"] = json::array({win->first, win->second});
  r.data["unit_quasi_iso"] = rep.unit_quasi_iso;
  r.data["augmentation_quasi_iso"] = rep.augmentation_quasi_iso;
  r.data["counit_identity"] = rep.counit_identity;
  r.data["hom_tables_agree"] = rep.hom_tables_agree;
  r.data["hom_entries_compared"] = rep.hom_entries_compared;
  r.data["notes"] = rep.notes;
  if (!rep.ok()) set_fail(r, rep.notes.empty() ? "equivalence check failed" : rep.notes.front());
}

void task_filtered_homotopy(const Context& c, TaskReport& r) {
  const auto it = c.ws.filtrations.find(c.p.str("filtration"));
  if (it == c.ws.filtrations.end()) throw StructuralError("unknown filtration");
  const FilteredDGModule& fv = it->second.filtered;
  const auto& z = c.ws.module(c.p.str("target"));
  std::mt19937_64 rng(static_cast<std::uint64_t>(c.p.integer("seed", 1)));
  const ALinearHom h0(fv.module, z, 0);
  const Matrix basis = chain_map_space(fv.module, z, h0);
  Matrix coords(h0.dim(), 1);
  for (std::size_t b = 0; b < basis.cols(); ++b) {
    const Rational s(static_cast<long>(rng() % 7) - 3);
    for (std::size_t i = 0; i < basis.rows(); ++i) coords(i, 0) += s * basis(i, b);
  }
  const Matrix f = h0.to_matrix(coords);
  const auto h = filtered_null_homotopy(fv, z.carrier(), f);
  r.data["stages"] = h.stages.size();
  r.data["map_nonzeros"] = f.nonzeros();
  r.data["homotopy"] = sparse_to_json(h.h);
}

void task_adjunction(const Context& c, TaskReport& r) {
  const auto pair = c.p.str("pair");
  const auto& eps = c.ws.morphism(c.p.str("morphism"));
  const auto& x = c.ws.module(c.p.str("source"));
  const auto& y = c.ws.module(c.p.str("target"));
  AdjunctionData adj;
  if (pair == "tensor") adj = tensor_adjunction(eps, x, y);
  else if (pair == "extension") adj = extension_adjunction(eps, x, y);
  else throw StructuralError("pair must be \"tensor\" or \"extension\"");
  const auto rep = triangle_identity_check(adj);
  r.data["pair"] = adj.pair;
  r.data["first_identity"] = rep.first;
  r.data["second_identity"] = rep.second;
  if (!rep.ok()) set_fail(r, rep.witness);
}

void task_validate_equivariant(const Context& c, TaskReport& r) {
  const auto& v = c.ws.equivariant_complex(c.p.str("object"));
  validate_equivariant(v);
  r.data["group"] = group_to_json(v.group);
  r.data["dim"] = v.dim();
  r.data["generators"] = v.pi.size();
  bool strong = true;
  json polys = json::array();
  for (std::size_t x = 0; x < v.group.lie_dim(); ++x) {
    strong = strong && v.defect(x).is_zero();
    json p = json::array();
    for (const auto& q : minimal_polynomial(v.defect(x))) p.push_back(format_rational(q));
    polys.push_back(std::move(p));
  }
  r.data["strong"] = strong;
  if (v.group.lie_dim() > 0) {
    r.data["defect_minimal_polynomials"] = std::move(polys);
    const auto fr = forgetful_to_dg(v);
    r.data["forgetful_algebra_dim"] = fr.algebra->dim();
  }
}

void task_equivariant_resolution(const Context& c, TaskReport& r) {
  const auto& v = c.ws.equivariant_complex(c.p.str("object"));
  const int depth = c.depth(2);
  const auto res = equivariant_resolution(v, depth);
  json cols = json::array();
  for (const auto& col : res.columns) cols.push_back(col.dim());
  r.data["depth"] = depth;
  r.data["column_dims"] = std::move(cols);
  r.data["total_dim"] = res.total.dim();
  const auto top = v.carrier.space().top();
  if (!top) {
    r.data["window"] = "empty";
    return;
  }
  const int lo = *top - depth + 1;
  r.data["window"] = json::array({lo, *top});
  const auto q = is_quasi_iso(res.total.carrier, v.carrier, res.augmentation);
  for (const auto& [k, d] : q.degrees)
    if (k >= lo && k <= *top && !d.iso())
      set_fail(r, "degree " + std::to_string(k) + ": augmentation is not an isomorphism on cohomology");
}

void task_ind_adjunction(const Context& c, TaskReport& r) {
  const auto& x = c.ws.equivariant_complex(c.p.str("object"));
  const auto& v = c.ws.complex(c.p.str("complex"));
  const auto adj = ind_adjunction(x, v);
  const auto rep = triangle_identity_check(adj.data);
  r.data["first_identity"] = rep.first;
  r.data["second_identity"] = rep.second;
  r.data["equivariant_maps"] = adj.equivariant_maps;
  r.data["plain_maps"] = adj.plain_maps;
  if (!rep.ok()) set_fail(r, rep.witness);
  else if (adj.equivariant_maps != adj.plain_maps)
    set_fail(r, "Hom_K(X, Ind V) has dimension " + std::to_string(adj.equivariant_maps) + ", Hom(X, V) has " +
                    std::to_string(adj.plain_maps));
}

void task_pbw_check(const Context& c, TaskReport& r) {
  const auto& ctx = c.ws.pbw(c.p.str("context"));
  const auto n = static_cast<std::size_t>(c.p.integer("degree", static_cast<long long>(ctx.degree_bound)));
  const auto rep = pbw_basis_check(ctx, n);
  r.data["degree"] = n;
  r.data["rank"] = rep.rank;
  r.data["candidates"] = rep.candidates;
  r.data["expected"] = rep.expected;
  r.data["weights_ok"] = rep.weights_ok;
  if (!rep.ok()) set_fail(r, rep.witness);
}

void task_symmetrize(const Context& c, TaskReport& r) {
  const auto& ctx = c.ws.pbw(c.p.str("context"));
  const Word w = word_of(ctx, c.p.names("monomial"));
  const auto s = symmetrize(ctx, w);
  const auto text = format_element(ctx, s);
  r.data["monomial"] = word_names(ctx, w);
  r.data["result"] = text;
  r.data["weight"] = ctx.weight_of(w);
  for (const auto& [word, coeff] : s)
    if (ctx.weight_of(word) != ctx.weight_of(w)) set_fail(r, "term " + format_element(ctx, {{word, coeff}}) + " changes the weight");
  if (c.p.j.contains("expect") && c.p.str("expect") != text)
    set_fail(r, "expected " + c.p.str("expect") + ", found " + text);
}

void task_normal_form(const Context& c, TaskReport& r) {
  const auto& ctx = c.ws.pbw(c.p.str("context"));
  const Word w = word_of(ctx, c.p.names("word"));
  const auto left = pbw_normal_form(ctx, w, RewriteOrder::leftmost);
  const auto right = pbw_normal_form(ctx, w, RewriteOrder::rightmost);
  const auto text = format_element(ctx, left);
  r.data["word"] = word_names(ctx, w);
  r.data["result"] = text;
  r.data["confluent"] = left == right;
  if (left != right) set_fail(r, "rewrite orders disagree: " + text + " vs " + format_element(ctx, right));
  else if (c.p.j.contains("expect") && c.p.str("expect") != text)
    set_fail(r, "expected " + c.p.str("expect") + ", found " + text);
}

using TaskFn = std::function<void(const Context&, TaskReport&)>;

const std::map<std::string, TaskFn>& registry() {
  static const std::map<std::string, TaskFn> tasks{
      {"adjunction", task_adjunction},
      {"cohomology", task_cohomology},
      {"cone", task_cone},
      {"derived-hom", task_derived_hom},
      {"derived-tensor", task_derived_tensor},
      {"equivariant-resolution", task_equivariant_resolution},
      {"filtered-homotopy", task_filtered_homotopy},
      {"ind-adjunction", task_ind_adjunction},
      {"kprojective", task_kprojective},
      {"normal-form", task_normal_form},
      {"null-homotopy", task_null_homotopy},
      {"pbw-check", task_pbw_check},
      {"quasi-iso", task_quasi_iso},
      {"resolve", task_resolve},
      {"symmetrize", task_symmetrize},
      {"validate-equivariant", task_validate_equivariant},
      {"verify-equivalence", task_verify_equivalence},
  };
  return tasks;
}

}  // namespace

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, f] : registry()) out.push_back(k);
    return out;
  }();
  return kinds;
}

TaskReport run_task(const Workspace& ws, const std::string& name, const RunOptions& options) {
  TaskReport r;
  r.task = name;
  r.timed = options.timing;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto it = ws.tasks.find(name);
    if (it == ws.tasks.end()) throw StructuralError("unknown task \"" + name + "\"");
    r.kind = it->second.kind;
    const auto fn = registry().find(r.kind);
    if (fn == registry().end()) throw StructuralError("unknown task kind \"" + r.kind + "\"");
    const Context c{ws, name, options, Params{it->second.params, name}};
    fn->second(c, r);
  } catch (const ValidationError& e) {
    r.verdict = Verdict::fail;
    r.witness = e.what();
  } catch (const StructuralError& e) {
    r.verdict = Verdict::error;
    r.witness = e.what();
  } catch (const json::exception& e) {
    r.verdict = Verdict::error;
    r.witness = std::string("malformed task parameters: ") + e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::error;
    r.witness = std::string("internal error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---- suite ------------------------------------------------------------------

Verdict SuiteReport::verdict() const {
  Verdict v = Verdict::pass;
  if (!load_errors.empty()) return Verdict::error;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::error) return Verdict::error;
    if (r.verdict == Verdict::fail) v = Verdict::fail;
  }
  return v;
}

json SuiteReport::to_json() const {
  json j;
  j["verdict"] = to_string(verdict());
  j["tasks"] = json::array();
  for (const auto& r : reports) j["tasks"].push_back(r.to_json());
  j["load_errors"] = json::array();
  for (const auto& [file, msg] : load_errors) j["load_errors"].push_back({{"file", file}, {"error", msg}});
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  std::map<Verdict, std::size_t> counts;
  for (const auto& [file, msg] : load_errors) out << file << "  load-error  " << msg << "\n";
  for (const auto& r : reports) {
    ++counts[r.verdict];
    out << r.task << "  " << r.kind << "  " << to_string(r.verdict);
    if (!r.witness.empty()) out << "  " << r.witness;
    if (r.timed) out << "  " << r.seconds << "s";
    out << "\n";
  }
  out << "suite: " << reports.size() << " tasks, " << counts[Verdict::pass] << " pass, " << counts[Verdict::partial]
      << " partial, " << counts[Verdict::fail] << " fail, " << counts[Verdict::error] << " error, "
      << load_errors.size() << " load errors; verdict " << to_string(verdict()) << "\n";
  return out.str();
}

SuiteReport run_suite(const std::string& directory, const RunOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw StructuralError("not a directory: " + directory);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(directory))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  SuiteReport suite;
  std::vector<std::pair<std::string, Workspace>> loaded;
  for (const auto& f : files) {
    try {
      loaded.emplace_back(f.stem().string(), load_workspace_file(f.string()));
    } catch (const StructuralError& e) {
      suite.load_errors.emplace_back(f.filename().string(), e.what());
    }
  }
  std::vector<std::pair<std::size_t, std::string>> jobs;
  for (std::size_t w = 0; w < loaded.size(); ++w)
    for (const auto& [name, t] : loaded[w].second.tasks) jobs.emplace_back(w, name);
  suite.reports.resize(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    suite.reports[i] = run_task(loaded[jobs[i].first].second, jobs[i].second, options);
    suite.reports[i].task = loaded[jobs[i].first].first + "/" + jobs[i].second;
  }
  std::sort(suite.reports.begin(), suite.reports.end(),
            [](const TaskReport& a, const TaskReport& b) { return a.task < b.task; });
  return suite;
}

}  // namespace dgw
