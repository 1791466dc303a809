// lpa: command-line front end for the Leavitt path algebra library.
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpa/lpa.hpp"

using nlohmann::json;
using namespace lpa;

namespace {

struct Options {
  std::string graph_file;
  std::string field = "Q";
  bool as_json = false;
  std::size_t window = 4;
  std::uint64_t seed = 1;
  bool assert_irreducible = false;

  // classify
  bool graded = false, simple = false;
  std::size_t cycles_up_to = 4;
  std::size_t poly_deg = 1;
  std::vector<std::string> samples;
  std::vector<std::string> polys;

  // act / verify
  std::string module, other, elt, vec, twist, at, cycle, nspec, suite, x, y;
  std::int64_t shift = 0;
  std::size_t cap = 8;
  std::size_t triples = 200;
  std::string corrupt = "none";
};

struct Context {
  GraphPtr graph;
  FieldPtr field;
  AlgebraPtr algebra;
};

Context load(const Options& o) {
  Context c;
  c.graph = Graph::from_file(o.graph_file);
  c.field = parse_field(o.field, o.assert_irreducible);
  c.algebra = LeavittPathAlgebra::make(c.graph, c.field);
  return c;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "  " : "") + (i + 1 < r.size() ? pad(r[i], width[i]) : r[i]);
    std::cout << line << "\n";
  }
}

std::string dim_text(const json& d) { return d.is_string() ? d.get<std::string>() : std::to_string(d.get<std::uint64_t>()); }

int emit_certificate(const Options& o, const Certificate& c) {
  if (o.as_json) {
    std::cout << c.to_json().dump(2) << "\n";
  } else {
    std::cout << (c.pass() ? "PASS " : "FAIL ") << c.claim << "\n";
    for (const auto& ch : c.checks)
      std::cout << "  " << (ch.pass ? "ok   " : "FAIL ") << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  }
  return c.pass() ? 0 : 1;
}

int cmd_validate(const Options& o) {
  const GraphPtr g = Graph::from_file(o.graph_file);
  const ValidationReport r = validate(*g);
  json j{{"ok", true}, {"sinks", json::array()}, {"regular", json::array()}};
  for (auto v : r.sinks) j["sinks"].push_back(g->name(v));
  for (auto v : r.regular) j["regular"].push_back(g->name(v));
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "ok: " << g->num_vertices() << " vertices, " << g->num_edges() << " edges\n";
    std::cout << "sinks: " << j["sinks"].size() << (r.sinks.empty() ? "" : " (");
    for (std::size_t i = 0; i < r.sinks.size(); ++i) std::cout << (i ? ", " : "") << g->name(r.sinks[i]);
    std::cout << (r.sinks.empty() ? "" : ")") << "\n";
  }
  return 0;
}

int cmd_classify(const Options& o) {
  const Context c = load(o);
  const Graph& g = *c.graph;
  if (o.graded == o.simple) throw InputError("choose exactly one of --graded and --simple");
  json j;
  if (o.graded) {
    j = to_json(g, classify_graded(g, o.cycles_up_to));
  } else {
    SimpleOptions so;
    so.poly_degree = o.poly_deg;
    so.cycle_bound = o.cycles_up_to;
    so.assume_irreducible = o.assert_irreducible;
    for (const auto& a : o.samples) so.samples.push_back(parse_scalar(c.field, a).coordinate(0));
    for (const auto& p : o.polys) so.polys.push_back(Poly::parse(c.field, p));
    j = to_json(g, classify_simple(g, c.field, so));
  }
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::vector<std::vector<std::string>> rows{{"family", "base", "detail", "dim"}};
  for (const auto& f : j["families"]) {
    const std::string type = f["type"];
    if (type == "sink" && o.graded)
      rows.push_back({"sink", f["sink"], "shifts: all n", dim_text(f["dim"])});
    else if (type == "sink")
      rows.push_back({"sink", f["sink"], "", dim_text(f["dim"])});
    else if (type == "laurent") {
      std::string shifts;
      for (const auto& m : f["shifts"]) shifts += (shifts.empty() ? "" : ",") + std::to_string(m.get<std::int64_t>());
      rows.push_back({"laurent", f["cycle"], "m in {" + shifts + "}", "infinite"});
    } else if (type == "irrational")
      rows.push_back({"irrational", f["witness"][0].get<std::string>() + " / " + f["witness"][1].get<std::string>(), "not enumerated", "infinite"});
    else if (type == "cycle")
      rows.push_back({"cycle", f["cycle"], "f = " + f["f"].get<std::string>(), dim_text(f["dim"])});
    else
      rows.push_back({"infinite", f.contains("sink") ? f["sink"].get<std::string>() : f.value("cycle", std::string("-")), f["reason"], "infinite"});
  }
  print_table(rows);
  std::cout << "complete: " << (j["complete"].get<bool>() ? "yes" : "no") << "\n";
  return 0;
}

Module build_module(const Context& c, const Options& o, const std::string& text) {
  ModuleSpec spec = parse_module_spec(*c.graph, c.field, text, o.assert_irreducible);
  if (!o.twist.empty()) {
    if (spec.kind != ModuleKind::Chen) throw InputError("--twist applies to chen modules");
    spec.twist = parse_twist(*c.graph, c.field, o.twist);
  }
  spec.shift = o.shift;
  return Module(c.algebra, spec, o.window);
}

int cmd_act(const Options& o) {
  const Context c = load(o);
  const Module m = build_module(c, o, o.module);
  const Element eta = parse_element(c.algebra, o.elt);
  const ModuleVector v = parse_vector(m, o.vec);
  const ModuleVector r = m.act(eta, v);
  if (o.as_json) {
    json j{{"module", o.module}, {"element", to_string(eta)}, {"vector", to_string(m, v)}, {"result", to_string(m, r)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_string(m, r) << "\n";
  }
  return 0;
}

BoundaryPath need_at(const Context& c, const Options& o) {
  if (o.at.empty()) throw InputError("--at is required");
  return parse_boundary_path(*c.graph, o.at);
}

FinitePath need_cycle(const Context& c, const Options& o) {
  if (o.cycle.empty()) throw InputError("--cycle is required");
  return parse_path(*c.graph, o.cycle);
}

int cmd_verify(const Options& o) {
  const Context c = load(o);
  const Graph& g = *c.graph;
  const std::string& s = o.suite;
  if (s == "triv-iso") {
    Corruption k = Corruption::None;
    if (o.corrupt == "drop-mu") k = Corruption::DropMuFactor;
    else if (o.corrupt == "drop-nu-inverse") k = Corruption::DropNuInverse;
    else if (o.corrupt != "none") throw InputError("unknown corruption '" + o.corrupt + "'");
    return emit_certificate(o, verify_triv_iso(c.algebra, need_at(c, o), parse_twist(g, c.field, o.twist), o.window, 3, k));
  }
  if (s == "twist-iso")
    return emit_certificate(o, verify_twist_iso(c.algebra, need_cycle(c, o), parse_coeff(c.field, o.nspec, o.assert_irreducible), o.window));
  if (s == "nvc-iso") return emit_certificate(o, verify_nvc_iso(c.algebra, need_cycle(c, o), o.window));
  if (s == "res-ind")
    return emit_certificate(o, verify_res_ind(c.algebra, need_at(c, o), parse_coeff(c.field, o.nspec.empty() ? "triv" : o.nspec, o.assert_irreducible), o.cap, o.window));
  if (s == "relations") return emit_certificate(o, verify_relations(c.algebra, o.triples, o.seed));
  if (s == "pi") return emit_certificate(o, verify_pi(g, std::min<std::size_t>(o.window, 3)));
  if (s == "simple") {
    const Module m = build_module(c, o, o.module);
    const SimplicityReport r = simplicity_probe(m, std::min<std::size_t>(o.window, 3));
    json j{{"module", o.module}, {"verdict", to_string(r.verdict)}, {"reason", r.reason}, {"witness", r.witness}};
    if (o.as_json) std::cout << j.dump(2) << "\n";
    else std::cout << to_string(r.verdict) << ": " << r.reason << "\n";
    return r.verdict == Verdict::Inconclusive || r.verdict == Verdict::NotSimple ? 1 : 0;
  }
  if (s == "graded-iso") {
    if (o.module.empty() || o.other.empty()) throw InputError("graded-iso needs --module and --other");
    ModuleSpec a = parse_module_spec(g, c.field, o.module), b = parse_module_spec(g, c.field, o.other);
    a.shift = o.shift;
    const IsoDecision d = graded_iso_check(g, a, b);
    json j{{"isomorphic", d.isomorphic}, {"witness", d.witness}};
    if (o.as_json) std::cout << j.dump(2) << "\n";
    else std::cout << (d.isomorphic ? "isomorphic" : "not isomorphic") << ": " << d.witness << "\n";
    return 0;
  }
  throw InputError("unknown suite '" + s + "'");
}

int cmd_dims(const Options& o) {
  const Context c = load(o);
  const Graph& g = *c.graph;
  SimpleOptions so;
  so.poly_degree = o.poly_deg;
  so.cycle_bound = o.cycles_up_to;
  for (const auto& a : o.samples) so.samples.push_back(parse_scalar(c.field, a).coordinate(0));
  const auto entries = finite_entries(classify_simple(g, c.field, so));
  json j = json::array();
  bool agree = true;
  for (const auto& e : entries) {
    const Module m(c.algebra, entry_module(g, e), 0);
    const std::uint64_t oracle = dimension_oracle(g, e);
    agree = agree && oracle == *e.dim && m.dim() == oracle;
    json row = to_json(g, e);
    row["oracle"] = oracle;
    row["basis"] = m.dim();
    j.push_back(row);
  }
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows{{"entry", "dim", "oracle", "basis"}};
    for (const auto& r : j) {
      const std::string name = r["type"] == "sink" ? "V_[" + r["sink"].get<std::string>() + "]"
                                                   : "V^(" + r["f"].get<std::string>() + ")_[" + r["cycle"].get<std::string>() + "]";
      rows.push_back({name, std::to_string(r["dim"].get<std::uint64_t>()), std::to_string(r["oracle"].get<std::uint64_t>()),
                      std::to_string(r["basis"].get<std::size_t>())});
    }
    print_table(rows);
  }
  return agree ? 0 : 1;
}

int cmd_orbit(const Options& o) {
  const Context c = load(o);
  const BoundaryPath x = need_at(c, o);
  const Orbit orb = orbit(*c.graph, x, o.window);
  const Isotropy iso = isotropy(x);
  json j{{"at", to_string(*c.graph, x)}, {"exact", orb.exact}, {"points", json::array()}};
  j["isotropy"] = iso.trivial ? json("trivial") : json{{"generator_lag", iso.generator_lag}, {"cycle", to_string(*c.graph, iso.cycle)}};
  for (const auto& p : orb.points) j["points"].push_back(to_string(*c.graph, p));
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "isotropy: " << (iso.trivial ? "trivial" : "Z, generator lag " + std::to_string(iso.generator_lag)) << "\n";
    std::cout << "orbit (" << (orb.exact ? "exact" : "window " + std::to_string(o.window)) << "):";
    for (const auto& p : j["points"]) std::cout << " " << p.get<std::string>();
    std::cout << "\n";
  }
  return 0;
}

int cmd_lags(const Options& o) {
  const Context c = load(o);
  const BoundaryPath x = parse_boundary_path(*c.graph, o.x), y = parse_boundary_path(*c.graph, o.y);
  const LagSet l = tail_lags(x, y);
  if (o.as_json) std::cout << json{{"x", o.x}, {"y", o.y}, {"lags", l.to_string()}}.dump(2) << "\n";
  else std::cout << l.to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leavitt path algebras: modules, certificates and classification"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "Q, Fp, or Fp[t]/(f)");
  app.add_flag("--json", o.as_json, "JSON output");
  app.add_option("--window", o.window, "path-length window for infinite modules");
  app.add_option("--seed", o.seed, "seed for sampled suites");
  app.add_flag("--assert-irreducible", o.assert_irreducible, "accept moduli over Q beyond degree 3 without proof");

  auto* validate_cmd = app.add_subcommand("validate", "check a graph file and list its sinks");
  validate_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "list spectral (graded) simple modules");
  classify_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  classify_cmd->add_flag("--graded", o.graded, "graded simples: sinks and Laurent shifts");
  classify_cmd->add_flag("--simple", o.simple, "non-graded simples over Q or F_p");
  classify_cmd->add_option("--cycles-up-to", o.cycles_up_to, "length bound for closed paths");
  classify_cmd->add_option("--poly-deg", o.poly_deg, "degree bound for f over F_p");
  classify_cmd->add_option("--sample-a", o.samples, "over Q: include f = t - a");
  classify_cmd->add_option("--poly", o.polys, "extra monic irreducible f");

  auto* act_cmd = app.add_subcommand("act", "apply an algebra element to a module vector");
  act_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  act_cmd->add_option("--module", o.module, "chen:x, chenext:c:f, nvc:c or ind:x:coeff")->required();
  act_cmd->add_option("--elt", o.elt, "element, e.g. \"2 e.f g^ + v\"")->required();
  act_cmd->add_option("--vec", o.vec, "module vector, e.g. \"f - 1/2 v\"")->required();
  act_cmd->add_option("--twist", o.twist, "edge scalars for chen, e.g. e=2,f=1/3");
  act_cmd->add_option("--shift", o.shift, "degree shift");

  auto* verify_cmd = app.add_subcommand("verify", "run a certificate or property suite");
  verify_cmd->add_option("suite", o.suite, "triv-iso, twist-iso, nvc-iso, res-ind, relations, pi, simple, graded-iso")->required();
  verify_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  verify_cmd->add_option("--at", o.at, "base boundary path, e.g. v or a.(c)");
  verify_cmd->add_option("--twist", o.twist, "edge scalars, e.g. f=3");
  verify_cmd->add_option("--cycle", o.cycle, "cycle as dot-separated edges");
  verify_cmd->add_option("--nspec", o.nspec, "triv[=n], ka=a, quot=f, laurent=m");
  verify_cmd->add_option("--module", o.module, "module spec for simple and graded-iso");
  verify_cmd->add_option("--other", o.other, "second module spec for graded-iso");
  verify_cmd->add_option("--shift", o.shift, "degree shift of --module");
  verify_cmd->add_option("--cap", o.cap, "idempotent steps allowed in res-ind");
  verify_cmd->add_option("--triples", o.triples, "associativity triples in relations");
  verify_cmd->add_option("--corrupt", o.corrupt, "none, drop-mu, drop-nu-inverse");

  auto* dims_cmd = app.add_subcommand("dims", "finite-dimensional simples with dimension cross-checks");
  dims_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  dims_cmd->add_option("--poly-deg", o.poly_deg, "degree bound for f over F_p");
  dims_cmd->add_option("--cycles-up-to", o.cycles_up_to, "length bound for closed paths");
  dims_cmd->add_option("--sample-a", o.samples, "over Q: include f = t - a");

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit and isotropy of a boundary path");
  orbit_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  orbit_cmd->add_option("--at", o.at, "boundary path")->required();

  auto* lags_cmd = app.add_subcommand("lags", "lag set of two boundary paths");
  lags_cmd->add_option("graph", o.graph_file, "graph JSON file")->required();
  lags_cmd->add_option("x", o.x)->required();
  lags_cmd->add_option("y", o.y)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*act_cmd) return cmd_act(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*dims_cmd) return cmd_dims(o);
    if (*orbit_cmd) return cmd_orbit(o);
    if (*lags_cmd) return cmd_lags(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
