#pragma once

// Text forms for elements, boundary paths, module vectors, module specs and
// twists.
//
// Element:  term (('+' | '-') term)*,  term = [coef] [path] [ghost]
//   coef   rational "2", "-1/3"; over K[t]/(f) a bracketed polynomial "[t+1]"
//   path   dot-separated edges "e.f", or a vertex name
//   ghost  a path followed by '^' or '^*'
//   Tokens are separated by spaces or '*'. A lone path mu means mu r(mu)^*,
//   a lone ghost nu^ means r(nu) nu^*. "0" is the zero element.
// Boundary path: a sink path "f.g" / "v", or a lasso "alpha.(c)" / "(c)".
// Vectors (by module): chen "bp", chenext "bp#j", nvc "mu nu^", ind "bp@k#j".
// Module specs: "chen:bp", "chenext:cycle:poly", "nvc:cycle",
//   "ind:bp:triv[=n] | ka=a | quot=poly | laurent=m".
// Twist: "e=2,f=1/3".

#include <cctype>
#include <cstdint>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/error.hpp"
#include "lpa/field.hpp"
#include "lpa/module.hpp"

namespace lpa {

namespace text {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

struct SignedTerm {
  bool negative = false;
  std::string body;
  std::size_t column = 0;  // 1-based
};

// Splits at '+' / '-' outside brackets and parentheses; a '-' right after '@'
// (a lag) or inside a coefficient stays put.
inline std::vector<SignedTerm> split_terms(std::string_view s, const std::string& what) {
  std::vector<SignedTerm> out;
  SignedTerm cur;
  int depth = 0;
  bool pending_sign = false;
  std::size_t start = 0;
  char prev = '\0';
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '[' || ch == '(') ++depth;
    if ((ch == ']' || ch == ')') && --depth < 0)
      throw ParseError(what + ": unbalanced '" + std::string(1, ch) + "'", 1, i + 1);
    const bool space = std::isspace(static_cast<unsigned char>(ch));
    if (depth == 0 && (ch == '+' || ch == '-') && prev != '@') {
      const std::string body = trim(s.substr(start, i - start));
      if (!body.empty()) {
        cur.body = body;
        out.push_back(cur);
        cur = {};
      } else if (pending_sign || !out.empty()) {
        throw ParseError(what + ": doubled sign", 1, i + 1);
      }
      cur.negative = ch == '-';
      cur.column = i + 2;
      pending_sign = true;
      start = i + 1;
    } else if (!space) {
      pending_sign = false;
      if (cur.column == 0) cur.column = i + 1;
    }
    if (!space) prev = ch;
  }
  if (depth != 0) throw ParseError(what + ": unbalanced brackets", 1, s.size() + 1);
  cur.body = trim(s.substr(start));
  if (cur.body.empty()) throw ParseError(what + ": empty term", 1, s.size() + 1);
  out.push_back(cur);
  return out;
}

// Tokens separated by spaces or '*'; "^*" and anything in brackets stay whole.
inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    const bool ghost_star = ch == '*' && !cur.empty() && cur.back() == '^';
    if (depth == 0 && !ghost_star && (ch == '*' || std::isspace(static_cast<unsigned char>(ch)))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool looks_like_coefficient(const std::string& t) {
  return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '[' || t[0] == '-');
}

}  // namespace text

// ---- scalars ----

inline Scalar parse_scalar(const FieldPtr& k, std::string_view s) {
  const std::string t = text::trim(s);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ParseError("coefficient '" + t + "': missing ']'", 1, t.size());
    if (!k->is_extension()) throw ParseError("bracketed coefficient needs an extension field", 1, 1);
    const Poly p = Poly::parse(k->base_field(), t.substr(1, t.size() - 2));
    return Scalar::from_coefficients(k, p.raw());
  }
  static const std::regex rational(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(t, rational)) throw ParseError("malformed coefficient '" + t + "'", 1, 1);
  Rational q(t);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + t + "'", 1, 1);
  q.canonicalize();
  return Scalar(k, q);
}

inline std::string scalar_text(const Scalar& s) {
  if (s.field()->is_extension()) return "[" + s.to_string() + "]";
  return s.to_string();
}

// ---- paths ----

inline FinitePath parse_path(const Graph& g, std::string_view s) {
  const std::string t = text::trim(s);
  if (t.empty()) throw ParseError("empty path", 1, 1);
  const auto parts = text::split(t, '.');
  if (parts.size() == 1)
    if (auto v = g.find_vertex(parts[0])) return FinitePath::vertex(*v);
  std::vector<EdgeId> edges;
  for (const auto& p : parts) {
    auto e = g.find_edge(p);
    if (!e) throw InputError("unknown edge or vertex '" + p + "'");
    edges.push_back(*e);
  }
  try {
    return FinitePath::from_edges(g, edges);
  } catch (const Error& e) {
    throw InputError("'" + t + "' is not a path: " + e.what());
  }
}

inline BoundaryPath parse_boundary_path(const Graph& g, std::string_view s) {
  const std::string t = text::trim(s);
  const auto open = t.find('(');
  if (open == std::string::npos) {
    const FinitePath p = parse_path(g, t);
    if (!g.is_sink(p.range())) throw InputError("'" + t + "' does not end at a sink; write a lasso as alpha.(c)");
    return BoundaryPath::finite(g, p);
  }
  if (t.back() != ')') throw ParseError("lasso '" + t + "' must end with ')'", 1, t.size());
  std::string pre = t.substr(0, open);
  if (!pre.empty() && pre.back() == '.') pre.pop_back();
  const FinitePath c = parse_path(g, t.substr(open + 1, t.size() - open - 2));
  if (!is_closed(c)) throw InputError("'" + to_string(g, c) + "' is not a closed path");
  const FinitePath alpha = pre.empty() ? FinitePath::vertex(c.source()) : parse_path(g, pre);
  if (alpha.range() != c.source()) throw InputError("lasso prefix does not end where the cycle starts");
  return BoundaryPath::lasso(g, alpha, c, 0);
}

// ---- elements ----

inline Element parse_element(const AlgebraPtr& a, std::string_view s) {
  const Graph& g = a->graph();
  const FieldPtr& k = a->field();
  if (text::trim(s) == "0") return Element::zero(a);
  Element out(a);
  for (const auto& term : text::split_terms(s, "element")) {
    auto toks = text::tokens(term.body);
    Scalar c = Scalar::one(k);
    std::size_t i = 0;
    if (i < toks.size() && text::looks_like_coefficient(toks[i])) c = parse_scalar(k, toks[i++]);
    std::optional<FinitePath> mu, nu;
    if (i < toks.size() && toks[i].back() != '^' && toks[i].find("^*") == std::string::npos) mu = parse_path(g, toks[i++]);
    if (i < toks.size()) {
      std::string gh = toks[i++];
      if (gh.size() >= 2 && gh.substr(gh.size() - 2) == "^*") gh.resize(gh.size() - 2);
      else if (gh.back() == '^') gh.pop_back();
      else throw ParseError("expected a ghost path ending in '^' at '" + gh + "'", 1, term.column);
      nu = parse_path(g, gh);
    }
    if (i != toks.size()) throw ParseError("unexpected '" + toks[i] + "' in term '" + term.body + "'", 1, term.column);
    if (term.negative) c = -c;
    if (!mu && !nu) {
      out += Element::unit(a).scaled(c);
      continue;
    }
    if (!mu) mu = FinitePath::vertex(nu->range());
    if (!nu) nu = FinitePath::vertex(mu->range());
    if (mu->range() != nu->range()) throw InputError("term '" + term.body + "' needs r(mu) = r(nu)");
    out += Element::monomial(a, Monomial(*mu, *nu), c);
  }
  return out;
}

inline std::string monomial_text(const Graph& g, const Monomial& m) {
  if (m.nu.is_vertex()) return to_string(g, m.mu);
  if (m.mu.is_vertex()) return to_string(g, m.nu) + "^";
  return to_string(g, m.mu) + " " + to_string(g, m.nu) + "^";
}

// Joins (coefficient, body) pairs as "c body + c body - ...".
inline std::string join_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [c, body] : terms) {
    Scalar shown = c;
    bool neg = false;
    if (c.field()->characteristic() == 0 && c.field()->is_base() && c.coordinate(0) < 0) {
      neg = true;
      shown = -c;
    }
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (!shown.is_one()) out += scalar_text(shown) + " ";
    out += body;
  }
  return out;
}

inline std::string to_string(const Element& x) {
  const Graph& g = x.algebra()->graph();
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto& [m, c] : x.terms()) terms.emplace_back(c, monomial_text(g, m));
  return join_terms(terms);
}

// ---- module vectors ----

inline std::string basis_text(const Module& m, std::size_t i) {
  const Graph& g = m.graph();
  const BasisElement& b = m.basis_element(i);
  if (const auto* cb = std::get_if<ChenBasis>(&b))
    return to_string(g, cb->y) + (cb->factor ? "#" + std::to_string(cb->factor) : "");
  if (const auto* nb = std::get_if<NvcBasis>(&b)) return monomial_text(g, nb->mono);
  const auto& co = std::get<CosetBasis>(b);
  return to_string(g, co.y) + "@" + std::to_string(co.k) + (co.factor ? "#" + std::to_string(co.factor) : "");
}

inline std::string to_string(const Module& m, const ModuleVector& v) {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto& [i, c] : v) terms.emplace_back(c, basis_text(m, i));
  return join_terms(terms);
}

inline ModuleVector parse_vector(const Module& m, std::string_view s) {
  const Graph& g = m.graph();
  const FieldPtr& k = m.field();
  if (text::trim(s) == "0") return {};
  ModuleVector out;
  for (const auto& term : text::split_terms(s, "vector")) {
    std::string body = term.body;
    Scalar c = Scalar::one(k);
    if (text::looks_like_coefficient(body)) {
      std::size_t end = 0;
      if (body[0] == '[') {
        end = body.find(']');
        if (end == std::string::npos) throw ParseError("missing ']'", 1, term.column);
        ++end;
      } else {
        while (end < body.size() && !std::isspace(static_cast<unsigned char>(body[end])) && body[end] != '*') ++end;
      }
      c = parse_scalar(k, body.substr(0, end));
      body = text::trim(std::string_view(body).substr(end));
      if (!body.empty() && body[0] == '*') body = text::trim(std::string_view(body).substr(1));
    }
    if (term.negative) c = -c;
    std::size_t factor = 0;
    if (auto hash = body.rfind('#'); hash != std::string::npos && m.spec().kind != ModuleKind::Nvc) {
      const std::string f = body.substr(hash + 1);
      if (f.empty() || !std::all_of(f.begin(), f.end(), ::isdigit)) throw ParseError("bad factor index '" + f + "'", 1, term.column);
      factor = std::stoul(f);
      body = body.substr(0, hash);
    }
    std::optional<std::size_t> idx;
    switch (m.spec().kind) {
      case ModuleKind::Chen:
      case ModuleKind::ChenExt: idx = m.index_of(ChenBasis{parse_boundary_path(g, body), factor}); break;
      case ModuleKind::Nvc: {
        const Element e = parse_element(m.algebra(), body);
        if (e.terms().size() != 1 || !e.terms().begin()->second.is_one())
          throw InputError("'" + body + "' is not a single normal monomial");
        idx = m.index_of(NvcBasis{e.terms().begin()->first});
        break;
      }
      case ModuleKind::Induced: {
        const auto at = body.rfind('@');
        if (at == std::string::npos) throw ParseError("induced basis vectors are written bp@k", 1, term.column);
        const std::string ks = text::trim(std::string_view(body).substr(at + 1));
        static const std::regex integer(R"(-?[0-9]+)");
        if (!std::regex_match(ks, integer)) throw ParseError("bad lag '" + ks + "'", 1, term.column);
        const BoundaryPath y = parse_boundary_path(g, std::string_view(body).substr(0, at));
        std::int64_t kk = std::stoll(ks);
        if (!tail_lags(y, m.base_point()).contains(kk))
          throw InputError("(" + to_string(g, y) + ", " + ks + ") is not in L_x");
        if (m.base_point().is_lasso() && m.spec().coeff.kind != CoeffKind::LaurentShift) {
          const auto [k0, j] = m.canonical_lag(y, kk);
          if (j != 0) throw InputError("write the lag as its representative " + std::to_string(k0));
          kk = k0;
        }
        idx = m.index_of(CosetBasis{y, kk, factor});
        break;
      }
    }
    if (!idx) throw OutOfWindow("'" + body + "' is not a basis element of the module window");
    add_to(out, *idx, c);
  }
  return out;
}

// ---- specs ----

inline TwistVector parse_twist(const Graph& g, const FieldPtr& k, std::string_view s) {
  TwistVector a(g, k);
  if (text::trim(s).empty()) return a;
  for (const auto& item : text::split(s, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("twist entries are edge=value, got '" + item + "'", 1, 1);
    auto e = g.find_edge(text::trim(std::string_view(item).substr(0, eq)));
    if (!e) throw InputError("unknown edge in twist '" + item + "'");
    a.set(*e, parse_scalar(k, std::string_view(item).substr(eq + 1)));
  }
  return a;
}

inline CoeffSpec parse_coeff(const FieldPtr& k, std::string_view s, bool assume) {
  const std::string t = text::trim(s);
  const auto eq = t.find('=');
  const std::string name = t.substr(0, eq);
  const std::string arg = eq == std::string::npos ? "" : t.substr(eq + 1);
  static const std::regex integer(R"(-?[0-9]+)");
  if (name == "triv") {
    if (!arg.empty() && !std::regex_match(arg, integer)) throw ParseError("bad shift '" + arg + "'", 1, eq + 2);
    return CoeffSpec::trivial(arg.empty() ? 0 : std::stoll(arg));
  }
  if (arg.empty()) throw ParseError("'" + name + "' needs an argument", 1, t.size());
  if (name == "ka") return CoeffSpec::ka(parse_scalar(k, arg));
  if (name == "quot") return CoeffSpec::quot(Poly::parse(k, arg), assume);
  if (name == "laurent") {
    if (!std::regex_match(arg, integer)) throw ParseError("bad shift '" + arg + "'", 1, eq + 2);
    return CoeffSpec::laurent(std::stoll(arg));
  }
  throw ParseError("unknown coefficient module '" + name + "'", 1, 1);
}

inline ModuleSpec parse_module_spec(const Graph& g, const FieldPtr& k, std::string_view s, bool assume = false) {
  const auto parts = text::split(s, ':');
  const std::string& kind = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n) throw ParseError("module spec '" + std::string(s) + "' has the wrong number of fields", 1, 1);
  };
  if (kind == "chen") {
    need(2);
    return ModuleSpec::chen(parse_boundary_path(g, parts[1]));
  }
  if (kind == "chenext") {
    need(3);
    return ModuleSpec::chen_ext(parse_path(g, parts[1]), Poly::parse(k, parts[2]), assume);
  }
  if (kind == "nvc") {
    need(2);
    return ModuleSpec::nvc(parse_path(g, parts[1]));
  }
  if (kind == "ind") {
    need(3);
    return ModuleSpec::induced(parse_boundary_path(g, parts[1]), parse_coeff(k, parts[2], assume));
  }
  throw ParseError("unknown module kind '" + kind + "'", 1, 1);
}

}  // namespace lpa
