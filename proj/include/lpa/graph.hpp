#pragma once

// Finite directed graphs with named vertices and edges.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lpa/error.hpp"

namespace lpa {

// Ids are assigned in name order, so comparing ids compares names.
struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  auto operator<=>(const EdgeId&) const = default;
};

struct EdgeSpec {
  std::string name;
  std::string src;
  std::string rng;
};

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

class Graph;
using GraphPtr = std::shared_ptr<const Graph>;

class Graph {
 public:
  Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
    if (vertices.empty()) throw GraphError("graph has no vertices");
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!valid_name(vertices[i])) throw GraphError("invalid vertex name '" + vertices[i] + "'");
      if (i > 0 && vertices[i] == vertices[i - 1]) throw GraphError("duplicate name '" + vertices[i] + "'");
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (!valid_name(e.name)) throw GraphError("invalid edge name '" + e.name + "'");
      if (i > 0 && e.name == edges[i - 1].name) throw GraphError("duplicate name '" + e.name + "'");
      if (std::binary_search(vertices.begin(), vertices.end(), e.name))
        throw GraphError("duplicate name '" + e.name + "' used for a vertex and an edge");
      if (!std::binary_search(vertices.begin(), vertices.end(), e.src))
        throw GraphError("dangling endpoint: edge '" + e.name + "' has undeclared src '" + e.src + "'");
      if (!std::binary_search(vertices.begin(), vertices.end(), e.rng))
        throw GraphError("dangling endpoint: edge '" + e.name + "' has undeclared rng '" + e.rng + "'");
    }
    vertex_names_ = std::move(vertices);
    for (std::uint32_t i = 0; i < vertex_names_.size(); ++i) vertex_index_[vertex_names_[i]] = VertexId{i};
    out_.resize(vertex_names_.size());
    in_.resize(vertex_names_.size());
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      edge_names_.push_back(edges[i].name);
      src_.push_back(vertex_index_.at(edges[i].src));
      rng_.push_back(vertex_index_.at(edges[i].rng));
      edge_index_[edges[i].name] = EdgeId{i};
      out_[src_.back().value].push_back(EdgeId{i});
      in_[rng_.back().value].push_back(EdgeId{i});
    }
  }

  static GraphPtr make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
    return std::make_shared<const Graph>(std::move(vertices), std::move(edges));
  }

  // {"vertices": [...], "edges": [{"name", "src", "rng"}, ...]}
  static GraphPtr from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      auto [line, col] = line_column(text, e.byte);
      throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
    try {
      if (!j.is_object()) throw GraphError("graph file must hold a JSON object");
      if (!j.contains("vertices")) throw GraphError("graph file lacks \"vertices\"");
      std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
      std::vector<EdgeSpec> edges;
      if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
          if (!e.is_object() || !e.contains("name") || !e.contains("src") || !e.contains("rng"))
            throw GraphError("each edge needs \"name\", \"src\" and \"rng\"");
          edges.push_back({e.at("name").get<std::string>(), e.at("src").get<std::string>(),
                           e.at("rng").get<std::string>()});
        }
      }
      return make(std::move(vertices), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
      throw GraphError(std::string("malformed graph: ") + e.what());
    }
  }

  static GraphPtr from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read graph file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vertices"] = vertex_names_;
    j["edges"] = nlohmann::json::array();
    for (std::uint32_t i = 0; i < edge_names_.size(); ++i)
      j["edges"].push_back({{"name", edge_names_[i]}, {"src", name(src_[i])}, {"rng", name(rng_[i])}});
    return j;
  }

  std::size_t num_vertices() const noexcept { return vertex_names_.size(); }
  std::size_t num_edges() const noexcept { return edge_names_.size(); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> v;
    for (std::uint32_t i = 0; i < vertex_names_.size(); ++i) v.push_back(VertexId{i});
    return v;
  }
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> v;
    for (std::uint32_t i = 0; i < edge_names_.size(); ++i) v.push_back(EdgeId{i});
    return v;
  }

  const std::string& name(VertexId v) const { return vertex_names_.at(v.value); }
  const std::string& name(EdgeId e) const { return edge_names_.at(e.value); }
  VertexId src(EdgeId e) const { return src_.at(e.value); }
  VertexId rng(EdgeId e) const { return rng_.at(e.value); }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v.value); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v.value); }
  bool is_sink(VertexId v) const { return out_.at(v.value).empty(); }

  std::vector<VertexId> sinks() const {
    std::vector<VertexId> s;
    for (auto v : vertices())
      if (is_sink(v)) s.push_back(v);
    return s;
  }

  std::optional<VertexId> find_vertex(std::string_view n) const {
    auto it = vertex_index_.find(std::string(n));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(std::string_view n) const {
    auto it = edge_index_.find(std::string(n));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  VertexId vertex(std::string_view n) const {
    if (auto v = find_vertex(n)) return *v;
    throw InputError("unknown vertex '" + std::string(n) + "'");
  }
  EdgeId edge(std::string_view n) const {
    if (auto e = find_edge(n)) return *e;
    throw InputError("unknown edge '" + std::string(n) + "'");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_names_ == b.vertex_names_ && a.edge_names_ == b.edge_names_ && a.src_ == b.src_
           && a.rng_ == b.rng_;
  }

 private:
  static std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    // nlohmann reports the 1-based position of the offending byte.
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> src_, rng_;
  std::vector<std::vector<EdgeId>> out_, in_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
};

struct ValidationReport {
  std::vector<VertexId> sinks;
  std::vector<VertexId> regular;
};

// Graph construction already enforces the invariants; this classifies vertices.
inline ValidationReport validate(const Graph& g) {
  ValidationReport r;
  for (auto v : g.vertices()) (g.is_sink(v) ? r.sinks : r.regular).push_back(v);
  return r;
}

}  // namespace lpa
