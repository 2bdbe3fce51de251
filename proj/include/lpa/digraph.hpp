#pragma once

// Finite directed graphs E = (E^0, E^1, s, r) and their finite paths.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(EdgeId e) { return static_cast<std::size_t>(e); }

enum class VertexKind { regular, sink };

struct EdgeSpec {
  std::string id;
  std::string source;
  std::string range;
};

/// Immutable validated digraph. Vertices and edges are stored sorted by
/// identifier, so VertexId/EdgeId order is the lexicographic order of names.
class Digraph {
 public:
  Digraph() = default;

  Digraph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges, std::string name = {})
      : name_(std::move(name)) {
    if (vertices.empty()) throw InputError("graph has no vertices");
    std::sort(vertices.begin(), vertices.end());
    if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end()) {
      throw InputError("duplicate vertex id '" + *dup + "'");
    }
    std::sort(edges.begin(), edges.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].id == edges[i - 1].id) throw InputError("duplicate edge id '" + edges[i].id + "'");
    }
    vertex_names_ = std::move(vertices);
    out_.resize(vertex_names_.size());
    for (const auto& e : edges) {
      if (find_vertex(e.id)) throw InputError("id '" + e.id + "' names both a vertex and an edge");
      auto s = find_vertex(e.source);
      auto r = find_vertex(e.range);
      if (!s) throw InputError("edge '" + e.id + "' has unknown source '" + e.source + "'");
      if (!r) throw InputError("edge '" + e.id + "' has unknown range '" + e.range + "'");
      const auto id = static_cast<EdgeId>(edge_names_.size());
      edge_names_.push_back(e.id);
      source_.push_back(*s);
      range_.push_back(*r);
      out_[index(*s)].push_back(id);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edge_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(index(v)); }
  const std::string& edge_name(EdgeId e) const { return edge_names_.at(index(e)); }
  VertexId source(EdgeId e) const { return source_.at(index(e)); }
  VertexId range(EdgeId e) const { return range_.at(index(e)); }

  /// s^{-1}(v), in edge-id order.
  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(index(v)); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < vertex_count(); ++i) out.push_back(static_cast<VertexId>(i));
    return out;
  }
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < edge_count(); ++i) out.push_back(static_cast<EdgeId>(i));
    return out;
  }

  std::optional<VertexId> find_vertex(std::string_view id) const {
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), id);
    if (it == vertex_names_.end() || *it != id) return std::nullopt;
    return static_cast<VertexId>(it - vertex_names_.begin());
  }
  std::optional<EdgeId> find_edge(std::string_view id) const {
    auto it = std::lower_bound(edge_names_.begin(), edge_names_.end(), id);
    if (it == edge_names_.end() || *it != id) return std::nullopt;
    return static_cast<EdgeId>(it - edge_names_.begin());
  }

  VertexId vertex(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw InputError("unknown vertex '" + std::string(id) + "'");
  }
  EdgeId edge(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw InputError("unknown edge '" + std::string(id) + "'");
  }

  bool is_sink(VertexId v) const { return out_edges(v).empty(); }

  /// True when the graph is one vertex carrying only loops (the graph of L(1,n)).
  bool is_rose() const { return vertex_count() == 1 && edge_count() > 0; }

  bool is_acyclic() const {
    // Kahn's algorithm on in-degrees.
    std::vector<std::size_t> indeg(vertex_count(), 0);
    for (auto r : range_) ++indeg[index(r)];
    std::vector<VertexId> ready;
    for (auto v : vertices()) {
      if (indeg[index(v)] == 0) ready.push_back(v);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
      auto v = ready.back();
      ready.pop_back();
      ++seen;
      for (auto e : out_edges(v)) {
        if (--indeg[index(range(e))] == 0) ready.push_back(range(e));
      }
    }
    return seen == vertex_count();
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertex_names_ == b.vertex_names_ && a.edge_names_ == b.edge_names_ &&
           a.source_ == b.source_ && a.range_ == b.range_;
  }

 private:
  std::string name_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> source_;
  std::vector<VertexId> range_;
  std::vector<std::vector<EdgeId>> out_;
};

inline VertexKind classify_vertex(const Digraph& g, VertexId v) {
  if (index(v) >= g.vertex_count()) throw InputError("vertex index out of range");
  return g.is_sink(v) ? VertexKind::sink : VertexKind::regular;
}

inline VertexKind classify_vertex(const Digraph& g, std::string_view id) {
  return classify_vertex(g, g.vertex(id));
}

/// A vertex (length 0) or a composable edge sequence. Ordered
/// lexicographically by (source vertex, edge sequence).
class Path {
 public:
  Path() = default;

  static Path vertex(VertexId v) { return Path(v, {}, v); }

  static Path edge(const Digraph& g, EdgeId e) { return Path(g.source(e), {e}, g.range(e)); }

  static Path from_edges(const Digraph& g, std::vector<EdgeId> edges) {
    if (edges.empty()) throw InputError("edge sequence is empty; use Path::vertex");
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (g.range(edges[i - 1]) != g.source(edges[i])) {
        throw InputError("edges '" + g.edge_name(edges[i - 1]) + "' and '" + g.edge_name(edges[i]) +
                         "' do not compose");
      }
    }
    const VertexId s = g.source(edges.front());
    const VertexId r = g.range(edges.back());
    return Path(s, std::move(edges), r);
  }

  std::size_t length() const { return edges_.size(); }
  bool is_vertex() const { return edges_.empty(); }
  VertexId source() const { return source_; }
  VertexId range() const { return range_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  EdgeId first_edge() const { return edges_.front(); }
  EdgeId last_edge() const { return edges_.back(); }

  /// Concatenation when range(*this) == source(q).
  std::optional<Path> compose(const Path& q) const {
    if (range_ != q.source_) return std::nullopt;
    Path out = *this;
    out.edges_.insert(out.edges_.end(), q.edges_.begin(), q.edges_.end());
    out.range_ = q.range_;
    return out;
  }

  /// this · e, assuming s(e) == range().
  Path extend(const Digraph& g, EdgeId e) const {
    Path out = *this;
    out.edges_.push_back(e);
    out.range_ = g.range(e);
    return out;
  }

  /// True when *this is a head of q (same source, edge sequence a prefix).
  bool is_prefix_of(const Path& q) const {
    return source_ == q.source_ && edges_.size() <= q.edges_.size() &&
           std::equal(edges_.begin(), edges_.end(), q.edges_.begin());
  }

  /// The part of q after the prefix *this. Requires is_prefix_of(q).
  Path strip_from(const Path& q) const {
    return Path(range_, {q.edges_.begin() + static_cast<std::ptrdiff_t>(edges_.size()), q.edges_.end()},
                q.range_);
  }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path(VertexId s, std::vector<EdgeId> edges, VertexId r) : source_(s), edges_(std::move(edges)), range_(r) {}

  VertexId source_{};
  std::vector<EdgeId> edges_;
  VertexId range_{};
};

/// Degree-lexicographic order: length first, then the path order.
struct DegLexLess {
  bool operator()(const Path& a, const Path& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  }
};

inline std::optional<Path> compose_paths(const Path& p, const Path& q) { return p.compose(q); }

/// h_p(i): the first i edges of p; head(p, 0) is the source vertex.
inline Path head(const Digraph& g, const Path& p, std::size_t i) {
  if (i > p.length()) throw InputError("head index out of range");
  if (i == 0) return Path::vertex(p.source());
  return Path::from_edges(g, {p.edges().begin(), p.edges().begin() + static_cast<std::ptrdiff_t>(i)});
}

/// t_p(i): the edges after position i; tail(p, |p|) is the range vertex.
inline Path tail(const Digraph& g, const Path& p, std::size_t i) {
  if (i > p.length()) throw InputError("tail index out of range");
  if (i == p.length()) return Path::vertex(p.range());
  return Path::from_edges(g, {p.edges().begin() + static_cast<std::ptrdiff_t>(i), p.edges().end()});
}

/// All paths of length exactly d, in path order.
inline std::vector<Path> enumerate_paths(const Digraph& g, std::size_t d) {
  std::vector<Path> level;
  for (auto v : g.vertices()) level.push_back(Path::vertex(v));
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Path> next;
    for (const auto& p : level) {
      for (auto e : g.out_edges(p.range())) next.push_back(p.extend(g, e));
    }
    level = std::move(next);
  }
  // Extension preserves path order level by level.
  return level;
}

/// All paths of length at most d, degree-lex ordered.
inline std::vector<Path> enumerate_paths_upto(const Digraph& g, std::size_t d) {
  std::vector<Path> out;
  std::vector<Path> level;
  for (auto v : g.vertices()) level.push_back(Path::vertex(v));
  for (std::size_t k = 0;; ++k) {
    out.insert(out.end(), level.begin(), level.end());
    if (k == d) break;
    std::vector<Path> next;
    for (const auto& p : level) {
      for (auto e : g.out_edges(p.range())) next.push_back(p.extend(g, e));
    }
    level = std::move(next);
  }
  return out;
}

/// Longest path length in an acyclic graph; nullopt when the graph has a cycle.
inline std::optional<std::size_t> longest_path_length(const Digraph& g) {
  if (!g.is_acyclic()) return std::nullopt;
  std::vector<std::optional<std::size_t>> memo(g.vertex_count());
  auto depth = [&](auto&& self, VertexId v) -> std::size_t {
    if (memo[index(v)]) return *memo[index(v)];
    std::size_t best = 0;
    for (auto e : g.out_edges(v)) best = std::max(best, 1 + self(self, g.range(e)));
    memo[index(v)] = best;
    return best;
  };
  std::size_t best = 0;
  for (auto v : g.vertices()) best = std::max(best, depth(depth, v));
  return best;
}

/// Human-readable path: vertex name, or edge names joined with " . ".
inline std::string path_to_string(const Digraph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_name(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += " . ";
    out += g.edge_name(p.edges()[i]);
  }
  return out;
}

}  // namespace lpa
