#pragma once

// The quiver (path) algebra KE: finite K-linear combinations of paths with
// product given by concatenation when composable and 0 otherwise.

#include <map>
#include <memory>
#include <optional>
#include <utility>

#include "lpa/digraph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

using GraphPtr = std::shared_ptr<const Digraph>;

inline GraphPtr share(Digraph g) { return std::make_shared<const Digraph>(std::move(g)); }

inline bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || (a && b && *a == *b); }

template <Field F>
class QuiverElement {
 public:
  using Scalar = typename F::Scalar;
  using Terms = std::map<Path, Scalar>;

  QuiverElement(GraphPtr graph, F field) : graph_(std::move(graph)), field_(std::move(field)) {}

  static QuiverElement path(GraphPtr graph, F field, const Path& p) {
    QuiverElement x(std::move(graph), field);
    x.add_term(p, x.field_.one());
    return x;
  }

  /// The identity: sum of all vertices.
  static QuiverElement one(GraphPtr graph, F field) {
    QuiverElement x(graph, field);
    for (auto v : graph->vertices()) x.add_term(Path::vertex(v), x.field_.one());
    return x;
  }

  const Digraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  const F& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Adds k·p, dropping the entry if it cancels.
  void add_term(const Path& p, const Scalar& k) {
    if (lpa::is_zero(k)) return;
    auto [it, inserted] = terms_.try_emplace(p, k);
    if (!inserted) {
      it->second = it->second + k;
      if (lpa::is_zero(it->second)) terms_.erase(it);
    }
  }

  QuiverElement& operator+=(const QuiverElement& y) {
    check_compatible(y);
    for (const auto& [p, k] : y.terms_) add_term(p, k);
    return *this;
  }
  QuiverElement& operator-=(const QuiverElement& y) {
    check_compatible(y);
    for (const auto& [p, k] : y.terms_) add_term(p, -k);
    return *this;
  }
  friend QuiverElement operator+(QuiverElement x, const QuiverElement& y) { return x += y; }
  friend QuiverElement operator-(QuiverElement x, const QuiverElement& y) { return x -= y; }
  QuiverElement operator-() const { return scale(-field_.one()); }

  QuiverElement scale(const Scalar& k) const {
    QuiverElement out(graph_, field_);
    if (lpa::is_zero(k)) return out;
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, c * k);
    return out;
  }

  friend QuiverElement operator*(const QuiverElement& x, const QuiverElement& y) {
    x.check_compatible(y);
    QuiverElement out(x.graph_, x.field_);
    for (const auto& [p, a] : x.terms_) {
      for (const auto& [q, b] : y.terms_) {
        if (auto pq = p.compose(q)) out.add_term(*pq, a * b);
      }
    }
    return out;
  }

  /// x · p for a single path, skipping the scalar multiplication.
  QuiverElement times_path(const Path& q) const {
    QuiverElement out(graph_, field_);
    for (const auto& [p, a] : terms_) {
      if (auto pq = p.compose(q)) out.add_term(*pq, a);
    }
    return out;
  }

  /// p · x for a single path.
  QuiverElement path_times(const Path& p) const {
    QuiverElement out(graph_, field_);
    for (const auto& [q, a] : terms_) {
      if (auto pq = p.compose(q)) out.add_term(*pq, a);
    }
    return out;
  }

  /// Terms of length at most d.
  QuiverElement truncate(std::size_t d) const {
    QuiverElement out(graph_, field_);
    for (const auto& [p, k] : terms_) {
      if (p.length() <= d) out.terms_.emplace(p, k);
    }
    return out;
  }

  /// Maximum path length in the support; nullopt for 0.
  std::optional<std::size_t> degree() const {
    std::optional<std::size_t> d;
    for (const auto& [p, k] : terms_) d = std::max(d.value_or(0), p.length());
    return d;
  }

  friend bool operator==(const QuiverElement& x, const QuiverElement& y) {
    return same_graph(x.graph_, y.graph_) && x.field_ == y.field_ && x.terms_ == y.terms_;
  }

  void check_compatible(const QuiverElement& y) const {
    if (!same_graph(graph_, y.graph_)) throw InputError("quiver elements over different graphs");
    if (!(field_ == y.field_)) throw InputError("quiver elements over different fields");
  }

 private:
  GraphPtr graph_;
  F field_;
  Terms terms_;
};

template <Field F>
QuiverElement<F> q_add(const QuiverElement<F>& x, const QuiverElement<F>& y) {
  return x + y;
}
template <Field F>
QuiverElement<F> q_scale(const typename F::Scalar& k, const QuiverElement<F>& x) {
  return x.scale(k);
}
template <Field F>
QuiverElement<F> q_mul(const QuiverElement<F>& x, const QuiverElement<F>& y) {
  return x * y;
}
template <Field F>
QuiverElement<F> q_truncate(const QuiverElement<F>& x, std::size_t d) {
  return x.truncate(d);
}
template <Field F>
std::optional<std::size_t> q_degree(const QuiverElement<F>& x) {
  return x.degree();
}

}  // namespace lpa
