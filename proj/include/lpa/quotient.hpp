#pragma once

// Right ideals R of the quiver algebra KE and the quotient module KE/R.
//
// Membership is decided by prefix reduction. Generators are first split by
// range vertex (R is a right ideal, so g·w ∈ R) and then interreduced in the
// degree-lexicographic order until no leading path is a head of another. For
// right ideals the only overlaps between leading paths are head overlaps, so
// the interreduced set has the property that every element of R has a
// leading path with some generator's leading path as a head. Reducing any x
// therefore yields 0 exactly when x ∈ R, and the irreducible paths (those with
// no leading path as a head) form a head-closed basis of KE/R.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/linalg.hpp"
#include "lpa/quiver.hpp"

namespace lpa {

template <Field F>
class RightIdealPresentation {
 public:
  RightIdealPresentation(GraphPtr graph, F field, std::vector<QuiverElement<F>> generators)
      : graph_(std::move(graph)), field_(std::move(field)), generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (!same_graph(g.graph_ptr(), graph_)) throw InputError("generator over a different graph");
      if (!(g.field() == field_)) throw InputError("generator over a different field");
      if (g.is_zero()) throw InputError("generator is zero");
    }
  }

  const Digraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  const F& field() const { return field_; }
  const std::vector<QuiverElement<F>>& generators() const { return generators_; }

 private:
  GraphPtr graph_;
  F field_;
  std::vector<QuiverElement<F>> generators_;
};

/// Interreduced generators of a right ideal; decides membership exactly.
/// With tracking on, every interreduced generator remembers how it is built
/// from the presentation: g = Σ_i gen_i·cof_i.
template <Field F>
class PrefixReducer {
 public:
  using Scalar = typename F::Scalar;
  using Poly = std::map<Path, Scalar, DegLexLess>;
  /// Right cofactors keyed by presentation generator index.
  using Cofactors = std::map<std::size_t, QuiverElement<F>>;

  explicit PrefixReducer(const RightIdealPresentation<F>& R, bool track = false)
      : graph_(R.graph_ptr()), field_(R.field()), track_(track) {
    std::vector<Entry> work;
    for (std::size_t i = 0; i < R.generators().size(); ++i) {
      std::map<VertexId, Poly> by_range;
      for (const auto& [p, k] : R.generators()[i].terms()) by_range[p.range()].emplace(p, k);
      for (auto& [v, part] : by_range) {
        Entry e{std::move(part), {}};
        if (track_) e.cof.emplace(i, QuiverElement<F>::path(graph_, field_, Path::vertex(v)));
        work.push_back(std::move(e));
      }
    }
    interreduce(std::move(work));
  }

  bool tracking() const { return track_; }
  std::size_t size() const { return basis_.size(); }
  std::size_t max_leading_length() const { return max_len_; }

  /// The leading path that is a head of p, if any.
  const Path* divisor_of(const Path& p) const {
    if (basis_.empty()) return nullptr;
    const std::size_t top = std::min(max_len_, p.length());
    for (std::size_t i = 0; i <= top; ++i) {
      auto it = basis_.find(head(*graph_, p, i));
      if (it != basis_.end()) return &it->first;
    }
    return nullptr;
  }

  bool is_reducible(const Path& p) const { return divisor_of(p) != nullptr; }

  /// Remainder of x: a combination of irreducible paths with x - remainder ∈ R.
  /// When `cof` is given (tracking on) it receives x - remainder = Σ gen_i·cof_i.
  Poly reduce(Poly x, Cofactors* cof = nullptr) const {
    if (cof && !track_) throw InputError("cofactors requested from an untracked reducer");
    Poly out;
    while (!x.empty()) {
      auto top = std::prev(x.end());
      const Path p = top->first;
      const Scalar k = top->second;
      x.erase(top);
      const Path* lead = divisor_of(p);
      if (!lead) {
        out.emplace(p, k);
        continue;
      }
      const Path suffix = lead->strip_from(p);
      const Entry& g = basis_.at(*lead);
      for (const auto& [q, c] : g.poly) {
        if (q == *lead) continue;
        add(x, *q.compose(suffix), -(k * c));
      }
      if (cof) add_cofactors(*cof, g.cof, k, suffix);
    }
    return out;
  }

  Poly reduce(const QuiverElement<F>& x, Cofactors* cof = nullptr) const {
    return reduce(Poly(x.terms().begin(), x.terms().end()), cof);
  }

  bool contains(const QuiverElement<F>& x) const { return reduce(x).empty(); }

  /// Cofactors c_i with x = Σ gen_i·c_i, when x ∈ R. Requires tracking.
  std::optional<Cofactors> express(const QuiverElement<F>& x) const {
    Cofactors cof;
    if (!reduce(x, &cof).empty()) return std::nullopt;
    return cof;
  }

 private:
  struct Entry {
    Poly poly;
    Cofactors cof;
  };

  static void add(Poly& m, const Path& p, const Scalar& c) {
    if (lpa::is_zero(c)) return;
    auto [it, inserted] = m.try_emplace(p, c);
    if (!inserted) {
      it->second = it->second + c;
      if (lpa::is_zero(it->second)) m.erase(it);
    }
  }

  /// target += k · src · t (t omitted: no right factor)
  void add_cofactors(Cofactors& target, const Cofactors& src, const Scalar& k,
                     const std::optional<Path>& t = std::nullopt) const {
    for (const auto& [i, e] : src) {
      auto it = target.try_emplace(i, graph_, field_).first;
      it->second += (t ? e.times_path(*t) : e).scale(k);
      if (it->second.is_zero()) target.erase(it);
    }
  }

  void interreduce(std::vector<Entry> work) {
    // Insert one polynomial at a time: reduce it by the current basis; if it
    // survives, every basis element whose leading path has the new leading
    // path as a head goes back into the work list.
    while (!work.empty()) {
      Entry g = std::move(work.back());
      work.pop_back();
      Cofactors used;
      g.poly = reduce(std::move(g.poly), track_ ? &used : nullptr);
      if (g.poly.empty()) continue;
      add_cofactors(g.cof, used, -field_.one());
      const Scalar inv = field_.one() / std::prev(g.poly.end())->second;
      for (auto& [p, c] : g.poly) c = c * inv;
      for (auto& [i, e] : g.cof) e = e.scale(inv);
      const Path lead = std::prev(g.poly.end())->first;
      for (auto it = basis_.begin(); it != basis_.end();) {
        if (lead.is_prefix_of(it->first)) {
          work.push_back(std::move(it->second));
          it = basis_.erase(it);
        } else {
          ++it;
        }
      }
      basis_.emplace(lead, std::move(g));
      max_len_ = 0;
      for (const auto& [p, e] : basis_) max_len_ = std::max(max_len_, p.length());
    }
    // Tail-reduce so every generator is a leading path plus irreducible terms.
    for (auto& [lead, g] : basis_) {
      Poly rest = g.poly;
      rest.erase(lead);
      Cofactors used;
      Poly reduced = reduce(std::move(rest), track_ ? &used : nullptr);
      reduced.emplace(lead, field_.one());
      g.poly = std::move(reduced);
      add_cofactors(g.cof, used, -field_.one());
    }
  }

  GraphPtr graph_;
  F field_;
  bool track_;
  std::map<Path, Entry> basis_;
  std::size_t max_len_ = 0;
};

enum class TableStatus { finite_codim, exceeded_bound };

/// The right module KE/R: a coset basis of irreducible paths and the right
/// action of every edge as a matrix on it. Membership queries work for any
/// status; the action matrices are only filled when status is finite_codim.
template <Field F>
class QuotientTable {
 public:
  using Scalar = typename F::Scalar;
  using Vector = std::vector<Scalar>;

  static constexpr std::size_t default_bound = 32;

  QuotientTable(RightIdealPresentation<F> R, std::size_t bound = default_bound)
      : ideal_(std::move(R)), reducer_(ideal_), bound_(bound) {
    if (bound_ < 1) throw InputError("degree bound must be at least 1");
    build();
  }

  const RightIdealPresentation<F>& ideal() const { return ideal_; }
  const Digraph& graph() const { return ideal_.graph(); }
  const GraphPtr& graph_ptr() const { return ideal_.graph_ptr(); }
  const F& field() const { return ideal_.field(); }
  const PrefixReducer<F>& reducer() const { return reducer_; }
  TableStatus status() const { return status_; }
  bool is_finite() const { return status_ == TableStatus::finite_codim; }
  std::size_t bound() const { return bound_; }
  /// Set when the quotient is known to be infinite-dimensional, not merely
  /// larger than the bound.
  bool provably_infinite() const { return infinite_; }

  /// Coset representatives (irreducible paths), degree-lex ordered.
  const std::vector<Path>& basis() const { return basis_; }

  std::optional<std::size_t> codimension() const {
    if (!is_finite()) return std::nullopt;
    return basis_.size();
  }

  bool contains(const QuiverElement<F>& x) const { return reducer_.contains(x); }

  /// Coordinates of x + R in the coset basis. Requires a finite table.
  Vector coset(const QuiverElement<F>& x) const {
    require_finite();
    Vector out(basis_.size(), field().zero());
    for (const auto& [p, k] : reducer_.reduce(x)) out[position_.at(p)] = k;
    return out;
  }

  /// Image under the edge e of coset basis vector i (zero when s(e) ≠ r(path)).
  const Vector& action(EdgeId e, std::size_t i) const {
    require_finite();
    return action_.at(index(e)).at(i);
  }

  std::optional<std::size_t> position(const Path& p) const {
    auto it = position_.find(p);
    if (it == position_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void require_finite() const {
    if (!is_finite()) throw InputError("ideal is not finite-codimensional within the degree bound");
  }

  bool reaches_cycle(VertexId start) const {
    const Digraph& g = graph();
    std::vector<int> state(g.vertex_count(), 0);  // 0 new, 1 on stack, 2 done
    bool found = false;
    auto dfs = [&](auto&& self, VertexId v) -> void {
      state[index(v)] = 1;
      for (auto e : g.out_edges(v)) {
        const VertexId w = g.range(e);
        if (state[index(w)] == 1) found = true;
        if (state[index(w)] == 0) self(self, w);
        if (found) return;
      }
      state[index(v)] = 2;
    };
    dfs(dfs, start);
    return found;
  }

  void build() {
    const Digraph& g = graph();
    // Every extension of an irreducible path of length >= the longest leading
    // path is irreducible, so the quotient is infinite exactly when such a
    // path can be extended indefinitely.
    const std::size_t horizon = reducer_.max_leading_length();
    std::vector<Path> level;
    for (auto v : g.vertices()) {
      Path p = Path::vertex(v);
      if (!reducer_.is_reducible(p)) level.push_back(std::move(p));
    }
    std::vector<Path> found;
    for (std::size_t len = 0; !level.empty(); ++len) {
      if (len > bound_) {
        status_ = TableStatus::exceeded_bound;
        return;
      }
      if (len == horizon) {
        for (const auto& p : level) {
          if (reaches_cycle(p.range())) {
            infinite_ = true;
            status_ = TableStatus::exceeded_bound;
            return;
          }
        }
      }
      found.insert(found.end(), level.begin(), level.end());
      std::vector<Path> next;
      for (const auto& p : level) {
        for (auto e : g.out_edges(p.range())) {
          Path q = p.extend(g, e);
          if (!reducer_.is_reducible(q)) next.push_back(std::move(q));
        }
      }
      level = std::move(next);
    }
    basis_ = std::move(found);
    for (std::size_t i = 0; i < basis_.size(); ++i) position_.emplace(basis_[i], i);
    status_ = TableStatus::finite_codim;
    action_.assign(g.edge_count(), {});
    for (auto e : g.edges()) {
      auto& table = action_[index(e)];
      table.assign(basis_.size(), Vector(basis_.size(), field().zero()));
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].range() != g.source(e)) continue;
        auto image = QuiverElement<F>::path(graph_ptr(), field(), basis_[i].extend(g, e));
        table[i] = coset(image);
      }
    }
  }

  RightIdealPresentation<F> ideal_;
  PrefixReducer<F> reducer_;
  std::size_t bound_;
  TableStatus status_ = TableStatus::exceeded_bound;
  bool infinite_ = false;
  std::vector<Path> basis_;
  std::map<Path, std::size_t> position_;
  std::vector<std::vector<Vector>> action_;
};

template <Field F>
QuotientTable<F> build_quotient_table(RightIdealPresentation<F> R,
                                      std::size_t bound = QuotientTable<F>::default_bound) {
  return QuotientTable<F>(std::move(R), bound);
}

}  // namespace lpa
