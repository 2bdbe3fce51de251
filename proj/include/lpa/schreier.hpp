#pragma once

// Strong Schreier bases of right ideals R of KE, the projection π onto the
// complement V spanned by the basis, and the free generating set
//
//   u_{μ,a} = μa - π(μa)      (μ ∈ B, s(a) = r(μ))
//   u_v     = v - π(v)        (v a vertex outside the basis)
//
// whose nonzero members generate R freely, u·KE ≅ r(a)·KE (or v·KE).

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lpa/linalg.hpp"
#include "lpa/quotient.hpp"

namespace lpa {

template <Field F>
using TablePtr = std::shared_ptr<const QuotientTable<F>>;

template <Field F>
TablePtr<F> share_table(QuotientTable<F> t) {
  return std::make_shared<const QuotientTable<F>>(std::move(t));
}

/// Leveled head-closed set of paths, linearly independent modulo R. Level 0
/// holds vertices; level n+1 is a greedy maximal subset of {b·a : b in level n}
/// independent modulo V_n + R, scanned in path order.
template <Field F>
class SchreierBasis {
 public:
  using Scalar = typename F::Scalar;

  /// With no level cap the ideal must have finite codimension.
  explicit SchreierBasis(TablePtr<F> table, std::optional<std::size_t> level_cap = std::nullopt)
      : table_(std::move(table)), echelon_(table_->field()) {
    if (!table_->is_finite() && !level_cap) {
      throw InputError(table_->provably_infinite()
                           ? "ideal has infinite codimension; a level cap is required"
                           : "codimension exceeds the degree bound; a level cap is required");
    }
    build(level_cap);
  }

  const QuotientTable<F>& table() const { return *table_; }
  const TablePtr<F>& table_ptr() const { return table_; }
  const Digraph& graph() const { return table_->graph(); }
  const F& field() const { return table_->field(); }

  const std::vector<std::vector<Path>>& levels() const { return levels_; }
  /// All basis paths, level by level.
  const std::vector<Path>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }
  /// False for a capped run that stopped before the construction ended.
  bool complete() const { return complete_; }

  bool contains(const Path& p) const { return index_.count(p) != 0; }

  /// Coordinates of π(x) on paths(). Throws when x + R is outside the span
  /// (only possible for incomplete bases).
  std::map<std::size_t, Scalar> coordinates(const QuiverElement<F>& x) const {
    auto combo = echelon_.solve(table_->reducer().reduce(x));
    if (!combo) throw InputError("element is not covered by the truncated Schreier basis");
    return *combo;
  }

  /// π(x): the component of x in V along V ⊕ R.
  QuiverElement<F> project(const QuiverElement<F>& x) const {
    QuiverElement<F> out(table_->graph_ptr(), field());
    for (const auto& [i, k] : coordinates(x)) out.add_term(paths_[i], k);
    return out;
  }

 private:
  using Image = typename PrefixReducer<F>::Poly;

  bool try_add(const Path& p) {
    Image img = table_->reducer().reduce(QuiverElement<F>::path(table_->graph_ptr(), field(), p));
    if (!echelon_.insert(std::move(img), paths_.size())) return false;
    index_.emplace(p, paths_.size());
    paths_.push_back(p);
    return true;
  }

  void build(std::optional<std::size_t> level_cap) {
    const Digraph& g = graph();
    std::vector<Path> level;
    for (auto v : g.vertices()) {
      if (try_add(Path::vertex(v))) level.push_back(Path::vertex(v));
    }
    complete_ = true;
    while (!level.empty()) {
      levels_.push_back(level);
      if (level_cap && levels_.size() > *level_cap) {
        complete_ = false;
        break;
      }
      std::vector<Path> candidates;
      for (const auto& b : level) {
        for (auto e : g.out_edges(b.range())) candidates.push_back(b.extend(g, e));
      }
      std::sort(candidates.begin(), candidates.end());
      std::vector<Path> next;
      for (const auto& c : candidates) {
        if (try_add(c)) next.push_back(c);
      }
      level = std::move(next);
    }
    if (complete_ && table_->is_finite() && paths_.size() != *table_->codimension()) {
      throw InvariantError("Schreier basis size differs from the codimension");
    }
  }

  TablePtr<F> table_;
  SparseEchelon<F, Path, DegLexLess> echelon_;
  std::vector<std::vector<Path>> levels_;
  std::vector<Path> paths_;
  std::map<Path, std::size_t> index_;
  bool complete_ = false;
};

template <Field F>
SchreierBasis<F> schreier_basis(TablePtr<F> table, std::optional<std::size_t> level_cap = std::nullopt) {
  return SchreierBasis<F>(std::move(table), level_cap);
}

template <Field F>
QuiverElement<F> pi_project(const QuiverElement<F>& x, const SchreierBasis<F>& B) {
  return B.project(x);
}

template <Field F>
struct FreeGenerator {
  Path mu;
  /// Unset for a vertex generator v - π(v).
  std::optional<EdgeId> edge;
  QuiverElement<F> u;
  /// r(a) for u_{μ,a}; v for u_v. u·label = u and u·w = 0 for other vertices.
  VertexId label;
};

template <Field F>
class FreeGeneratorSet {
 public:
  explicit FreeGeneratorSet(const SchreierBasis<F>& B) : basis_(&B) {
    if (!B.complete()) throw InputError("free generators need a complete Schreier basis");
    const Digraph& g = B.graph();
    const auto& gp = B.table().graph_ptr();
    for (auto v : g.vertices()) {
      const Path p = Path::vertex(v);
      if (B.contains(p)) continue;
      auto x = QuiverElement<F>::path(gp, B.field(), p);
      auto u = x - B.project(x);
      if (!u.is_zero()) add({p, std::nullopt, std::move(u), v});
    }
    for (const auto& mu : B.paths()) {
      for (auto e : g.out_edges(mu.range())) {
        const Path mua = mu.extend(g, e);
        if (B.contains(mua)) continue;
        auto x = QuiverElement<F>::path(gp, B.field(), mua);
        auto u = x - B.project(x);
        if (!u.is_zero()) add({mu, e, std::move(u), g.range(e)});
      }
    }
  }

  const std::vector<FreeGenerator<F>>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const SchreierBasis<F>& basis() const { return *basis_; }

  std::optional<std::size_t> find(const Path& mu, EdgeId e) const {
    auto it = by_edge_.find({mu, e});
    if (it == by_edge_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_vertex(VertexId v) const {
    auto it = by_vertex_.find(v);
    if (it == by_vertex_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void add(FreeGenerator<F> gen) {
    if (!basis_->table().contains(gen.u)) throw InvariantError("free generator is not in the ideal");
    if (gen.edge) {
      by_edge_.emplace(std::make_pair(gen.mu, *gen.edge), gens_.size());
    } else {
      by_vertex_.emplace(gen.label, gens_.size());
    }
    gens_.push_back(std::move(gen));
  }

  const SchreierBasis<F>* basis_;
  std::vector<FreeGenerator<F>> gens_;
  std::map<std::pair<Path, EdgeId>, std::size_t> by_edge_;
  std::map<VertexId, std::size_t> by_vertex_;
};

/// The basis must outlive the returned set.
template <Field F>
FreeGeneratorSet<F> free_generators(const SchreierBasis<F>& B) {
  return FreeGeneratorSet<F>(B);
}

/// Coefficients c_u (keyed by generator index) with x = Σ u·c_u.
template <Field F>
using FreeExpansion = std::map<std::size_t, QuiverElement<F>>;

template <Field F>
QuiverElement<F> recompose(const FreeGeneratorSet<F>& gens, const FreeExpansion<F>& c) {
  const auto& B = gens.basis();
  QuiverElement<F> out(B.table().graph_ptr(), B.field());
  for (const auto& [i, coeff] : c) out += gens.generators().at(i).u * coeff;
  return out;
}

/// Expresses x ∈ R in the free generators by telescoping each path β = c_1…c_m:
///
///   β - π(β) = (v - π(v))·β + Σ_j [π(h_j)c_{j+1} - π(h_{j+1})]·t_{j+1}
///
/// and writing each bracket as Σ_γ k_γ u_{γ,c_{j+1}} where π(h_j) = Σ k_γ γ.
template <Field F>
FreeExpansion<F> express_in_free_basis(const QuiverElement<F>& x, const FreeGeneratorSet<F>& gens) {
  const auto& B = gens.basis();
  const Digraph& g = B.graph();
  const auto& gp = B.table().graph_ptr();
  if (!B.table().contains(x)) throw InputError("element is not in the ideal");

  FreeExpansion<F> out;
  auto add = [&](std::size_t i, const Path& p, const typename F::Scalar& k) {
    auto it = out.try_emplace(i, gp, B.field()).first;
    it->second.add_term(p, k);
    if (it->second.is_zero()) out.erase(it);
  };

  for (const auto& [beta, k] : x.terms()) {
    const VertexId v = beta.source();
    if (auto i = gens.find_vertex(v)) add(*i, beta, k);
    for (std::size_t j = 0; j < beta.length(); ++j) {
      const EdgeId c = beta.edges()[j];
      const Path t = tail(g, beta, j + 1);
      for (const auto& [gi, kg] : B.coordinates(QuiverElement<F>::path(gp, B.field(), head(g, beta, j)))) {
        const Path& gamma = B.paths()[gi];
        if (gamma.range() != g.source(c)) continue;
        auto u = gens.find(gamma, c);
        if (!u) continue;  // γc lies in the basis, so the term vanishes
        add(*u, t, k * kg);
      }
    }
  }
  if (!(recompose(gens, out) == x)) throw InvariantError("free-basis expansion does not recompose");
  return out;
}

template <Field F>
std::size_t rank(const FreeGeneratorSet<F>& gens) {
  return gens.size();
}

/// For the one-vertex n-loop graph: rank = codim·(n-1) + 1. Unset on other graphs.
template <Field F>
std::optional<bool> schreier_lewin_check(const FreeGeneratorSet<F>& gens) {
  const auto& B = gens.basis();
  const Digraph& g = B.graph();
  if (!g.is_rose()) return std::nullopt;
  const std::size_t n = g.edge_count();
  return gens.size() == B.size() * (n - 1) + 1;
}

/// Generators of I^l for I the right ideal of arrows and sinks: paths of
/// length l and shorter paths ending in a sink.
inline std::vector<Path> adic_generators(const Digraph& g, std::size_t l) {
  std::vector<Path> out;
  for (const auto& p : enumerate_paths_upto(g, l)) {
    if (p.length() == l || g.is_sink(p.range())) out.push_back(p);
  }
  return out;
}

/// Least l <= l_max with I^l ⊆ R.
template <Field F>
std::optional<std::size_t> is_open_adic(const QuotientTable<F>& table, std::size_t l_max) {
  for (std::size_t l = 0; l <= l_max; ++l) {
    bool all = true;
    for (const auto& p : adic_generators(table.graph(), l)) {
      if (!table.contains(QuiverElement<F>::path(table.graph_ptr(), table.field(), p))) {
        all = false;
        break;
      }
    }
    if (all) return l;
  }
  return std::nullopt;
}

/// R is two-sided iff w·g and e·g lie in R for every vertex w, edge e and
/// generator g of the presentation.
template <Field F>
bool is_two_sided(const QuotientTable<F>& table) {
  const Digraph& g = table.graph();
  for (const auto& gen : table.ideal().generators()) {
    for (auto v : g.vertices()) {
      if (!table.contains(gen.path_times(Path::vertex(v)))) return false;
    }
    for (auto e : g.edges()) {
      if (!table.contains(gen.path_times(Path::edge(g, e)))) return false;
    }
  }
  return true;
}

}  // namespace lpa
