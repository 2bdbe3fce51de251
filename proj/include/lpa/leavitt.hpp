#pragma once

// Leavitt path algebras L_K(E) and Cohn path algebras C_K(E) of a finite graph.
//
// Elements are finite combinations of monomials α·β* (α real, β ghost, with
// r(α) = r(β)). Multiplication applies CK1 (a*b = δ_ab r(a)). In Leavitt mode
// the normal form applies CK2 through the rewrite
//
//   α'e · (β'e)*  ->  α'·β'* - Σ_{f ∈ s^{-1}(v), f ≠ e} α'f · (β'f)*
//
// where e is the designated edge of the regular vertex v = s(e). Normal-form
// monomials never have both α and β ending in a designated edge.

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lpa/quiver.hpp"

namespace lpa {

enum class Mode { leavitt, cohn };

/// Graph, reduction mode and the designated edge of every regular vertex
/// (the lexicographically greatest edge it emits).
class ReductionConfig {
 public:
  explicit ReductionConfig(GraphPtr graph, Mode mode = Mode::leavitt)
      : graph_(std::move(graph)), mode_(mode), designated_(graph_->vertex_count()) {
    for (auto v : graph_->vertices()) {
      auto out = graph_->out_edges(v);
      if (!out.empty()) designated_[index(v)] = out.back();
    }
  }

  /// Uses an explicit designated edge per regular vertex.
  ReductionConfig(GraphPtr graph, Mode mode, std::vector<std::optional<EdgeId>> designated)
      : graph_(std::move(graph)), mode_(mode), designated_(std::move(designated)) {
    if (designated_.size() != graph_->vertex_count()) throw InputError("designated-edge map has wrong size");
    for (auto v : graph_->vertices()) {
      const auto& d = designated_[index(v)];
      if (graph_->is_sink(v) != !d.has_value()) throw InputError("designated edge missing or set on a sink");
      if (d && graph_->source(*d) != v) throw InputError("designated edge does not start at its vertex");
    }
  }

  const Digraph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  Mode mode() const { return mode_; }
  std::optional<EdgeId> designated(VertexId v) const { return designated_.at(index(v)); }

  bool is_designated(EdgeId e) const { return designated_[index(graph_->source(e))] == e; }

  friend bool operator==(const ReductionConfig& a, const ReductionConfig& b) {
    return same_graph(a.graph_, b.graph_) && a.mode_ == b.mode_ && a.designated_ == b.designated_;
  }

 private:
  GraphPtr graph_;
  Mode mode_;
  std::vector<std::optional<EdgeId>> designated_;
};

using ConfigPtr = std::shared_ptr<const ReductionConfig>;

inline ConfigPtr make_config(GraphPtr graph, Mode mode = Mode::leavitt) {
  return std::make_shared<const ReductionConfig>(std::move(graph), mode);
}

/// α·β* with r(α) = r(β).
struct LeavittMonomial {
  Path real;
  Path ghost;

  static std::optional<LeavittMonomial> make(Path real, Path ghost) {
    if (real.range() != ghost.range()) return std::nullopt;
    return LeavittMonomial{std::move(real), std::move(ghost)};
  }

  static LeavittMonomial vertex(VertexId v) { return {Path::vertex(v), Path::vertex(v)}; }

  std::size_t total_length() const { return real.length() + ghost.length(); }
  long degree() const { return static_cast<long>(real.length()) - static_cast<long>(ghost.length()); }
  bool is_real() const { return ghost.is_vertex(); }

  /// Whether α and β both end in the designated edge of a regular vertex.
  bool has_junction(const ReductionConfig& cfg) const {
    return !real.is_vertex() && !ghost.is_vertex() && real.last_edge() == ghost.last_edge() &&
           cfg.is_designated(real.last_edge());
  }

  friend auto operator<=>(const LeavittMonomial&, const LeavittMonomial&) = default;
  friend bool operator==(const LeavittMonomial&, const LeavittMonomial&) = default;
};

/// (αβ*)(γδ*) under CK1: γ = βγ' gives (αγ')δ*; β = γβ' gives α(δβ')*; else 0.
inline std::optional<LeavittMonomial> monomial_product(const LeavittMonomial& x, const LeavittMonomial& y) {
  if (x.ghost.is_prefix_of(y.real)) {
    const Path rest = x.ghost.strip_from(y.real);
    return LeavittMonomial{*x.real.compose(rest), y.ghost};
  }
  if (y.real.is_prefix_of(x.ghost)) {
    const Path rest = y.real.strip_from(x.ghost);
    return LeavittMonomial{x.real, *y.ghost.compose(rest)};
  }
  return std::nullopt;
}

template <Field F>
class LeavittElement {
 public:
  using Scalar = typename F::Scalar;
  using Terms = std::map<LeavittMonomial, Scalar>;

  LeavittElement(ConfigPtr cfg, F field) : cfg_(std::move(cfg)), field_(std::move(field)) {}

  static LeavittElement monomial(ConfigPtr cfg, F field, LeavittMonomial m) {
    LeavittElement x(std::move(cfg), std::move(field));
    x.add_term(m, x.field_.one());
    x.normal_ = !m.has_junction(*x.cfg_) || x.cfg_->mode() == Mode::cohn;
    return x;
  }
  static LeavittElement one(ConfigPtr cfg, F field) {
    LeavittElement x(cfg, field);
    for (auto v : cfg->graph().vertices()) x.add_term(LeavittMonomial::vertex(v), x.field_.one());
    return x;
  }
  static LeavittElement vertex(ConfigPtr cfg, F field, VertexId v) {
    return monomial(std::move(cfg), std::move(field), LeavittMonomial::vertex(v));
  }
  static LeavittElement real_path(ConfigPtr cfg, F field, const Path& p) {
    return monomial(std::move(cfg), std::move(field), {p, Path::vertex(p.range())});
  }
  static LeavittElement ghost_path(ConfigPtr cfg, F field, const Path& p) {
    return monomial(std::move(cfg), std::move(field), {Path::vertex(p.range()), p});
  }

  const ReductionConfig& config() const { return *cfg_; }
  const ConfigPtr& config_ptr() const { return cfg_; }
  const Digraph& graph() const { return cfg_->graph(); }
  const F& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_normal() const { return normal_ || cfg_->mode() == Mode::cohn; }

  Scalar coefficient(const LeavittMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const LeavittMonomial& m, const Scalar& k) {
    if (lpa::is_zero(k)) return;
    if (m.real.range() != m.ghost.range()) throw InputError("monomial with r(real) != r(ghost)");
    if (normal_ && cfg_->mode() == Mode::leavitt && m.has_junction(*cfg_)) normal_ = false;
    auto [it, inserted] = terms_.try_emplace(m, k);
    if (!inserted) {
      it->second = it->second + k;
      if (lpa::is_zero(it->second)) terms_.erase(it);
    }
  }

  LeavittElement& operator+=(const LeavittElement& y) {
    check_compatible(y);
    for (const auto& [m, k] : y.terms_) add_term(m, k);
    return *this;
  }
  LeavittElement& operator-=(const LeavittElement& y) {
    check_compatible(y);
    for (const auto& [m, k] : y.terms_) add_term(m, -k);
    return *this;
  }
  friend LeavittElement operator+(LeavittElement x, const LeavittElement& y) { return x += y; }
  friend LeavittElement operator-(LeavittElement x, const LeavittElement& y) { return x -= y; }
  LeavittElement operator-() const { return scale(-field_.one()); }

  LeavittElement scale(const Scalar& k) const {
    LeavittElement out(cfg_, field_);
    if (lpa::is_zero(k)) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
    out.normal_ = normal_;
    return out;
  }

  /// Bilinear CK1 product. The result is not normalised.
  friend LeavittElement operator*(const LeavittElement& x, const LeavittElement& y) {
    x.check_compatible(y);
    LeavittElement out(x.cfg_, x.field_);
    for (const auto& [m, a] : x.terms_) {
      for (const auto& [n, b] : y.terms_) {
        if (auto mn = monomial_product(m, n)) out.add_term(*mn, a * b);
      }
    }
    return out;
  }

  friend bool operator==(const LeavittElement& x, const LeavittElement& y) {
    return *x.cfg_ == *y.cfg_ && x.field_ == y.field_ && x.terms_ == y.terms_;
  }

  void check_compatible(const LeavittElement& y) const {
    if (!(cfg_ == y.cfg_ || *cfg_ == *y.cfg_)) throw InputError("Leavitt elements over different configurations");
    if (!(field_ == y.field_)) throw InputError("Leavitt elements over different fields");
  }

  void mark_normal() { normal_ = true; }

 private:
  ConfigPtr cfg_;
  F field_;
  Terms terms_;
  bool normal_ = true;
};

template <Field F>
LeavittElement<F> embed_quiver(const QuiverElement<F>& x, const ConfigPtr& cfg) {
  if (!same_graph(x.graph_ptr(), cfg->graph_ptr())) throw InputError("quiver element over a different graph");
  LeavittElement<F> out(cfg, x.field());
  for (const auto& [p, k] : x.terms()) out.add_term({p, Path::vertex(p.range())}, k);
  return out;
}

template <Field F>
LeavittElement<F> l_mul(const LeavittElement<F>& x, const LeavittElement<F>& y) {
  return x * y;
}

namespace detail {

/// Applies one CK2 rewrite to a monomial with a junction.
template <class Emit>
void rewrite_junction(const ReductionConfig& cfg, const LeavittMonomial& m, Emit&& emit) {
  const Digraph& g = cfg.graph();
  const EdgeId e = m.real.last_edge();
  const VertexId v = g.source(e);
  const Path real_head = head(g, m.real, m.real.length() - 1);
  const Path ghost_head = head(g, m.ghost, m.ghost.length() - 1);
  emit(LeavittMonomial{real_head, ghost_head}, true);
  for (EdgeId f : g.out_edges(v)) {
    if (f == e) continue;
    emit(LeavittMonomial{real_head.extend(g, f), ghost_head.extend(g, f)}, false);
  }
}

template <Field F, class Pick>
LeavittElement<F> normal_form_impl(const LeavittElement<F>& x, Pick&& pick) {
  if (x.is_normal()) return x;
  const ReductionConfig& cfg = x.config();
  using Scalar = typename F::Scalar;
  LeavittElement<F> out(x.config_ptr(), x.field());
  std::vector<std::pair<LeavittMonomial, Scalar>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    const std::size_t i = pick(work.size());
    std::swap(work[i], work.back());
    auto [m, k] = std::move(work.back());
    work.pop_back();
    if (!m.has_junction(cfg)) {
      out.add_term(m, k);
      continue;
    }
    rewrite_junction(cfg, m, [&](LeavittMonomial n, bool positive) {
      work.emplace_back(std::move(n), positive ? k : -k);
    });
  }
  out.mark_normal();
  return out;
}

}  // namespace detail

/// Exhaustive CK2 reduction; identity in Cohn mode.
template <Field F>
LeavittElement<F> normal_form(const LeavittElement<F>& x) {
  return detail::normal_form_impl(x, [](std::size_t n) { return n - 1; });
}

/// Same reduction, processing rewrite sites in a random order.
template <Field F, class URBG>
LeavittElement<F> normal_form_shuffled(const LeavittElement<F>& x, URBG& rng) {
  return detail::normal_form_impl(x, [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  });
}

/// nf(x·y).
template <Field F>
LeavittElement<F> nf_mul(const LeavittElement<F>& x, const LeavittElement<F>& y) {
  return normal_form(x * y);
}

/// Swaps real and ghost parts: (αβ*)* = βα*.
template <Field F>
LeavittElement<F> involution(const LeavittElement<F>& x) {
  LeavittElement<F> out(x.config_ptr(), x.field());
  for (const auto& [m, k] : x.terms()) out.add_term({m.ghost, m.real}, k);
  return out;
}

/// Maximum ghost length over the support; 0 for real elements and for 0.
template <Field F>
std::size_t ghost_degree(const LeavittElement<F>& x) {
  std::size_t d = 0;
  for (const auto& [m, k] : x.terms()) d = std::max(d, m.ghost.length());
  return d;
}

/// Monomials with |α| - |β| = d.
template <Field F>
LeavittElement<F> graded_component(const LeavittElement<F>& x, long d) {
  LeavittElement<F> out(x.config_ptr(), x.field());
  for (const auto& [m, k] : x.terms()) {
    if (m.degree() == d) out.add_term(m, k);
  }
  return out;
}

template <Field F>
bool is_ghost_free(const LeavittElement<F>& x) {
  return std::all_of(x.terms().begin(), x.terms().end(), [](const auto& t) { return t.first.is_real(); });
}

/// The real part of a ghost-free element as a quiver element.
template <Field F>
QuiverElement<F> to_quiver(const LeavittElement<F>& x) {
  QuiverElement<F> out(x.config().graph_ptr(), x.field());
  for (const auto& [m, k] : x.terms()) {
    if (!m.is_real()) throw InputError("element has ghost terms; not in the quiver algebra");
    out.add_term(m.real, k);
  }
  return out;
}

struct BasisReport {
  std::vector<LeavittMonomial> monomials;
  /// Set when the graph is acyclic; the enumeration then saturates.
  std::optional<std::size_t> dimension;
  /// Whether the enumeration at this bound already contains the full basis.
  bool saturated = false;
};

namespace detail {

inline std::vector<LeavittMonomial> enumerate_monomials(const ReductionConfig& cfg, std::size_t bound) {
  const Digraph& g = cfg.graph();
  std::vector<LeavittMonomial> out;
  std::vector<std::vector<Path>> by_length;
  for (std::size_t len = 0; len <= bound; ++len) {
    by_length.push_back(enumerate_paths(g, len));
    if (by_length.back().empty()) break;
  }
  for (std::size_t total = 0; total <= bound; ++total) {
    for (std::size_t a = 0; a <= total; ++a) {
      const std::size_t b = total - a;
      if (a >= by_length.size() || b >= by_length.size()) continue;
      for (const auto& alpha : by_length[a]) {
        for (const auto& beta : by_length[b]) {
          if (alpha.range() != beta.range()) continue;
          LeavittMonomial m{alpha, beta};
          if (cfg.mode() == Mode::leavitt && m.has_junction(cfg)) continue;
          out.push_back(std::move(m));
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Normal-form basis monomials with |α| + |β| <= bound, ordered by total
/// length, then (α, β). For acyclic graphs the report also carries the total
/// dimension, reached once bound >= 2·(longest path length).
inline BasisReport basis_enumerate(const ReductionConfig& cfg, std::size_t bound) {
  BasisReport report;
  report.monomials = detail::enumerate_monomials(cfg, bound);
  if (auto longest = longest_path_length(cfg.graph())) {
    report.saturated = bound >= 2 * *longest;
    report.dimension =
        report.saturated ? report.monomials.size() : detail::enumerate_monomials(cfg, 2 * *longest).size();
  }
  return report;
}

}  // namespace lpa
