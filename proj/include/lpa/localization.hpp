#pragma once

// Witnesses for L_K(E) as a localization of KE: flat-epimorphism
// certificates built from CK2 vertex expansions, domains of definition,
// denseness (shrinking into KE), dual systems of arrow-ideal bases, codim-1
// presentations, scalar extraction in L(1,n) and Gabriel-membership search.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpa/leavitt.hpp"
#include "lpa/linalg.hpp"
#include "lpa/schreier.hpp"

namespace lpa {

namespace detail {

template <Field F>
void require_leavitt(const LeavittElement<F>& x) {
  if (x.config().mode() != Mode::leavitt) throw InputError("operation needs Leavitt mode");
}

template <Field F>
LeavittElement<F> times_path(const LeavittElement<F>& r, const Path& p) {
  return normal_form(r * LeavittElement<F>::real_path(r.config_ptr(), r.field(), p));
}

/// Vertices lying on a closed path.
inline std::vector<bool> cyclic_vertices(const Digraph& g) {
  std::vector<bool> out(g.vertex_count(), false);
  for (auto v : g.vertices()) {
    // v is cyclic when v is reachable from one of its successors.
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack;
    for (auto e : g.out_edges(v)) stack.push_back(g.range(e));
    while (!stack.empty() && !out[index(v)]) {
      auto w = stack.back();
      stack.pop_back();
      if (w == v) out[index(v)] = true;
      if (seen[index(w)]) continue;
      seen[index(w)] = true;
      for (auto e : g.out_edges(w)) stack.push_back(g.range(e));
    }
  }
  return out;
}

inline std::vector<bool> reachable_from(const Digraph& g, VertexId v) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> stack{v};
  seen[index(v)] = true;
  while (!stack.empty()) {
    auto w = stack.back();
    stack.pop_back();
    for (auto e : g.out_edges(w)) {
      if (!seen[index(g.range(e))]) {
        seen[index(g.range(e))] = true;
        stack.push_back(g.range(e));
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Sinks u reachable from v such that no path from v to u passes through a
/// closed path (equivalently: no vertex on a cycle lies between v and u).
inline std::vector<VertexId> exceptional_sinks(const Digraph& g, VertexId v) {
  const auto cyclic = detail::cyclic_vertices(g);
  const auto from_v = detail::reachable_from(g, v);
  std::vector<VertexId> out;
  for (auto u : g.vertices()) {
    if (!g.is_sink(u) || !from_v[index(u)]) continue;
    bool clean = true;
    for (auto w : g.vertices()) {
      if (cyclic[index(w)] && from_v[index(w)] && detail::reachable_from(g, w)[index(u)]) clean = false;
    }
    if (clean) out.push_back(u);
  }
  return out;
}

/// Longest path from v into exceptional_sinks(g, v); such paths are cycle-free.
inline std::size_t exceptional_bound(const Digraph& g, VertexId v) {
  const auto sinks = exceptional_sinks(g, v);
  if (sinks.empty()) return 0;
  const auto cyclic = detail::cyclic_vertices(g);
  std::vector<bool> target(g.vertex_count(), false);
  for (auto u : sinks) target[index(u)] = true;
  // Longest path over the acyclic part that can still reach a target.
  std::vector<std::optional<long>> memo(g.vertex_count());
  auto depth = [&](auto&& self, VertexId w) -> long {
    if (memo[index(w)]) return *memo[index(w)];
    long best = target[index(w)] ? 0 : -1;
    if (!cyclic[index(w)]) {
      for (auto e : g.out_edges(w)) {
        const long d = self(self, g.range(e));
        if (d >= 0) best = std::max(best, d + 1);
      }
    }
    memo[index(w)] = best;
    return best;
  };
  return static_cast<std::size_t>(std::max(0L, depth(depth, v)));
}

template <Field F>
struct ExpansionReport {
  VertexId vertex;
  /// Pairs (μ, ν) with v = Σ μ ν*; here always ν = μ.
  std::vector<std::pair<Path, Path>> pairs;
  std::vector<VertexId> exceptional;
  std::size_t bound = 0;
};

/// Expands v = Σ μμ* by CK2 until every r·μ is ghost-free or μ ends in a sink.
template <Field F>
ExpansionReport<F> vertex_expansion(const LeavittElement<F>& r_in, VertexId v) {
  detail::require_leavitt(r_in);
  const Digraph& g = r_in.graph();
  if (index(v) >= g.vertex_count()) throw InputError("vertex out of range");
  const LeavittElement<F> r = normal_form(r_in);
  const std::size_t limit = ghost_degree(r);

  ExpansionReport<F> report{v, {}, exceptional_sinks(g, v), exceptional_bound(g, v)};
  std::vector<Path> frontier{Path::vertex(v)};
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& mu : frontier) {
      if (g.is_sink(mu.range()) || is_ghost_free(detail::times_path(r, mu))) {
        report.pairs.emplace_back(mu, mu);
        continue;
      }
      if (mu.length() >= limit) {
        throw InvariantError("vertex expansion passed the ghost degree of its subject");
      }
      for (auto e : g.out_edges(mu.range())) next.push_back(mu.extend(g, e));
    }
    frontier = std::move(next);
  }
  std::sort(report.pairs.begin(), report.pairs.end());
  return report;
}

template <Field F>
struct Certificate {
  LeavittElement<F> subject;
  std::vector<std::pair<Path, LeavittElement<F>>> pairs;
  bool ghost_free = false;  // every r·s_i lies in KE
  bool sums_to_one = false;  // Σ s_i b_i = 1
  bool valid() const { return ghost_free && sums_to_one; }
};

/// Re-checks both certificate conditions through the kernel.
template <Field F>
void verify_certificate(Certificate<F>& c) {
  const auto& cfg = c.subject.config_ptr();
  const auto& field = c.subject.field();
  c.ghost_free = true;
  LeavittElement<F> sum(cfg, field);
  for (const auto& [s, b] : c.pairs) {
    if (!is_ghost_free(detail::times_path(c.subject, s))) c.ghost_free = false;
    sum += LeavittElement<F>::real_path(cfg, field, s) * b;
  }
  c.sums_to_one = normal_form(sum - LeavittElement<F>::one(cfg, field)).is_zero();
}

/// Pairs (s_i, b_i) with r·s_i ∈ KE and Σ s_i b_i = 1. On the one-vertex
/// n-loop graph the s_i are all paths of length ghost_degree(r).
template <Field F>
Certificate<F> flat_certificate(const LeavittElement<F>& r_in) {
  detail::require_leavitt(r_in);
  const LeavittElement<F> r = normal_form(r_in);
  const Digraph& g = r.graph();
  Certificate<F> c{r, {}};
  auto push = [&](const Path& mu) {
    c.pairs.emplace_back(mu, LeavittElement<F>::ghost_path(r.config_ptr(), r.field(), mu));
  };
  if (g.is_rose()) {
    for (const auto& mu : enumerate_paths(g, ghost_degree(r))) push(mu);
  } else {
    for (auto v : g.vertices()) {
      for (const auto& [mu, nu] : vertex_expansion(r, v).pairs) push(mu);
    }
  }
  verify_certificate(c);
  if (!c.valid()) throw InvariantError("flat certificate failed re-verification");
  return c;
}

/// Least l with q·I^l ⊆ KE.
template <Field F>
std::size_t dom_degree(const LeavittElement<F>& q_in) {
  detail::require_leavitt(q_in);
  const LeavittElement<F> q = normal_form(q_in);
  const std::size_t top = ghost_degree(q);
  for (std::size_t l = 0;; ++l) {
    bool ok = true;
    for (const auto& p : adic_generators(q.graph(), l)) {
      if (!is_ghost_free(detail::times_path(q, p))) {
        ok = false;
        break;
      }
    }
    if (ok) return l;
    if (l > top) throw InvariantError("domain degree exceeds the ghost degree");
  }
}

/// Whether x lies in the domain of definition of q (q·x ∈ KE).
template <Field F>
bool dom_contains(const LeavittElement<F>& q, const QuiverElement<F>& x) {
  return is_ghost_free(normal_form(q * embed_quiver(x, q.config_ptr())));
}

/// A path a with 0 ≠ r·a ∈ KE, by induction on the ghost degree: an edge
/// that starts no ghost path works outright when r has real terms; otherwise
/// multiply by the first edge keeping r nonzero, which shortens every ghost.
template <Field F>
Path shrink_to_quiver(const LeavittElement<F>& r_in) {
  detail::require_leavitt(r_in);
  const LeavittElement<F> r = normal_form(r_in);
  if (r.is_zero()) throw InputError("cannot shrink the zero element");
  const Digraph& g = r.graph();

  std::optional<Path> start;
  for (auto v : g.vertices()) {
    const auto rv = detail::times_path(r, Path::vertex(v));
    if (rv.is_zero()) continue;
    if (is_ghost_free(rv)) return Path::vertex(v);
    if (!start) start = Path::vertex(v);
  }
  Path p = *start;
  LeavittElement<F> s = detail::times_path(r, p);
  for (std::size_t guard = 0;; ++guard) {
    if (is_ghost_free(s)) return p;
    if (guard > ghost_degree(r)) throw InvariantError("shrink did not terminate within the ghost degree");
    const VertexId v = p.range();
    std::set<EdgeId> heads;
    bool real_terms = false;
    for (const auto& [m, k] : s.terms()) {
      if (m.ghost.is_vertex()) {
        real_terms = true;
      } else {
        heads.insert(m.ghost.first_edge());
      }
    }
    if (real_terms) {
      for (auto e : g.out_edges(v)) {
        if (heads.count(e)) continue;
        auto se = detail::times_path(s, Path::edge(g, e));
        if (!se.is_zero() && is_ghost_free(se)) return p.extend(g, e);
      }
    }
    bool moved = false;
    for (auto e : g.out_edges(v)) {
      auto se = detail::times_path(s, Path::edge(g, e));
      if (se.is_zero()) continue;
      p = p.extend(g, e);
      s = std::move(se);
      moved = true;
      break;
    }
    if (!moved) throw InvariantError("every edge annihilates a nonzero element");
  }
}

/// A path β with q1·β ≠ 0 and q2·β ∈ KE (denseness of KE in L_K(E)).
template <Field F>
Path common_shrink(const LeavittElement<F>& q1_in, const LeavittElement<F>& q2_in) {
  q1_in.check_compatible(q2_in);
  const LeavittElement<F> q1 = normal_form(q1_in);
  const LeavittElement<F> q2 = normal_form(q2_in);
  if (q1.is_zero()) throw InputError("first element must be nonzero");
  const Digraph& g = q1.graph();
  Path beta = shrink_to_quiver(q1);
  for (std::size_t guard = 0;; ++guard) {
    if (is_ghost_free(detail::times_path(q2, beta))) return beta;
    if (guard > ghost_degree(q2)) throw InvariantError("common shrink did not terminate");
    bool moved = false;
    for (auto e : g.out_edges(beta.range())) {
      Path next = beta.extend(g, e);
      if (detail::times_path(q1, next).is_zero()) continue;
      beta = std::move(next);
      moved = true;
      break;
    }
    if (!moved) throw InvariantError("no edge keeps the first element nonzero");
  }
}

namespace detail {

inline void require_rose(const Digraph& g) {
  if (!g.is_rose()) throw InputError("operation needs the one-vertex n-loop graph");
}

}  // namespace detail

template <Field F>
struct DualSystem {
  std::vector<QuiverElement<F>> basis;
  /// coords[i][j] = p_ij with a_j = Σ_i s_i p_ij.
  std::vector<std::vector<QuiverElement<F>>> coords;
  std::vector<LeavittElement<F>> duals;
  bool delta_ok = false;
  bool complete_ok = false;
};

/// Duals s_i* = Σ_j p_ij a_j* of a free basis s_1..s_n of the arrow ideal.
template <Field F>
DualSystem<F> dual_system(std::vector<QuiverElement<F>> s, const ConfigPtr& cfg) {
  if (s.empty()) throw InputError("empty basis");
  const Digraph& g = cfg->graph();
  detail::require_rose(g);
  if (cfg->mode() != Mode::leavitt) throw InputError("dual system needs Leavitt mode");
  const std::size_t n = g.edge_count();
  if (s.size() != n) throw InputError("a basis of the arrow ideal has exactly " + std::to_string(n) + " elements");
  const F field = s.front().field();
  const auto& gp = cfg->graph_ptr();
  for (const auto& x : s) {
    if (!same_graph(x.graph_ptr(), gp)) throw InputError("basis element over a different graph");
    if (x.is_zero() || !x.truncate(0).is_zero()) {
      throw InputError("basis elements must lie in the arrow ideal");
    }
  }
  // The free algebra has IBN, so n generators of the rank-n free module I
  // form a basis exactly when they generate it.
  RightIdealPresentation<F> R(gp, field, s);
  PrefixReducer<F> reducer(R, true);
  DualSystem<F> out{s, std::vector<std::vector<QuiverElement<F>>>(n), {}};
  for (std::size_t i = 0; i < n; ++i) out.coords[i].assign(n, QuiverElement<F>(gp, field));
  for (auto e : g.edges()) {
    const auto a = QuiverElement<F>::path(gp, field, Path::edge(g, e));
    auto cof = reducer.express(a);
    if (!cof) throw InputError("not a basis: arrow '" + g.edge_name(e) + "' is not generated");
    for (auto& [i, c] : *cof) out.coords[i][index(e)] = c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    LeavittElement<F> d(cfg, field);
    for (auto e : g.edges()) {
      d += embed_quiver(out.coords[i][index(e)], cfg) * LeavittElement<F>::ghost_path(cfg, field, Path::edge(g, e));
    }
    out.duals.push_back(normal_form(d));
  }
  const auto one = LeavittElement<F>::one(cfg, field);
  out.delta_ok = true;
  LeavittElement<F> total(cfg, field);
  for (std::size_t i = 0; i < n; ++i) {
    const auto si = embed_quiver(s[i], cfg);
    total += si * out.duals[i];
    for (std::size_t j = 0; j < n; ++j) {
      auto expect = i == j ? one : LeavittElement<F>(cfg, field);
      if (!(normal_form(out.duals[j] * si) == expect)) out.delta_ok = false;
    }
  }
  out.complete_ok = normal_form(total) == one;
  if (!out.delta_ok || !out.complete_ok) throw InvariantError("dual system identities failed");
  return out;
}

template <Field F>
struct Codim1Presentation {
  std::vector<typename F::Scalar> constants;  // k_i
  std::vector<QuiverElement<F>> generators;   // r_i = a_i - k_i
  bool free_basis_ok = false;
};

/// a_i = r_i + k_i with r_i ∈ R, k_i ∈ K, for a codimension-1 right ideal of
/// K<a_1..a_n>; the r_i are the free generators u_{1,a_i}.
template <Field F>
Codim1Presentation<F> codim1_presentation(const TablePtr<F>& table) {
  const Digraph& g = table->graph();
  detail::require_rose(g);
  if (table->codimension() != std::size_t{1}) throw InputError("ideal does not have codimension 1");
  SchreierBasis<F> B(table);
  FreeGeneratorSet<F> gens(B);
  const auto& gp = table->graph_ptr();
  const Path unit = Path::vertex(VertexId{});
  Codim1Presentation<F> out;
  out.free_basis_ok = gens.size() == g.edge_count();
  for (auto e : g.edges()) {
    const auto a = QuiverElement<F>::path(gp, table->field(), Path::edge(g, e));
    const auto pa = B.project(a);
    const auto k = pa.coefficient(unit);
    out.constants.push_back(k);
    auto r = a - QuiverElement<F>::path(gp, table->field(), unit).scale(k);
    auto u = gens.find(unit, e);
    if (!u || !(gens.generators()[*u].u == r)) {
      out.free_basis_ok = false;
    } else {
      auto ex = express_in_free_basis(r, gens);
      if (ex.size() != 1 || ex.begin()->first != *u ||
          !(ex.begin()->second == QuiverElement<F>::path(gp, table->field(), unit))) {
        out.free_basis_ok = false;
      }
    }
    out.generators.push_back(std::move(r));
  }
  if (!out.free_basis_ok) throw InvariantError("codim-1 generators are not the free generators");
  return out;
}

template <Field F>
struct Extraction {
  Path mu;
  Path nu;
  typename F::Scalar k;
};

/// Searches (μ, ν) with μ*·a·ν = k·1, k ≠ 0, in L(1,n): pairs with
/// |μ|, |ν| <= deg(a) + slack, by |μ| + |ν| and then path order.
template <Field F>
std::optional<Extraction<F>> scalar_extraction(const QuiverElement<F>& a, const ConfigPtr& cfg,
                                               std::size_t slack = 3) {
  const Digraph& g = cfg->graph();
  detail::require_rose(g);
  if (g.edge_count() < 2) throw InputError("scalar extraction needs at least two loops");
  if (a.is_zero()) throw InputError("element must be nonzero");
  const F& field = a.field();
  const std::size_t top = *a.degree() + slack;
  const auto paths = enumerate_paths_upto(g, top);
  const auto x = embed_quiver(a, cfg);
  const LeavittMonomial one_m = LeavittMonomial::vertex(VertexId{});

  std::vector<std::optional<LeavittElement<F>>> left(paths.size());
  for (std::size_t total = 0; total <= 2 * top; ++total) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const Path& mu = paths[i];
      if (mu.length() > total || total - mu.length() > top) continue;
      const std::size_t nl = total - mu.length();
      if (!left[i]) left[i] = LeavittElement<F>::ghost_path(cfg, field, mu) * x;
      if (left[i]->is_zero()) continue;
      for (const auto& nu : paths) {
        if (nu.length() != nl) continue;
        auto y = normal_form(*left[i] * LeavittElement<F>::real_path(cfg, field, nu));
        if (y.size() == 1 && y.terms().begin()->first == one_m) {
          return Extraction<F>{mu, nu, y.terms().begin()->second};
        }
      }
    }
  }
  return std::nullopt;
}

template <Field F>
struct GabrielWitness {
  /// b_i per presentation generator, with Σ g_i b_i = 1.
  std::vector<LeavittElement<F>> b;
  std::size_t bound = 0;
};

/// Searches b_i on normal-form monomials with |α| + |β| <= bound such that
/// Σ g_i·b_i = 1 in L_K(E), trying bounds 0, 1, ... in turn.
template <Field F>
std::optional<GabrielWitness<F>> gabriel_membership(const RightIdealPresentation<F>& R, std::size_t bound) {
  const F& field = R.field();
  const auto cfg = make_config(R.graph_ptr());
  const auto one = LeavittElement<F>::one(cfg, field);
  std::vector<LeavittElement<F>> gens;
  for (const auto& x : R.generators()) gens.push_back(embed_quiver(x, cfg));

  using Key = LeavittMonomial;
  using Vec = typename SparseEchelon<F, Key>::Vector;
  auto column = [&](std::size_t i, const LeavittMonomial& m) {
    const auto y = normal_form(gens[i] * LeavittElement<F>::monomial(cfg, field, m));
    return Vec(y.terms().begin(), y.terms().end());
  };
  Vec target(one.terms().begin(), one.terms().end());

  // Decide with an untracked elimination, then solve once at the first bound
  // that works.
  SparseEchelon<F, Key> span(field, false);
  const auto monomials = detail::enumerate_monomials(*cfg, bound);
  std::size_t next = 0;
  for (std::size_t b = 0; b <= bound; ++b) {
    for (; next < monomials.size() && monomials[next].total_length() <= b; ++next) {
      for (std::size_t i = 0; i < gens.size(); ++i) span.insert(column(i, monomials[next]), 0);
    }
    if (!span.contains(target)) continue;

    SparseEchelon<F, Key> solver(field);
    std::vector<std::pair<std::size_t, LeavittMonomial>> tags;
    for (std::size_t j = 0; j < next; ++j) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        solver.insert(column(i, monomials[j]), tags.size());
        tags.emplace_back(i, monomials[j]);
      }
    }
    auto combo = solver.solve(target);
    if (!combo) throw InvariantError("tracked elimination disagrees with the span test");
    GabrielWitness<F> w{std::vector<LeavittElement<F>>(gens.size(), LeavittElement<F>(cfg, field)), b};
    for (const auto& [t, k] : *combo) w.b[tags[t].first].add_term(tags[t].second, k);
    LeavittElement<F> sum(cfg, field);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      w.b[i] = normal_form(w.b[i]);
      sum += gens[i] * w.b[i];
    }
    if (!normal_form(sum - one).is_zero()) throw InvariantError("Gabriel witness failed re-verification");
    return w;
  }
  return std::nullopt;
}

}  // namespace lpa
