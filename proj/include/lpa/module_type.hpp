#pragma once

// Module types of L(1,n) and of its localizations at finite-codimensional
// right ideals. A ring has module type (1, N) when A ≅ A^N as right modules
// with N minimal; K_0 is then cyclic of order N - 1.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

struct ModuleTypeReport {
  enum class Source { codim1, product, family };

  Source source = Source::codim1;
  std::size_t n = 0;
  /// gcd of the l·m products (1 for codim-1, l·m for a single pair).
  std::size_t d = 1;
  /// N in the type (1, N).
  std::size_t rank = 1;
  /// True when A ≅ A^N forces nothing (N = 1): the ring has IBN.
  bool ibn = false;
  /// Order of the cyclic group K_0; unset for the infinite cyclic group.
  std::optional<std::size_t> k0_order;

  std::string type_string() const {
    if (ibn) return "IBN";
    return "(1, " + std::to_string(rank) + ")";
  }
};

namespace detail {

inline ModuleTypeReport finish_module_type(ModuleTypeReport r) {
  if (r.n < 1) throw InputError("number of loops must be at least 1");
  r.rank = r.d * (r.n - 1) + 1;
  r.ibn = r.rank == 1;
  // n = 1 is the Laurent polynomial algebra K[x, x^-1] with K_0 = Z.
  if (!r.ibn) r.k0_order = r.rank - 1;
  return r;
}

}  // namespace detail

/// Codimension-1 localization: the algebra is L(1,n) itself, type (1, n).
inline ModuleTypeReport module_type_codim1(std::size_t n) {
  ModuleTypeReport r;
  r.source = ModuleTypeReport::Source::codim1;
  r.n = n;
  r.d = 1;
  return detail::finish_module_type(r);
}

/// Localization at an ideal with l·m free generators: type (1, lm(n-1)+1).
inline ModuleTypeReport module_type_product(std::size_t l, std::size_t m, std::size_t n) {
  if (l < 1 || m < 1) throw InputError("l and m must be at least 1");
  ModuleTypeReport r;
  r.source = ModuleTypeReport::Source::product;
  r.n = n;
  r.d = l * m;
  return detail::finish_module_type(r);
}

/// A family {(l_λ, m_λ)}: type (1, d(n-1)+1) with d the gcd of the l_λ m_λ.
inline ModuleTypeReport module_type_family(const std::vector<std::pair<std::size_t, std::size_t>>& family,
                                           std::size_t n) {
  if (family.empty()) throw InputError("empty family");
  std::size_t d = 0;
  for (const auto& [l, m] : family) {
    if (l < 1 || m < 1) throw InputError("l and m must be at least 1");
    d = std::gcd(d, l * m);
  }
  ModuleTypeReport r;
  r.source = ModuleTypeReport::Source::family;
  r.n = n;
  r.d = d;
  return detail::finish_module_type(r);
}

}  // namespace lpa
