#pragma once

// Sparse exact Gaussian elimination over a field, with vectors indexed by an
// arbitrary ordered key. Rows are kept in echelon form with the smallest key
// of each row as its pivot; every row remembers which inserted vectors it is
// built from so that solutions can be read back.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lpa/scalar.hpp"

namespace lpa {

template <class Key, class Scalar, class Less = std::less<Key>>
using SparseVector = std::map<Key, Scalar, Less>;

template <Field F, class Key, class Less = std::less<Key>>
class SparseEchelon {
 public:
  using Scalar = typename F::Scalar;
  using Vector = SparseVector<Key, Scalar, Less>;
  using Combination = std::map<std::size_t, Scalar>;

  explicit SparseEchelon(F field, bool track = true) : field_(std::move(field)), track_(track) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the current rows. When `combo` is given it receives the
  /// combination of inserted tags that was subtracted.
  Vector reduce(Vector v, Combination* combo = nullptr) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      // Rows are normalised to pivot coefficient 1.
      const Scalar factor = it->second;
      const Key pivot = it->first;
      for (const auto& [k, c] : row->second.vector) axpy(v, k, -(factor * c));
      if (combo) {
        for (const auto& [t, c] : row->second.combo) axpy(*combo, t, factor * c);
      }
      it = v.upper_bound(pivot);
    }
    return v;
  }

  /// Inserts v under `tag`. Returns true when v was independent of the rows.
  bool insert(Vector v, std::size_t tag) {
    Combination subtracted;
    Vector r = reduce(std::move(v), track_ ? &subtracted : nullptr);
    if (r.empty()) return false;
    Combination combo;
    if (track_) {
      // r = v - Σ subtracted, so r is built from tag with coefficient 1 and the
      // negated subtracted combination.
      for (const auto& [t, c] : subtracted) combo.emplace(t, -c);
      axpy(combo, tag, field_.one());
    }
    const Scalar inv = field_.one() / r.begin()->second;
    for (auto& [k, c] : r) c = c * inv;
    for (auto& [t, c] : combo) c = c * inv;
    const Key pivot = r.begin()->first;
    // Keep rows fully reduced so later reductions stay short.
    for (auto& [p, row] : rows_) {
      auto hit = row.vector.find(pivot);
      if (hit == row.vector.end()) continue;
      const Scalar factor = hit->second;
      for (const auto& [k, c] : r) axpy(row.vector, k, -(factor * c));
      for (const auto& [t, c] : combo) axpy(row.combo, t, -(factor * c));
    }
    rows_.emplace(pivot, Row{std::move(r), std::move(combo)});
    return true;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }

  /// Coefficients c_tag with Σ c_tag · inserted[tag] = v, if v is in the span.
  std::optional<Combination> solve(const Vector& v) const {
    Combination combo;
    if (!reduce(v, &combo).empty()) return std::nullopt;
    return combo;
  }

 private:
  struct Row {
    Vector vector;
    Combination combo;
  };

  template <class Map, class K>
  static void axpy(Map& m, const K& k, const Scalar& c) {
    if (lpa::is_zero(c)) return;
    auto [it, inserted] = m.try_emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (lpa::is_zero(it->second)) m.erase(it);
    }
  }

  F field_;
  bool track_;
  std::map<Key, Row, Less> rows_;
};

}  // namespace lpa
