#pragma once

// Exact ground fields: arbitrary-precision rationals and prime fields F_p.
//
// A field is described by a small value type (Rationals, PrimeField) that
// knows how to make constants and parse/format scalars. Scalars themselves
// carry ordinary arithmetic operators.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lpa/error.hpp"

namespace lpa {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_zero(const BigRational& x) { return x.is_zero(); }

/// Residue class modulo a prime. The modulus travels with the value so that
/// mixing residues of different fields is caught at the point of use.
class Residue {
 public:
  Residue() = default;
  Residue(std::uint64_t value, std::uint64_t modulus)
      : value_(modulus == 0 ? value : value % modulus), modulus_(modulus) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  friend Residue operator+(Residue a, Residue b) {
    const auto p = common(a, b);
    std::uint64_t s = a.value_ + b.value_;
    if (s >= p) s -= p;
    return {s, p};
  }
  friend Residue operator-(Residue a, Residue b) {
    const auto p = common(a, b);
    return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + p - b.value_, p};
  }
  friend Residue operator*(Residue a, Residue b) {
    const auto p = common(a, b);
    return {static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(a.value_) * b.value_ % p),
            p};
  }
  friend Residue operator/(Residue a, Residue b) { return a * b.inverse(); }
  Residue operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_}; }
  Residue& operator+=(Residue b) { return *this = *this + b; }
  Residue& operator-=(Residue b) { return *this = *this - b; }
  Residue& operator*=(Residue b) { return *this = *this * b; }
  Residue& operator/=(Residue b) { return *this = *this / b; }

  Residue inverse() const {
    if (value_ == 0) throw std::domain_error("division by zero in prime field");
    // Fermat: a^(p-2)
    Residue base = *this;
    Residue result{1, modulus_};
    for (std::uint64_t e = modulus_ - 2; e != 0; e >>= 1) {
      if (e & 1U) result *= base;
      base *= base;
    }
    return result;
  }

  friend bool operator==(Residue a, Residue b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  static std::uint64_t common(Residue a, Residue b) {
    if (a.modulus_ != b.modulus_) throw InputError("field mismatch between prime-field scalars");
    return a.modulus_;
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

inline bool is_zero(const Residue& x) { return x.value() == 0; }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// The field Q.
class Rationals {
 public:
  using Scalar = BigRational;

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_int(long long v) const { return v; }

  /// Parses "n" or "n/d" where n, d are decimal integers (n may be signed).
  Scalar parse(std::string_view text) const {
    const auto slash = text.find('/');
    BigInt num = parse_integer(text.substr(0, slash));
    if (slash == std::string_view::npos) return Scalar(num);
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in scalar '" + std::string(text) + "'");
    // Boost 1.74 rejects negative denominators outright.
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Scalar(num, den);
  }

  std::string format(const Scalar& s) const { return s.str(); }
  std::string describe() const { return "rat"; }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }

  static BigInt parse_integer(std::string_view digits) {
    std::string_view body = digits;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (body.empty()) throw InputError("malformed scalar '" + std::string(digits) + "'");
    for (char c : body) {
      if (c < '0' || c > '9') throw InputError("malformed scalar '" + std::string(digits) + "'");
    }
    return BigInt(std::string(digits.front() == '+' ? digits.substr(1) : digits));
  }
};

/// The prime field F_p.
class PrimeField {
 public:
  using Scalar = Residue;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw InputError("field modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 62)) throw InputError("field modulus too large");
  }

  std::uint64_t modulus() const { return p_; }

  Scalar zero() const { return {0, p_}; }
  Scalar one() const { return {1, p_}; }
  Scalar from_int(long long v) const {
    const auto p = static_cast<long long>(p_);
    long long r = v % p;
    if (r < 0) r += p;
    return {static_cast<std::uint64_t>(r), p_};
  }

  Scalar parse(std::string_view text) const {
    const auto slash = text.find('/');
    Scalar num = reduce(Rationals::parse_integer(text.substr(0, slash)));
    if (slash == std::string_view::npos) return num;
    Scalar den = reduce(Rationals::parse_integer(text.substr(slash + 1)));
    if (is_zero(den)) throw InputError("zero denominator in scalar '" + std::string(text) + "'");
    return num / den;
  }

  std::string format(const Scalar& s) const { return std::to_string(s.value()); }
  std::string describe() const { return "fp:" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Scalar reduce(const BigInt& n) const {
    BigInt r = n % p_;
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r), p_};
  }

  std::uint64_t p_;
};

template <class F>
concept Field = std::equality_comparable<F> && requires(const F& f, const typename F::Scalar& a,
                                                      std::string_view text) {
  { f.zero() } -> std::same_as<typename F::Scalar>;
  { f.one() } -> std::same_as<typename F::Scalar>;
  { f.from_int(1LL) } -> std::same_as<typename F::Scalar>;
  { f.parse(text) } -> std::same_as<typename F::Scalar>;
  { f.format(a) } -> std::same_as<std::string>;
  { a + a } -> std::convertible_to<typename F::Scalar>;
  { a - a } -> std::convertible_to<typename F::Scalar>;
  { a * a } -> std::convertible_to<typename F::Scalar>;
  { a / a } -> std::convertible_to<typename F::Scalar>;
  { -a } -> std::convertible_to<typename F::Scalar>;
  { is_zero(a) } -> std::same_as<bool>;
};

}  // namespace lpa
