#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcaag {

/// Signed arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in int64 never touch the heap; arithmetic that overflows
/// promotes to a boost cpp_int and demotes again as soon as the result fits.
/// Invariant: `big_` is engaged iff the value lies outside int64.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  constexpr Integer() noexcept = default;

  template <std::signed_integral T>
  constexpr Integer(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}

  template <std::unsigned_integral T>
  Integer(T v) {
    if (static_cast<std::uint64_t>(v) <= static_cast<std::uint64_t>(INT64_MAX)) {
      small_ = static_cast<std::int64_t>(v);
    } else {
      assign(Big(v));
    }
  }

  explicit Integer(const Big& v) { assign(v); }
  explicit Integer(Big&& v) { assign(std::move(v)); }

  Integer(const Integer& o)
      : small_(o.small_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  /// Parses an optionally signed decimal string; throws std::invalid_argument.
  static Integer from_string(std::string_view text);
  std::string to_string() const;

  bool is_small() const noexcept { return !big_; }
  /// Valid only when is_small().
  std::int64_t small() const noexcept { return small_; }
  std::optional<std::int64_t> to_int64() const noexcept {
    if (big_) return std::nullopt;
    return small_;
  }
  Big to_big() const { return big_ ? *big_ : Big(small_); }
  double to_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_odd() const;
  Integer abs() const;

  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  Integer operator-() const;

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  /// Floor division by a positive modulus: returns (q, r) with a = q*m + r, 0 <= r < m.
  friend std::pair<Integer, std::int64_t> floor_divmod(const Integer& a, std::int64_t m);

  /// Exact truncating division (used by polynomial and matrix code).
  friend Integer operator/(const Integer& a, const Integer& b);
  friend Integer operator%(const Integer& a, const Integer& b);

  std::size_t hash() const noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  void assign(Big v);

  std::int64_t small_ = 0;
  std::unique_ptr<Big> big_;
};

Integer gcd(Integer a, Integer b);

/// Integer square root floor(sqrt(v)) for v >= 0.
Integer isqrt(const Integer& v);

}  // namespace pcaag

template <>
struct std::hash<pcaag::Integer> {
  std::size_t operator()(const pcaag::Integer& v) const noexcept { return v.hash(); }
};
