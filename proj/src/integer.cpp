#include "pcaag/integer.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace pcaag {

namespace {

bool fits_int64(const Integer::Big& v) {
  return v >= Integer::Big(INT64_MIN) && v <= Integer::Big(INT64_MAX);
}

}  // namespace

void Integer::assign(Big v) {
  if (fits_int64(v)) {
    small_ = static_cast<std::int64_t>(v);
    big_.reset();
  } else {
    small_ = 0;
    if (big_) {
      *big_ = std::move(v);
    } else {
      big_ = std::make_unique<Big>(std::move(v));
    }
  }
}

Integer Integer::from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("integer literal without digits");
  Big value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("invalid digit in integer literal: " + std::string(text));
    }
    value *= 10;
    value += c - '0';
  }
  if (negative) value = -value;
  return Integer(std::move(value));
}

std::string Integer::to_string() const {
  if (!big_) return std::to_string(small_);
  return big_->str();
}

double Integer::to_double() const {
  if (!big_) return static_cast<double>(small_);
  return big_->convert_to<double>();
}

int Integer::sign() const noexcept {
  if (big_) return big_->sign();
  return (small_ > 0) - (small_ < 0);
}

bool Integer::is_odd() const {
  if (!big_) return (small_ & 1) != 0;
  return boost::multiprecision::bit_test(boost::multiprecision::abs(*big_), 0);
}

Integer Integer::abs() const {
  if (!big_) {
    if (small_ == INT64_MIN) return Integer(-Big(small_));
    return Integer(small_ < 0 ? -small_ : small_);
  }
  return Integer(boost::multiprecision::abs(*big_));
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() + o.to_big());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() - o.to_big());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() * o.to_big());
  return *this;
}

Integer Integer::operator-() const {
  if (!big_ && small_ != INT64_MIN) return Integer(-small_);
  return Integer(-to_big());
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = a.to_big().compare(b.to_big());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::pair<Integer, std::int64_t> floor_divmod(const Integer& a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("floor_divmod: modulus must be positive");
  if (!a.big_) {
    std::int64_t q = a.small_ / m;
    std::int64_t r = a.small_ % m;
    if (r < 0) {
      r += m;
      q -= 1;
    }
    return {Integer(q), r};
  }
  Integer::Big q, r;
  boost::multiprecision::divide_qr(*a.big_, Integer::Big(m), q, r);
  if (r < 0) {
    r += m;
    q -= 1;
  }
  return {Integer(std::move(q)), static_cast<std::int64_t>(r)};
}

Integer operator/(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
    return Integer(a.small_ / b.small_);
  }
  return Integer(a.to_big() / b.to_big());
}

Integer operator%(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_) {
    if (b.small_ == -1) return Integer(0);
    return Integer(a.small_ % b.small_);
  }
  return Integer(a.to_big() % b.to_big());
}

std::size_t Integer::hash() const noexcept {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto it = big_->backend().limbs(), end = it + big_->backend().size(); it != end; ++it) {
    h ^= std::hash<std::uint64_t>{}(*it) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return big_->sign() < 0 ? ~h : h;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer gcd(Integer a, Integer b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

Integer isqrt(const Integer& v) {
  if (v.sign() < 0) throw std::domain_error("isqrt of negative value");
  return Integer(boost::multiprecision::sqrt(v.to_big()));
}

}  // namespace pcaag
