#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pcaag/integer.hpp"

namespace pcaag {

/// Dense integer polynomial; coefficient(i) multiplies x^i.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  /// From coefficients in ascending degree order; trailing zeros are trimmed.
  explicit IntPolynomial(std::vector<Integer> ascending);
  /// From the dense list form used on the command line: leading coefficient
  /// first, constant term last ([1, -1, -1] is x^2 - x - 1).
  static IntPolynomial from_dense(const std::vector<Integer>& descending);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Integer& coefficient(std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  const Integer& leading() const { return coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Integer(1); }

  IntPolynomial derivative() const;
  std::vector<Integer> dense() const;
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coeffs_;
};

/// Accepts "x^2-x-1", "2*x^3 + x - 5", or the list form "[1,-1,-1]".
/// Throws InvalidPolynomial.
IntPolynomial parse_polynomial(std::string_view text);

/// Root signature: degree n = s + 2t with s real roots and t complex pairs.
struct Signature {
  int n = 0;
  int s = 0;
  int t = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact real-root count by a Sturm sequence. Throws NotSquarefree when
/// gcd(f, f') is nonconstant and InvalidPolynomial for degree < 1.
Signature signature(const IntPolynomial& f);

/// Hirsch length of O_F x| U_F: n + (s + t - 1).
int predicted_hirsch(const IntPolynomial& f);

}  // namespace pcaag
