#include "pcaag/polynomial.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;  // ascending

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a / b over Q.
RatPoly remainder(RatPoly a, const RatPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  IntPolynomial parse() {
    std::map<std::size_t, Integer> terms;
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Integer coeff = 1;
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = number();
        have_coeff = true;
        skip_space();
        if (peek() == '*') {
          ++pos_;
          skip_space();
          if (peek() != 'x') fail("expected 'x' after '*'");
        }
      }
      std::size_t exponent = 0;
      if (peek() == 'x') {
        ++pos_;
        exponent = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          auto e = number().to_int64();
          if (!e || *e < 0 || *e > 4096) fail("unsupported exponent");
          exponent = static_cast<std::size_t>(*e);
        }
      } else if (!have_coeff) {
        fail("expected a coefficient or 'x'");
      }
      skip_space();
      terms[exponent] += sign < 0 ? -coeff : coeff;
    }
    std::vector<Integer> ascending(terms.empty() ? 0 : terms.rbegin()->first + 1);
    for (auto& [e, c] : terms) ascending[e] = c;
    return IntPolynomial(std::move(ascending));
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  Integer number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer::from_string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidPolynomial("cannot parse polynomial '" + std::string(text_) + "': " + why +
                            " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

IntPolynomial parse_dense_list(std::string_view text) {
  std::vector<Integer> descending;
  std::string body(text.substr(1, text.size() - 2));
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidPolynomial("empty coefficient in list");
    try {
      descending.push_back(Integer::from_string(item.substr(b, e - b + 1)));
    } catch (const std::invalid_argument&) {
      throw InvalidPolynomial("bad coefficient '" + item + "'");
    }
  }
  if (descending.empty()) throw InvalidPolynomial("empty coefficient list");
  return IntPolynomial::from_dense(descending);
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::from_dense(const std::vector<Integer>& descending) {
  return IntPolynomial(std::vector<Integer>(descending.rbegin(), descending.rend()));
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Integer(i));
  return IntPolynomial(std::move(d));
}

std::vector<Integer> IntPolynomial::dense() const {
  return std::vector<Integer>(coeffs_.rbegin(), coeffs_.rend());
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c.is_zero()) continue;
    Integer mag = c.abs();
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? "-" : "+";
    }
    if (i == 0 || mag != Integer(1)) out += mag.to_string();
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

IntPolynomial parse_polynomial(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos) throw InvalidPolynomial("empty polynomial");
  text = text.substr(b, e - b + 1);
  if (text.front() == '[') {
    if (text.back() != ']') throw InvalidPolynomial("unterminated coefficient list");
    return parse_dense_list(text);
  }
  return PolyParser(text).parse();
}

Signature signature(const IntPolynomial& f) {
  const int n = f.degree();
  if (n < 1) throw InvalidPolynomial("signature needs a polynomial of degree >= 1");
  std::vector<RatPoly> seq;
  RatPoly p0, p1;
  for (const auto& c : f.coefficients()) p0.emplace_back(c.to_big());
  const IntPolynomial df = f.derivative();
  for (const auto& c : df.coefficients()) p1.emplace_back(c.to_big());
  seq.push_back(p0);
  seq.push_back(p1);
  while (seq.back().size() > 1) {
    RatPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  if (seq.back().size() > 1) {
    throw NotSquarefree("polynomial " + f.to_string() + " has a repeated factor");
  }
  std::vector<int> at_minus, at_plus;
  for (const auto& p : seq) {
    const int deg = static_cast<int>(p.size()) - 1;
    const int lead = sign_of(p.back());
    at_plus.push_back(lead);
    at_minus.push_back(deg % 2 == 0 ? lead : -lead);
  }
  Signature sig;
  sig.n = n;
  sig.s = variations(at_minus) - variations(at_plus);
  sig.t = (n - sig.s) / 2;
  return sig;
}

int predicted_hirsch(const IntPolynomial& f) {
  Signature sig = signature(f);
  return sig.n + sig.s + sig.t - 1;
}

}  // namespace pcaag
