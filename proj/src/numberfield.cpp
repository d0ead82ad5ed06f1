#include "pcaag/numberfield.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b).sign() != 0 && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

Integer squarefree_part(Integer v) {
  Integer out = 1;
  if (v.sign() < 0) {
    out = -1;
    v = -v;
  }
  for (Integer p = 2; p * p <= v; p += 1) {
    int mult = 0;
    while ((v % p).is_zero()) {
      v = v / p;
      ++mult;
    }
    if (mult % 2 == 1) out *= p;
  }
  return out * v;
}

bool is_square(const Integer& v) {
  if (v.sign() < 0) return false;
  Integer r = isqrt(v);
  return r * r == v;
}

GeneratorWord row_word(const std::vector<Integer>& row, std::size_t offset) {
  GeneratorWord w;
  for (std::size_t l = 0; l < row.size(); ++l) w.push_back(offset + l, row[l]);
  return w;
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidParameter("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j].to_big());
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InvalidParameter("matrix is singular");
    std::swap(a[col], a[pivot]);
    Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational factor = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  IntMatrix out(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a[i][n + j];
      if (boost::multiprecision::denominator(v) != 1) {
        throw InvalidParameter("matrix is not unimodular");
      }
      out[i][j] = Integer(Integer::Big(boost::multiprecision::numerator(v)));
    }
  }
  return out;
}

QuadraticFieldData quadratic_field_data(const IntPolynomial& f) {
  if (f.degree() >= 3) {
    throw UnsupportedDegree("native construction supports degree <= 2; got " + f.to_string() +
                            " (load a presentation file instead)");
  }
  if (f.degree() < 1) throw InvalidPolynomial("polynomial must have degree >= 1");
  if (!f.is_monic()) throw InvalidPolynomial("polynomial must be monic: " + f.to_string());
  QuadraticFieldData data;
  data.f = f;
  if (f.degree() == 1) return data;

  const Integer& b = f.coefficient(1);
  const Integer& c = f.coefficient(0);
  Integer disc = b * b - Integer(4) * c;
  if (disc.sign() < 0) {
    throw NotRealQuadratic(f.to_string() + " defines an imaginary quadratic field");
  }
  if (is_square(disc)) throw InvalidPolynomial(f.to_string() + " is reducible over Q");
  data.d = squarefree_part(disc);
  auto [q, r] = floor_divmod(data.d, 4);
  data.omega_is_half = r == 1;
  data.fundamental_unit = fundamental_unit(data);
  return data;
}

Integer quadratic_norm(const QuadraticFieldData& data, const QuadraticUnit& u) {
  // N(p + q w) = p^2 + p q tr(w) + q^2 N(w)
  if (data.omega_is_half) {
    return u.p * u.p + u.p * u.q + u.q * u.q * ((Integer(1) - data.d) / Integer(4));
  }
  return u.p * u.p - data.d * u.q * u.q;
}

QuadraticUnit fundamental_unit(const QuadraticFieldData& data) {
  if (data.d <= Integer(1)) throw NotRealQuadratic("fundamental_unit needs d > 1");
  const Integer& d = data.d;
  const Integer root = isqrt(d);
  const Integer trace = data.omega_is_half ? 1 : 0;
  // omega = (P + sqrt d) / Q
  Integer P = data.omega_is_half ? 1 : 0;
  Integer Q = data.omega_is_half ? 2 : 1;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int step = 0; step < 1'000'000; ++step) {
    Integer a = Q.sign() > 0 ? floor_div(P + root, Q) : -floor_div(P + root, -Q) - Integer(1);
    Integer h = a * h1 + h2;
    Integer k = a * k1 + k2;
    h2 = std::move(h1);
    h1 = h;
    k2 = std::move(k1);
    k1 = k;
    if (!k.is_zero()) {
      // conjugate of h - k*omega is (h - k*tr) + k*omega
      QuadraticUnit small{h, -k};
      Integer norm = quadratic_norm(data, small);
      if (norm == Integer(1) || norm == Integer(-1)) return {h - k * trace, k};
    }
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw NotRealQuadratic("continued fraction did not produce a unit");
}

UnitAction unit_action_matrices(const QuadraticFieldData& data) {
  if (!data.fundamental_unit) throw NotRealQuadratic("no fundamental unit (degree 1 field)");
  const auto& [p, q] = *data.fundamental_unit;
  UnitAction action;
  if (data.omega_is_half) {
    // w^2 = w + (d-1)/4
    action.forward = {{p, q}, {q * ((data.d - Integer(1)) / Integer(4)), p + q}};
  } else {
    // w^2 = d
    action.forward = {{p, q}, {q * data.d, p}};
  }
  action.inverse = unimodular_inverse(action.forward);
  return action;
}

PcPresentation semidirect_presentation(std::size_t dimension, const std::vector<UnitAction>& units,
                                       std::string source) {
  if (dimension == 0) throw InvalidParameter("order dimension must be positive");
  const std::size_t r = units.size();
  const std::size_t tau = r;
  const std::size_t x0 = r + 1;
  const std::size_t n = x0 + dimension;

  std::vector<std::int64_t> orders(n, kInfinite);
  orders[tau] = 2;

  std::vector<PcPresentation::Conjugate> conj;
  auto add = [&](std::size_t i, std::size_t j, int sign, GeneratorWord w) {
    conj.push_back({i, j, sign, std::move(w)});
  };
  for (std::size_t i = 0; i < r; ++i) {
    const auto& u = units[i];
    if (u.forward.size() != dimension || u.inverse.size() != dimension) {
      throw InvalidParameter("unit action matrix has the wrong dimension");
    }
    for (std::size_t j = i + 1; j < r; ++j) {
      add(i, j, 1, {{j, 1}});
      add(i, j, -1, {{j, 1}});
    }
    add(i, tau, 1, {{tau, 1}});
    add(i, tau, -1, {{tau, 1}});
    for (std::size_t j = 0; j < dimension; ++j) {
      add(i, x0 + j, 1, row_word(u.forward[j], x0));
      add(i, x0 + j, -1, row_word(u.inverse[j], x0));
    }
  }
  for (std::size_t j = 0; j < dimension; ++j) add(tau, x0 + j, 1, {{x0 + j, -1}});
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t j = i + 1; j < dimension; ++j) {
      add(x0 + i, x0 + j, 1, {{x0 + j, 1}});
      add(x0 + i, x0 + j, -1, {{x0 + j, 1}});
    }
  }
  std::vector<PcPresentation::Power> pow{{tau, {}}};
  return PcPresentation(std::move(orders), std::move(conj), std::move(pow), std::move(source));
}

PcPresentation build_semidirect_presentation(const QuadraticFieldData& data) {
  std::vector<UnitAction> units;
  if (data.fundamental_unit) units.push_back(unit_action_matrices(data));
  return semidirect_presentation(static_cast<std::size_t>(data.f.degree()), units,
                                 data.f.to_string());
}

PcPresentation build_semidirect_presentation(const IntPolynomial& f) {
  return build_semidirect_presentation(quadratic_field_data(f));
}

}  // namespace pcaag
