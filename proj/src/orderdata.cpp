#include "pcaag/orderdata.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using Complex = std::complex<double>;

std::vector<Complex> roots(const IntPolynomial& f) {
  const int n = f.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -f.coefficient(static_cast<std::size_t>(i)).to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

Complex evaluate(const std::vector<int>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * z + static_cast<double>(c[i]);
  return v;
}

// Small elements of [-bound, bound]^n with |norm| <= limit, lightest first.
struct Candidate {
  std::vector<int> coeffs;
  long long norm;
};

std::vector<Candidate> candidates(const std::vector<Complex>& zs, const UnitSearchOptions& o) {
  const std::size_t n = zs.size();
  std::vector<Candidate> out;
  std::vector<int> c(n, -o.coefficient_bound);
  while (true) {
    std::size_t support = 0;
    int top = 0;
    for (int v : c) {
      support += v != 0;
      if (v != 0) top = v;
    }
    // alpha and -alpha differ by torsion; keep the one with positive top coefficient.
    if (top > 0 && (o.max_support == 0 || support <= o.max_support)) {
      Complex norm = 1.0;
      for (const auto& z : zs) norm *= evaluate(c, z);
      const double a = std::abs(norm);
      const long long rounded = std::llround(a);
      if (rounded >= 1 && rounded <= o.quotient_norm_limit &&
          std::abs(a - static_cast<double>(rounded)) <= 1e-6 * std::max(1.0, a)) {
        out.push_back({c, rounded});
      }
    }
    std::size_t pos = 0;
    while (pos < n && c[pos] == o.coefficient_bound) c[pos++] = -o.coefficient_bound;
    if (pos == n) break;
    ++c[pos];
  }
  auto weight = [](const Candidate& x) {
    int l1 = 0, deg = 0;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
      l1 += std::abs(x.coeffs[i]);
      if (x.coeffs[i] != 0) deg = static_cast<int>(i);
    }
    return std::pair{l1, deg};
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& x, const auto& y) { return weight(x) < weight(y); });
  return out;
}

// Coordinates of beta / alpha when that quotient lies in Z[theta].
std::optional<std::vector<Integer>> exact_quotient(const IntPolynomial& f, const std::vector<int>& alpha,
                                                   const std::vector<int>& beta) {
  using Rational = boost::multiprecision::cpp_rational;
  const IntMatrix m = multiplication_matrix(f, std::vector<Integer>(alpha.begin(), alpha.end()));
  const std::size_t n = m.size();
  // Solve x * M = beta, i.e. M^T x^T = beta^T.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[j][i].to_big());
    a[i][n] = beta[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[c], a[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational factor = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= factor * a[c][j];
    }
  }
  std::vector<Integer> x;
  for (std::size_t i = 0; i < n; ++i) {
    Rational v = a[i][n] / a[i][i];
    if (denominator(v) != 1) return std::nullopt;
    x.emplace_back(numerator(v));
  }
  return x;
}

}  // namespace

IntMatrix multiplication_matrix(const IntPolynomial& f, const std::vector<Integer>& alpha) {
  if (!f.is_monic() || f.degree() < 1) throw InvalidPolynomial("equation order needs a monic polynomial");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::vector<Integer> cur(n);
  for (std::size_t i = 0; i < std::min(n, alpha.size()); ++i) cur[i] = alpha[i];
  if (alpha.size() > n) throw InvalidParameter("element has more coordinates than the degree");
  IntMatrix m;
  for (std::size_t j = 0; j < n; ++j) {
    m.push_back(cur);
    // cur *= theta, reducing theta^n = -(f_0 + ... + f_{n-1} theta^{n-1}).
    Integer top = cur[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1] - top * f.coefficient(i);
    cur[0] = -(top * f.coefficient(0));
  }
  return m;
}

EquationOrderUnits find_independent_units(const IntPolynomial& f, const UnitSearchOptions& options) {
  if (!f.is_monic()) throw InvalidPolynomial("equation order needs a monic polynomial");
  EquationOrderUnits data;
  data.f = f;
  data.signature = signature(f);
  data.rank = static_cast<std::size_t>(data.signature.s + data.signature.t - 1);
  if (data.rank == 0) return data;

  const std::vector<Complex> zs = roots(f);
  // One embedding per real root and per conjugate pair.
  std::vector<std::pair<Complex, double>> places;
  for (const auto& z : zs) {
    if (std::abs(z.imag()) < 1e-9) places.push_back({z, 1.0});
    else if (z.imag() > 0) places.push_back({z, 2.0});
  }
  Eigen::MatrixXd logs(static_cast<Eigen::Index>(places.size()), 0);

  auto log_vector = [&](const std::vector<Integer>& c) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(places.size()));
    for (std::size_t k = 0; k < places.size(); ++k) {
      Complex val = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) val = val * places[k].first + c[i].to_double();
      v(static_cast<Eigen::Index>(k)) = places[k].second * std::log(std::abs(val));
    }
    return v;
  };
  // Accepts a unit when its log vector extends the rank.
  auto offer = [&](std::vector<Integer> alpha) {
    Eigen::VectorXd v = log_vector(alpha);
    if (v.norm() < 1e-6) return;  // torsion
    Eigen::MatrixXd trial(logs.rows(), logs.cols() + 1);
    trial << logs, v;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
    lu.setThreshold(1e-8);
    if (static_cast<std::size_t>(lu.rank()) != data.units.size() + 1) return;
    logs = trial;
    data.units.push_back(std::move(alpha));
  };

  // Small elements by |norm|; units are tried directly, the rest in pairs.
  std::map<long long, std::vector<std::vector<int>>> by_norm;
  for (const auto& [c, norm] : candidates(zs, options)) {
    std::vector<Integer> alpha(c.begin(), c.end());
    if (norm == 1) {
      Integer det = determinant(multiplication_matrix(f, alpha));
      if (det == 1 || det == -1) offer(std::move(alpha));
      if (data.complete()) return data;
    } else {
      by_norm[norm].push_back(c);
    }
  }
  for (const auto& [norm, group] : by_norm) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        if (auto q = exact_quotient(f, group[i], group[j])) {
          offer(std::move(*q));
          if (data.complete()) return data;
        }
      }
    }
  }
  return data;
}

PcPresentation equation_order_presentation(const EquationOrderUnits& data) {
  if (!data.complete()) {
    throw InvalidParameter("found " + std::to_string(data.units.size()) + " of " +
                           std::to_string(data.rank) + " independent units");
  }
  std::vector<UnitAction> actions;
  for (const auto& u : data.units) {
    IntMatrix m = multiplication_matrix(data.f, u);
    actions.push_back({m, unimodular_inverse(m)});
  }
  return semidirect_presentation(static_cast<std::size_t>(data.f.degree()), actions,
                                 data.f.to_string() + " (equation order)");
}

}  // namespace pcaag
