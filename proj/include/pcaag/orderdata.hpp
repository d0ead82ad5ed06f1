#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcaag/numberfield.hpp"
#include "pcaag/polynomial.hpp"
#include "pcaag/presentation.hpp"

namespace pcaag {

/// Multiplication by alpha = sum c_i theta^i on Z[theta] = Z[x]/(f), basis
/// (1, theta, ..., theta^{n-1}): row j holds the coordinates of theta^j * alpha.
/// f must be monic.
IntMatrix multiplication_matrix(const IntPolynomial& f, const std::vector<Integer>& alpha);

struct UnitSearchOptions {
  /// Coefficients range over [-bound, bound].
  int coefficient_bound = 1;
  /// Candidates with more nonzero coefficients are skipped; 0 means no limit.
  std::size_t max_support = 0;
  /// Elements whose |norm| is at most this are paired up; a quotient of two
  /// that lies in Z[theta] is a unit.
  long long quotient_norm_limit = 64;
};

struct EquationOrderUnits {
  IntPolynomial f;
  Signature signature;
  /// Coefficient vectors (ascending powers of theta) of multiplicatively
  /// independent units, smallest first.
  std::vector<std::vector<Integer>> units;
  /// s + t - 1
  std::size_t rank = 0;
  bool complete() const { return units.size() == rank; }
};

/// Searches small elements of Z[theta] for units (exact det = +-1), then
/// quotients of small elements of equal norm, keeping those whose log
/// embeddings are linearly independent until the Dirichlet rank is reached or
/// the candidates run out. Throws InvalidPolynomial for
/// non-monic f and NotSquarefree via signature().
EquationOrderUnits find_independent_units(const IntPolynomial& f, const UnitSearchOptions& options = {});

/// Z[theta] x| <units, -1>. Throws InvalidParameter when the unit set is
/// incomplete.
PcPresentation equation_order_presentation(const EquationOrderUnits& data);

}  // namespace pcaag
