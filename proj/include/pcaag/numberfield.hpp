#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcaag/integer.hpp"
#include "pcaag/polynomial.hpp"
#include "pcaag/presentation.hpp"

namespace pcaag {

using IntMatrix = std::vector<std::vector<Integer>>;

/// A unit expressed in an integral basis: row i of `forward` is (basis_i * unit)
/// in coordinates; `inverse` is the exact integer inverse (det = +-1).
struct UnitAction {
  IntMatrix forward;
  IntMatrix inverse;
};

/// Element p + q*omega of a real quadratic order with basis (1, omega).
struct QuadraticUnit {
  Integer p;
  Integer q;
  friend bool operator==(const QuadraticUnit&, const QuadraticUnit&) = default;
};

/// Data for O_F x| U_F when f has degree 1 or is a real quadratic.
struct QuadraticFieldData {
  IntPolynomial f;
  /// Squarefree part of the discriminant; 0 in degree 1.
  Integer d;
  /// omega = (1 + sqrt d)/2 when d = 1 mod 4, otherwise omega = sqrt d.
  bool omega_is_half = false;
  /// Infinite-order unit generator (absent in degree 1).
  std::optional<QuadraticUnit> fundamental_unit;
  int torsion_order = 2;
};

/// Analyses f and computes the fundamental unit. Throws UnsupportedDegree
/// (degree >= 3), NotRealQuadratic (negative discriminant) or
/// InvalidPolynomial (not monic, or reducible).
QuadraticFieldData quadratic_field_data(const IntPolynomial& f);

/// Field norm of p + q*omega.
Integer quadratic_norm(const QuadraticFieldData& data, const QuadraticUnit& u);

/// Fundamental unit of the real quadratic order from the continued fraction
/// of omega: the first convergent h/k with N(h - k*omega) = +-1 yields the
/// unit conjugate to h - k*omega, which is > 1.
QuadraticUnit fundamental_unit(const QuadraticFieldData& data);

/// Multiplication by the fundamental unit on the basis (1, omega).
UnitAction unit_action_matrices(const QuadraticFieldData& data);

/// G = O x| <units, -1> with generating sequence (u_1..u_r, tau, x_1..x_dim):
/// x_j^{u_i} is row j of the i-th forward matrix, x_j^{u_i^-1} row j of its
/// inverse, x_j^tau = x_j^-1, tau^2 = 1, and all else commutes.
PcPresentation semidirect_presentation(std::size_t dimension, const std::vector<UnitAction>& units,
                                       std::string source = {});

/// Native construction for degree 1 and real quadratic polynomials.
PcPresentation build_semidirect_presentation(const QuadraticFieldData& data);
PcPresentation build_semidirect_presentation(const IntPolynomial& f);

/// Exact inverse of an integer matrix with determinant +-1; throws
/// InvalidParameter otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);
Integer determinant(const IntMatrix& m);

}  // namespace pcaag
