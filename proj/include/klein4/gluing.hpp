#pragma once

#include <string>
#include <variant>

#include <Eigen/Core>

#include "klein4/surface.hpp"

namespace klein4 {

/// Trace-free symmetric bilinear form on R^2 with values in R^k, stored as
/// P(e1, e1) and P(e1, e2); P(e2, e2) = -P(e1, e1).
struct TracefreeForm {
  Eigen::VectorXd P11, P12;

  int k() const { return int(P11.size()); }
  Eigen::VectorXd P22() const { return -P11; }
  /// Columns P11, P12.
  Eigen::MatrixXd matrix() const;
  bool is_zero() const { return P11.norm() + P12.norm() == 0.0; }
};

/// Components of a trace-free normal-valued form in the normal frame (N1, N2).
TracefreeForm normal_form(const Vec4& A011, const Vec4& A012, const Vec4& N1, const Vec4& N2);

/// sum_{i,j} <P(e_i, e_j), Q(e_i, e_j)> = 2 (<P11, Q11> + <P12, Q12>).
/// Throws DimensionMismatch.
double pairing(const TracefreeForm& p, const TracefreeForm& q);

/// (S, T) . P = T P(S^-1 ., S^-1 .). Throws NotOrthogonal (tolerance 1e-12).
TracefreeForm rotate_form(const TracefreeForm& p, const Eigen::Matrix2d& s, const Eigen::MatrixXd& t);

Eigen::Matrix2d rotation2(double angle);

struct Found {
  Eigen::Matrix2d S;
  Eigen::MatrixXd T;
  double value = 0;
  bool near_exceptional = false;  // within the 1e-4 warning band of the exceptional set
};

struct Exceptional {
  std::string reason;
};

using RotationResult = std::variant<Found, Exceptional>;

/// Closed-form test: k = 2, |P11| = |P12|, <P11, P12> = 0, the same for Q,
/// and opposite orientations of the bases {P11, P12} and {Q11, Q12}. Equalities
/// are relative with tolerance tol.
bool is_exceptional_pair(const TracefreeForm& p, const TracefreeForm& q, double tol = 1e-9);

/// Finds S in SO(2) and T in O(k) (SO(k) if restrict_T_special) with a
/// pairing above 1e-10 |P| |Q|. The S-angle is optimized in closed form and T by
/// singular-value alignment. Returns Exceptional exactly when the pair is
/// exceptional and T is restricted. Throws ZeroForm or DimensionMismatch.
RotationResult find_positive_rotation(const TracefreeForm& p, const TracefreeForm& q, bool restrict_T_special);

struct GluingBound {
  double bound = 0;
  bool strict = true;
  std::string text;  // e.g. "< 8π"
  std::string note;
};

/// W1 + W2 - 4 pi as a strict upper bound for the glued surface.
GluingBound predict_gluing_bound(double W1, double W2);

}  // namespace klein4
