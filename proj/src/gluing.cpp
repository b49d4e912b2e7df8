#include "klein4/gluing.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kPi = std::numbers::pi;

void same_k(const TracefreeForm& p, const TracefreeForm& q) {
  if (p.P11.size() != p.P12.size() || q.P11.size() != q.P12.size() || p.k() != q.k()) {
    throw Error(ErrorCode::DimensionMismatch, "forms take values in different dimensions");
  }
}

bool orthogonal(const Eigen::MatrixXd& m) {
  return m.rows() == m.cols() &&
         (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= 1e-12;
}

// Best T for a fixed S-rotation of p: maximizes tr(Q^T T P') over O(k) or SO(k).
Eigen::MatrixXd align(const Eigen::MatrixXd& rotated_p, const Eigen::MatrixXd& q, bool special) {
  const Eigen::MatrixXd a = rotated_p * q.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd v = svd.matrixV();
  const Eigen::MatrixXd& u = svd.matrixU();
  if (special && (v * u.transpose()).determinant() < 0.0) v.col(v.cols() - 1) *= -1.0;
  return v * u.transpose();
}

// Optimal S-angle for fixed T: the pairing is alpha cos 2t + beta sin 2t.
double best_angle(const TracefreeForm& p, const TracefreeForm& q, const Eigen::MatrixXd& t) {
  const Eigen::VectorXd a = t * p.P11, b = t * p.P12;
  const double alpha = 2.0 * (a.dot(q.P11) + b.dot(q.P12));
  const double beta = 2.0 * (a.dot(q.P12) - b.dot(q.P11));
  return 0.5 * std::atan2(beta, alpha);
}

}  // namespace

Eigen::MatrixXd TracefreeForm::matrix() const {
  Eigen::MatrixXd m(k(), 2);
  m << P11, P12;
  return m;
}

TracefreeForm normal_form(const Vec4& A011, const Vec4& A012, const Vec4& N1, const Vec4& N2) {
  TracefreeForm f;
  f.P11 = Eigen::Vector2d(A011.dot(N1), A011.dot(N2));
  f.P12 = Eigen::Vector2d(A012.dot(N1), A012.dot(N2));
  return f;
}

Eigen::Matrix2d rotation2(double angle) {
  Eigen::Matrix2d s;
  s << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return s;
}

double pairing(const TracefreeForm& p, const TracefreeForm& q) {
  same_k(p, q);
  return 2.0 * (p.P11.dot(q.P11) + p.P12.dot(q.P12));
}

TracefreeForm rotate_form(const TracefreeForm& p, const Eigen::Matrix2d& s, const Eigen::MatrixXd& t) {
  if (!orthogonal(s) || !orthogonal(t) || t.rows() != p.k()) {
    throw Error(ErrorCode::NotOrthogonal, "S and T must be orthogonal of matching size");
  }
  const Eigen::Matrix2d si = s.transpose();
  auto eval = [&](const Eigen::Vector2d& u, const Eigen::Vector2d& v) -> Eigen::VectorXd {
    return u[0] * v[0] * p.P11 + (u[0] * v[1] + u[1] * v[0]) * p.P12 - u[1] * v[1] * p.P11;
  };
  return {t * eval(si.col(0), si.col(0)), t * eval(si.col(0), si.col(1))};
}

bool is_exceptional_pair(const TracefreeForm& p, const TracefreeForm& q, double tol) {
  same_k(p, q);
  if (p.k() != 2) return false;
  auto conformal = [tol](const TracefreeForm& f) {
    const double a = f.P11.norm(), b = f.P12.norm();
    return std::abs(a - b) <= tol * std::max(a, b) && std::abs(f.P11.dot(f.P12)) <= tol * a * b && a > 0.0;
  };
  if (!conformal(p) || !conformal(q)) return false;
  const double dp = p.matrix().determinant(), dq = q.matrix().determinant();
  return dp * dq < 0.0;
}

RotationResult find_positive_rotation(const TracefreeForm& p, const TracefreeForm& q, bool restrict_T_special) {
  same_k(p, q);
  if (p.is_zero() || q.is_zero()) throw Error(ErrorCode::ZeroForm, "forms must be nonzero");
  const int k = p.k();
  const bool exceptional = is_exceptional_pair(p, q);
  if (exceptional && restrict_T_special) {
    return Exceptional{"conformal forms with opposite orientations in codimension 2"};
  }

  Found best;
  best.near_exceptional = is_exceptional_pair(p, q, 1e-4);
  best.S = Eigen::Matrix2d::Identity();
  best.T = Eigen::MatrixXd::Identity(k, k);
  best.value = pairing(p, q);
  // positive means clearly above roundoff of the pairing itself
  const double floor = 1e-10 * std::sqrt(pairing(p, p) * pairing(q, q));
  if (best.value > floor) return best;

  const Eigen::MatrixXd qm = q.matrix();
  for (int start = 0; start < 8; ++start) {
    double angle = start * kPi / 8.0;
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(k, k);
    double value = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < 50; ++it) {
      t = align(rotate_form(p, rotation2(angle), Eigen::MatrixXd::Identity(k, k)).matrix(), qm, restrict_T_special);
      angle = best_angle(p, q, t);
      const double next = pairing(rotate_form(p, rotation2(angle), t), q);
      const bool done = next <= value + 1e-15 * std::abs(next);
      value = std::max(value, next);
      if (done) break;
    }
    const double v = pairing(rotate_form(p, rotation2(angle), t), q);
    if (v > best.value) {
      best.value = v;
      best.S = rotation2(angle);
      best.T = t;
    }
  }
  if (!(best.value > floor)) throw Error(ErrorCode::NumericalBreakdown, "no positive rotation found");
  return best;
}

GluingBound predict_gluing_bound(double W1, double W2) {
  GluingBound g;
  g.bound = W1 + W2 - 4.0 * kPi;
  g.strict = true;
  const double multiple = g.bound / kPi;
  char buf[64];
  if (std::abs(multiple - std::round(multiple)) <= 1e-9 * std::max(1.0, std::abs(multiple))) {
    std::snprintf(buf, sizeof buf, "< %ldπ", std::lround(multiple));
  } else {
    std::snprintf(buf, sizeof buf, "< %.9g", g.bound);
  }
  g.text = buf;
  const double six = 6.0 * kPi;
  if (std::abs(W1 - six) <= 1e-9 * six && std::abs(W2 - six) <= 1e-9 * six) {
    g.note = "two RP^2 inputs with opposite e(nu) = -2, +2: Klein bottle with e(nu) = 0";
  }
  return g;
}

}  // namespace klein4
