#include "klein4/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 60;
const cplx kI(0.0, 1.0);

bool integral(double x) { return std::abs(x - std::round(x)) <= kMembershipTol; }

}  // namespace

EllipticContext::EllipticContext(const Lattice& lattice, double tol) : lattice_(lattice), tol_(tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::SeriesNotConverged, "tolerance must be positive");
  const LatticeReduction red = reduce_lattice(lattice_);
  tau_c_ = red.tau;
  scale_ = red.scale;
  q_ = std::exp(kI * kPi * tau_c_);

  // Terms of the theta series (with two derivative weights) on the centered
  // cell are bounded by exp(-pi t (n^2 - 1/4)) (2n+1)^2 relative to n = 0.
  const double t = tau_c_.imag();
  int n = 1;
  while (n <= kMaxTerms && -kPi * t * (n * n - 0.25) + 2.0 * std::log(2.0 * n + 1.0) >= std::log(tol)) ++n;
  if (n > kMaxTerms) {
    throw Error(ErrorCode::SeriesNotConverged, "theta series needs more than 60 terms");
  }
  terms_ = n + 1;

  coef_.resize(terms_);
  cplx theta1 = 0.0, theta3 = 0.0;
  for (int k = 0; k < terms_; ++k) {
    const double h = k + 0.5;
    coef_[k] = (k % 2 == 0 ? 1.0 : -1.0) * std::exp(kI * kPi * tau_c_ * (h * h));
    const double w = 2.0 * k + 1.0;
    theta1 += coef_[k] * w;
    theta3 += coef_[k] * (w * w * w);
  }
  theta_prime0_ = 2.0 * theta1;
  const cplx theta_triple0 = -2.0 * theta3;
  eta_c1_ = -(kPi * kPi / 3.0) * theta_triple0 / theta_prime0_;

  // eta(tau) from the logarithmic derivative of theta at the half period
  // pi tau / 2; Legendre's relation is then an independent check.
  {
    const cplx v = kPi * tau_c_ / 2.0;
    const cplx w = std::exp(kI * v);
    const cplx w2 = w * w;
    cplx a = w, th = 0.0, dth = 0.0;
    for (int k = 0; k < terms_; ++k) {
      const cplx b = 1.0 / a;
      th += coef_[k] * (a - b) / kI;
      dth += coef_[k] * (2.0 * k + 1.0) * (a + b);
      a *= w2;
    }
    eta_ctau_ = eta_c1_ * tau_c_ + 2.0 * kPi * dth / th;
  }

  // eta of the canonical generators of the scaled lattice, then back to the
  // stored generators.
  const cplx eta_w1c = eta_c1_ / scale_;
  const cplx eta_w2c = eta_ctau_ / scale_;
  const BasisChange inv = red.change.inverse();
  eta1_ = double(inv.a) * eta_w1c + double(inv.b) * eta_w2c;
  eta_tau_ = double(inv.c) * eta_w1c + double(inv.d) * eta_w2c;

  const double scale_ref = std::abs(eta1_ * lattice_.omega2()) + 2.0 * kPi;
  if (!(legendre_residual() <= 1e-9 * scale_ref)) {
    throw Error(ErrorCode::SeriesNotConverged, "Legendre relation check failed");
  }
}

cplx EllipticContext::eta(double m, double n) const {
  if (!integral(m) || !integral(n)) {
    throw Error(ErrorCode::NotLatticeVector, "eta needs integer lattice coordinates");
  }
  return eta(std::lround(m), std::lround(n));
}

cplx EllipticContext::eta_at(cplx omega) const {
  const auto [s, t] = lattice_.coordinates(omega);
  return eta(s, t);
}

double EllipticContext::legendre_residual() const {
  return std::abs(eta1_ * lattice_.omega2() - eta_tau_ * lattice_.omega1() - 2.0 * kPi * kI);
}

EllipticContext::Reduced EllipticContext::reduce(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::SeriesNotConverged, "non-finite argument");
  }
  const cplx zeta = z / scale_;
  const double n = std::round(zeta.imag() / tau_c_.imag());
  const cplx shifted = zeta - n * tau_c_;
  const double m = std::round(shifted.real());
  Reduced r;
  r.zeta0 = shifted - m;
  const cplx lambda = m + n * tau_c_;
  r.eta_lambda = m * eta_c1_ + n * eta_ctau_;
  r.exponent = r.eta_lambda * (r.zeta0 + lambda / 2.0);
  const long long mi = std::llround(m), ni = std::llround(n);
  r.sign = ((mi + ni + mi * ni) & 1LL) ? -1.0 : 1.0;
  return r;
}

cplx EllipticContext::sigma(cplx z) const {
  const Reduced r = reduce(z);
  const cplx w = std::exp(kI * kPi * r.zeta0);
  const cplx w2 = w * w;
  cplx a = w, th = 0.0;
  for (int k = 0; k < terms_; ++k) {
    th += coef_[k] * (a - 1.0 / a);
    a *= w2;
  }
  th /= kI;
  const cplx e = std::exp(eta_c1_ * r.zeta0 * r.zeta0 / 2.0 + r.exponent);
  return r.sign * scale_ * th / (kPi * theta_prime0_) * e;
}

Taylor2<cplx> EllipticContext::sigma_jet(cplx z) const {
  const Reduced r = reduce(z);
  const cplx w = std::exp(kI * kPi * r.zeta0);
  const cplx w2 = w * w;
  cplx a = w, th = 0.0, th1 = 0.0, th2 = 0.0;
  for (int k = 0; k < terms_; ++k) {
    const cplx b = 1.0 / a;
    const double o = 2.0 * k + 1.0;
    const cplx s = coef_[k] * (a - b);
    th += s;
    th1 += coef_[k] * (a + b) * o;
    th2 += s * (o * o);
    a *= w2;
  }
  // th = 2i * sum sin, so theta = th / i, theta' = th1, theta'' = -th2 / i
  const cplx norm = 1.0 / (kPi * theta_prime0_);
  const Taylor2<cplx> theta(th / kI * norm, kPi * th1 * norm, -kPi * kPi * th2 / kI * norm);
  const Taylor2<cplx> expo(eta_c1_ * r.zeta0 * r.zeta0 / 2.0 + r.exponent,
                           eta_c1_ * r.zeta0 + r.eta_lambda, eta_c1_);
  Taylor2<cplx> s = theta * exp(expo);
  // back to z = scale * zeta
  return {r.sign * scale_ * s.v, r.sign * s.d1, r.sign * s.d2 / scale_};
}

}  // namespace klein4
