#include "klein4/lattice.hpp"

#include <cmath>
#include <limits>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kTieTol = 1e-12;

}  // namespace

BasisChange BasisChange::inverse() const {
  const long det_value = det();
  // unimodular: inverse = adj / det with det = +-1
  return {d * det_value, -b * det_value, -c * det_value, a * det_value};
}

Lattice::Lattice(cplx omega1, cplx omega2) : omega1_(omega1), omega2_(omega2) {
  const double cross = (std::conj(omega1_) * omega2_).imag();
  const double scale = std::abs(omega1_) * std::abs(omega2_);
  if (!(scale > 0.0) || !std::isfinite(scale) || std::abs(cross) <= 1e-14 * scale) {
    throw Error(ErrorCode::DegenerateLattice, "generators are collinear or zero");
  }
  if (cross < 0.0) omega2_ = -omega2_;
}

std::array<double, 2> Lattice::coordinates(cplx z) const {
  // Solve z = s*w1 + t*w2 via Cramer's rule on the real 2x2 system.
  const double det = omega1_.real() * omega2_.imag() - omega1_.imag() * omega2_.real();
  const double s = (z.real() * omega2_.imag() - z.imag() * omega2_.real()) / det;
  const double t = (omega1_.real() * z.imag() - omega1_.imag() * z.real()) / det;
  return {s, t};
}

std::array<long, 2> Lattice::nearest(cplx z) const {
  const auto [s, t] = coordinates(z);
  return {std::lround(s), std::lround(t)};
}

bool Lattice::contains(cplx z, double tol) const {
  const auto [s, t] = coordinates(z);
  return std::abs(s - std::round(s)) <= tol && std::abs(t - std::round(t)) <= tol;
}

cplx Lattice::reduce(cplx z) const {
  const auto [s, t] = coordinates(z);
  const double fs = std::floor(s);
  const double ft = std::floor(t);
  cplx out = z - point(fs, ft);
  // guard against s - floor(s) rounding up to exactly 1
  const auto [s2, t2] = coordinates(out);
  if (s2 >= 1.0) out -= omega1_;
  if (t2 >= 1.0) out -= omega2_;
  return out;
}

double Lattice::orbit_distance(cplx z, cplx w) const {
  const cplx d = z - w;
  const auto [m, n] = nearest(d);
  double best = std::numeric_limits<double>::infinity();
  for (long dm = -2; dm <= 2; ++dm) {
    for (long dn = -2; dn <= 2; ++dn) {
      best = std::min(best, std::abs(d - point(double(m + dm), double(n + dn))));
    }
  }
  return best;
}

bool Lattice::is_rectangular(double tol) const {
  // orthogonal generators
  return std::abs((std::conj(omega1_) * omega2_).real()) <=
         tol * std::abs(omega1_) * std::abs(omega2_);
}

LatticeReduction reduce_lattice(const Lattice& lattice) {
  const cplx w1 = lattice.omega1();
  const cplx w2 = lattice.omega2();
  BasisChange m;
  auto current_tau = [&] { return (double(m.c) * w1 + double(m.d) * w2) / (double(m.a) * w1 + double(m.b) * w2); };
  auto shift = [&](long k) {  // w2' = w2 - k w1
    m.c -= k * m.a;
    m.d -= k * m.b;
  };
  auto invert = [&] {  // (w1, w2) -> (w2, -w1), tau -> -1/tau
    const BasisChange old = m;
    m = {old.c, old.d, -old.a, -old.b};
  };

  for (int iter = 0; iter < 10000; ++iter) {
    cplx tau = current_tau();
    // strip -1/2 < Re tau <= 1/2
    const long k = static_cast<long>(std::ceil(tau.real() - 0.5 - kTieTol));
    if (k != 0) {
      shift(k);
      tau = current_tau();
    }
    if (std::abs(tau) < 1.0 - kTieTol) {
      invert();
      continue;
    }
    break;
  }

  cplx tau = current_tau();
  if (tau.real() <= -0.5 + kTieTol) {
    shift(-1);
    tau = current_tau();
  }
  if (std::abs(std::abs(tau) - 1.0) <= kTieTol && tau.real() < -kTieTol) {
    // on the unit circle -1/tau = -conj(tau) mirrors Re tau
    invert();
    tau = current_tau();
  }
  const cplx scale = double(m.a) * w1 + double(m.b) * w2;
  return {tau, m, scale};
}

}  // namespace klein4
