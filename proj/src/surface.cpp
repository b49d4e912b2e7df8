#include "klein4/surface.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector3d on_sphere(cplx z) {
  const double n = std::norm(z);
  return Eigen::Vector3d(2.0 * z.real(), 2.0 * z.imag(), n - 1.0) / (n + 1.0);
}

double wrapped(double d, double period) {
  d = std::fmod(std::abs(d), period);
  return std::min(d, period - d);
}

RJet cos_jet(const RJet& u) { return compose(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v)); }
RJet sin_jet(const RJet& u) { return compose(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v)); }

}  // namespace

double Surface::parameter_distance(cplx z, cplx w) const {
  const ParameterDomain d = domain();
  if (d.kind == DomainKind::Sphere) return (on_sphere(z) - on_sphere(w)).norm();
  return std::hypot(wrapped(z.real() - w.real(), d.width), wrapped(z.imag() - w.imag(), d.height));
}

Vec4 values(const PointJet& j) { return {j[0].v, j[1].v, j[2].v, j[3].v}; }

AmbientMap AmbientMap::similarity(const Eigen::Matrix4d& q, double scale, const Vec4& shift) {
  if (!(q.transpose() * q).isApprox(Eigen::Matrix4d::Identity(), 1e-12)) {
    throw Error(ErrorCode::NotOrthogonal, "similarity needs an orthogonal matrix");
  }
  AmbientMap m;
  m.linear_ = scale * q;
  m.shift_ = shift;
  return m;
}

AmbientMap AmbientMap::inversion(const Vec4& center, double radius) {
  AmbientMap m;
  m.kind_ = Kind::Inversion;
  m.shift_ = center;
  m.radius_ = radius;
  return m;
}

AmbientMap AmbientMap::reflection(int axis) {
  AmbientMap m;
  m.linear_(axis, axis) = -1.0;
  return m;
}

AmbientMap AmbientMap::drop_last() {
  AmbientMap m;
  m.linear_(3, 3) = 0.0;
  return m;
}

bool AmbientMap::reverses_orientation() const {
  return kind_ == Kind::Inversion || linear_.determinant() < 0.0;
}

Vec4 AmbientMap::apply(const Vec4& x) const {
  if (kind_ == Kind::Linear) return linear_ * x + shift_;
  const Vec4 d = x - shift_;
  return shift_ + radius_ * radius_ * d / d.squaredNorm();
}

PointJet AmbientMap::apply(const PointJet& x) const {
  PointJet out;
  if (kind_ == Kind::Linear) {
    for (int i = 0; i < 4; ++i) {
      out[i] = RJet(shift_[i]);
      for (int k = 0; k < 4; ++k) {
        if (linear_(i, k) != 0.0) out[i] += linear_(i, k) * x[k];
      }
    }
    return out;
  }
  PointJet d;
  RJet s(0.0);
  for (int i = 0; i < 4; ++i) {
    d[i] = x[i] - shift_[i];
    s += d[i] * d[i];
  }
  const RJet w = (radius_ * radius_) / s;
  for (int i = 0; i < 4; ++i) out[i] = shift_[i] + d[i] * w;
  return out;
}

PointJet PlaneSurface::point_jet(cplx z) const {
  return {RJet(z.real(), 1, 0, 0, 0, 0), RJet(z.imag(), 0, 1, 0, 0, 0), RJet(0.0), RJet(0.0)};
}

Vec4 RoundSphere::point(cplx z) const {
  const Eigen::Vector3d p = rho_ * on_sphere(z);
  return {p.x(), p.y(), p.z(), 0.0};
}

PointJet RoundSphere::point_jet(cplx z) const {
  const CJet w = complex_variable(z);
  const RJet n = real_part(w * conj(w));
  const RJet d = rho_ / (n + 1.0);
  return {2.0 * real_part(w) * d, 2.0 * imag_part(w) * d, (n - 1.0) * d, RJet(0.0)};
}

Vec4 CliffordTorus::point(cplx z) const {
  const double s = std::numbers::sqrt2 / 2.0;
  return s * Vec4(std::cos(kTwoPi * z.real()), std::sin(kTwoPi * z.real()), std::cos(kTwoPi * z.imag()),
                  std::sin(kTwoPi * z.imag()));
}

PointJet CliffordTorus::point_jet(cplx z) const {
  const double s = std::numbers::sqrt2 / 2.0;
  const RJet x(kTwoPi * z.real(), kTwoPi, 0, 0, 0, 0);
  const RJet y(kTwoPi * z.imag(), 0, kTwoPi, 0, 0, 0);
  return {s * cos_jet(x), s * sin_jet(x), s * cos_jet(y), s * sin_jet(y)};
}

}  // namespace klein4
