#pragma once

// Parametrized surfaces in R^4 and ambient maps acting on them.

#include <array>
#include <memory>

#include <Eigen/Core>

#include "klein4/jet.hpp"

namespace klein4 {

using Vec4 = Eigen::Vector4d;
/// Real 2-jets of the four coordinate functions.
using PointJet = std::array<RJet, 4>;

enum class DomainKind {
  Torus,   // [0, width) x [0, height), periodic
  Sphere,  // the Riemann sphere, charted by the closed unit disk and its involution image
};

struct ParameterDomain {
  DomainKind kind = DomainKind::Torus;
  double width = 1.0;
  double height = 1.0;
  int euler_characteristic = 0;
};

class Surface {
 public:
  virtual ~Surface() = default;

  virtual Vec4 point(cplx z) const = 0;
  virtual PointJet point_jet(cplx z) const = 0;
  virtual ParameterDomain domain() const = 0;

  /// Antiholomorphic involution with f o I = f, if the surface has one.
  virtual bool has_involution() const { return false; }
  virtual cplx involution(cplx z) const { return z; }

  /// Distance on the parameter domain (flat torus or chordal on the sphere).
  double parameter_distance(cplx z, cplx w) const;
};

/// Similarities, sphere inversions, coordinate reflections and the drop of
/// the fourth coordinate, acting on points and 2-jets.
class AmbientMap {
 public:
  /// x -> scale * Q x + shift; Q must be orthogonal.
  static AmbientMap similarity(const Eigen::Matrix4d& q, double scale, const Vec4& shift);
  /// x -> center + radius^2 (x - center) / |x - center|^2
  static AmbientMap inversion(const Vec4& center, double radius = 1.0);
  static AmbientMap reflection(int axis);
  static AmbientMap drop_last();

  Vec4 apply(const Vec4& x) const;
  PointJet apply(const PointJet& x) const;

  bool reverses_orientation() const;
  bool is_inversion() const { return kind_ == Kind::Inversion; }
  const Vec4& center() const { return shift_; }

 private:
  enum class Kind { Linear, Inversion };

  Kind kind_ = Kind::Linear;
  Eigen::Matrix4d linear_ = Eigen::Matrix4d::Identity();
  Vec4 shift_ = Vec4::Zero();
  double radius_ = 1.0;
};

class TransformedSurface final : public Surface {
 public:
  TransformedSurface(std::shared_ptr<const Surface> base, AmbientMap map)
      : base_(std::move(base)), map_(std::move(map)) {}

  Vec4 point(cplx z) const override { return map_.apply(base_->point(z)); }
  PointJet point_jet(cplx z) const override { return map_.apply(base_->point_jet(z)); }
  ParameterDomain domain() const override { return base_->domain(); }
  bool has_involution() const override { return base_->has_involution(); }
  cplx involution(cplx z) const override { return base_->involution(z); }

 private:
  std::shared_ptr<const Surface> base_;
  AmbientMap map_;
};

/// f(x + iy) = (x, y, 0, 0) on the unit torus chart (not periodic; for jets only).
class PlaneSurface final : public Surface {
 public:
  Vec4 point(cplx z) const override { return {z.real(), z.imag(), 0.0, 0.0}; }
  PointJet point_jet(cplx z) const override;
  ParameterDomain domain() const override { return {}; }
};

/// Round sphere of radius rho in the first three coordinates, parametrized by
/// inverse stereographic projection. The antipodal map z -> -1/conj(z) is an
/// isometry, so disk doubling applies to its integrands.
class RoundSphere final : public Surface {
 public:
  explicit RoundSphere(double rho = 1.0) : rho_(rho) {}

  Vec4 point(cplx z) const override;
  PointJet point_jet(cplx z) const override;
  ParameterDomain domain() const override { return {DomainKind::Sphere, 1.0, 1.0, 2}; }

 private:
  double rho_;
};

/// Product of two circles of radius 1/sqrt(2) on the square torus.
class CliffordTorus final : public Surface {
 public:
  Vec4 point(cplx z) const override;
  PointJet point_jet(cplx z) const override;
  ParameterDomain domain() const override { return {}; }
};

/// Values of a jet tuple.
Vec4 values(const PointJet& j);

}  // namespace klein4
