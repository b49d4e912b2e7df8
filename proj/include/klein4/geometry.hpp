#pragma once

#include "klein4/surface.hpp"

namespace klein4 {

struct JetMethod {
  enum class Kind { DualNumber, FiniteDifference };

  Kind kind = Kind::DualNumber;
  double h = 1e-5;   // first partials
  double h2 = 1e-3;  // second partials (roundoff grows like 1/h^2)

  static JetMethod dual() { return {}; }
  static JetMethod finite_difference(double h = 1e-5, double h2 = 1e-3) { return {Kind::FiniteDifference, h, h2}; }
};

/// f and its partials in the real coordinates of z = x + iy.
struct JetSample {
  cplx z;
  Vec4 f, fx, fy, fxx, fxy, fyy;
};

/// Finite differences use central stencils with one Richardson level.
/// Throws NumericalBreakdown for non-finite entries or vanishing f_x, f_y.
JetSample jet(const Surface& s, cplx z, JetMethod method = JetMethod::dual());

struct CurvatureSample {
  double E = 0, F = 0, G = 0;
  Vec4 E1, E2, N1, N2;  // positively oriented orthonormal frame
  Vec4 A11, A12, A22;   // second fundamental form in (E1, E2)
  Vec4 H;               // A11 + A22
  Vec4 A011, A012;      // trace-free part
  double K = 0;
  double Kperp = 0;
  double conf_factor = 0;  // sqrt(EG - F^2), the area density
};

/// Frames by Gram-Schmidt: E1 along f_x, N1 seeded by the standard basis
/// vector least aligned with the tangent plane, N2 signed so that
/// det(E1, E2, N1, N2) = +1. normal_angle rotates (N1, N2) afterwards.
/// Throws DegenerateMetric if EG - F^2 < 1e-14 (E + G)^2.
CurvatureSample curvature(const JetSample& j, double normal_angle = 0.0);

struct WintgenResiduals {
  bool umbilic = false;  // residuals are undefined (zero) when set
  double r1 = 0;         // ||A011|^2 - |A012|^2| / (|A011|^2 + |A012|^2)
  double r2 = 0;         // |<A011, A012>| / (|A011| |A012|)
  int sign_flag = 0;     // sign of Kperp
  double twistor_residual = 0;  // |F A011 - A012| / (|A011| + |A012|) with F N1 = -N2, F N2 = N1
};

/// Umbilic when |A011| + |A012| < max(1e-12, 1e-10 (|A11| + |A12| + |A22|)).
WintgenResiduals wintgen_twistor_residuals(const CurvatureSample& cs);

}  // namespace klein4
