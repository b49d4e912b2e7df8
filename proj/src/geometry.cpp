#include "klein4/geometry.hpp"

#include <cmath>

#include <Eigen/LU>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

const cplx kI(0.0, 1.0);

struct Partials {
  Vec4 fx, fy, fxx, fxy, fyy;
};

Partials central(const Surface& s, cplx z, double h, double h2, const Vec4& f0) {
  Partials p;
  p.fx = (s.point(z + h) - s.point(z - h)) / (2.0 * h);
  p.fy = (s.point(z + kI * h) - s.point(z - kI * h)) / (2.0 * h);
  const double q = h2 * h2;
  p.fxx = (s.point(z + h2) - 2.0 * f0 + s.point(z - h2)) / q;
  p.fyy = (s.point(z + kI * h2) - 2.0 * f0 + s.point(z - kI * h2)) / q;
  const cplx a(h2, h2), b(h2, -h2);
  p.fxy = (s.point(z + a) - s.point(z + b) - s.point(z - b) + s.point(z - a)) / (4.0 * q);
  return p;
}

bool finite(const Vec4& v) { return v.allFinite(); }

}  // namespace

JetSample jet(const Surface& s, cplx z, JetMethod method) {
  JetSample j;
  j.z = z;
  if (method.kind == JetMethod::Kind::DualNumber) {
    const PointJet p = s.point_jet(z);
    for (int i = 0; i < 4; ++i) {
      j.f[i] = p[i].v;
      j.fx[i] = p[i].x;
      j.fy[i] = p[i].y;
      j.fxx[i] = p[i].xx;
      j.fxy[i] = p[i].xy;
      j.fyy[i] = p[i].yy;
    }
  } else {
    j.f = s.point(z);
    const Partials coarse = central(s, z, method.h, method.h2, j.f);
    const Partials fine = central(s, z, method.h / 2, method.h2 / 2, j.f);
    auto rich = [](const Vec4& c, const Vec4& f) -> Vec4 { return (4.0 * f - c) / 3.0; };
    j.fx = rich(coarse.fx, fine.fx);
    j.fy = rich(coarse.fy, fine.fy);
    j.fxx = rich(coarse.fxx, fine.fxx);
    j.fxy = rich(coarse.fxy, fine.fxy);
    j.fyy = rich(coarse.fyy, fine.fyy);
  }
  for (const Vec4* v : {&j.f, &j.fx, &j.fy, &j.fxx, &j.fxy, &j.fyy}) {
    if (!finite(*v)) throw Error(ErrorCode::NumericalBreakdown, "non-finite jet entry");
  }
  if (!(j.fx.norm() > 0.0) || !(j.fy.norm() > 0.0)) {
    throw Error(ErrorCode::NumericalBreakdown, "vanishing first partial");
  }
  return j;
}

CurvatureSample curvature(const JetSample& j, double normal_angle) {
  CurvatureSample c;
  c.E = j.fx.dot(j.fx);
  c.F = j.fx.dot(j.fy);
  c.G = j.fy.dot(j.fy);
  const double det = c.E * c.G - c.F * c.F;
  if (!(det >= 1e-14 * (c.E + c.G) * (c.E + c.G))) throw Error(ErrorCode::DegenerateMetric, "EG - F^2 vanishes");
  c.conf_factor = std::sqrt(det);

  // f_x = a E1, f_y = b E1 + e E2
  const double a = std::sqrt(c.E);
  c.E1 = j.fx / a;
  const double b = j.fy.dot(c.E1);
  Vec4 v = j.fy - b * c.E1;
  const double e = v.norm();
  c.E2 = v / e;

  auto tangent_free = [&](const Vec4& x) -> Vec4 { return x - x.dot(c.E1) * c.E1 - x.dot(c.E2) * c.E2; };
  int seed = 0;
  double best = -1.0;
  for (int k = 0; k < 4; ++k) {
    const double n = tangent_free(Vec4::Unit(k)).norm();
    if (n > best) best = n, seed = k;
  }
  c.N1 = tangent_free(Vec4::Unit(seed)).normalized();
  best = -1.0;
  for (int k = 0; k < 4; ++k) {
    if (k == seed) continue;
    Vec4 w = tangent_free(Vec4::Unit(k));
    w -= w.dot(c.N1) * c.N1;
    if (w.norm() > best) best = w.norm(), c.N2 = w.normalized();
  }
  Eigen::Matrix4d frame;
  frame << c.E1, c.E2, c.N1, c.N2;
  if (frame.determinant() < 0.0) c.N2 = -c.N2;
  if (normal_angle != 0.0) {
    const Vec4 n1 = c.N1, n2 = c.N2;
    c.N1 = std::cos(normal_angle) * n1 + std::sin(normal_angle) * n2;
    c.N2 = -std::sin(normal_angle) * n1 + std::cos(normal_angle) * n2;
  }

  auto normal = [&](const Vec4& x) -> Vec4 { return x.dot(c.N1) * c.N1 + x.dot(c.N2) * c.N2; };
  const Vec4 axx = normal(j.fxx), axy = normal(j.fxy), ayy = normal(j.fyy);
  const double s = b / a;
  c.A11 = axx / c.E;
  c.A12 = (axy - s * axx) / (a * e);
  c.A22 = (ayy - 2.0 * s * axy + s * s * axx) / (e * e);
  c.H = c.A11 + c.A22;
  c.A011 = 0.5 * (c.A11 - c.A22);
  c.A012 = c.A12;
  c.K = c.A11.dot(c.A22) - c.A12.dot(c.A12);
  c.Kperp = 2.0 * (c.A011.dot(c.N1) * c.A012.dot(c.N2) - c.A011.dot(c.N2) * c.A012.dot(c.N1));
  return c;
}

WintgenResiduals wintgen_twistor_residuals(const CurvatureSample& cs) {
  WintgenResiduals w;
  w.sign_flag = (cs.Kperp > 0.0) - (cs.Kperp < 0.0);
  const double n11 = cs.A011.norm(), n12 = cs.A012.norm();
  const double scale = cs.A11.norm() + cs.A12.norm() + cs.A22.norm();
  if (n11 + n12 < std::max(1e-12, 1e-10 * scale)) {
    w.umbilic = true;
    return w;
  }
  const double s11 = n11 * n11, s12 = n12 * n12;
  w.r1 = std::abs(s11 - s12) / (s11 + s12);
  w.r2 = (n11 > 0.0 && n12 > 0.0) ? std::abs(cs.A011.dot(cs.A012)) / (n11 * n12) : 1.0;
  const Vec4 rotated = cs.A011.dot(cs.N2) * cs.N1 - cs.A011.dot(cs.N1) * cs.N2;
  w.twistor_residual = (rotated - cs.A012).norm() / (n11 + n12);
  return w;
}

}  // namespace klein4
