#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "klein4/surface.hpp"

namespace klein4 {

/// Torus domains use the periodic trapezoid rule on an n x m grid. Sphere
/// domains use a polar grid on the closed unit disk (n radial steps with
/// boundary weight 1/2, m angles) doubled by the involution symmetry.
struct QuadratureSpec {
  int n = 256;
  int m = 256;
  int threads = 0;            // 0 selects the hardware concurrency
  double report_tol = 1e-3;   // relative reporting tolerance
  bool monitor = true;        // compare against the half-resolution grid
};

struct SurfaceIntegrals {
  double willmore = 0;  // (1/4) int |H|^2
  double kperp = 0;     // int Kperp
  double gauss = 0;     // int K
  double area = 0;
  int n = 0, m = 0;
};

SurfaceIntegrals integrate_surface(const Surface& s, int n, int m, int threads = 0);
/// Direct quadrature over both disk charts of a sphere domain, without doubling.
SurfaceIntegrals integrate_two_chart(const Surface& inner, const Surface& outer, int n, int m, int threads = 0);

/// Integrals at (n, m) and, if monitored, at (n/2, m/2). Throws
/// QuadratureNotConverged when halving changes W by more than
/// 10 report_tol W, or the K and Kperp integrals by more than 10 report_tol 2 pi.
struct MonitoredIntegrals {
  SurfaceIntegrals fine, coarse;
};
MonitoredIntegrals integrate_monitored(const Surface& s, const QuadratureSpec& spec);

double willmore_energy(const Surface& s, const QuadratureSpec& spec = {});

struct EulerNormal {
  double raw = 0;
  long rounded = 0;
  double residual = 0;
};
/// (1/2 pi) int Kperp; throws NotNearInteger if the residual is >= 1e-2.
EulerNormal euler_normal_number(const Surface& s, const QuadratureSpec& spec = {});
EulerNormal round_euler(double raw);

double gauss_bonnet(const Surface& s, const QuadratureSpec& spec = {});

struct InvariantReport {
  double W_cover = 0, W_quotient = 0;
  double e_nu_raw = 0;
  long e_nu_cover = 0, e_nu_quotient = 0;
  double gauss_bonnet = 0;
  int chi = 0;
  int degree_g = 0;
  bool wintgen_bound_holds = false;  // W >= 2 pi (chi + |e|) - tol
  std::map<std::string, double> identity_residuals;
  SurfaceIntegrals coarse;
};

/// Cross-identities W = 4 pi deg(g) and W = 2 pi (chi - e(nu)) on the double cover.
InvariantReport consistency_report(const Surface& s, int degree_g, const QuadratureSpec& spec = {});

struct ConvergenceStudy {
  double q_n = 0, q_2n = 0, q_4n = 0;
  double err_n = 0, err_2n = 0;
  double factor = 0;  // err_n / err_2n
};
/// Willmore energy at n, 2n and 4n (square grids), errors against 4n.
ConvergenceStudy convergence_study(const Surface& s, int n, int threads = 0);

struct NamedTransform {
  std::string name;
  AmbientMap map;
};

/// Random similarities (det of Q random in {+1,-1}) and sphere inversions
/// with centers at distance >= 0.25 from a 64 x 64 sample of the surface.
std::vector<NamedTransform> random_transforms(const Surface& s, int similarities, int inversions,
                                              std::uint64_t seed);

struct InvarianceRow {
  std::string name;
  double W = 0, dW_rel = 0;
  double e_raw = 0;
  long e = 0, expected_e = 0;
  bool reverses_orientation = false;
};

struct InvarianceTable {
  double W_base = 0;
  long e_base = 0;
  std::vector<InvarianceRow> rows;
};

/// Throws CenterTooClose if an inversion center lies within 0.1 of the sampled surface.
InvarianceTable invariance_suite(std::shared_ptr<const Surface> s, const std::vector<NamedTransform>& transforms,
                                 const QuadratureSpec& spec = {});

/// Minimum distance from x to a 64 x 64 parameter sample of the surface.
double distance_to_samples(const Surface& s, const Vec4& x, int n = 64);

}  // namespace klein4
