#include "klein4/invariants.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>

#include "klein4/error.hpp"
#include "klein4/geometry.hpp"
#include "klein4/parallel.hpp"

namespace klein4 {

namespace {

constexpr double kPi = std::numbers::pi;

struct Node {
  cplx z;
  double weight;
};

std::vector<Node> torus_nodes(const ParameterDomain& d, int n, int m) {
  std::vector<Node> nodes;
  nodes.reserve(std::size_t(n) * m);
  const double w = d.width * d.height / (double(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) nodes.push_back({cplx(d.width * i / n, d.height * j / m), w});
  }
  return nodes;
}

std::vector<Node> disk_nodes(int n, int m, double factor) {
  std::vector<Node> nodes;
  nodes.reserve(std::size_t(n) * m);
  const double h = 1.0 / n, dt = 2.0 * kPi / m;
  for (int i = 1; i <= n; ++i) {
    const double rho = i * h;
    const double w = factor * (i == n ? 0.5 : 1.0) * h * rho * dt;
    for (int j = 0; j < m; ++j) nodes.push_back({std::polar(rho, j * dt), w});
  }
  return nodes;
}

SurfaceIntegrals integrate_nodes(const Surface& s, const std::vector<Node>& nodes, int threads) {
  const std::size_t count = nodes.size();
  std::vector<double> w(count), kp(count), k(count), a(count);
  parallel_for(count, threads > 0 ? threads : default_threads(), [&](std::size_t i) {
    const CurvatureSample c = curvature(jet(s, nodes[i].z));
    const double da = c.conf_factor * nodes[i].weight;
    w[i] = 0.25 * c.H.squaredNorm() * da;
    kp[i] = c.Kperp * da;
    k[i] = c.K * da;
    a[i] = da;
  });
  SurfaceIntegrals out;
  out.willmore = pairwise_sum(w);
  out.kperp = pairwise_sum(kp);
  out.gauss = pairwise_sum(k);
  out.area = pairwise_sum(a);
  return out;
}

}  // namespace

SurfaceIntegrals integrate_surface(const Surface& s, int n, int m, int threads) {
  if (n < 2 || m < 2) throw Error(ErrorCode::ConfigError, "quadrature grid too small");
  const ParameterDomain d = s.domain();
  SurfaceIntegrals out = integrate_nodes(
      s, d.kind == DomainKind::Torus ? torus_nodes(d, n, m) : disk_nodes(n, m, 2.0), threads);
  out.n = n;
  out.m = m;
  return out;
}

SurfaceIntegrals integrate_two_chart(const Surface& inner, const Surface& outer, int n, int m, int threads) {
  const std::vector<Node> nodes = disk_nodes(n, m, 1.0);
  const SurfaceIntegrals a = integrate_nodes(inner, nodes, threads);
  const SurfaceIntegrals b = integrate_nodes(outer, nodes, threads);
  return {a.willmore + b.willmore, a.kperp + b.kperp, a.gauss + b.gauss, a.area + b.area, n, m};
}

MonitoredIntegrals integrate_monitored(const Surface& s, const QuadratureSpec& spec) {
  MonitoredIntegrals out;
  out.fine = integrate_surface(s, spec.n, spec.m, spec.threads);
  if (!spec.monitor) return out;
  out.coarse = integrate_surface(s, spec.n / 2, spec.m / 2, spec.threads);
  const double lim = 10.0 * spec.report_tol;
  if (std::abs(out.fine.willmore - out.coarse.willmore) > lim * std::abs(out.fine.willmore) ||
      std::abs(out.fine.kperp - out.coarse.kperp) > lim * 2.0 * kPi ||
      std::abs(out.fine.gauss - out.coarse.gauss) > lim * 2.0 * kPi) {
    throw Error(ErrorCode::QuadratureNotConverged, "halving the grid changed the integrals");
  }
  return out;
}

double willmore_energy(const Surface& s, const QuadratureSpec& spec) {
  return integrate_monitored(s, spec).fine.willmore;
}

EulerNormal round_euler(double raw) {
  EulerNormal e;
  e.raw = raw;
  e.rounded = std::lround(raw);
  e.residual = std::abs(raw - double(e.rounded));
  return e;
}

EulerNormal euler_normal_number(const Surface& s, const QuadratureSpec& spec) {
  const EulerNormal e = round_euler(integrate_monitored(s, spec).fine.kperp / (2.0 * kPi));
  if (e.residual >= 1e-2) throw Error(ErrorCode::NotNearInteger, "e(nu) = " + std::to_string(e.raw));
  return e;
}

double gauss_bonnet(const Surface& s, const QuadratureSpec& spec) {
  return integrate_monitored(s, spec).fine.gauss;
}

InvariantReport consistency_report(const Surface& s, int degree_g, const QuadratureSpec& spec) {
  const MonitoredIntegrals q = integrate_monitored(s, spec);
  InvariantReport rep;
  rep.coarse = q.coarse;
  rep.chi = s.domain().euler_characteristic;
  rep.degree_g = degree_g;
  rep.W_cover = q.fine.willmore;
  rep.W_quotient = rep.W_cover / 2.0;
  const EulerNormal e = round_euler(q.fine.kperp / (2.0 * kPi));
  if (e.residual >= 1e-2) throw Error(ErrorCode::NotNearInteger, "e(nu) = " + std::to_string(e.raw));
  rep.e_nu_raw = e.raw;
  rep.e_nu_cover = e.rounded;
  rep.e_nu_quotient = e.rounded / 2;
  rep.gauss_bonnet = q.fine.gauss;
  const double W = rep.W_cover;
  rep.identity_residuals["W_minus_4pi_deg_g"] = std::abs(W - 4.0 * kPi * degree_g) / W;
  rep.identity_residuals["W_minus_2pi_chi_minus_e"] = std::abs(W - 2.0 * kPi * (rep.chi - rep.e_nu_raw)) / W;
  rep.identity_residuals["gauss_bonnet_minus_2pi_chi"] = std::abs(rep.gauss_bonnet - 2.0 * kPi * rep.chi);
  rep.identity_residuals["e_nu_integrality"] = e.residual;
  rep.wintgen_bound_holds =
      W >= 2.0 * kPi * (rep.chi + std::abs(double(rep.e_nu_cover))) - spec.report_tol * W;
  return rep;
}

ConvergenceStudy convergence_study(const Surface& s, int n, int threads) {
  ConvergenceStudy c;
  c.q_n = integrate_surface(s, n, n, threads).willmore;
  c.q_2n = integrate_surface(s, 2 * n, 2 * n, threads).willmore;
  c.q_4n = integrate_surface(s, 4 * n, 4 * n, threads).willmore;
  c.err_n = std::abs(c.q_n - c.q_4n);
  c.err_2n = std::abs(c.q_2n - c.q_4n);
  c.factor = c.err_2n > 0.0 ? c.err_n / c.err_2n : std::numeric_limits<double>::infinity();
  return c;
}

double distance_to_samples(const Surface& s, const Vec4& x, int n) {
  const ParameterDomain d = s.domain();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx z = d.kind == DomainKind::Torus ? cplx(d.width * i / n, d.height * j / n)
                                                 : std::polar((i + 0.5) / n, 2.0 * kPi * j / n);
      best = std::min(best, (s.point(z) - x).norm());
    }
  }
  return best;
}

std::vector<NamedTransform> random_transforms(const Surface& s, int similarities, int inversions,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NamedTransform> out;
  for (int k = 0; k < similarities; ++k) {
    Eigen::Matrix4d a;
    for (int i = 0; i < 16; ++i) a(i) = gauss(rng);
    Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix4d>(a).householderQ();
    if (unit(rng) < 0.5) q.col(0) = -q.col(0);
    const double scale = 0.2 + 4.8 * unit(rng);
    const Vec4 shift(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    out.push_back({"similarity_" + std::to_string(k), AmbientMap::similarity(q, scale, shift)});
  }
  // centers in a box around the sample, kept away from it
  const int n = 32;
  const ParameterDomain d = s.domain();
  Vec4 lo = Vec4::Constant(1e300), hi = Vec4::Constant(-1e300);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx z = d.kind == DomainKind::Torus ? cplx(d.width * i / n, d.height * j / n)
                                                 : std::polar((i + 0.5) / n, 2.0 * kPi * j / n);
      const Vec4 p = s.point(z);
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  int made = 0;
  for (int attempt = 0; made < inversions && attempt < 10000; ++attempt) {
    Vec4 c;
    for (int i = 0; i < 4; ++i) c[i] = lo[i] - 0.5 + (hi[i] - lo[i] + 1.0) * unit(rng);
    if (distance_to_samples(s, c) < 0.25) continue;
    out.push_back({"inversion_" + std::to_string(made), AmbientMap::inversion(c, 1.0)});
    ++made;
  }
  return out;
}

InvarianceTable invariance_suite(std::shared_ptr<const Surface> s, const std::vector<NamedTransform>& transforms,
                                 const QuadratureSpec& spec) {
  for (const auto& t : transforms) {
    if (t.map.is_inversion() && distance_to_samples(*s, t.map.center()) <= 0.1) {
      throw Error(ErrorCode::CenterTooClose, t.name + " is within 0.1 of the surface");
    }
  }
  InvarianceTable table;
  const SurfaceIntegrals base = integrate_monitored(*s, spec).fine;
  table.W_base = base.willmore;
  table.e_base = std::lround(base.kperp / (2.0 * kPi));
  for (const auto& t : transforms) {
    const TransformedSurface ts(s, t.map);
    const SurfaceIntegrals q = integrate_monitored(ts, spec).fine;
    InvarianceRow row;
    row.name = t.name;
    row.W = q.willmore;
    row.dW_rel = std::abs(q.willmore - base.willmore) / base.willmore;
    row.e_raw = q.kperp / (2.0 * kPi);
    row.e = std::lround(row.e_raw);
    row.reverses_orientation = t.map.reverses_orientation();
    row.expected_e = row.reverses_orientation ? -table.e_base : table.e_base;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace klein4
