#include "klein4/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kSamePoint = 1e-12;
constexpr double kPi = std::numbers::pi;

double parity_sign(long m, long n) { return ((m + n + m * n) & 1L) ? -1.0 : 1.0; }

std::array<long, 2> lattice_coords(const Lattice& l, cplx w) {
  const auto [m, n] = l.nearest(w);
  return {m, n};
}

bool is_rectangular_unit(const Lattice& l) {
  return std::abs(l.omega1() - 1.0) <= 1e-14 && std::abs(l.omega2().real()) <= 1e-14 * std::abs(l.omega2());
}

}  // namespace

int Divisor::pole_degree() const {
  int d = 0;
  for (const auto& p : poles) d += p.order;
  return d;
}

int Divisor::zero_degree() const {
  int d = 0;
  for (const auto& p : zeros) d += p.order;
  return d;
}

EllipticFunctionRep EllipticFunctionRep::from_parts(std::shared_ptr<const EllipticContext> ctx, Divisor divisor,
                                                    std::array<long, 2> omega0, cplx c) {
  EllipticFunctionRep f;
  f.ctx_ = std::move(ctx);
  f.divisor_ = std::move(divisor);
  f.omega0_ = omega0;
  f.c_ = c;
  f.normalize();
  return f;
}

void EllipticFunctionRep::normalize() {
  const Lattice& lat = ctx_->lattice();

  // Moving a zero a = a' + lambda multiplies the representation by
  // psi(lambda) exp(eta(lambda)(a' + lambda/2)) and shifts omega0 by lambda;
  // poles contribute the reciprocal factor and the opposite shift.
  auto relocate = [&](DivisorPoint& p, cplx target, bool zero) {
    const cplx lambda = p.point - target;
    const auto [m, n] = lattice_coords(lat, lambda);
    if (m == 0 && n == 0) {
      p.point = target;
      return;
    }
    const cplx lam = lat.point(double(m), double(n));
    const cplx e = ctx_->eta(m, n) * (target + lam / 2.0);
    const cplx factor = parity_sign(m, n) * std::exp(zero ? e : -e);
    c_ *= std::pow(factor, p.order);
    const long s = zero ? p.order : -p.order;
    omega0_[0] += s * m;
    omega0_[1] += s * n;
    p.point = target;
  };

  for (auto& p : divisor_.zeros) relocate(p, lat.reduce(p.point), true);
  for (auto& p : divisor_.poles) relocate(p, lat.reduce(p.point), false);

  auto merge = [&](std::vector<DivisorPoint>& pts, bool zero) {
    std::vector<DivisorPoint> out;
    for (auto p : pts) {
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const DivisorPoint& q) { return lat.orbit_distance(p.point, q.point) < kSamePoint; });
      if (it == out.end()) {
        out.push_back(p);
      } else {
        const auto [m, n] = lattice_coords(lat, p.point - it->point);
        relocate(p, p.point - lat.point(double(m), double(n)), zero);
        it->order += p.order;
      }
    }
    pts = std::move(out);
  };
  merge(divisor_.zeros, true);
  merge(divisor_.poles, false);

  // cancel coincident zero/pole pairs
  for (auto& z : divisor_.zeros) {
    for (auto& p : divisor_.poles) {
      if (z.order == 0 || p.order == 0) continue;
      if (lat.orbit_distance(z.point, p.point) >= kSamePoint) continue;
      const auto [m, n] = lattice_coords(lat, p.point - z.point);
      relocate(p, p.point - lat.point(double(m), double(n)), false);
      const int k = std::min(z.order, p.order);
      z.order -= k;
      p.order -= k;
    }
  }
  auto drop_empty = [](std::vector<DivisorPoint>& pts) {
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](const DivisorPoint& p) { return p.order == 0; }), pts.end());
  };
  drop_empty(divisor_.zeros);
  drop_empty(divisor_.poles);
}

cplx EllipticFunctionRep::value(cplx z) const {
  const cplx zr = ctx_->lattice().reduce(z);
  cplx v = c_ * std::exp(-ctx_->eta(omega0_[0], omega0_[1]) * zr);
  for (const auto& a : divisor_.zeros) v *= std::pow(ctx_->sigma(zr - a.point), a.order);
  for (const auto& b : divisor_.poles) v /= std::pow(ctx_->sigma(zr - b.point), b.order);
  return v;
}

Taylor2<cplx> EllipticFunctionRep::jet(cplx z) const {
  const cplx zr = ctx_->lattice().reduce(z);
  const cplx eta0 = ctx_->eta(omega0_[0], omega0_[1]);
  Taylor2<cplx> t = c_ * exp(Taylor2<cplx>(-eta0 * zr, -eta0, 0.0));
  for (const auto& a : divisor_.zeros) {
    const Taylor2<cplx> s = ctx_->sigma_jet(zr - a.point);
    for (int k = 0; k < a.order; ++k) t *= s;
  }
  for (const auto& b : divisor_.poles) {
    const Taylor2<cplx> s = ctx_->sigma_jet(zr - b.point);
    for (int k = 0; k < b.order; ++k) t /= s;
  }
  return t;
}

double EllipticFunctionRep::pole_distance(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& b : divisor_.poles) d = std::min(d, ctx_->lattice().orbit_distance(z, b.point));
  return d;
}

SphereValue EllipticFunctionRep::eval(cplx z) const {
  if (pole_distance(z) < kPoleRadius) return {cplx(0.0), true};
  const cplx v = value(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {cplx(0.0), true};
  return {v, false};
}

EllipticFunctionRep EllipticFunctionRep::reciprocal() const {
  EllipticFunctionRep r = *this;
  std::swap(r.divisor_.zeros, r.divisor_.poles);
  r.c_ = 1.0 / c_;
  r.omega0_ = {-omega0_[0], -omega0_[1]};
  return r;
}

EllipticFunctionRep EllipticFunctionRep::scaled(cplx factor) const {
  EllipticFunctionRep r = *this;
  r.c_ *= factor;
  return r;
}

EllipticFunctionRep operator*(const EllipticFunctionRep& f, const EllipticFunctionRep& g) {
  Divisor d = f.divisor_;
  d.zeros.insert(d.zeros.end(), g.divisor_.zeros.begin(), g.divisor_.zeros.end());
  d.poles.insert(d.poles.end(), g.divisor_.poles.begin(), g.divisor_.poles.end());
  return EllipticFunctionRep::from_parts(f.ctx_, std::move(d),
                                         {f.omega0_[0] + g.omega0_[0], f.omega0_[1] + g.omega0_[1]}, f.c_ * g.c_);
}

EllipticFunctionRep operator/(const EllipticFunctionRep& f, const EllipticFunctionRep& g) {
  return f * g.reciprocal();
}

EllipticFunctionRep EllipticFunctionRep::involution_conjugate() const {
  if (!is_rectangular_unit(ctx_->lattice())) {
    throw Error(ErrorCode::NonRectangularLattice, "involution conjugate needs the lattice (1, ir)");
  }
  // conj(sigma(u)) = sigma(conj u) on real lattices, so zeros/poles map to
  // conj(p) - 1/2 and the exponential picks up eta(conj omega0).
  Divisor d = divisor_;
  for (auto& p : d.zeros) p.point = std::conj(p.point) - 0.5;
  for (auto& p : d.poles) p.point = std::conj(p.point) - 0.5;
  const std::array<long, 2> w0{omega0_[0], -omega0_[1]};
  const cplx c = std::conj(c_) * std::exp(-ctx_->eta(w0[0], w0[1]) / 2.0);
  return from_parts(ctx_, std::move(d), w0, c);
}

EllipticFunctionRep build_elliptic(const Divisor& divisor, std::shared_ptr<const EllipticContext> ctx, cplx c) {
  for (const auto* pts : {&divisor.poles, &divisor.zeros}) {
    for (const auto& p : *pts) {
      if (p.order <= 0) throw Error(ErrorCode::DegreeMismatch, "divisor orders must be positive");
    }
  }
  if (divisor.pole_degree() != divisor.zero_degree()) {
    throw Error(ErrorCode::DegreeMismatch, "pole and zero degrees differ");
  }
  const Lattice& lat = ctx->lattice();
  cplx abel = 0.0;
  for (const auto& p : divisor.poles) abel += double(p.order) * p.point;
  for (const auto& p : divisor.zeros) abel -= double(p.order) * p.point;
  if (!lat.contains(abel, kMembershipTol)) {
    throw Error(ErrorCode::AbelViolation, "sum(poles) - sum(zeros) is not a lattice vector");
  }
  const auto w0 = lattice_coords(lat, abel);
  Divisor d = divisor;
  // absorb the float defect into the first zero so the Abel sum is exact
  const cplx defect = abel - lat.point(double(w0[0]), double(w0[1]));
  if (!d.zeros.empty()) d.zeros.front().point += defect / double(d.zeros.front().order);
  return EllipticFunctionRep::from_parts(std::move(ctx), std::move(d), w0, c);
}

SphereValue eval_elliptic(const EllipticFunctionRep& f, cplx z) { return f.eval(z); }

SymmetricG build_symmetric_g(const std::array<cplx, 4>& poles, std::shared_ptr<const EllipticContext> ctx) {
  const Lattice& lat = ctx->lattice();
  if (!is_rectangular_unit(lat)) {
    throw Error(ErrorCode::NonRectangularLattice, "symmetric g needs the lattice (1, ir)");
  }
  const double r = lat.omega2().imag();
  constexpr double kEdge = 1e-12;
  for (cplx b : poles) {
    if (b.real() < -kEdge || b.real() > 1.0 + kEdge || b.imag() < -kEdge || b.imag() > r + kEdge) {
      throw Error(ErrorCode::PoleOutsideDomain, "pole outside [0,1]x[0,r]");
    }
  }
  double sum_im = 0.0;
  for (cplx b : poles) sum_im += b.imag();
  const double x = 2.0 * sum_im / r;
  const double k = std::round(x);
  if (std::abs(x - k) > 1e-9 || std::fmod(std::abs(k), 2.0) != 1.0) {
    throw Error(ErrorCode::ParityViolation, "sum Im(poles) is not an odd multiple of r/2");
  }
  SymmetricG out;
  out.l = static_cast<int>((k - 1.0) / 2.0);
  const double correction = (k * r / 2.0 - sum_im) / 4.0;
  for (int i = 0; i < 4; ++i) out.poles[i] = poles[i] + cplx(0.0, correction);

  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double d = lat.orbit_distance(out.poles[i], out.poles[j]);
      if (d >= kSamePoint && d < kMinSeparation) {
        throw Error(ErrorCode::DegenerateChoice, "distinct poles closer than the minimum separation");
      }
    }
    for (int j = 0; j < 4; ++j) {
      const cplx zero = std::conj(out.poles[j]) + 0.5;
      if (lat.orbit_distance(out.poles[i], zero) < kMinSeparation) {
        throw Error(ErrorCode::DegenerateChoice, "a zero of g meets a pole of g");
      }
    }
  }

  Divisor d;
  double re_sum = 0.0;
  for (cplx b : out.poles) {
    d.poles.push_back({b, 1});
    d.zeros.push_back({std::conj(b) + 0.5, 1});
    re_sum += b.real();
  }
  // omega0 = sum b - sum(conj b + 1/2) = (2l+1) i r - 2
  const std::array<long, 2> w0{-2, static_cast<long>(k)};
  const cplx c = std::exp(-ctx->eta(1L, 0L) * (1.0 + re_sum) / 2.0);
  out.g = EllipticFunctionRep::from_parts(std::move(ctx), std::move(d), w0, c);
  return out;
}

Phi1Choice build_phi1(cplx b1, cplx b2, cplx p1, const EllipticFunctionRep& g, ZeroPolicy policy) {
  const auto ctx = g.shared_context();
  const Lattice& lat = ctx->lattice();
  auto snap_to_pole = [&](cplx b) {
    for (const auto& p : g.divisor().poles) {
      if (lat.orbit_distance(b, p.point) < 1e-9) return p;
    }
    throw Error(ErrorCode::DegenerateChoice, "requested pole of phi1 is not a pole of g");
  };
  const DivisorPoint q1 = snap_to_pole(b1);
  const DivisorPoint q2 = snap_to_pole(b2);
  const bool same = lat.orbit_distance(q1.point, q2.point) < kSamePoint;
  if (same && q1.order < 2) {
    throw Error(ErrorCode::DegenerateChoice, "double pole of phi1 needs a pole of g of order >= 2");
  }
  auto separation = [&](cplx p) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : g.divisor().poles) d = std::min(d, lat.orbit_distance(p, b.point));
    return d;
  };

  Divisor div;
  if (same) {
    div.poles.push_back({q1.point, 2});
  } else {
    div.poles.push_back({q1.point, 1});
    div.poles.push_back({q2.point, 1});
  }
  Phi1Choice out;
  const cplx sum = q1.point + q2.point;
  if (policy == ZeroPolicy::DoubleAtP1) {
    if (!lat.contains(2.0 * p1 - sum, kMembershipTol)) {
      throw Error(ErrorCode::DegenerateChoice, "a double zero at p1 contradicts the Abel condition");
    }
    if (separation(p1) < kMinSeparation) {
      throw Error(ErrorCode::DegenerateChoice, "double zero too close to a pole of g");
    }
    div.zeros.push_back({p1, 2});
    out.zeros = {p1, p1};
  } else {
    const cplx p2 = sum - p1;
    double eps = 0.0;
    bool ok = separation(p1) >= kMinSeparation && separation(p2) >= kMinSeparation;
    for (double e = 1e-4; !ok && e <= 1e-2 * (1 + 1e-12); e *= 2.0) {
      if (separation(p1 + e) >= kMinSeparation && separation(p2 - e) >= kMinSeparation) {
        eps = e;
        ok = true;
      }
    }
    if (!ok) throw Error(ErrorCode::DegenerateChoice, "no perturbation up to 1e-2 separates the zeros of phi1");
    out.zeros = {lat.reduce(p1 + eps), lat.reduce(p2 - eps)};
    out.epsilon = eps;
    div.zeros.push_back({p1 + eps, 1});
    div.zeros.push_back({p2 - eps, 1});
  }
  out.phi1 = build_elliptic(div, ctx, 1.0);
  return out;
}

ImmersionTriple derive_triple(const EllipticFunctionRep& g, const EllipticFunctionRep& phi1) {
  ImmersionTriple t;
  t.g = g;
  t.phi1 = phi1;
  t.phi2 = phi1 / g;
  t.psi2 = phi1.involution_conjugate();
  t.psi1 = t.phi2.involution_conjugate().scaled(-1.0);
  return t;
}

namespace {

bool poles_within(const EllipticFunctionRep& f, const std::vector<DivisorPoint>& allowed, const Lattice& lat) {
  for (const auto& p : f.divisor().poles) {
    const auto it = std::find_if(allowed.begin(), allowed.end(), [&](const DivisorPoint& q) {
      return lat.orbit_distance(p.point, q.point) < kSamePoint;
    });
    if (it == allowed.end() || p.order > it->order) return false;
  }
  return true;
}

}  // namespace

ContainmentReport check_containments(const ImmersionTriple& t) {
  const Lattice& lat = t.g.context().lattice();
  ContainmentReport r;
  r.phi1_poles_in_g_poles = poles_within(t.phi1, t.g.divisor().poles, lat);
  r.phi2_poles_in_g_zeros = poles_within(t.phi2, t.g.divisor().zeros, lat);
  r.psi1_poles_in_g_poles = poles_within(t.psi1, t.g.divisor().poles, lat);
  r.psi2_poles_in_g_zeros = poles_within(t.psi2, t.g.divisor().zeros, lat);
  return r;
}

namespace {

constexpr double kMaxStep = kPi / 4.0;

struct SingularContour {};

// Continuous change of arg f along the segment [za, zb].
double phase_along(const EllipticFunctionRep& f, cplx za, cplx fa, cplx zb, cplx fb, int depth) {
  const double d = std::arg(fb / fa);
  if (std::abs(d) <= kMaxStep) return d;
  if (depth > 14) throw SingularContour{};
  const cplx zm = 0.5 * (za + zb);
  const cplx fm = f.value(zm);
  if (!std::isfinite(std::abs(fm)) || std::abs(fm) == 0.0) throw SingularContour{};
  return phase_along(f, za, fa, zm, fm, depth + 1) + phase_along(f, zm, fm, zb, fb, depth + 1);
}

WindingCount count_windings(const EllipticFunctionRep& f, int n, double ox, double oy) {
  const Lattice& lat = f.context().lattice();
  constexpr int kSamples = 16;
  auto vertex = [&](int i, int j) { return lat.point((i + ox) / n, (j + oy) / n); };
  auto edge_phase = [&](cplx za, cplx zb) {
    double total = 0.0;
    cplx zp = za;
    cplx fp = f.value(za);
    for (int s = 1; s <= kSamples; ++s) {
      const cplx zs = za + (zb - za) * (double(s) / kSamples);
      const cplx fs = f.value(zs);
      if (!std::isfinite(std::abs(fs)) || std::abs(fs) == 0.0 || !std::isfinite(std::abs(fp))) {
        throw SingularContour{};
      }
      total += phase_along(f, zp, fp, zs, fs, 0);
      zp = zs;
      fp = fs;
    }
    return total;
  };
  // horizontal[i][j]: (i,j)->(i+1,j); vertical[i][j]: (i,j)->(i,j+1)
  std::vector<double> horizontal(n * (n + 1)), vertical((n + 1) * n);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i) horizontal[j * n + i] = edge_phase(vertex(i, j), vertex(i + 1, j));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j) vertical[i * n + j] = edge_phase(vertex(i, j), vertex(i, j + 1));

  WindingCount wc;
  wc.partition = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double total = horizontal[j * n + i] + vertical[(i + 1) * n + j] - horizontal[(j + 1) * n + i] -
                           vertical[i * n + j];
      const long w = std::lround(total / (2.0 * kPi));
      if (w > 0) wc.zeros += int(w);
      if (w < 0) wc.poles += int(-w);
    }
  return wc;
}

}  // namespace

WindingCount degree_by_argument_principle(const EllipticFunctionRep& f, std::uint64_t seed) {
  if (f.degree() == 0 && f.divisor().zeros.empty()) return {0, 0, 0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double ox = 0.0137, oy = 0.0291;  // off the usual grid lines
  for (int attempt = 0; attempt <= 10; ++attempt) {
    try {
      WindingCount prev{-1, -1, 0};
      WindingCount last;
      for (int n : {8, 16, 32}) {
        last = count_windings(f, n, ox, oy);
        if (last.zeros == last.poles && prev.poles == last.poles) return last;
        prev = last;
      }
      if (last.zeros == last.poles) return last;
    } catch (const SingularContour&) {
    }
    ox = unit(rng);
    oy = unit(rng);
  }
  throw Error(ErrorCode::ContourThroughSingularity, "no admissible contour after 10 random shifts");
}

}  // namespace klein4
