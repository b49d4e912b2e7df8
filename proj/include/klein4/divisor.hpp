#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "klein4/elliptic.hpp"
#include "klein4/jet.hpp"

namespace klein4 {

/// Minimum distance between distinct divisor points (modulo the lattice).
inline constexpr double kMinSeparation = 1e-3;
/// Radius around a pole orbit inside which evaluation reports infinity.
inline constexpr double kPoleRadius = 1e-8;

struct DivisorPoint {
  cplx point;
  int order = 1;
};

struct Divisor {
  std::vector<DivisorPoint> poles;
  std::vector<DivisorPoint> zeros;

  int pole_degree() const;
  int zero_degree() const;
};

/// Value on the Riemann sphere.
struct SphereValue {
  cplx value;
  bool infinite = false;
};

/// f(z) = c exp(-eta(omega0) z) prod sigma(z - a)^k / prod sigma(z - b)^k
/// with zeros a and poles b reduced to the fundamental cell and
/// omega0 = sum(b) - sum(a) an exact lattice vector given by integer
/// coordinates.
class EllipticFunctionRep {
 public:
  EllipticFunctionRep() = default;

  const Divisor& divisor() const { return divisor_; }
  std::array<long, 2> omega0() const { return omega0_; }
  cplx c() const { return c_; }
  const EllipticContext& context() const { return *ctx_; }
  std::shared_ptr<const EllipticContext> shared_context() const { return ctx_; }

  int degree() const { return divisor_.pole_degree(); }

  /// Infinity marker within kPoleRadius of a pole orbit.
  SphereValue eval(cplx z) const;
  /// Value and first two derivatives; the caller keeps away from poles.
  Taylor2<cplx> jet(cplx z) const;
  /// Value without the pole check.
  cplx value(cplx z) const;

  /// Distance from z to the nearest pole orbit (infinity if there are none).
  double pole_distance(cplx z) const;

  EllipticFunctionRep reciprocal() const;
  EllipticFunctionRep scaled(cplx factor) const;
  friend EllipticFunctionRep operator*(const EllipticFunctionRep& f, const EllipticFunctionRep& g);
  friend EllipticFunctionRep operator/(const EllipticFunctionRep& f, const EllipticFunctionRep& g);

  /// z -> conj(f(conj(z) + 1/2)) for a lattice (1, ir); the divisor and
  /// constant transform in closed form.
  EllipticFunctionRep involution_conjugate() const;

  /// Low-level constructor: points need not be reduced and omega0 must equal
  /// sum(poles) - sum(zeros) as integer lattice coordinates.
  static EllipticFunctionRep from_parts(std::shared_ptr<const EllipticContext> ctx, Divisor divisor,
                                        std::array<long, 2> omega0, cplx c);

 private:
  void normalize();

  std::shared_ptr<const EllipticContext> ctx_;
  Divisor divisor_;
  std::array<long, 2> omega0_{0, 0};
  cplx c_ = 1.0;
};

/// Elliptic function with the given divisor. Throws DegreeMismatch or
/// AbelViolation (Abel sum snapped to the lattice with tolerance 1e-9).
EllipticFunctionRep build_elliptic(const Divisor& divisor, std::shared_ptr<const EllipticContext> ctx, cplx c);

/// Riemann-sphere evaluation.
SphereValue eval_elliptic(const EllipticFunctionRep& f, cplx z);

struct SymmetricG {
  EllipticFunctionRep g;
  std::array<cplx, 4> poles;  // after the parity snap
  int l = 0;                  // sum Im(b) = (2l+1) r / 2
};

/// Degree-4 g with g(conj(z) + 1/2) conj(g(z)) = -1 on the lattice (1, ir).
/// Throws NonRectangularLattice, PoleOutsideDomain, ParityViolation or
/// DegenerateChoice (distinct divisor points closer than kMinSeparation).
SymmetricG build_symmetric_g(const std::array<cplx, 4>& poles, std::shared_ptr<const EllipticContext> ctx);

enum class ZeroPolicy {
  Split,         // zeros p1 and b1 + b2 - p1
  DoubleAtP1,    // a double zero at p1
};

struct Phi1Choice {
  EllipticFunctionRep phi1;
  std::array<cplx, 2> zeros;  // possibly perturbed
  double epsilon = 0.0;       // perturbation used (0 if none)
};

/// Degree-2 phi1 with poles b1, b2 (poles of g) and zeros p1 and
/// b1 + b2 - p1, perturbed by (+eps, -eps) when a zero comes within
/// kMinSeparation of a pole orbit of g. Throws DegenerateChoice.
Phi1Choice build_phi1(cplx b1, cplx b2, cplx p1, const EllipticFunctionRep& g,
                      ZeroPolicy policy = ZeroPolicy::Split);

struct ImmersionTriple {
  EllipticFunctionRep g, phi1, phi2, psi1, psi2;
};

/// phi2 = phi1 / g, psi2 = conj(phi1 o I), psi1 = -conj(phi2 o I).
ImmersionTriple derive_triple(const EllipticFunctionRep& g, const EllipticFunctionRep& phi1);

struct ContainmentReport {
  bool phi1_poles_in_g_poles = false;
  bool phi2_poles_in_g_zeros = false;
  bool psi1_poles_in_g_poles = false;
  bool psi2_poles_in_g_zeros = false;

  bool all() const {
    return phi1_poles_in_g_poles && phi2_poles_in_g_zeros && psi1_poles_in_g_poles && psi2_poles_in_g_zeros;
  }
};

/// Pole containments with order bounds, decided on divisor data.
ContainmentReport check_containments(const ImmersionTriple& t);

/// Zero and pole counts from winding numbers over the cells of an n x n
/// partition of the period cell.
struct WindingCount {
  int zeros = 0;
  int poles = 0;
  int partition = 0;
};

/// Argument-principle degree. Tries partitions 8, 16, 32 and accepts when
/// zeros == poles agrees on consecutive levels. Randomly shifts the grid when
/// a cell boundary passes too close to a zero or pole; throws
/// ContourThroughSingularity after 10 shifts.
WindingCount degree_by_argument_principle(const EllipticFunctionRep& f, std::uint64_t seed = 1);

}  // namespace klein4
