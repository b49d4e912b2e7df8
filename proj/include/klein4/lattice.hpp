#pragma once

#include <array>
#include <complex>

namespace klein4 {

using cplx = std::complex<double>;

/// Absolute tolerance on generator-basis coordinates when testing lattice membership.
inline constexpr double kMembershipTol = 1e-9;

/// Integer 2x2 matrix acting on generator pairs: (w1', w2') = M (w1, w2).
struct BasisChange {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  BasisChange inverse() const;  // requires det() == +-1
  friend bool operator==(const BasisChange&, const BasisChange&) = default;
};

/// Lattice {m*omega1 + n*omega2}. Stored with Im(omega2/omega1) > 0.
class Lattice {
 public:
  /// Throws DegenerateLattice when the generators are collinear.
  Lattice(cplx omega1, cplx omega2);

  static Lattice rectangular(double r) { return {1.0, cplx(0.0, r)}; }

  cplx omega1() const { return omega1_; }
  cplx omega2() const { return omega2_; }
  cplx tau() const { return omega2_ / omega1_; }

  cplx point(double m, double n) const { return m * omega1_ + n * omega2_; }

  /// Real coordinates (s, t) with z = s*omega1 + t*omega2.
  std::array<double, 2> coordinates(cplx z) const;

  /// Nearest lattice vector as integer coordinates.
  std::array<long, 2> nearest(cplx z) const;

  bool contains(cplx z, double tol = kMembershipTol) const;

  /// Representative of z in the half-open cell {s*omega1 + t*omega2 : s,t in [0,1)}.
  cplx reduce(cplx z) const;

  /// Shortest distance from z to the orbit w + lattice.
  double orbit_distance(cplx z, cplx w) const;

  bool is_rectangular(double tol = 1e-12) const;

 private:
  cplx omega1_, omega2_;
};

struct LatticeReduction {
  cplx tau;            // canonical modulus
  BasisChange change;  // canonical generators = change * original generators
  cplx scale;          // first canonical generator; lattice = scale * (Z + tau Z)
};

/// Canonical generating pair: Im tau > 0, -1/2 < Re tau <= 1/2, |tau| >= 1 and
/// Re tau >= 0 when |tau| = 1.
LatticeReduction reduce_lattice(const Lattice& lattice);

}  // namespace klein4
