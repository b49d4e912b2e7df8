#pragma once

#include <complex>
#include <vector>

#include "klein4/jet.hpp"
#include "klein4/lattice.hpp"

namespace klein4 {

/// Weierstrass sigma and the eta quasi-period homomorphism of a lattice.
///
/// sigma is evaluated on the canonical generating pair through the Jacobi
/// theta series, after reducing the argument to the centered period cell;
/// the quasi-periodicity factor is applied from the stored eta values.
/// Immutable after construction.
class EllipticContext {
 public:
  /// Throws SeriesNotConverged when the theta series cannot reach tol with
  /// the allowed number of terms, or when the Legendre check fails.
  explicit EllipticContext(const Lattice& lattice, double tol = 1e-12);

  const Lattice& lattice() const { return lattice_; }
  cplx tau() const { return lattice_.tau(); }
  /// eta(omega1) and eta(omega2) for the stored generators.
  cplx eta1() const { return eta1_; }
  cplx eta_tau() const { return eta_tau_; }
  int nome_truncation() const { return terms_; }
  double tol() const { return tol_; }

  cplx eta(long m, long n) const { return double(m) * eta1_ + double(n) * eta_tau_; }
  /// Throws NotLatticeVector unless (m, n) is integral.
  cplx eta(double m, double n) const;
  /// Throws NotLatticeVector unless omega lies in the lattice.
  cplx eta_at(cplx omega) const;

  /// |eta(w1) w2 - eta(w2) w1 - 2 pi i|.
  double legendre_residual() const;

  cplx sigma(cplx z) const;
  /// sigma together with its first two complex derivatives.
  Taylor2<cplx> sigma_jet(cplx z) const;

 private:
  struct Reduced {
    cplx zeta0;       // centered representative in canonical coordinates
    cplx exponent;    // eta_c(lambda) * (zeta0 + lambda / 2)
    cplx eta_lambda;  // eta_c(lambda)
    double sign;
  };
  Reduced reduce(cplx z) const;

  Lattice lattice_;
  double tol_;
  int terms_ = 0;
  cplx tau_c_, scale_, q_;
  cplx eta_c1_, eta_ctau_;  // canonical lattice (1, tau_c)
  std::vector<cplx> coef_;  // (-1)^n q^{(n+1/2)^2}
  cplx theta_prime0_;
  cplx eta1_, eta_tau_;
};

}  // namespace klein4
