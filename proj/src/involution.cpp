#include "klein4/involution.hpp"

#include <cmath>
#include <numbers>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kValidTol = 1e-10;
constexpr double kSnapTol = 1e-9;

bool near(cplx x, cplx y) { return std::abs(x - y) <= kSnapTol; }

bool near_integer(double x) { return std::abs(x - std::round(x)) <= kSnapTol; }

// The involution written in coordinates zeta = z / scale on (1, tau).
struct CanonicalView {
  cplx tau, scale, a, b;
};

CanonicalView canonical_view(const Involution& inv, const Lattice& lattice) {
  const LatticeReduction red = reduce_lattice(lattice);
  const cplx s = red.scale;
  return {red.tau, s, inv.a * std::conj(s) / s, inv.b / s};
}

double lattice_residual(const Lattice& l, cplx w) {
  const auto [m, n] = l.nearest(w);
  return std::abs(w - l.point(double(m), double(n)));
}

// Fixpoint search in canonical coordinates; returns the witness there.
struct CanonicalDecision {
  bool free;
  std::optional<cplx> witness;
  std::string rule;
};

// a = 1: translate so that b is real; 2b is then an integer.
CanonicalDecision case_plus_one(cplx tau, cplx b) {
  const double shift = b.imag() / 2.0;  // delta = i * shift
  const double br = b.real();
  const cplx delta(0.0, shift);
  if (near_integer(br)) return {false, delta, "a=1, b integral: fixpoint at the origin"};
  if (near(cplx(tau.real(), 0.0), 0.5)) {
    return {false, delta + cplx(0.0, -tau.imag() / 2.0), "a=1, Re tau=1/2: line of fixpoints"};
  }
  return {true, std::nullopt, "a=1, b half-integral on rectangular lattice: fixpoint-free"};
}

// a = -1: translate so that b is imaginary; 2b lies in Gamma on the imaginary axis.
CanonicalDecision case_minus_one(cplx tau, cplx b) {
  const cplx delta(b.real() / 2.0, 0.0);
  const double bi = b.imag();
  if (near(cplx(tau.real(), 0.0), 0.5)) {
    // i R meets Gamma in 2 i Im(tau) Z, so b = m i Im(tau)
    const double m = std::round(bi / tau.imag());
    return {false, delta + cplx(-m / 4.0, 0.0), "a=-1, Re tau=1/2: fixpoint"};
  }
  const double m = bi / (tau.imag() / 2.0);
  if (near_integer(m) && std::lround(m) % 2 == 0) {
    return {false, delta, "a=-1, b in Gamma: fixpoint at the origin"};
  }
  return {true, std::nullopt, "a=-1, b = tau/2 mod Gamma: fixpoint-free"};
}

// a = +-tau with |tau| = 1: a real translation makes b real, hence integral.
CanonicalDecision case_plus_minus_tau(cplx a, cplx b) {
  const double delta = -b.imag() / a.imag();
  return {false, cplx(delta, 0.0), "a=+-tau, |tau|=1: fixpoint"};
}

CanonicalDecision decide(cplx tau, cplx a, cplx b) {
  if (near(a, 1.0)) return case_plus_one(tau, b);
  if (near(a, -1.0)) return case_minus_one(tau, b);
  if (std::abs(std::abs(tau) - 1.0) > kSnapTol) {
    throw Error(ErrorCode::UnsupportedA, "a is not +-1 and |tau| > 1");
  }
  if (near(a, tau) || near(a, -tau)) return case_plus_minus_tau(a, b);

  const cplx hex = std::polar(1.0, std::numbers::pi / 3.0);
  if (!near(tau, hex)) throw Error(ErrorCode::UnsupportedA, "a outside {+-1, +-tau}");
  int l = 0;
  for (int k = 1; k <= 6; ++k) {
    if (near(a, std::pow(hex, k))) l = k;
  }
  if (l == 0) throw Error(ErrorCode::UnsupportedA, "a is not a sixth root of unity");
  // Conjugate with phi(w) = alpha w, conj(alpha) = tau^k: the new map is
  // tau^(2k+l) conj(w) + conj(alpha) b.
  const int k = (l % 2 == 0) ? (6 - l) / 2 : (l == 5 ? -2 : 0);
  const cplx alpha = std::conj(std::pow(hex, k));
  const cplx a2 = std::pow(hex, 2 * k + l);
  const cplx b2 = std::conj(alpha) * b;
  CanonicalDecision inner = (l % 2 == 0) ? case_plus_one(tau, b2) : case_plus_minus_tau(a2, b2);
  if (inner.witness) inner.witness = alpha * *inner.witness;
  inner.rule = "hexagonal lattice, a=tau^" + std::to_string(l) + ": " + inner.rule;
  return inner;
}

}  // namespace

InvolutionDiagnostics involution_validate(cplx a, cplx b, const Lattice& lattice) {
  InvolutionDiagnostics d;
  d.unit_modulus = std::abs(std::abs(a) - 1.0) <= kValidTol;
  if (!d.unit_modulus) d.failures.push_back("|a| != 1");

  // inclusion both ways, tested on generators
  d.preserves_lattice = std::abs(a) > 0.0;
  for (cplx w : {lattice.omega1(), lattice.omega2()}) {
    d.preserves_lattice = d.preserves_lattice && lattice.contains(a * std::conj(w), kValidTol) &&
                          lattice.contains(std::conj(w / a), kValidTol);
  }
  if (!d.preserves_lattice) d.failures.push_back("a conj(Gamma) != Gamma");

  d.squares_to_identity = lattice.contains(a * std::conj(b) + b, kValidTol);
  if (!d.squares_to_identity) d.failures.push_back("a conj(b) + b not in Gamma");
  return d;
}

FixpointReport involution_fixpoints(const Involution& inv, const Lattice& lattice) {
  const InvolutionDiagnostics diag = involution_validate(inv.a, inv.b, lattice);
  if (!diag.valid()) throw Error(ErrorCode::InvalidInvolution, diag.failures.front());

  const CanonicalView view = canonical_view(inv, lattice);
  const CanonicalDecision dec = decide(view.tau, view.a, view.b);
  FixpointReport rep;
  rep.fixpoint_free = dec.free;
  rep.rule = dec.rule;
  if (dec.witness) {
    const cplx z = view.scale * *dec.witness;
    rep.witness = z;
    rep.residual = lattice_residual(lattice, inv(z) - z);
  }
  return rep;
}

std::string to_string(NormalKind kind) {
  return kind == NormalKind::TranslationType ? "TranslationType" : "GlideType";
}

InvolutionNormalForm involution_normalize(const Involution& inv, const Lattice& lattice) {
  const InvolutionDiagnostics diag = involution_validate(inv.a, inv.b, lattice);
  if (!diag.valid()) throw Error(ErrorCode::InvalidInvolution, diag.failures.front());

  const CanonicalView view = canonical_view(inv, lattice);
  if (std::abs(view.tau.real()) > kSnapTol * std::abs(view.tau)) {
    throw Error(ErrorCode::NonRectangularLattice, "canonical tau is not purely imaginary");
  }
  const FixpointReport fp = involution_fixpoints(inv, lattice);
  if (!fp.fixpoint_free) throw Error(ErrorCode::HasFixpoints, fp.rule);

  InvolutionNormalForm out;
  out.tau = cplx(0.0, view.tau.imag());
  cplx delta;
  if (near(view.a, 1.0)) {
    out.kind = NormalKind::TranslationType;
    out.normal = {1.0, 0.5};
    delta = cplx(0.0, view.b.imag() / 2.0);
  } else {
    out.kind = NormalKind::GlideType;
    out.normal = {-1.0, out.tau / 2.0};
    delta = cplx(view.b.real() / 2.0, 0.0);
  }
  // z = scale * (w + delta)
  out.conjugating_map = {view.scale, view.scale * delta};
  return out;
}

}  // namespace klein4
