#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "klein4/error.hpp"
#include "klein4/involution.hpp"

using namespace klein4;

namespace {

// Brute-force fixpoint oracle: with s^2 = a, a conj(z) + b - z = lambda is
// solvable iff Re(conj(s) lambda) = Re(conj(s) b); then z = (b - lambda)/2.
std::optional<cplx> brute_force_fixpoint(const Involution& inv, const Lattice& l) {
  const cplx s = std::sqrt(inv.a);
  const double beta = (std::conj(s) * inv.b).real();
  for (int m = -20; m <= 20; ++m)
    for (int n = -20; n <= 20; ++n) {
      const cplx lambda = l.point(m, n);
      if (std::abs((std::conj(s) * lambda).real() - beta) < 1e-9) return (inv.b - lambda) / 2.0;
    }
  return std::nullopt;
}

double lattice_distance(const Lattice& l, cplx w) {
  const auto [m, n] = l.nearest(w);
  return std::abs(w - l.point(double(m), double(n)));
}

void expect_normal_form_pointwise(const Involution& inv, const Lattice& l, std::mt19937_64& rng) {
  const InvolutionNormalForm nf = involution_normalize(inv, l);
  const Lattice canon(1.0, nf.tau);
  const MoebiusMap phi = nf.conjugating_map;
  const MoebiusMap phi_inv = phi.inverse();
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const cplx w(u(rng), u(rng));
    const cplx lhs = phi_inv(inv(phi(w)));
    EXPECT_LT(lattice_distance(canon, lhs - nf.normal(w)), 1e-10);
  }
}

}  // namespace

TEST(InvolutionValidate, Examples) {
  const Lattice l = Lattice::rectangular(1.5);
  EXPECT_TRUE(involution_validate(1.0, 0.5, l).valid());
  const auto quarter = involution_validate(1.0, 0.25, l);
  EXPECT_FALSE(quarter.valid());
  EXPECT_TRUE(quarter.unit_modulus);
  EXPECT_TRUE(quarter.preserves_lattice);
  EXPECT_FALSE(quarter.squares_to_identity);
  const auto rot = involution_validate(cplx(0, 1), 0.0, l);
  EXPECT_FALSE(rot.valid());
  EXPECT_FALSE(rot.preserves_lattice);
  EXPECT_FALSE(involution_validate(2.0, 0.0, l).unit_modulus);
  EXPECT_EQ(involution_validate(2.0, 0.25, l).failures.size(), 3u);
}

TEST(InvolutionFixpoints, Examples) {
  const Lattice l = Lattice::rectangular(1.5);
  EXPECT_TRUE(involution_fixpoints({1.0, 0.5}, l).fixpoint_free);
  const auto fixed = involution_fixpoints({1.0, 0.0}, l);
  ASSERT_FALSE(fixed.fixpoint_free);
  ASSERT_TRUE(fixed.witness.has_value());
  EXPECT_LT(std::abs(*fixed.witness), 1e-15);
  EXPECT_TRUE(involution_fixpoints({-1.0, cplx(0, 0.75)}, l).fixpoint_free);
  EXPECT_FALSE(involution_fixpoints({-1.0, cplx(0, 1.5)}, l).fixpoint_free);
  EXPECT_THROW(involution_fixpoints({1.0, 0.25}, l), Error);
}

TEST(InvolutionFixpoints, HexagonalAlwaysHasFixpoints) {
  const cplx t = std::polar(1.0, std::numbers::pi / 3);
  const Lattice hex(1.0, t);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  for (int l = 1; l <= 6; ++l) {
    const cplx a = std::pow(t, l);
    for (int k = 0; k < 30; ++k) {
      // b with a conj(b) + b in Gamma: b = lambda/2 + (component killed by a conj)
      const cplx s = std::sqrt(a);
      const cplx lambda = hex.point(std::round(4 * u(rng)), std::round(4 * u(rng)));
      const cplx b = lambda / 2.0 + cplx(0, u(rng)) * s;
      Involution inv{a, b};
      if (!involution_validate(a, b, hex).valid()) continue;
      ++checked;
      const auto rep = involution_fixpoints(inv, hex);
      EXPECT_FALSE(rep.fixpoint_free) << l;
      ASSERT_TRUE(rep.witness.has_value());
      EXPECT_LT(rep.residual, 1e-10) << rep.rule;
      EXPECT_TRUE(brute_force_fixpoint(inv, hex).has_value());
      try {
        involution_normalize(inv, hex);
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonRectangularLattice);
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(InvolutionFixpoints, SquareLatticeRotations) {
  const Lattice sq(1.0, cplx(0, 1));
  for (cplx a : {cplx(0, 1), cplx(0, -1)}) {
    for (cplx b : {cplx(0.0), cplx(0.5, 0.5), cplx(1.0, 1.0), cplx(0.3, 0.3 * a.imag())}) {
      Involution inv{a, b};
      if (!involution_validate(a, b, sq).valid()) continue;
      const auto rep = involution_fixpoints(inv, sq);
      EXPECT_FALSE(rep.fixpoint_free);
      EXPECT_LT(rep.residual, 1e-10);
    }
  }
}

TEST(InvolutionFixpoints, AgreesWithBruteForceOnRandomRealLattices) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double r = 0.3 + 2.7 * u(rng);
    const bool half = trial % 3 == 0;  // Re tau = 1/2 real lattice
    const Lattice l(1.0, cplx(half ? 0.5 : 0.0, r));
    const cplx a = (trial % 2 == 0) ? 1.0 : -1.0;
    const cplx s = std::sqrt(a);
    const cplx lambda = l.point(std::floor(3 * u(rng)), std::floor(3 * u(rng)));
    const cplx b = lambda / 2.0 + cplx(0, 2 * u(rng) - 1) * s;
    Involution inv{a, b};
    if (!involution_validate(a, b, l).valid()) continue;
    ++checked;
    const auto rep = involution_fixpoints(inv, l);
    const auto oracle = brute_force_fixpoint(inv, l);
    EXPECT_EQ(rep.fixpoint_free, !oracle.has_value()) << rep.rule;
    if (!rep.fixpoint_free) EXPECT_LT(rep.residual, 1e-10);
    if (oracle) EXPECT_LT(lattice_distance(l, inv(*oracle) - *oracle), 1e-10);
  }
  EXPECT_GT(checked, 300);
}

TEST(InvolutionNormalize, Examples) {
  std::mt19937_64 rng(9);
  const Lattice l = Lattice::rectangular(1.5);
  const auto t = involution_normalize({1.0, cplx(0.5, 0.3)}, l);
  EXPECT_EQ(t.kind, NormalKind::TranslationType);
  EXPECT_NEAR(t.conjugating_map.delta.imag(), 0.15, 1e-15);
  expect_normal_form_pointwise({1.0, cplx(0.5, 0.3)}, l, rng);

  const auto g = involution_normalize({-1.0, cplx(0.2, 0.75)}, l);
  EXPECT_EQ(g.kind, NormalKind::GlideType);
  expect_normal_form_pointwise({-1.0, cplx(0.2, 0.75)}, l, rng);

  try {
    involution_normalize({1.0, 0.0}, l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HasFixpoints);
  }
  EXPECT_THROW(involution_normalize({1.0, 0.25}, l), Error);
}

TEST(InvolutionNormalize, RandomRectangularLattices) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const double r = 0.3 + 2.7 * u(rng);
    // rotated and scaled copy c * (Z + i r Z); involutions conjugate along
    const cplx c = std::polar(0.5 + u(rng), 2 * std::numbers::pi * u(rng));
    const Lattice l(c, c * cplx(0, r));
    const bool translation = trial % 2 == 0;
    const cplx a0 = translation ? 1.0 : -1.0;
    const cplx b0 = translation ? cplx(0.5 + std::floor(3 * u(rng)), 4 * u(rng) - 2)
                                : cplx(4 * u(rng) - 2, r / 2 + r * std::floor(3 * u(rng)));
    const Involution inv{a0 * c / std::conj(c), c * b0};
    ASSERT_TRUE(involution_validate(inv.a, inv.b, l).valid());
    const auto fp = involution_fixpoints(inv, l);
    ASSERT_TRUE(fp.fixpoint_free) << fp.rule;
    EXPECT_FALSE(brute_force_fixpoint(inv, l).has_value());
    expect_normal_form_pointwise(inv, l, rng);
  }
}

TEST(InvolutionNormalize, TallLatticeBecomesGlide) {
  // (1, 0.4i) reduces to (0.4i, -1): z -> conj(z) + 1/2 turns into a glide.
  std::mt19937_64 rng(1);
  const Lattice l = Lattice::rectangular(0.4);
  const auto nf = involution_normalize({1.0, 0.5}, l);
  EXPECT_EQ(nf.kind, NormalKind::GlideType);
  EXPECT_NEAR(nf.tau.imag(), 2.5, 1e-12);
  expect_normal_form_pointwise({1.0, 0.5}, l, rng);
}
