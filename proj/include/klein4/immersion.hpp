#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "klein4/divisor.hpp"
#include "klein4/surface.hpp"

namespace klein4 {

/// Construction parameters of a Klein immersion on the lattice (1, ir).
struct KleinParams {
  double r = 1.0;
  std::array<cplx, 4> poles{};
  std::array<int, 2> phi_poles{0, 1};  // indices into poles
  cplx p1;
  ZeroPolicy policy = ZeroPolicy::Split;
};

/// Poles ({0.1, 0.35, 0.6, 0.85} + 0.125 r i) with p1 = 0.2 + 0.3 r i.
KleinParams reference_params(double r = 1.0);

/// f = (f1, f2) in C^2 = R^4 as (Re f1, Im f1, Re f2, Im f2), from an
/// I-symmetric triple on C / (Z + irZ). Evaluation uses the primary formula
/// where |g| <= chart_threshold and the u = 1/g form elsewhere.
class KleinImmersion final : public Surface {
 public:
  explicit KleinImmersion(ImmersionTriple triple, double chart_threshold = 1.0);

  const ImmersionTriple& triple() const { return triple_; }
  const EllipticContext& context() const { return triple_.g.context(); }
  double r() const { return r_; }
  double chart_threshold() const { return chart_threshold_; }

  bool uses_pole_chart(cplx z) const;
  std::array<cplx, 2> evaluate(cplx z) const;
  std::array<cplx, 2> evaluate_primary(cplx z) const;
  std::array<cplx, 2> evaluate_pole_chart(cplx z) const;

  /// |d phi1| + |d psi1| in the primary chart, |d phi2| + |d psi2| in the pole chart.
  double condition_quantity(cplx z) const;

  Vec4 point(cplx z) const override;
  PointJet point_jet(cplx z) const override;
  ParameterDomain domain() const override { return {DomainKind::Torus, 1.0, r_, 0}; }
  bool has_involution() const override { return true; }
  cplx involution(cplx z) const override { return std::conj(z) + 0.5; }

 private:
  ImmersionTriple triple_;
  EllipticFunctionRep u_;  // 1/g from the reciprocal divisor
  double r_;
  double chart_threshold_;
};

/// Everything produced while building a Klein immersion from parameters.
struct KleinConstruction {
  KleinParams params;
  SymmetricG g;
  Phi1Choice phi1;
  ContainmentReport containments;
  std::shared_ptr<const KleinImmersion> immersion;
};

KleinConstruction build_klein(const KleinParams& params);

/// c z^k with conjugation by the sphere involution z -> -1/conj(z).
struct Monomial {
  cplx c = 1.0;
  int k = 0;

  Taylor2<cplx> jet(cplx z) const;
  Monomial operator/(const Monomial& o) const { return {c / o.c, k - o.k}; }
  /// z -> conj(h(-1/conj(z)))
  Monomial involution_conjugate() const;
};

struct MonomialTriple {
  Monomial g, phi1, phi2, psi1, psi2;
};

MonomialTriple derive_triple(const Monomial& g, const Monomial& phi1);
/// g = z^3, phi1 = z^2.
MonomialTriple veronese_triple();

/// Double cover S^2 -> R^4 of the Veronese RP^2. The inner chart is the
/// coordinate z; the outer chart is z = 1/w. Points at infinity are handled
/// by the closed form in w.
class VeroneseImmersion final : public Surface {
 public:
  enum class Chart { Inner, Outer };

  explicit VeroneseImmersion(Chart chart = Chart::Inner) : chart_(chart) {}

  /// Closed form; both entries are finite everywhere.
  static std::array<cplx, 2> evaluate(cplx z);
  static std::array<cplx, 2> evaluate_at_infinity() { return {0.0, 0.0}; }
  /// Primary Friedrich formula on the monomial triple.
  static std::array<cplx, 2> evaluate_from_triple(const MonomialTriple& t, cplx z);
  /// |d phi1| + |d psi1| (the triple is in its primary chart on |z| <= 1).
  static double condition_quantity(const MonomialTriple& t, cplx z);

  Vec4 point(cplx z) const override;
  PointJet point_jet(cplx z) const override;
  ParameterDomain domain() const override { return {DomainKind::Sphere, 1.0, 1.0, 2}; }
  bool has_involution() const override { return chart_ == Chart::Inner; }
  cplx involution(cplx z) const override { return -1.0 / std::conj(z); }

 private:
  Chart chart_;
};

struct ConditionMinimum {
  double value = 0.0;
  cplx argmin;
};

/// Minimum of the chart-aware condition quantity over an n x m grid of the
/// fundamental domain.
ConditionMinimum immersion_condition_min(const KleinImmersion& imm, int n, int m);
/// Same over a polar n x m grid of the closed unit disk.
ConditionMinimum veronese_condition_min(const MonomialTriple& t, int n, int m);

struct IntersectionPair {
  cplx z, w;
  double distance;
};

struct ScanReport {
  int samples = 0;
  double eps = 0.0;
  double delta = 0.0;
  double min_spacing = 0.0;
  double median_spacing = 0.0;
  std::vector<IntersectionPair> pairs;  // sorted by distance, capped at 100
  long total_pairs = 0;
  long involution_pairs = 0;            // close pairs explained by I
};

/// Uniform spatial hash over n x n samples of the fundamental domain (or a
/// latitude-longitude grid for sphere domains). eps <= 0 selects half the
/// minimum nearest-neighbor spacing of the sample grid.
ScanReport self_intersection_scan(const Surface& s, int n, double delta, double eps = 0.0);

enum class MeshFormat { Obj, Ply };

struct Mesh {
  std::vector<Vec4> vertices;
  std::vector<std::array<int, 3>> faces;
};

/// Periodic grid over [0,1] x [0,height], two triangles per quad.
Mesh sample_mesh(const Surface& s, int n, int m);
/// Throws IoError.
void export_mesh(const Mesh& mesh, MeshFormat format, const std::string& path,
                 const std::vector<std::string>& header = {});
Mesh import_mesh(const std::string& path);

}  // namespace klein4
