#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "klein4/error.hpp"
#include "klein4/geometry.hpp"
#include "klein4/immersion.hpp"
#include "klein4/invariants.hpp"
#include "klein4/involution.hpp"

namespace klein4::app {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "." + name;
}

std::shared_ptr<const Surface> ambient(std::shared_ptr<const Surface> s, const Options& opt) {
  if (!opt.reflect) return s;
  return std::make_shared<TransformedSurface>(std::move(s), AmbientMap::reflection(3));
}

QuadratureSpec quadrature(const RunConfig& cfg, const Options& opt) {
  QuadratureSpec q;
  q.n = cfg.grid_n;
  q.m = cfg.grid_m;
  q.threads = opt.threads;
  q.report_tol = cfg.tol.report;
  return q;
}

KleinConstruction construct(const RunConfig& cfg) {
  KleinConstruction k = build_klein(cfg.klein_params());
  if (cfg.l && *cfg.l != k.g.l) {
    throw Error(ErrorCode::ConfigError,
                "l = " + std::to_string(*cfg.l) + " but the poles give l = " + std::to_string(k.g.l));
  }
  return k;
}

void construction_record(const KleinConstruction& k, Report& rep, const std::string& sec) {
  for (int i = 0; i < 4; ++i) rep.add(sec, "pole_" + std::to_string(i), format_complex(k.g.poles[i]));
  rep.add(sec, "l", std::to_string(k.g.l));
  const auto& zeros = k.g.g.divisor().zeros;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    rep.add(sec, "g_zero_" + std::to_string(i),
            format_complex(zeros[i].point) + " order " + std::to_string(zeros[i].order));
  }
  rep.add(sec, "g_constant", format_complex(k.g.g.c()));
  rep.add(sec, "phi1_zeros", format_complex(k.phi1.zeros[0]) + ", " + format_complex(k.phi1.zeros[1]));
  rep.add(sec, "phi1_perturbation", k.phi1.epsilon);
  rep.add(sec, "containments", k.containments.all() ? "ok" : "failed");
}

void klein_checks(const RunConfig& cfg, const Options& opt, Report& rep, const std::string& prefix) {
  const KleinConstruction k = construct(cfg);
  construction_record(k, rep, join(prefix, "construction"));
  const auto imm = k.immersion;
  const auto surface = ambient(imm, opt);
  const std::string res = join(prefix, "results");
  const double r = cfg.r;

  // degree of g
  const int pole_count = k.g.g.degree();
  const WindingCount wc = degree_by_argument_principle(k.g.g, cfg.seed);
  rep.add(res, "degree_g_poles", std::to_string(pole_count));
  rep.add(res, "degree_g_argument", std::to_string(wc.zeros) + " zeros, " + std::to_string(wc.poles) + " poles");
  rep.check(join(prefix, "degree_g"), pole_count == 4 && wc.zeros == 4 && wc.poles == 4, pole_count, 4);

  // pointwise checks at seeded random samples
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sym = 0, inv = 0, overlap = 0, conf = 0, jets = 0, w1 = 0, w2 = 0, tw = 0, kperp = -1e300;
  int overlap_count = 0;
  const auto& g = k.g.g;
  for (int i = 0; i < cfg.samples; ++i) {
    const cplx z(u(rng), r * u(rng));
    const cplx iz = imm->involution(z);
    if (g.pole_distance(z) > 0.02 && g.pole_distance(iz) > 0.02) {
      sym = std::max(sym, std::abs(g.value(iz) * std::conj(g.value(z)) + 1.0));
    }
    inv = std::max(inv, (surface->point(iz) - surface->point(z)).norm());
    const double ag = std::abs(g.value(z));
    if (g.pole_distance(z) > 0.02 && ag >= 0.5 && ag <= 2.0) {
      const auto a = imm->evaluate_primary(z), b = imm->evaluate_pole_chart(z);
      overlap = std::max({overlap, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
      ++overlap_count;
    }
    const JetSample jd = jet(*surface, z), jf = jet(*surface, z, JetMethod::finite_difference());
    const double s1 = std::max(jd.fx.norm(), jd.fy.norm());
    const double s2 = std::max({jd.fxx.norm(), jd.fxy.norm(), jd.fyy.norm()});
    jets = std::max({jets, (jd.fx - jf.fx).norm() / s1, (jd.fy - jf.fy).norm() / s1, (jd.fxx - jf.fxx).norm() / s2,
                     (jd.fxy - jf.fxy).norm() / s2, (jd.fyy - jf.fyy).norm() / s2});
    const CurvatureSample c = curvature(jd);
    conf = std::max({conf, std::abs(c.E - c.G) / c.E, std::abs(c.F) / c.E});
    const WintgenResiduals w = wintgen_twistor_residuals(c);
    w1 = std::max(w1, w.r1);
    w2 = std::max(w2, w.r2);
    tw = std::max(tw, w.twistor_residual);
    kperp = std::max(kperp, c.Kperp);
  }
  const double pw = cfg.tol.pointwise;
  rep.check(join(prefix, "g_symmetry"), sym < 1e-8, sym, 1e-8);
  rep.check(join(prefix, "involution_invariance"), inv < cfg.tol.invariance, inv, cfg.tol.invariance);
  rep.add(res, "chart_overlap_samples", std::to_string(overlap_count));
  rep.check(join(prefix, "chart_overlap"), overlap < 1e-9, overlap, 1e-9);
  rep.check(join(prefix, "conformality"), conf < pw, conf, pw);
  rep.check(join(prefix, "jet_cross_method"), jets < pw, jets, pw);
  rep.check(join(prefix, "wintgen_r1"), w1 < pw, w1, pw);
  rep.check(join(prefix, "wintgen_r2"), w2 < pw, w2, pw);
  if (opt.reflect) {
    // the reflected surface is twistor holomorphic for the opposite orientation
    rep.add(res, "twistor_residual_max", tw);
    rep.add(res, "kperp_max", kperp);
  } else {
    rep.check(join(prefix, "twistor_residual"), tw < pw, tw, pw);
    rep.check(join(prefix, "kperp_nonpositive"), kperp <= 1e-8, kperp, 1e-8);
  }

  const ConditionMinimum cm = immersion_condition_min(*imm, cfg.grid_n, cfg.grid_m);
  rep.add(res, "condition_min_at", format_complex(cm.argmin));
  rep.check(join(prefix, "condition_min_positive"), cm.value > 0.0, cm.value, 0.0);

  // integrals
  const InvariantReport ir = consistency_report(*surface, pole_count, quadrature(cfg, opt));
  rep.add(res, "W_cover", ir.W_cover);
  rep.add(res, "W_cover_over_pi", ir.W_cover / kPi);
  rep.add(res, "W_quotient", ir.W_quotient);
  rep.add(res, "W_coarse", ir.coarse.willmore);
  rep.add(res, "e_nu_raw", ir.e_nu_raw);
  rep.add(res, "e_nu_cover", std::to_string(ir.e_nu_cover));
  rep.add(res, "e_nu_quotient", std::to_string(ir.e_nu_quotient));
  rep.add(res, "gauss_bonnet", ir.gauss_bonnet);
  const double w_expected = 4.0 * kPi * pole_count;
  const double dw = std::abs(ir.W_cover - w_expected) / w_expected;
  rep.check(join(prefix, "W_cover_4pi_deg_g"), dw < cfg.tol.report, dw, cfg.tol.report);
  const long e_expected = (opt.reflect ? 1 : -1) * 2L * pole_count;
  const double de = std::abs(ir.e_nu_raw - double(e_expected));
  rep.check(join(prefix, "e_nu_cover"), ir.e_nu_cover == e_expected && de < cfg.tol.report, de, cfg.tol.report);
  rep.check(join(prefix, "gauss_bonnet_zero"), std::abs(ir.gauss_bonnet) < 0.01, std::abs(ir.gauss_bonnet), 0.01);
  rep.check(join(prefix, "wintgen_bound"), ir.wintgen_bound_holds, ir.W_cover, 2.0 * kPi * std::abs(ir.e_nu_raw));
  for (const auto& [name, value] : ir.identity_residuals) rep.add(res, "residual." + name, value);

  // embedding scan
  const ScanReport scan = self_intersection_scan(*surface, cfg.scan_n, cfg.tol.scan_delta);
  rep.add(res, "scan_eps", scan.eps);
  rep.add(res, "scan_involution_pairs", std::to_string(scan.involution_pairs));
  rep.check(join(prefix, "self_intersections"), scan.total_pairs == 0, double(scan.total_pairs), 0);
}

void veronese_checks(const RunConfig& cfg, const Options& opt, Report& rep, const std::string& prefix) {
  const auto inner = std::make_shared<VeroneseImmersion>();
  const auto outer = std::make_shared<VeroneseImmersion>(VeroneseImmersion::Chart::Outer);
  const auto surface = ambient(inner, opt);
  const std::string res = join(prefix, "results");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> n;
  double inv = 0, w1 = 0, w2 = 0, tw = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const cplx z(n(rng), n(rng));
    inv = std::max(inv, (surface->point(inner->involution(z)) - surface->point(z)).norm());
    const WintgenResiduals w = wintgen_twistor_residuals(curvature(jet(*surface, z)));
    w1 = std::max(w1, w.r1);
    w2 = std::max(w2, w.r2);
    tw = std::max(tw, w.twistor_residual);
  }
  const double pw = cfg.tol.pointwise;
  rep.check(join(prefix, "involution_invariance"), inv < 1e-12, inv, 1e-12);
  rep.check(join(prefix, "A011_A012_equal_length"), w1 < pw, w1, pw);
  rep.check(join(prefix, "A011_A012_orthogonal"), w2 < pw, w2, pw);
  if (!opt.reflect) rep.check(join(prefix, "twistor_residual"), tw < pw, tw, pw);
  const ConditionMinimum cm = veronese_condition_min(veronese_triple(), cfg.grid_n, cfg.grid_m);
  rep.check(join(prefix, "condition_min_positive"), cm.value > 0.0, cm.value, 0.0);

  const SurfaceIntegrals q = integrate_monitored(*surface, quadrature(cfg, opt)).fine;
  const SurfaceIntegrals two = opt.reflect ? q : integrate_two_chart(*inner, *outer, cfg.grid_n, cfg.grid_m, opt.threads);
  const double e = q.kperp / (2.0 * kPi);
  rep.add(res, "W_cover", q.willmore);
  rep.add(res, "W_cover_over_pi", q.willmore / kPi);
  rep.add(res, "W_quotient_over_pi", q.willmore / (2.0 * kPi));
  rep.add(res, "e_nu_raw", e);
  rep.add(res, "e_nu_cover", std::to_string(std::lround(e)));
  rep.add(res, "e_nu_quotient", std::to_string(std::lround(e) / 2));
  rep.add(res, "gauss_bonnet_over_pi", q.gauss / kPi);
  rep.add(res, "W_two_chart", two.willmore);
  const double dw = std::abs(q.willmore - 12.0 * kPi) / (12.0 * kPi);
  rep.check(join(prefix, "W_cover_12pi"), dw < cfg.tol.report, dw, cfg.tol.report);
  const double de = std::abs(e - (opt.reflect ? 4.0 : -4.0));
  rep.check(join(prefix, "e_nu_cover"), de < cfg.tol.report, de, cfg.tol.report);
  const double dg = std::abs(q.gauss - 4.0 * kPi) / (4.0 * kPi);
  rep.check(join(prefix, "gauss_bonnet_4pi"), dg < cfg.tol.report, dg, cfg.tol.report);
  const double dt = std::abs(two.willmore - q.willmore) / q.willmore;
  rep.check(join(prefix, "two_chart_agreement"), dt < cfg.tol.report, dt, cfg.tol.report);
}

std::string vec_text(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_report_number(v[i]);
  return s;
}

void glue_checks(const GlueInput& in, Report& rep, const std::string& prefix) {
  const std::string res = join(prefix, "results");
  rep.add(res, "source", in.source);
  rep.add(res, "P11", vec_text(in.p.P11));
  rep.add(res, "P12", vec_text(in.p.P12));
  rep.add(res, "Q11", vec_text(in.q.P11));
  rep.add(res, "Q12", vec_text(in.q.P12));
  rep.add(res, "restrict_T_special", in.restrict_T_special ? "true" : "false");
  rep.add(res, "initial_pairing", pairing(in.p, in.q));
  const RotationResult r = find_positive_rotation(in.p, in.q, in.restrict_T_special);
  if (const auto* f = std::get_if<Found>(&r)) {
    rep.add(res, "verdict", "Found");
    rep.add(res, "S_angle", std::atan2(f->S(1, 0), f->S(0, 0)));
    std::string t;
    for (Eigen::Index i = 0; i < f->T.rows(); ++i) t += (i ? "; " : "") + vec_text(f->T.row(i).transpose());
    rep.add(res, "T", t);
    rep.add(res, "T_det", f->T.determinant());
    rep.add(res, "pairing", f->value);
    rep.add(res, "near_exceptional", f->near_exceptional ? "true" : "false");
  } else {
    rep.add(res, "verdict", "Exceptional");
    rep.add(res, "reason", std::get<Exceptional>(r).reason);
  }
  const GluingBound b = predict_gluing_bound(in.W1 > 0 ? in.W1 : 6.0 * kPi, in.W2 > 0 ? in.W2 : 6.0 * kPi);
  rep.add(res, "bound", b.text);
  if (!b.note.empty()) rep.add(res, "bound_note", b.note);
}

}  // namespace

Report involution_classify(cplx omega1, cplx omega2, cplx a, cplx b) {
  Report rep("involution classify");
  const Lattice lattice(omega1, omega2);
  const std::string res = "results";
  rep.add("input", "lattice", format_complex(omega1) + ", " + format_complex(omega2));
  rep.add("input", "a", format_complex(a));
  rep.add("input", "b", format_complex(b));
  const InvolutionDiagnostics d = involution_validate(a, b, lattice);
  for (const auto& f : d.failures) rep.add(res, "validation_failure", f);
  const FixpointReport fp = involution_fixpoints({a, b}, lattice);
  rep.add(res, "rule", fp.rule);
  rep.add(res, "lattice_rectangular", lattice.is_rectangular(1e-10) ? "true" : "false");
  if (!fp.fixpoint_free) {
    rep.add(res, "verdict", "fixpoint detected");
    if (fp.witness) rep.add(res, "witness", format_complex(*fp.witness));
    rep.add(res, "witness_residual", fp.residual);
    return rep;
  }
  rep.add(res, "verdict", "fixpoint-free");
  const InvolutionNormalForm nf = involution_normalize({a, b}, lattice);
  rep.add(res, "normal_kind", to_string(nf.kind));
  rep.add(res, "tau", format_complex(nf.tau));
  rep.add(res, "normal_form", format_complex(nf.normal.a) + " conj(z) + " + format_complex(nf.normal.b));
  rep.add(res, "conjugating_map",
          format_complex(nf.conjugating_map.alpha) + " z + " + format_complex(nf.conjugating_map.delta));
  return rep;
}

Report klein_build(const RunConfig& cfg) {
  Report rep("klein build");
  rep.set_config(cfg);
  const KleinConstruction k = construct(cfg);
  construction_record(k, rep, "construction");
  rep.check("containments", k.containments.all(), k.containments.all() ? 1 : 0, 1);
  return rep;
}

Report klein_verify(const RunConfig& cfg, const Options& opt) {
  Report rep(opt.reflect ? "klein verify --reflect" : "klein verify");
  rep.set_config(cfg);
  klein_checks(cfg, opt, rep, "");
  return rep;
}

Report klein_energy(const RunConfig& cfg, const Options& opt) {
  Report rep("klein energy");
  rep.set_config(cfg);
  const KleinConstruction k = construct(cfg);
  const MonitoredIntegrals q = integrate_monitored(*ambient(k.immersion, opt), quadrature(cfg, opt));
  rep.add("results", "W_cover", q.fine.willmore);
  rep.add("results", "W_cover_over_pi", q.fine.willmore / kPi);
  rep.add("results", "W_quotient", q.fine.willmore / 2.0);
  rep.add("results", "W_coarse", q.coarse.willmore);
  rep.add("results", "area", q.fine.area);
  return rep;
}

Report klein_euler(const RunConfig& cfg, const Options& opt) {
  Report rep(opt.reflect ? "klein euler --reflect" : "klein euler");
  rep.set_config(cfg);
  const KleinConstruction k = construct(cfg);
  const EulerNormal e = euler_normal_number(*ambient(k.immersion, opt), quadrature(cfg, opt));
  rep.add("results", "e_nu_raw", e.raw);
  rep.add("results", "e_nu_cover", std::to_string(e.rounded));
  rep.add("results", "e_nu_quotient", std::to_string(e.rounded / 2));
  rep.add("results", "integrality_residual", e.residual);
  return rep;
}

Report klein_mesh(const RunConfig& cfg, const Options& opt) {
  Report rep("klein mesh");
  rep.set_config(cfg);
  const KleinConstruction k = construct(cfg);
  const Mesh mesh = sample_mesh(*ambient(k.immersion, opt), cfg.mesh_n, cfg.mesh_m);
  const std::string& path = cfg.mesh_path;
  const bool ply = path.size() >= 4 && path.compare(path.size() - 4, 4, ".ply") == 0;
  std::vector<std::string> header{"klein4 mesh of the Klein double cover, coordinates x y z w"};
  for (const auto& [key, value] : cfg.resolved()) header.push_back(key + " = " + value);
  export_mesh(mesh, ply ? MeshFormat::Ply : MeshFormat::Obj, path, header);
  rep.add("results", "format", ply ? "ply" : "obj");
  rep.add("results", "path", path);
  rep.add("results", "vertices", std::to_string(mesh.vertices.size()));
  rep.add("results", "faces", std::to_string(mesh.faces.size()));
  return rep;
}

Report veronese_verify(const RunConfig& cfg, const Options& opt) {
  Report rep(opt.reflect ? "veronese verify --reflect" : "veronese verify");
  rep.set_config(cfg);
  veronese_checks(cfg, opt, rep, "");
  return rep;
}

TracefreeForm veronese_form(bool reflected) {
  const auto v = std::make_shared<VeroneseImmersion>();
  const TransformedSurface refl(v, AmbientMap::reflection(3));
  const Surface& s = reflected ? static_cast<const Surface&>(refl) : static_cast<const Surface&>(*v);
  const CurvatureSample c = curvature(jet(s, cplx(0.3, 0.2)));
  return normal_form(c.A011, c.A012, c.N1, c.N2);
}

GlueInput veronese_glue_input(VeronesePair pair) {
  GlueInput in;
  in.p = veronese_form(false);
  in.q = veronese_form(pair == VeronesePair::Reflected);
  in.source = pair == VeronesePair::Reflected ? "veronese vs reflected veronese at z = 0.3+0.2i"
                                              : "veronese vs veronese at z = 0.3+0.2i";
  return in;
}

Report glue_check(const GlueInput& in) {
  Report rep("glue check-forms");
  glue_checks(in, rep, "");
  return rep;
}

Report full_report(const RunConfig& cfg, const Options& opt) {
  Report rep("report");
  rep.set_config(cfg);
  klein_checks(cfg, opt, rep, "klein");
  veronese_checks(cfg, opt, rep, "veronese");
  glue_checks(veronese_glue_input(VeronesePair::Same), rep, "glue_same");
  glue_checks(veronese_glue_input(VeronesePair::Reflected), rep, "glue_reflected");
  return rep;
}

}  // namespace klein4::app
