#include "klein4/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<cplx, 2> primary_formula(cplx g, cplx phi1, cplx psi1) {
  const double d = 1.0 + std::norm(g);
  return {(phi1 * std::conj(g) - std::conj(psi1)) / d, (std::conj(psi1) * g + phi1) / d};
}

std::array<cplx, 2> pole_formula(cplx u, cplx phi2, cplx psi2) {
  const double d = 1.0 + std::norm(u);
  return {(phi2 - u * std::conj(psi2)) / d, (std::conj(psi2) + std::conj(u) * phi2) / d};
}

std::array<CJet, 2> primary_formula(const CJet& g, const CJet& phi1, const CJet& psi1) {
  const CJet d = 1.0 + g * conj(g);
  return {(phi1 * conj(g) - conj(psi1)) / d, (conj(psi1) * g + phi1) / d};
}

std::array<CJet, 2> pole_formula(const CJet& u, const CJet& phi2, const CJet& psi2) {
  const CJet d = 1.0 + u * conj(u);
  return {(phi2 - u * conj(psi2)) / d, (conj(psi2) + conj(u) * phi2) / d};
}

Vec4 to_r4(const std::array<cplx, 2>& f) { return {f[0].real(), f[0].imag(), f[1].real(), f[1].imag()}; }

PointJet to_r4(const std::array<CJet, 2>& f) {
  return {real_part(f[0]), imag_part(f[0]), real_part(f[1]), imag_part(f[1])};
}

}  // namespace

KleinParams reference_params(double r) {
  KleinParams p;
  p.r = r;
  const double y = 0.125 * r;
  p.poles = {cplx(0.1, y), cplx(0.35, y), cplx(0.6, y), cplx(0.85, y)};
  p.p1 = cplx(0.2, 0.3 * r);
  return p;
}

KleinImmersion::KleinImmersion(ImmersionTriple triple, double chart_threshold)
    : triple_(std::move(triple)), u_(triple_.g.reciprocal()), chart_threshold_(chart_threshold) {
  const Lattice& l = triple_.g.context().lattice();
  if (!l.is_rectangular() || l.omega1() != cplx(1.0)) {
    throw Error(ErrorCode::NonRectangularLattice, "Klein immersions live on the lattice (1, ir)");
  }
  r_ = l.omega2().imag();
}

bool KleinImmersion::uses_pole_chart(cplx z) const {
  // NaN at an exact pole also selects the pole chart
  return !(std::abs(triple_.g.value(z)) <= chart_threshold_);
}

std::array<cplx, 2> KleinImmersion::evaluate_primary(cplx z) const {
  return primary_formula(triple_.g.value(z), triple_.phi1.value(z), triple_.psi1.value(z));
}

std::array<cplx, 2> KleinImmersion::evaluate_pole_chart(cplx z) const {
  return pole_formula(u_.value(z), triple_.phi2.value(z), triple_.psi2.value(z));
}

std::array<cplx, 2> KleinImmersion::evaluate(cplx z) const {
  const cplx g = triple_.g.value(z);
  if (std::abs(g) <= chart_threshold_) {
    return primary_formula(g, triple_.phi1.value(z), triple_.psi1.value(z));
  }
  return evaluate_pole_chart(z);
}

double KleinImmersion::condition_quantity(cplx z) const {
  if (uses_pole_chart(z)) return std::abs(triple_.phi2.jet(z).d1) + std::abs(triple_.psi2.jet(z).d1);
  return std::abs(triple_.phi1.jet(z).d1) + std::abs(triple_.psi1.jet(z).d1);
}

Vec4 KleinImmersion::point(cplx z) const { return to_r4(evaluate(z)); }

PointJet KleinImmersion::point_jet(cplx z) const {
  const Taylor2<cplx> g = triple_.g.jet(z);
  if (std::abs(g.v) <= chart_threshold_) {
    return to_r4(primary_formula(lift(g), lift(triple_.phi1.jet(z)), lift(triple_.psi1.jet(z))));
  }
  return to_r4(pole_formula(lift(u_.jet(z)), lift(triple_.phi2.jet(z)), lift(triple_.psi2.jet(z))));
}

KleinConstruction build_klein(const KleinParams& params) {
  const auto [i0, i1] = params.phi_poles;
  if (i0 < 0 || i0 > 3 || i1 < 0 || i1 > 3) throw Error(ErrorCode::DegenerateChoice, "phi pole index out of range");
  KleinConstruction out;
  out.params = params;
  auto ctx = std::make_shared<const EllipticContext>(Lattice::rectangular(params.r));
  out.g = build_symmetric_g(params.poles, ctx);
  out.phi1 = build_phi1(out.g.poles[i0], out.g.poles[i1], params.p1, out.g.g, params.policy);
  ImmersionTriple t = derive_triple(out.g.g, out.phi1.phi1);
  out.containments = check_containments(t);
  if (!out.containments.all()) throw Error(ErrorCode::DegenerateChoice, "pole containment failed");
  out.immersion = std::make_shared<const KleinImmersion>(std::move(t));
  return out;
}

Taylor2<cplx> Monomial::jet(cplx z) const {
  const double k1 = k;
  const cplx v = c * std::pow(z, k);
  if (k == 0) return {v, 0.0, 0.0};
  return {v, c * k1 * std::pow(z, k - 1), c * k1 * (k1 - 1.0) * std::pow(z, k - 2)};
}

Monomial Monomial::involution_conjugate() const {
  return {std::conj(c) * ((k % 2 == 0) ? 1.0 : -1.0), -k};
}

MonomialTriple derive_triple(const Monomial& g, const Monomial& phi1) {
  MonomialTriple t;
  t.g = g;
  t.phi1 = phi1;
  t.phi2 = phi1 / g;
  t.psi2 = phi1.involution_conjugate();
  const Monomial m = t.phi2.involution_conjugate();
  t.psi1 = {-m.c, m.k};
  return t;
}

MonomialTriple veronese_triple() { return derive_triple({1.0, 3}, {1.0, 2}); }

std::array<cplx, 2> VeroneseImmersion::evaluate(cplx z) {
  const double n = std::norm(z);
  const double d = n * n * n + 1.0;
  return {std::conj(z) * (n * n - 1.0) / d, z * z * (n + 1.0) / d};
}

std::array<cplx, 2> VeroneseImmersion::evaluate_from_triple(const MonomialTriple& t, cplx z) {
  return primary_formula(t.g.jet(z).v, t.phi1.jet(z).v, t.psi1.jet(z).v);
}

double VeroneseImmersion::condition_quantity(const MonomialTriple& t, cplx z) {
  return std::abs(t.phi1.jet(z).d1) + std::abs(t.psi1.jet(z).d1);
}

Vec4 VeroneseImmersion::point(cplx z) const {
  if (chart_ == Chart::Inner) return to_r4(evaluate(z));
  // z = 1/w
  const double n = std::norm(z);
  const double d = n * n * n + 1.0;
  return to_r4(std::array<cplx, 2>{z * (1.0 - n * n) / d, std::conj(z * z) * (1.0 + n) / d});
}

PointJet VeroneseImmersion::point_jet(cplx z) const {
  const CJet w = complex_variable(z);
  const CJet n = w * conj(w);
  const CJet d = n * n * n + 1.0;
  if (chart_ == Chart::Inner) return to_r4(std::array<CJet, 2>{conj(w) * (n * n - 1.0) / d, w * w * (n + 1.0) / d});
  return to_r4(std::array<CJet, 2>{w * (1.0 - n * n) / d, conj(w * w) * (1.0 + n) / d});
}

ConditionMinimum immersion_condition_min(const KleinImmersion& imm, int n, int m) {
  ConditionMinimum best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const cplx z(double(i) / n, imm.r() * j / m);
      const double q = imm.condition_quantity(z);
      if (q < best.value) best = {q, z};
    }
  }
  return best;
}

ConditionMinimum veronese_condition_min(const MonomialTriple& t, int n, int m) {
  ConditionMinimum best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < m; ++j) {
      const cplx z = std::polar(double(i) / n, 2.0 * kPi * j / m);
      const double q = VeroneseImmersion::condition_quantity(t, z);
      if (q < best.value) best = {q, z};
    }
  }
  return best;
}

namespace {

struct ScanGrid {
  std::vector<cplx> params;
  std::vector<Vec4> points;
  std::vector<double> spacing;  // distance to the nearest grid neighbor
};

// Samples on an n x n grid; index = i * n + j with wrap in j (and in i on the torus).
ScanGrid scan_grid(const Surface& s, int n) {
  ScanGrid g;
  const ParameterDomain d = s.domain();
  const bool torus = d.kind == DomainKind::Torus;
  g.params.reserve(std::size_t(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (torus) {
        g.params.emplace_back(d.width * i / n, d.height * j / n);
      } else {
        // colatitude offset by half a step keeps both poles off the grid
        const double theta = kPi * (i + 0.5) / n;
        const double phi = 2.0 * kPi * j / n;
        const double pz = std::cos(theta);
        g.params.push_back(std::polar(std::sin(theta), phi) / (1.0 - pz));
      }
    }
  }
  g.points.resize(g.params.size());
  for (std::size_t k = 0; k < g.params.size(); ++k) g.points[k] = s.point(g.params[k]);
  g.spacing.assign(g.params.size(), std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = i * n + j;
      const int right = i * n + (j + 1) % n;
      const double dr = (g.points[k] - g.points[right]).norm();
      g.spacing[k] = std::min(g.spacing[k], dr);
      g.spacing[right] = std::min(g.spacing[right], dr);
      if (i + 1 < n || torus) {
        const int up = ((i + 1) % n) * n + j;
        const double du = (g.points[k] - g.points[up]).norm();
        g.spacing[k] = std::min(g.spacing[k], du);
        g.spacing[up] = std::min(g.spacing[up], du);
      }
    }
  }
  return g;
}

struct CellKey {
  std::array<std::int64_t, 4> c;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k.c) {
      h ^= std::uint64_t(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }
};

}  // namespace

ScanReport self_intersection_scan(const Surface& s, int n, double delta, double eps) {
  const ScanGrid grid = scan_grid(s, n);
  ScanReport rep;
  rep.samples = int(grid.points.size());
  rep.delta = delta;
  std::vector<double> sp = grid.spacing;
  std::sort(sp.begin(), sp.end());
  rep.min_spacing = sp.front();
  rep.median_spacing = sp[sp.size() / 2];
  rep.eps = eps > 0.0 ? eps : 0.5 * rep.min_spacing;
  if (!(rep.eps > 0.0)) throw Error(ErrorCode::NumericalBreakdown, "sample grid has coincident neighbors");

  auto key = [&](const Vec4& p) {
    CellKey k;
    for (int i = 0; i < 4; ++i) k.c[i] = std::int64_t(std::floor(p[i] / rep.eps));
    return k;
  };
  std::unordered_map<CellKey, std::vector<int>, CellHash> cells;
  for (int k = 0; k < rep.samples; ++k) cells[key(grid.points[k])].push_back(k);

  for (int a = 0; a < rep.samples; ++a) {
    const CellKey base = key(grid.points[a]);
    for (int m = 0; m < 81; ++m) {
      CellKey nb = base;
      int code = m;
      for (int i = 0; i < 4; ++i, code /= 3) nb.c[i] += code % 3 - 1;
      const auto it = cells.find(nb);
      if (it == cells.end()) continue;
      for (int b : it->second) {
        if (b <= a) continue;
        const double dist = (grid.points[a] - grid.points[b]).norm();
        if (dist >= rep.eps) continue;
        const cplx z = grid.params[a], w = grid.params[b];
        if (s.parameter_distance(z, w) <= delta) continue;
        if (s.has_involution() && s.parameter_distance(w, s.involution(z)) <= delta) {
          ++rep.involution_pairs;
          continue;
        }
        ++rep.total_pairs;
        rep.pairs.push_back({z, w, dist});
      }
    }
  }
  std::sort(rep.pairs.begin(), rep.pairs.end(), [](const IntersectionPair& x, const IntersectionPair& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (x.z.real() != y.z.real()) return x.z.real() < y.z.real();
    return x.z.imag() < y.z.imag();
  });
  if (rep.pairs.size() > 100) rep.pairs.resize(100);
  return rep;
}

Mesh sample_mesh(const Surface& s, int n, int m) {
  if (n < 2 || m < 2) throw Error(ErrorCode::ConfigError, "mesh resolution must be at least 2 x 2");
  const ParameterDomain d = s.domain();
  Mesh mesh;
  mesh.vertices.reserve(std::size_t(n) * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) mesh.vertices.push_back(s.point(cplx(d.width * i / n, d.height * j / m)));
  }
  auto id = [&](int i, int j) { return (j % m) * n + (i % n); };
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return mesh;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void export_mesh(const Mesh& mesh, MeshFormat format, const std::string& path, const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  if (format == MeshFormat::Obj) {
    for (const auto& h : header) out << "# " << h << '\n';
    out << "# vertices carry (x, y, z, w); viewers read the first three\n";
    for (const Vec4& v : mesh.vertices) {
      out << "v " << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << ' ' << fmt(v[3]) << '\n';
    }
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  } else {
    out << "ply\nformat ascii 1.0\n";
    for (const auto& h : header) out << "comment " << h << '\n';
    out << "element vertex " << mesh.vertices.size() << '\n';
    for (const char* p : {"x", "y", "z", "w"}) out << "property double " << p << '\n';
    out << "element face " << mesh.faces.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const Vec4& v : mesh.vertices) {
      out << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << ' ' << fmt(v[3]) << '\n';
    }
    for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Mesh import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  Mesh mesh;
  std::string line;
  std::getline(in, line);
  if (line == "ply") {
    std::size_t nv = 0, nf = 0;
    while (std::getline(in, line) && line != "end_header") {
      std::istringstream ls(line);
      std::string word, what;
      ls >> word >> what;
      if (word == "element" && what == "vertex") ls >> nv;
      if (word == "element" && what == "face") ls >> nf;
    }
    mesh.vertices.resize(nv);
    for (auto& v : mesh.vertices) in >> v[0] >> v[1] >> v[2] >> v[3];
    mesh.faces.resize(nf);
    for (auto& f : mesh.faces) {
      int count = 0;
      in >> count >> f[0] >> f[1] >> f[2];
      if (count != 3) throw Error(ErrorCode::IoError, "only triangles are supported");
    }
  } else {
    do {
      std::istringstream ls(line);
      std::string tag;
      ls >> tag;
      if (tag == "v") {
        Vec4 v = Vec4::Zero();
        ls >> v[0] >> v[1] >> v[2];
        if (!(ls >> v[3])) v[3] = 0.0;
        mesh.vertices.push_back(v);
      } else if (tag == "f") {
        std::array<int, 3> f{};
        ls >> f[0] >> f[1] >> f[2];
        mesh.faces.push_back({f[0] - 1, f[1] - 1, f[2] - 1});
      }
    } while (std::getline(in, line));
  }
  if (!in.eof() && in.fail()) throw Error(ErrorCode::IoError, "malformed mesh " + path);
  return mesh;
}

}  // namespace klein4
