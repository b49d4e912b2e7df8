#pragma once

#include <optional>
#include <string>

#include "klein4/config.hpp"
#include "klein4/gluing.hpp"

namespace klein4::app {

struct Options {
  int threads = 0;
  bool reflect = false;  // compose with the reflection x4 -> -x4
};

Report involution_classify(cplx omega1, cplx omega2, cplx a, cplx b);
Report klein_build(const RunConfig& cfg);
Report klein_verify(const RunConfig& cfg, const Options& opt);
Report klein_energy(const RunConfig& cfg, const Options& opt);
Report klein_euler(const RunConfig& cfg, const Options& opt);
Report klein_mesh(const RunConfig& cfg, const Options& opt);
Report veronese_verify(const RunConfig& cfg, const Options& opt);

enum class VeronesePair { Same, Reflected };

/// Normal components of the trace-free second fundamental form of the
/// Veronese (optionally reflected) at a fixed interior point.
TracefreeForm veronese_form(bool reflected);

struct GlueInput {
  TracefreeForm p, q;
  std::string source;
  bool restrict_T_special = true;
  double W1 = 0, W2 = 0;  // bound inputs (6 pi each when zero)
};
GlueInput veronese_glue_input(VeronesePair pair);
Report glue_check(const GlueInput& in);

/// klein verify, veronese verify and both Veronese glue checks in one report.
Report full_report(const RunConfig& cfg, const Options& opt);

}  // namespace klein4::app
