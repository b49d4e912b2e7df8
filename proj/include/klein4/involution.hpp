#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "klein4/lattice.hpp"

namespace klein4 {

/// Antiholomorphic map z -> a conj(z) + b, taken modulo a lattice.
struct Involution {
  cplx a = 1.0, b = 0.0;

  cplx operator()(cplx z) const { return a * std::conj(z) + b; }
};

/// Affine map z -> alpha z + delta.
struct MoebiusMap {
  cplx alpha = 1.0, delta = 0.0;

  cplx operator()(cplx z) const { return alpha * z + delta; }
  MoebiusMap inverse() const { return {1.0 / alpha, -delta / alpha}; }
};

struct InvolutionDiagnostics {
  bool unit_modulus = false;      // |a| = 1
  bool preserves_lattice = false; // a conj(Gamma) = Gamma
  bool squares_to_identity = false;  // a conj(b) + b in Gamma
  std::vector<std::string> failures;

  bool valid() const { return unit_modulus && preserves_lattice && squares_to_identity; }
};

/// Checks the three conditions with tolerance 1e-10 on lattice coordinates.
InvolutionDiagnostics involution_validate(cplx a, cplx b, const Lattice& lattice);

struct FixpointReport {
  bool fixpoint_free = false;
  std::optional<cplx> witness;  // a fixpoint in the original coordinates
  double residual = 0.0;        // distance of I(witness) - witness to the lattice
  std::string rule;             // which case of the analysis decided
};

/// Decides existence of fixpoints by the case analysis on the canonical
/// generating pair. Throws InvalidInvolution for invalid input and
/// UnsupportedA if a is outside the classified set.
FixpointReport involution_fixpoints(const Involution& inv, const Lattice& lattice);

enum class NormalKind { TranslationType, GlideType };

std::string to_string(NormalKind kind);

/// phi^{-1} o I o phi equals `normal` modulo the canonical lattice (1, tau),
/// where phi = conjugating_map.
struct InvolutionNormalForm {
  NormalKind kind;
  MoebiusMap conjugating_map;
  cplx tau;           // canonical modulus (purely imaginary)
  Involution normal;  // conj(z) + 1/2 or -conj(z) + tau/2
};

/// Throws InvalidInvolution, NonRectangularLattice or HasFixpoints.
InvolutionNormalForm involution_normalize(const Involution& inv, const Lattice& lattice);

}  // namespace klein4
