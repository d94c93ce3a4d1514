#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "biphoton/experiment.hpp"

namespace biphoton {

// JSON conventions: complex numbers are [re, im] pairs, matrices are
// row-major arrays of such pairs. Parse errors surface as
// std::invalid_argument carrying the byte position.

/// {"amplitudes": [[re,im] x3]} for pure states, {"rho": [[re,im] x9]} for
/// density matrices.
std::string state_to_json(const QutritState& state);

/// Parses and validates a state; `tol` as in the QutritState factories.
QutritState state_from_json(std::string_view text, double tol = kStateTol);

/// State payload read without validation, for diagnostics on possibly
/// unphysical input. Exactly one member is set.
struct RawState {
  std::optional<Eigen::Vector3cd> amplitudes;
  std::optional<Eigen::Matrix3cd> rho;

  /// Density-matrix view: c c^dag for amplitude payloads.
  Eigen::Matrix3cd as_matrix() const;
};

RawState raw_state_from_json(std::string_view text);

/// {"A": a, "B": b, "C": c, "D": [re,im], "E": [re,im], "F": [re,im]}.
std::string k4_to_json(const CoherencyMatrix& k);
CoherencyMatrix k4_from_json(std::string_view text);

/// {"rates": [...], "counts": [...]?, "total_per_setting": N?, "seed": S?}.
std::string moments_to_json(const MomentVector& m);
MomentVector moments_from_json(std::string_view text);

std::string reconstruction_to_json(const ReconstructionResult& r);

std::string report_to_json(const ConstraintReport& report);

/// Reads a SweepConfig; absent keys keep their defaults. "noise" is either
/// {"mode":"exact"} or {"mode":"poisson","total_per_setting":N,"seed":S}.
SweepConfig sweep_config_from_json(std::string_view text);

std::string sweep_config_to_json(const SweepConfig& cfg);

/// The document written by write_sweep_json, as a string.
std::string sweep_to_json(std::span<const SweepRecord> records,
                          const SweepConfig& cfg);

}  // namespace biphoton
