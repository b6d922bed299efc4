#pragma once

#include "tvc/params.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tvc {

/// Reads a scenario from a sectioned key-value document:
///
///     # comment
///     [spacecraft]
///     m_s = 150
///     disturbance_override = 12.64, 0
///     [motor]
///     catalog = FAULHABER 3890_CR_DFF   # optional; fills the data-sheet fields
///     N_g = 10
///     [rw]
///     tau_rm = 0.2
///     gamma = 100
///     [control]
///     K = 31.82, -131.44, -65.24, 18.32, 217.39, -0.37
///     [sim]
///     model = linear
///     dt = 0.0005
///     duration = 50
///     beta0_deg = 1.0          # initial deviations carry a unit suffix
///     w_x = 0:0, 10:0.5, 20:0  # tabulated time:value pairs
///
/// Unknown sections and keys are rejected, and all missing or malformed keys
/// are reported together through ValidationError. Range checks are left to
/// validate_scenario.
ScenarioConfig parse_config(std::istream& is);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical text form. Every field is written explicitly, with round-trip
/// float formatting, so parse_config(to_config_text(c)) == c.
std::string to_config_text(const ScenarioConfig& cfg);

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_digest(const ScenarioConfig& cfg);

}  // namespace tvc
