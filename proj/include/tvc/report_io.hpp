#pragma once

#include "tvc/catalog.hpp"
#include "tvc/linear_model.hpp"
#include "tvc/simulator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tvc {

/// Header of the trajectory CSV, one column per channel, in output order.
const std::vector<std::string>& trajectory_columns();

/// Writes the trajectory with a header row and 15 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Flat key-value JSON of the metrics. Keys are sorted and numbers use the
/// shortest round-trip form, so parsing and re-dumping reproduces the bytes.
std::string metrics_json(const MetricsReport& m);

/// Human-readable summary laid out like the published result tables.
void print_metrics_table(std::ostream& os, const MetricsReport& m);

/// Labeled CSV sections: A, B, eigenvalues, controllability rank and the
/// derived inertia block.
void write_linear_model_csv(std::ostream& os, const LinearModel& model, const StabilityReport& r);

struct SweepRow {
    std::string name;
    std::optional<MetricsReport> metrics;
    double v_margin = 0.0;      ///< v_em_max / v_max
    double omega_margin = 0.0;  ///< omega_em_max / omega_max
    double tau_margin = 0.0;    ///< tau_em_max / tau_stall
    bool feasible = false;
    std::string error;
};

/// Runs `base` once per catalog motor; rows keep catalog order. Failures are
/// recorded in-row. With `parallel`, motors run concurrently.
std::vector<SweepRow> sweep_motors(const ScenarioConfig& base,
                                   const std::vector<CatalogEntry>& catalog, bool parallel);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace tvc
