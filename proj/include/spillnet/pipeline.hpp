#pragma once

#include <string>
#include <vector>

#include "spillnet/config.hpp"
#include "spillnet/connectedness.hpp"
#include "spillnet/panel.hpp"

namespace spillnet {

/// Loads, clips, aligns and differences the configured inputs.
ReturnPanel load_panel(const RunConfig& cfg);

/// Table-4/5 style diagnostics battery plus the Chow test per break date.
void run_diagnostics(const RunConfig& cfg);

/// Full-sample static VAR: diagnostics, estimate snapshot, Table-6 style
/// report, pairwise matrices, network files, manifest.
void run_static(const RunConfig& cfg);

/// TVP path, per-date index series, time-averaged reports (full sample and
/// per break segment), per-segment networks, manifest.
void run_dynamic(const RunConfig& cfg);

/// Re-emits DOT/JSON graphs from a saved report JSON.
void run_network(const std::string& report_json_path, double edge_threshold,
                 const std::string& output_dir);

}  // namespace spillnet
