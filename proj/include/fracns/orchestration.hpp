#pragma once

#include "fracns/analysis.hpp"
#include "fracns/config_file.hpp"
#include "fracns/solver.hpp"

#include <string>
#include <vector>

namespace fracns::cli {

spectral::SpectralOperator build_operator(const RunConfig& c);
solver::DelayedForce build_force(const RunConfig& c);
solver::HistorySegment build_datum(const RunConfig& c, const spectral::SpectralOperator& op);

struct SolveArtifacts {
    solver::RunState state;
    analysis::EstimatedConstants constants;
    std::string trajectory_csv;
    std::string manifest_path;
    std::string spectrum_csv;
    std::vector<std::string> checkpoints;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
    int exit_code = 0; // 0 completed, 2 halted on blow-up
};

/// Full solve pipeline: build, estimate monitor constants, run, write the
/// trajectory CSV, checkpoint fields and the manifest into c.output_dir.
SolveArtifacts run_solve(const RunConfig& c);

/// Manifest key-values: the config echo plus the run.* result namespace.
KeyValues make_manifest(const RunConfig& c, const SolveArtifacts& art);

} // namespace fracns::cli
