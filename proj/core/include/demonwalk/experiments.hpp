#pragma once

#include "demonwalk/config.hpp"
#include "demonwalk/report.hpp"

namespace demonwalk {

/// Runs the configured experiment once per replica on stream
/// derive_stream(seed, replica), merges the replica tallies in replica
/// order, and assembles the report. Deterministic for a fixed config.
Report run_replicas(const ExperimentConfig& config);

}  // namespace demonwalk
