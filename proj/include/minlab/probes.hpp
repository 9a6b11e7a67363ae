#pragma once

#include <string>
#include <vector>

#include "minlab/config.hpp"

namespace minlab::probes {

struct ProbeOutcome {
    std::string name;
    bool pass = false;
    std::string message;                 // one-line result summary
    std::vector<std::string> artifacts;  // file names relative to the output directory
};

/** Everything one run produced. `pass` is the conjunction of the probe
 *  verdicts; `incomplete` marks a run aborted by a resource error. */
struct ReportBundle {
    std::string outDir;
    std::vector<ProbeOutcome> probes;
    bool pass = true;
    bool incomplete = false;
};

// Executes the configured probes in declared order, fail-soft: a failing
// probe is recorded and the run continues. Resource errors abort the rest
// of the run and mark the bundle incomplete. Writes one artifact set per
// probe plus report.json into cfg.out_dir.
ReportBundle run_experiment(const config::ExperimentConfig& cfg);

}  // namespace minlab::probes
