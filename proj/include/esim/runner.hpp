#pragma once

#include <string>
#include <utility>
#include <vector>

#include "esim/scenario.hpp"

namespace esim::runner {

struct Artifact {
    std::string filename;
    std::string content; // CSV bytes
};

// Executes a scenario (sweep points in parallel, rows in input order) and
// returns the CSV artifacts. The first artifact is the primary output named
// by the scenario; simulation modules may add companion files.
std::vector<Artifact> run_scenario(const scenario::Scenario& s, int workers);

} // namespace esim::runner
