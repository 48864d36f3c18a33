#pragma once

#include <string>
#include <vector>

#include "esim/checks.hpp"
#include "esim/runner.hpp"

namespace esim::repro {

struct ReproResult {
    checks::CheckList checks;
    std::vector<runner::Artifact> artifacts;
};

std::vector<std::string> target_names();

// Runs a named reproduction bundle: emits its CSV artifacts and evaluates
// the reference checks it owns.
ReproResult run(const std::string& target, int workers);

} // namespace esim::repro
