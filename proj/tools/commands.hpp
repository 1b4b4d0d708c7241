#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "config.hpp"

namespace tableau::cli {

using Files = std::vector<std::filesystem::path>;

Files cmd_surface(const ExperimentConfig& cfg, std::ostream& log);
Files cmd_boundary(const ExperimentConfig& cfg, std::ostream& log);
Files cmd_sample(const ExperimentConfig& cfg, std::ostream& log);
Files cmd_compare(const ExperimentConfig& cfg, std::ostream& log);
Files cmd_kernel(const ExperimentConfig& cfg, std::ostream& log);
Files cmd_phase(const ExperimentConfig& cfg, std::ostream& log);

/// Exit codes: 0 success, 2 configuration or domain error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tableau::cli
