#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sentitrade/config.hpp"

namespace sentitrade::commands {

/// Subcommands in pipeline order; summary.md concatenates their sections in this order.
const std::vector<std::string>& names();

/// Runs one subcommand. Progress goes to `out`; errors are reported on `err`
/// and turn into exit code 1.
int run(std::string_view name, const config::RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sentitrade::commands
