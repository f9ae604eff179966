#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

namespace crl {

int cmd_decide(const std::string& file, const std::string& format, bool explain, std::size_t max_unroll,
               std::ostream& out, std::ostream& err);
/// Analyzes every *.loop file under dir (sorted by name) with `jobs`
/// workers. Writes CSV to csv_path, or to out when no path is given.
int cmd_batch(const std::string& dir, const std::optional<std::string>& csv_path, unsigned jobs,
              std::ostream& out, std::ostream& err);
/// input is a comma-separated list of name=rational assignments.
int cmd_simulate(const std::string& file, const std::string& input, std::size_t steps, std::ostream& out,
                 std::ostream& err);
int cmd_oracle(const std::string& file, std::size_t k, bool check, std::size_t max_unroll, std::ostream& out,
               std::ostream& err);

/// Command-line entry point (subcommands decide, batch, simulate, oracle).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crl
