// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Everything lives behind run() so tests can drive
// it in-process.

#ifndef RLR_TOOLS_CLI_HPP
#define RLR_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace rlr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::string comment;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g, which round-trips every finite double.
std::string format_double(double v);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

/// Runs one command. `args` excludes the program name. Output goes to `out`
/// unless --output-path is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlr::cli

#endif  // RLR_TOOLS_CLI_HPP
