#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zernike::cli {

/// Embedded in every JSON document.
std::string report_schema_version();

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, module_error = 3 };

/// Runs one subcommand (args exclude the program name). JSON and CSV documents
/// go to `out` (or the --out file), short diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.25" -> "1/4", "-1.5i" -> "-3/2i"; text without a decimal point is returned unchanged.
std::string decimals_to_fractions(const std::string& text);

}  // namespace zernike::cli
