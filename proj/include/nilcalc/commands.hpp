#pragma once

#include "nilcalc/document.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilcalc {

inline constexpr const char *tool_version = "0.3.0";
inline constexpr int report_schema_version = 1;

struct RunOptions
{
	std::optional<std::string> algebra; // document path
	std::optional<std::string> family;
	std::optional<std::string> param;
	std::optional<std::string> xi;
	std::optional<std::string> gamma;
	std::optional<int> resolution;
	std::optional<int> truncation;
	std::optional<double> tolerance;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> corpus;
	unsigned threads = 1; // not echoed: reports do not depend on it
};

std::vector<std::string> command_names();

struct CommandOutcome
{
	Json report;
	int exit_code = 0;
};

// never throws; failures land in report.status
CommandOutcome run_command(const std::string &command, const RunOptions &options);

// "a,b,c" with p/q entries
QVec parse_covector(const std::string &text);
// rows separated by ';', entries by ','; entries like 1/2, -i, 3+2i
Eigen::MatrixXcd parse_complex_matrix(const std::string &text);

// NILCALC_THREADS caps the hardware count
unsigned worker_count();

} // namespace nilcalc
