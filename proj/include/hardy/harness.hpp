#ifndef HARDY_HARNESS_HPP
#define HARDY_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hardy
{

/// Expands "a..b" (inclusive integers) or a comma list "1,3/2,inf" into its items.
/// Throws PreconditionViolation on an empty range.
std::vector<std::string> expand_range(std::string_view text);

/// One experiment: a suite name, a master seed and parameter ranges.
struct ExperimentConfig
{
	std::string suite;
	std::uint64_t seed = 1;
	std::optional<std::string> out;
	std::size_t samples = 0; ///< 0: the suite's default
	std::size_t grid = 0;    ///< 0: the suite's default
	std::map<std::string, std::string> params; ///< raw range text per parameter

	/// INI-style file: top-level keys suite, seed, out, samples, grid and a
	/// [params] section. The seed is mandatory.
	static ExperimentConfig load(const std::string& path);

	/// Rejects unknown suites, unknown parameter names and empty ranges.
	void validate() const;
};

/// Suites understood by run_suite.
const std::vector<std::string>& suite_names();

/// Anchors a record may carry: short names of the results each suite exercises.
const std::vector<std::string>& anchor_names();

struct ResultRecord
{
	std::string suite;
	std::string anchor;
	std::uint64_t seed = 0;
	std::vector<std::pair<std::string, std::string>> params;
	std::vector<std::pair<std::string, double>> values;
	std::vector<std::pair<std::string, double>> std_errors;
	std::vector<std::pair<std::string, bool>> passes;
	std::string timestamp;

	bool all_pass() const;
	std::optional<double> value(std::string_view name) const;
	std::optional<std::string> param(std::string_view name) const;
	std::optional<bool> pass(std::string_view name) const;
};

/// Runs the configured suite. Records depend only on the configuration (the
/// timestamp aside, which honours SOURCE_DATE_EPOCH). Writes them to config.out
/// when set.
std::vector<ResultRecord> run_suite(const ExperimentConfig& config);

std::string records_to_json(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> records_from_json(std::string_view text);
void write_records(const std::vector<ResultRecord>& records, const std::string& path);
std::vector<ResultRecord> read_records(const std::string& path);

struct Report
{
	std::string csv;     ///< one section per anchor, values at 17 significant digits
	std::string summary; ///< human-readable pass/fail digest
};

/// Throws PreconditionViolation for an empty record list.
Report report(const std::vector<ResultRecord>& records);

/// Parses a CSV produced by report back into (anchor, header, rows).
struct CsvSection
{
	std::string anchor;
	std::vector<std::string> header;
	std::vector<std::vector<std::string>> rows;
};
std::vector<CsvSection> parse_report_csv(std::string_view csv);

} // namespace hardy

#endif
