// Batch front end: one subcommand per suite, plus `report` for saved records.
//
//   hardy eta --seed 7 --param n=2..4 --param p=1,2 --out eta.json
//   hardy report eta.json --out eta.csv
//
// Exit status: 0 when every pass flag is true, 1 when some flag is false, 2 on errors.

#include "hardy/common.hpp"
#include "hardy/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace
{

struct SuiteOptions
{
	std::string config;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> out;
	std::optional<std::size_t> samples;
	std::optional<std::size_t> grid;
	std::vector<std::string> params;
};

hardy::ExperimentConfig build_config(const std::string& suite, const SuiteOptions& opts)
{
	hardy::ExperimentConfig config;
	bool seeded = false;
	if (!opts.config.empty())
	{
		config = hardy::ExperimentConfig::load(opts.config);
		seeded = true;
		if (!config.suite.empty() && config.suite != suite)
			throw hardy::PreconditionViolation {"config is for suite '" + config.suite + "', not '" + suite + "'"};
	}
	config.suite = suite;
	if (opts.seed)
	{
		config.seed = *opts.seed;
		seeded = true;
	}
	if (!seeded)
		throw hardy::PreconditionViolation {"a seed is required (--seed or a config file)"};
	if (opts.out)
		config.out = opts.out;
	if (opts.samples)
		config.samples = *opts.samples;
	if (opts.grid)
		config.grid = *opts.grid;
	for (const auto& entry : opts.params)
	{
		const auto eq = entry.find('=');
		if (eq == std::string::npos || eq == 0)
			throw hardy::PreconditionViolation {"--param expects key=range, got '" + entry + "'"};
		config.params[entry.substr(0, eq)] = entry.substr(eq + 1);
	}
	return config;
}

bool all_pass(const std::vector<hardy::ResultRecord>& records)
{
	for (const auto& r : records)
		if (!r.all_pass())
			return false;
	return true;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app {"Finite-dimensional experiments on vector-valued Hardy spaces"};
	app.require_subcommand(1);

	SuiteOptions suite_opts;
	for (const auto& name : hardy::suite_names())
	{
		auto* sub = app.add_subcommand(name, "run the " + name + " suite");
		sub->add_option("--config", suite_opts.config, "INI configuration file")->check(CLI::ExistingFile);
		sub->add_option("--seed", suite_opts.seed, "master seed (unsigned 64-bit)");
		sub->add_option("--out", suite_opts.out, "write records as JSON to this path");
		sub->add_option("--samples", suite_opts.samples, "Monte-Carlo samples or random instances per point");
		sub->add_option("--grid", suite_opts.grid, "quadrature grid size");
		sub->add_option("--param", suite_opts.params, "parameter range, key=range (repeatable)");
	}

	std::vector<std::string> inputs;
	std::optional<std::string> csv_out;
	auto* report_cmd = app.add_subcommand("report", "tabulate saved records as CSV");
	report_cmd->add_option("records", inputs, "JSON record files")->required()->check(CLI::ExistingFile);
	report_cmd->add_option("--out", csv_out, "CSV destination (default: standard output)");

	CLI11_PARSE(app, argc, argv);

	try
	{
		if (report_cmd->parsed())
		{
			std::vector<hardy::ResultRecord> records;
			for (const auto& path : inputs)
			{
				auto more = hardy::read_records(path);
				records.insert(records.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
			}
			const auto table = hardy::report(records);
			if (csv_out)
			{
				std::ofstream file {*csv_out, std::ios::trunc};
				if (!(file << table.csv))
					throw hardy::Error {"cannot write to '" + *csv_out + "'"};
				std::cout << table.summary;
			}
			else
			{
				std::cout << table.csv;
				std::cerr << table.summary;
			}
			return all_pass(records) ? 0 : 1;
		}

		const std::string suite = app.get_subcommands().front()->get_name();
		const auto records = hardy::run_suite(build_config(suite, suite_opts));
		if (records.empty())
		{
			std::cout << "no records\n";
			return 0;
		}
		std::cout << hardy::report(records).summary;
		return all_pass(records) ? 0 : 1;
	}
	catch (const std::exception& e)
	{
		std::cerr << "hardy: " << e.what() << "\n";
		return 2;
	}
}
