// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "hardy/extension.hpp"
#include "hardy/harness.hpp"
#include "hardy/sampling.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

using namespace hardy;

namespace
{

struct Outcome
{
	bool pass = false;
	std::string detail;
};

std::string fmt(const char* format, auto... args)
{
	char buffer[512];
	std::snprintf(buffer, sizeof buffer, format, args...);
	return buffer;
}

std::vector<ResultRecord> run(const std::string& suite, std::uint64_t seed, std::map<std::string, std::string> params,
                              std::size_t samples = 0)
{
	ExperimentConfig config;
	config.suite = suite;
	config.seed = seed;
	config.samples = samples;
	config.params = std::move(params);
	return run_suite(config);
}

std::vector<const ResultRecord*> with_anchor(const std::vector<ResultRecord>& records, std::string_view anchor_prefix)
{
	std::vector<const ResultRecord*> out;
	for (const auto& r : records)
		if (r.anchor.starts_with(anchor_prefix))
			out.push_back(&r);
	return out;
}

std::size_t failing(const std::vector<const ResultRecord*>& records)
{
	std::size_t n = 0;
	for (const auto* r : records)
		n += !r->all_pass();
	return n;
}

Outcome kernel_identities()
{
	const auto records = run("kernels", 1, {{"n", "1..64"}, {"r", "2..4"}});
	double worst = 0.0;
	for (const auto& r : records)
		worst = std::max(worst, *r.value("coefficient_error"));
	const auto all = with_anchor(records, "");
	return {records.size() == 192 && failing(all) == 0,
	        fmt("%zu (n, r) pairs, %zu failing, worst coefficient error %.2e", records.size(), failing(all), worst)};
}

Outcome exact_means()
{
	double worst = 0.0;
	std::size_t count = 0;
	bool ok = true;
	for (long m = 1; m <= 64; ++m)
	{
		Rng rng {substream_seed(2, static_cast<std::uint64_t>(m))};
		for (int t = 0; t < 200; ++t)
		{
			const auto g = random_trigpoly(SequenceSpace {1 + t % 4, Exponent {2.0}}, -m, m, rng);
			const auto check = exact_mean_check(g, static_cast<std::size_t>(m) + 1);
			ok = ok && check.pass;
			worst = std::max(worst, check.residual);
			++count;
		}
	}
	return {ok && worst <= 1e-10, fmt("%zu polynomials with band m <= 64 on m + 1 points, max residual %.2e", count, worst)};
}

struct SamplingRun
{
	std::vector<ResultRecord> records;
};

const SamplingRun& sampling_run()
{
	static const SamplingRun cached {run("sampling", 3,
	                                     {{"n", "1,2,3,4,8,16,32"},
	                                      {"d", "1,2,4,8"},
	                                      {"p", "1,2,inf"},
	                                      {"eps", "1/2,1/4"}},
	                                     100)};
	return cached;
}

Outcome sampling_sandwich()
{
	const auto records = with_anchor(sampling_run().records, "sampling sandwich");
	std::size_t polys = 0;
	double violations = 0.0, low = 1e300, high = 0.0;
	for (const auto* r : records)
	{
		polys += 100;
		violations += *r->value("violations");
		low = std::min(low, *r->value("min_ratio"));
		high = std::max(high, *r->value("max_ratio"));
	}
	return {!records.empty() && violations == 0.0 && failing(records) == 0,
	        fmt("%zu polynomials over n <= 32, d <= 8, p in {1,2,inf}, eps in {1/2,1/4}: %g violations, ratios in "
	            "[%.4f, %.4f]",
	            polys, violations, low, high)};
}

Outcome block_sampling()
{
	const auto records = with_anchor(sampling_run().records, "sampling on the 12n-th");
	std::size_t polys = 0, failures = 0;
	double low = 1e300, high = 0.0;
	for (const auto* r : records)
	{
		if (std::stol(*r->param("n")) > 16)
			continue;
		polys += 100;
		failures += !r->all_pass();
		low = std::min(low, *r->value("min_ratio"));
		high = std::max(high, *r->value("max_ratio"));
	}
	return {polys >= 500 && failures == 0,
	        fmt("%zu polynomials of degree <= 3n, n <= 16: ratios in [%.4f, %.4f] within (1/3, 3)", polys, low, high)};
}

struct EtaRun
{
	std::vector<ResultRecord> records;
};

const EtaRun& eta_run()
{
	static const EtaRun cached {run("eta", 4, {{"n", "2..9"}, {"p", "1,3/2,2,4,inf"}, {"paley_max_n", "6"}}, 1000)};
	return cached;
}

Outcome eta_sandwich()
{
	bool ok = eta_run().records.size() == 40;
	double worst = 0.0;
	for (const auto& r : eta_run().records)
	{
		const double n = std::stod(*r.param("n"));
		const Exponent p = Exponent::parse(*r.param("p"));
		const Exponent rr = min_two(p);
		const double expected_upper = std::pow(n, 1.0 - rr.reciprocal());
		const double expected_lower = 0.5 * expected_upper;
		worst = std::max(worst, std::abs(*r.value("eta_lower") - expected_lower));
		ok = ok && std::abs(*r.value("eta_lower") - expected_lower) <= 1e-9;
		ok = ok && *r.value("pairing") == n;
		ok = ok && std::abs(*r.value("f_norm") - std::pow(n, p.reciprocal())) <= 1e-9;
		ok = ok && std::abs(*r.value("eta_upper") - expected_upper) <= 1e-12;
		ok = ok && *r.value("eta_lower") <= *r.value("eta_upper");
		ok = ok && *r.pass("sandwich") && *r.pass("closed_form");
	}
	return {ok, fmt("%zu (n, p) points, max |eta_lower - n^{1-1/r}/2| = %.2e", eta_run().records.size(), worst)};
}

Outcome paley_corroboration()
{
	double worst = 0.0;
	std::size_t checked = 0;
	bool ok = true;
	for (const auto& r : eta_run().records)
	{
		if (std::stol(*r.param("n")) > 6 || *r.param("p") != "1")
			continue;
		++checked;
		worst = std::max(worst, *r.value("paley_corroboration_max"));
		ok = ok && *r.pass("paley_bound");
	}
	// The search itself: at least 1000 test functions per n.
	for (int n = 1; n <= 6 && ok; ++n)
		ok = h1_op_norm_lower(paley_symbol(n, SequenceSpace {n, Exponent {2.0}}), {1000, 5}).tested >= 1000;
	return {ok && checked == 5 && worst <= 2.0, fmt("n = 2..6, 1000 test functions each, largest lower bound %.6f", worst)};
}

struct MartingaleRun
{
	std::vector<ResultRecord> records;
};

const MartingaleRun& martingale_run()
{
	static const MartingaleRun cached {run("martingale", 5,
	                                       {{"spaces", "1:1,4:1,4:inf"},
	                                        {"instances", "10"},
	                                        {"m", "1..8"},
	                                        {"packs", "100"},
	                                        {"pack_levels", "1..6"}},
	                                       100000)};
	return cached;
}

Outcome square_function()
{
	const auto records = with_anchor(martingale_run().records, "square-function");
	bool bounds_ok = true;
	double worst = 0.0;
	for (const auto* r : records)
	{
		const double expected = *r->param("p") == "inf" ? 2.0 : 1.0;
		bounds_ok = bounds_ok && std::abs(*r->value("eta_bound") - expected) <= 1e-12;
		worst = std::max(worst, *r->value("lhs") / *r->value("rhs"));
	}
	return {records.size() == 30 && bounds_ok && failing(records) == 0,
	        fmt("%zu martingales in d = 1, l^4_1, l^4_inf with 1e5 samples, max lhs/rhs %.4f", records.size(), worst)};
}

Outcome steinhaus_rademacher()
{
	const auto records = run("steinhaus", 6, {{"families", "50"}}, 20000);
	double worst = 0.0;
	for (const auto& r : records)
		worst = std::max(worst, *r.value("ratio"));
	const auto all = with_anchor(records, "");
	return {records.size() == 50 && failing(all) == 0, fmt("50 families, max ratio %.4f", worst)};
}

Outcome lacunary_packing()
{
	const auto records = with_anchor(martingale_run().records, "lacunary");
	double specs = 0.0, exhaustive = 0.0;
	for (const auto* r : records)
	{
		specs += *r->value("specs");
		exhaustive += *r->value("exhaustive_specs");
	}
	return {specs == 100.0 && exhaustive > 0.0 && failing(records) == 0,
	        fmt("%g specs with m <= 6, %g enumerated exhaustively, substitutions inside their blocks", specs, exhaustive)};
}

Outcome weyl()
{
	const auto records = run("weyl", 7, {{"p", "1..3"}, {"band", "1..4"}, {"instances", "20"}, {"alias_n", "2..9"}});
	double worst = 0.0;
	for (const auto* r : with_anchor(records, "equidistribution"))
		worst = std::max(worst, *r->value("max_gap"));
	const auto aliasing = with_anchor(records, "aliasing");
	const auto all = with_anchor(records, "");
	return {!aliasing.empty() && failing(all) == 0,
	        fmt("max gap %.2e for n > 2 band; %zu aliasing cases with gap exactly 1", worst, aliasing.size())};
}

Outcome lifting()
{
	const std::map<std::string, std::string> params {
	    {"d", "2..6"}, {"k", "0..2"}, {"band", "0..8"}, {"instances", "100"}, {"riesz_trials", "1000"}};
	const auto first = run("lift", 8, params);
	const auto second = run("lift", 8, params);
	const auto lifts = with_anchor(first, "lifting");
	double residual = 0.0, drift = 0.0, ratio = 0.0;
	for (const auto* r : lifts)
	{
		residual = std::max(residual, *r->value("residual"));
		drift = std::max(drift, std::abs(*r->value("ratio") - *r->value("ratio_doubled_grid")));
		ratio = std::max(ratio, *r->value("ratio"));
	}
	const bool identical = report(first).csv == report(second).csv;
	const auto all = with_anchor(first, "");
	const double riesz = *with_anchor(first, "Riesz").front()->value("lower_bound");
	return {lifts.size() == 100 && failing(all) == 0 && identical,
	        fmt("100 lifts: residual %.2e, max ratio %.4f, grid drift %.2e, reports %s; Riesz ratio lower bound %.4f",
	            residual, ratio, drift, identical ? "byte-identical" : "DIFFER", riesz)};
}

Outcome extension_sanity()
{
	bool ok = true;
	double worst_excess = -std::numeric_limits<double>::infinity();
	double worst_constant = 0.0;
	const std::vector<Exponent> exponents {Exponent {1.0}, Exponent {2.0}, Exponent {4.0}, Exponent::infinity()};
	for (int t = 0; t < 12; ++t)
	{
		Rng rng {substream_seed(9, static_cast<std::uint64_t>(t))};
		const int d = 1 + t % 3;
		const SequenceSpace space {d, exponents[static_cast<std::size_t>(t) % exponents.size()]};
		OperatorSymbol u {space, OperatorSymbol::Side::analytic};
		for (long k = 0; k <= 1 + t % 4; ++k)
			u.set(k, random_complex_vector(d, rng));
		const auto result = extend_min(u, 1 + t % 3, {.h1_trials = 50});
		worst_excess = std::max(worst_excess, result.objective - result.zero_completion);
		ok = ok && result.objective <= result.zero_completion;

		OperatorSymbol c {space, OperatorSymbol::Side::analytic};
		const Vector y0 = random_complex_vector(d, rng);
		c.set(0, y0);
		const auto constant = extend_min(c, 2, {.h1_trials = 50});
		worst_constant = std::max(worst_constant, std::abs(constant.objective - norm(y0, space)));
	}
	ok = ok && worst_constant <= 1e-7;
	return {ok, fmt("12 random symbols: max(objective - zero completion) = %.2e; constant symbols off by at most %.2e",
	                worst_excess, worst_constant)};
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria {
	    {"kernel identities", kernel_identities},
	    {"exact mean on roots of unity", exact_means},
	    {"sampling sandwich", sampling_sandwich},
	    {"block sampling on the 12n-th roots", block_sampling},
	    {"projectivity sandwich", eta_sandwich},
	    {"Paley operator lower bounds below 2", paley_corroboration},
	    {"square-function inequality", square_function},
	    {"Steinhaus versus Rademacher", steinhaus_rademacher},
	    {"lacunary packing", lacunary_packing},
	    {"equidistribution and aliasing", weyl},
	    {"quotient lifting", lifting},
	    {"minimal extension sanity", extension_sanity},
	};

	int failures = 0;
	int index = 0;
	for (const auto& [name, check] : criteria)
	{
		++index;
		const auto start = std::chrono::steady_clock::now();
		Outcome outcome;
		try
		{
			outcome = check();
		}
		catch (const std::exception& e)
		{
			outcome = {false, std::string {"exception: "} + e.what()};
		}
		const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		failures += !outcome.pass;
		std::printf("%s %2d %s: %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", index, name.c_str(),
		            outcome.detail.c_str(), seconds);
		std::fflush(stdout);
	}
	std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
	return failures == 0 ? 0 : 1;
}
