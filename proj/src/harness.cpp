#include "hardy/harness.hpp"

#include "hardy/extension.hpp"
#include "hardy/lifting.hpp"
#include "hardy/martingale.hpp"
#include "hardy/sampling.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace hardy
{

namespace
{

using json = nlohmann::ordered_json;

const std::string kernel_anchor = "de la Vallee-Poussin kernel identities";
const std::string mean_anchor = "exact mean on roots of unity";
const std::string sandwich_anchor = "sampling sandwich for analytic polynomials";
const std::string block_anchor = "sampling on the 12n-th roots of unity";
const std::string eta_anchor = "projectivity constant of l^n_p";
const std::string square_anchor = "square-function inequality";
const std::string uhmd_anchor = "sign-flipped difference sums";
const std::string pack_anchor = "lacunary packing of frequencies";
const std::string lift_anchor = "lifting through the Riesz projection";
const std::string riesz_anchor = "Riesz projection into L2(l^1/2)";
const std::string weyl_anchor = "equidistribution along (theta, n theta, ..., n^p theta)";
const std::string alias_anchor = "aliasing before the equidistribution limit";
const std::string steinhaus_anchor = "Steinhaus versus Rademacher averages";

struct SuiteSpec
{
	std::map<std::string, std::string> defaults;
	std::size_t samples;
};

const std::map<std::string, SuiteSpec>& suite_specs()
{
	static const std::map<std::string, SuiteSpec> specs {
	    {"kernels", {{{"n", "1..64"}, {"r", "2..4"}}, 0}},
	    {"sampling", {{{"n", "1..8"}, {"d", "1,4"}, {"p", "1,2,inf"}, {"eps", "1/2,1/4"}}, 20}},
	    {"eta", {{{"n", "2..9"}, {"p", "1,3/2,2,4,inf"}, {"paley_max_n", "6"}}, 1000}},
	    {"martingale",
	     {{{"spaces", "1:1,4:1,4:inf"}, {"m", "1..8"}, {"instances", "10"}, {"packs", "100"}, {"pack_levels", "1..6"}},
	      100000}},
	    {"lift", {{{"d", "2..6"}, {"k", "0..2"}, {"band", "0..8"}, {"instances", "100"}, {"riesz_trials", "1000"}}, 0}},
	    {"weyl", {{{"p", "1..3"}, {"band", "1..4"}, {"instances", "20"}, {"alias_n", "2..9"}}, 0}},
	    {"steinhaus", {{{"families", "50"}}, 20000}},
	};
	return specs;
}

const SuiteSpec& spec_for(const std::string& suite)
{
	const auto it = suite_specs().find(suite);
	if (it == suite_specs().end())
		throw PreconditionViolation {"unknown suite '" + suite + "'"};
	return it->second;
}

std::string trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if (first == std::string_view::npos)
		return {};
	const auto last = s.find_last_not_of(" \t\r\n");
	return std::string {s.substr(first, last - first + 1)};
}

long parse_long(std::string_view s, const std::string& what)
{
	long v = 0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc {} || ptr != s.data() + s.size())
		throw PreconditionViolation {what + ": expected an integer, got '" + std::string {s} + "'"};
	return v;
}

std::uint64_t parse_u64(std::string_view s, const std::string& what)
{
	std::uint64_t v = 0;
	const std::string t = trim(s);
	const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
	if (ec != std::errc {} || ptr != t.data() + t.size())
		throw PreconditionViolation {what + ": expected an unsigned integer, got '" + t + "'"};
	return v;
}

double parse_fraction(std::string_view s, const std::string& what)
{
	const std::string t = trim(s);
	const auto slash = t.find('/');
	if (slash == std::string::npos)
	{
		try
		{
			std::size_t used = 0;
			const double v = std::stod(t, &used);
			if (used == t.size())
				return v;
		}
		catch (const std::exception&)
		{
		}
		throw PreconditionViolation {what + ": expected a number, got '" + t + "'"};
	}
	const long num = parse_long(trim(t.substr(0, slash)), what);
	const long den = parse_long(trim(t.substr(slash + 1)), what);
	if (den == 0)
		throw PreconditionViolation {what + ": zero denominator"};
	return static_cast<double>(num) / static_cast<double>(den);
}

std::string format_double(double v)
{
	char buffer[32];
	std::snprintf(buffer, sizeof buffer, "%.17g", v);
	return buffer;
}

// The suite's view of a configuration: ranges resolved against the defaults.
class Params
{
public:
	Params(const ExperimentConfig& config, const SuiteSpec& spec) : config_ {config}, spec_ {spec} {}

	std::vector<std::string> items(const std::string& key) const
	{
		const auto it = config_.params.find(key);
		return expand_range(it != config_.params.end() ? it->second : spec_.defaults.at(key));
	}
	std::vector<long> ints(const std::string& key) const
	{
		std::vector<long> out;
		for (const auto& item : items(key))
			out.push_back(parse_long(item, key));
		return out;
	}
	long single(const std::string& key) const
	{
		const auto values = ints(key);
		if (values.size() != 1)
			throw PreconditionViolation {"parameter '" + key + "' takes a single value"};
		return values.front();
	}
	std::vector<Exponent> exponents(const std::string& key) const
	{
		std::vector<Exponent> out;
		for (const auto& item : items(key))
			out.push_back(Exponent::parse(item));
		return out;
	}
	std::size_t samples() const { return config_.samples ? config_.samples : spec_.samples; }
	std::size_t grid() const { return config_.grid; }
	std::uint64_t seed() const { return config_.seed; }

private:
	const ExperimentConfig& config_;
	const SuiteSpec& spec_;
};

// Records of one suite run, all stamped with the same seed.
class Recorder
{
public:
	Recorder(std::string suite, std::uint64_t seed) : suite_ {std::move(suite)}, seed_ {seed} {}

	ResultRecord& add(const std::string& anchor)
	{
		ResultRecord record;
		record.suite = suite_;
		record.anchor = anchor;
		record.seed = seed_;
		records_.push_back(std::move(record));
		return records_.back();
	}
	std::vector<ResultRecord> take() { return std::move(records_); }

private:
	std::string suite_;
	std::uint64_t seed_;
	std::vector<ResultRecord> records_;
};

void put(ResultRecord& r, std::string name, std::string value) { r.params.emplace_back(std::move(name), std::move(value)); }
void put(ResultRecord& r, std::string name, long value) { r.params.emplace_back(std::move(name), std::to_string(value)); }
void value(ResultRecord& r, std::string name, double v) { r.values.emplace_back(std::move(name), v); }
void error(ResultRecord& r, std::string name, double v) { r.std_errors.emplace_back(std::move(name), v); }
void flag(ResultRecord& r, std::string name, bool ok) { r.passes.emplace_back(std::move(name), ok); }

std::size_t next_pow2(std::size_t n)
{
	std::size_t s = 1;
	while (s < n)
		s <<= 1;
	return s;
}

// ---------------------------------------------------------------------------------

void run_kernels(const Params& params, Recorder& out)
{
	for (const long n : params.ints("n"))
		for (const long r : params.ints("r"))
		{
			const auto kernel = KernelSpec::vallee_poussin(static_cast<int>(n), static_cast<int>(r));
			const long band = *kernel.band();
			bool plateau = true, vanishing = true;
			for (long k = -(band + 3); k <= band + 3; ++k)
			{
				const double c = kernel_coeff(kernel, k);
				if (std::abs(k) <= n)
					plateau = plateau && c == 1.0;
				if (std::abs(k) >= r * n)
					vanishing = vanishing && c == 0.0;
			}
			// Coefficients recovered from samples on a grid that resolves the band.
			const std::size_t s = std::max(params.grid(), next_pow2(4 * static_cast<std::size_t>(band + 1)));
			double coefficient_error = 0.0;
			for (long k = -(band + 1); k <= band + 1; ++k)
			{
				CompensatedSum<Complex> sum;
				for (std::size_t j = 0; j < s; ++j)
				{
					const double theta = two_pi * static_cast<double>(j) / static_cast<double>(s);
					sum.add(kernel_eval(kernel, theta) * std::polar(1.0, -static_cast<double>(k) * theta));
				}
				const Complex quadrature = sum.value() / static_cast<double>(s);
				coefficient_error = std::max(coefficient_error, std::abs(quadrature - kernel_coeff(kernel, k)));
			}
			const double l1 = kernel_l1(kernel, std::max(params.grid(), next_pow2(16 * static_cast<std::size_t>(band + 1))));
			const double bound = vallee_poussin_l1_bound(static_cast<int>(r));

			auto& rec = out.add(kernel_anchor);
			put(rec, "n", n);
			put(rec, "r", r);
			value(rec, "l1_norm", l1);
			value(rec, "l1_bound", bound);
			value(rec, "coefficient_error", coefficient_error);
			flag(rec, "plateau", plateau);
			flag(rec, "vanishing", vanishing);
			flag(rec, "coefficient_agreement", coefficient_error <= 1e-10);
			flag(rec, "l1_bound", l1 <= bound + 1e-9);
		}
}

void run_sampling(const Params& params, Recorder& out)
{
	const std::size_t polys = params.samples();
	std::uint64_t stream = 0;
	for (const long n : params.ints("n"))
		for (const long d : params.ints("d"))
		{
			// Exact mean: two-sided polynomials of band n on n + 1 points.
			double residual = 0.0;
			{
				Rng rng {substream_seed(params.seed(), stream++)};
				const SequenceSpace space {static_cast<int>(d), Exponent {1.0}};
				for (std::size_t t = 0; t < polys; ++t)
				{
					const auto g = random_trigpoly(space, -n, n, rng);
					residual = std::max(residual, exact_mean_check(g, static_cast<std::size_t>(n) + 1).residual);
				}
			}
			auto& mean_rec = out.add(mean_anchor);
			put(mean_rec, "n", n);
			put(mean_rec, "d", d);
			put(mean_rec, "s", n + 1);
			value(mean_rec, "max_residual", residual);
			flag(mean_rec, "identity", residual <= 1e-10);

			for (const Exponent p : params.exponents("p"))
			{
				const SequenceSpace space {static_cast<int>(d), p};
				for (const auto& eps_text : params.items("eps"))
				{
					const double eps = parse_fraction(eps_text, "eps");
					Rng rng {substream_seed(params.seed(), stream++)};
					std::size_t violations = 0;
					double low = std::numeric_limits<double>::infinity(), high = 0.0;
					for (std::size_t t = 0; t < polys; ++t)
					{
						const auto f = random_trigpoly(space, 0, n, rng);
						const auto b = lemma52_bounds(f, static_cast<int>(n), eps);
						violations += !(b.lower_ok && b.upper_ok);
						low = std::min(low, b.grid_mean / b.reference);
						high = std::max(high, b.grid_mean / b.reference);
					}
					auto& rec = out.add(sandwich_anchor);
					put(rec, "n", n);
					put(rec, "d", d);
					put(rec, "p", p.to_string());
					put(rec, "eps", eps_text);
					put(rec, "s", static_cast<long>(lemma52_grid_size(static_cast<int>(n), eps)));
					value(rec, "min_ratio", low);
					value(rec, "max_ratio", high);
					value(rec, "lower_factor", 1.0 - eps);
					value(rec, "upper_factor", 1.0 / (1.0 - eps));
					value(rec, "violations", static_cast<double>(violations));
					flag(rec, "sandwich", violations == 0);
				}

				Rng rng {substream_seed(params.seed(), stream++)};
				double low = std::numeric_limits<double>::infinity(), high = 0.0;
				bool ok = true;
				for (std::size_t t = 0; t < polys; ++t)
				{
					const auto h = random_trigpoly(space, 0, 3 * n, rng);
					const auto b = prop53_bounds(h, static_cast<int>(n));
					ok = ok && b.pass;
					low = std::min(low, b.ratio);
					high = std::max(high, b.ratio);
				}
				auto& rec = out.add(block_anchor);
				put(rec, "n", n);
				put(rec, "d", d);
				put(rec, "p", p.to_string());
				value(rec, "min_ratio", low);
				value(rec, "max_ratio", high);
				flag(rec, "sandwich", ok);
			}
		}
}

void run_eta(const Params& params, Recorder& out)
{
	const long paley_max_n = params.single("paley_max_n");
	std::map<long, double> paley;
	for (const long n : params.ints("n"))
		for (const Exponent p : params.exponents("p"))
		{
			const auto cert = eta_lower_certificate(static_cast<int>(n), p);
			const double upper = eta_upper(static_cast<int>(n), p);
			const Exponent r = min_two(p);
			const double closed_form = 0.5 * std::pow(static_cast<double>(n), 1.0 - r.reciprocal());

			double paley_max = std::numeric_limits<double>::quiet_NaN();
			if (n <= paley_max_n)
			{
				if (!paley.contains(n))
				{
					const auto u = paley_symbol(static_cast<int>(n), SequenceSpace {static_cast<int>(n), Exponent {2.0}});
					paley[n] = h1_op_norm_lower(u, {params.samples(), substream_seed(params.seed(), static_cast<std::uint64_t>(n))}).value;
				}
				paley_max = paley[n];
			}

			auto& rec = out.add(eta_anchor);
			put(rec, "n", n);
			put(rec, "p", p.to_string());
			put(rec, "r", r.to_string());
			value(rec, "eta_lower", cert.eta_lower);
			value(rec, "eta_upper", upper);
			value(rec, "paley_corroboration_max", paley_max);
			value(rec, "pairing", cert.pairing);
			value(rec, "f_norm", cert.f_norm);
			value(rec, "u_bound", cert.u_bound);
			flag(rec, "sandwich", cert.eta_lower <= upper);
			flag(rec, "closed_form", std::abs(cert.eta_lower - closed_form) <= 1e-9);
			if (n <= paley_max_n)
				flag(rec, "paley_bound", paley_max <= 2.0);
		}
}

void run_martingale(const Params& params, Recorder& out)
{
	const std::size_t samples = params.samples();
	const long instances = params.single("instances");
	const auto levels = params.ints("m");
	std::uint64_t stream = 0;
	for (const auto& item : params.items("spaces"))
	{
		const auto colon = item.find(':');
		if (colon == std::string::npos)
			throw PreconditionViolation {"spaces: expected entries of the form d:p, got '" + item + "'"};
		const long d = parse_long(item.substr(0, colon), "spaces");
		const Exponent p = Exponent::parse(item.substr(colon + 1));
		const SequenceSpace space {static_cast<int>(d), p};
		const double eta_bound = eta_upper(static_cast<int>(d), p);
		for (long i = 0; i < instances; ++i)
		{
			const long m = levels[static_cast<std::size_t>(i) % levels.size()];
			Rng rng {substream_seed(params.seed(), stream++)};
			const auto martingale = random_martingale(space, static_cast<int>(m), rng);
			const auto check = square_fn_check(martingale, eta_bound, substream_seed(params.seed(), stream++), samples);

			auto& rec = out.add(square_anchor);
			put(rec, "d", d);
			put(rec, "p", p.to_string());
			put(rec, "instance", i);
			put(rec, "m", m);
			value(rec, "lhs", check.lhs);
			value(rec, "rhs", check.rhs);
			value(rec, "eta_bound", eta_bound);
			error(rec, "relative", check.relative_stderr);
			flag(rec, "inequality", check.pass);
			flag(rec, "martingale_property", martingale.martingale_property());

			const auto uhmd = uhmd_estimate(martingale, 256, substream_seed(params.seed(), stream++),
			                                std::min<std::size_t>(samples, 10000));
			auto& u = out.add(uhmd_anchor);
			put(u, "d", d);
			put(u, "p", p.to_string());
			put(u, "instance", i);
			put(u, "m", m);
			value(u, "constant", uhmd.defined ? uhmd.constant : std::numeric_limits<double>::quiet_NaN());
			value(u, "patterns", static_cast<double>(uhmd.patterns));
		}
	}

	const long packs = params.single("packs");
	const auto pack_levels = params.ints("pack_levels");
	std::map<long, std::array<long, 5>> tally; // specs, corner, exhaustive levels run, exhaustive, substitution
	for (long i = 0; i < packs; ++i)
	{
		const long m = pack_levels[static_cast<std::size_t>(i) % pack_levels.size()];
		Rng rng {substream_seed(params.seed(), stream++)};
		const auto spec = random_lacunary_spec(static_cast<int>(m), rng);
		const auto pack = lacunary_pack(spec.a, spec.lambda, spec.degree_bounds, static_cast<int>(m));
		const auto verified = verify_pack(pack, spec.degree_bounds);
		auto& t = tally[m];
		++t[0];
		t[1] += !(verified.corners_ok && verified.blocks_disjoint && verified.ell_increasing);
		t[2] += verified.exhaustive_run;
		t[3] += verified.exhaustive_run && !verified.exhaustive_ok;

		RandomMartingaleOptions options;
		options.degree_bounds = spec.degree_bounds;
		const auto martingale = random_martingale(SequenceSpace {2, Exponent {1.0}}, static_cast<int>(m), rng, options);
		std::vector<double> theta(static_cast<std::size_t>(m));
		for (double& th : theta)
			th = uniform_angle(rng);
		try
		{
			substitute_freq(martingale, pack, theta);
		}
		catch (const Error&)
		{
			++t[4];
		}
	}
	for (const auto& [m, t] : tally)
	{
		auto& rec = out.add(pack_anchor);
		put(rec, "m", m);
		value(rec, "specs", static_cast<double>(t[0]));
		value(rec, "corner_failures", static_cast<double>(t[1]));
		value(rec, "exhaustive_specs", static_cast<double>(t[2]));
		value(rec, "exhaustive_failures", static_cast<double>(t[3]));
		value(rec, "substitution_failures", static_cast<double>(t[4]));
		flag(rec, "exact", t[1] == 0 && t[3] == 0);
		flag(rec, "band_containment", t[4] == 0);
	}
}

template <typename T>
T pick(const std::vector<T>& items, Rng& rng)
{
	return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

void run_lift(const Params& params, Recorder& out)
{
	const auto ds = params.ints("d");
	const auto ks = params.ints("k");
	const auto bands = params.ints("band");
	const long instances = params.single("instances");
	for (long i = 0; i < instances; ++i)
	{
		Rng rng {substream_seed(params.seed(), static_cast<std::uint64_t>(i))};
		const long d = pick(ds, rng);
		const long k = std::min(pick(ks, rng), d - 1);
		const long band = pick(bands, rng);
		const SequenceSpace space {static_cast<int>(d), Exponent {1.0}};
		Matrix basis(d, k);
		for (Eigen::Index col = 0; col < k; ++col)
			basis.col(col) = random_complex_vector(d, rng);
		const QuotientSpace qs {space, basis};
		const auto f = random_trigpoly(space, 0, band, rng);

		const std::size_t grid = params.grid() ? params.grid() : default_lift_grid(band);
		const auto result = lift(f, qs, grid);
		const auto doubled = lift(f, qs, 2 * grid);
		const auto& rep = result.report;
		const double drift = std::abs(doubled.report.ratio - rep.ratio);

		auto& rec = out.add(lift_anchor);
		put(rec, "instance", i);
		put(rec, "d", d);
		put(rec, "dim_y", k);
		put(rec, "band", band);
		put(rec, "grid", static_cast<long>(grid));
		value(rec, "f_norm", rep.f_norm);
		value(rec, "g_norm", rep.g_norm);
		value(rec, "riesz_norm", rep.riesz_norm);
		value(rec, "h_norm", rep.h_norm);
		value(rec, "ratio", rep.ratio);
		value(rec, "ratio_doubled_grid", doubled.report.ratio);
		value(rec, "residual", rep.residual);
		value(rec, "negative_leak", rep.negative_leak);
		flag(rec, "quotient_identity", rep.residual <= 1e-10);
		flag(rec, "analytic", result.h.analytic());
		flag(rec, "ratio_at_least_one", rep.ratio >= 1.0 - 1e-9);
		flag(rec, "ratio_finite", std::isfinite(rep.ratio));
		flag(rec, "grid_stable", drift <= 1e-6);
	}

	const long trials = params.single("riesz_trials");
	const double riesz = riesz_lower_L1_Lhalf(static_cast<int>(trials), 4, 8, substream_seed(params.seed(), ~std::uint64_t {0}));
	auto& rec = out.add(riesz_anchor);
	put(rec, "d", 4L);
	put(rec, "band", 8L);
	put(rec, "trials", trials);
	value(rec, "lower_bound", riesz);
	value(rec, "c1", 1.0);
	flag(rec, "finite", std::isfinite(riesz));
}

void run_weyl(const Params& params, Recorder& out)
{
	const long instances = params.single("instances");
	std::uint64_t stream = 0;
	for (const long p : params.ints("p"))
		for (const long band : params.ints("band"))
			for (const long n : {2 * band + 1, 2 * band + 2, 2 * band + 5})
			{
				Rng rng {substream_seed(params.seed(), stream++)};
				std::uniform_int_distribution<int> freq(static_cast<int>(-band), static_cast<int>(band));
				double gap = 0.0;
				for (long t = 0; t < instances; ++t)
				{
					MultiPoly f;
					f[MultiIndex(static_cast<std::size_t>(p + 1), 0)] = complex_gaussian(rng);
					for (int term = 0; term < 6; ++term)
					{
						MultiIndex key(static_cast<std::size_t>(p + 1));
						for (int& k : key)
							k = freq(rng);
						f[key] += complex_gaussian(rng);
					}
					gap = std::max(gap, weyl_check(f, n, params.grid()).gap);
				}
				auto& rec = out.add(weyl_anchor);
				put(rec, "p", p);
				put(rec, "band", band);
				put(rec, "n", n);
				value(rec, "max_gap", gap);
				flag(rec, "limit_attained", gap <= 1e-8);
			}

	for (const long n : params.ints("alias_n"))
	{
		const MultiPoly f {{MultiIndex {static_cast<int>(n), -1}, Complex {1.0, 0.0}}};
		const auto check = weyl_check(f, n, params.grid());
		auto& rec = out.add(alias_anchor);
		put(rec, "n", n);
		value(rec, "lhs", check.lhs.real());
		value(rec, "rhs", check.rhs.real());
		value(rec, "gap", check.gap);
		flag(rec, "aliasing_exhibited", check.gap == 1.0);
	}
}

void run_steinhaus(const Params& params, Recorder& out)
{
	const long families = params.single("families");
	const std::vector<Exponent> exponents {Exponent {1.0}, Exponent {2.0}, Exponent::infinity()};
	for (long i = 0; i < families; ++i)
	{
		Rng rng {substream_seed(params.seed(), static_cast<std::uint64_t>(2 * i))};
		const int m = std::uniform_int_distribution<int>(1, 16)(rng);
		const int d = std::uniform_int_distribution<int>(1, 6)(rng);
		const Exponent p = pick(exponents, rng);
		const SequenceSpace space {d, p};
		std::vector<Vector> xs;
		for (int k = 0; k < m; ++k)
			xs.push_back(random_complex_vector(d, rng));
		const auto cmp = steinhaus_vs_rademacher(xs, space, substream_seed(params.seed(), static_cast<std::uint64_t>(2 * i + 1)),
		                                         params.samples());
		auto& rec = out.add(steinhaus_anchor);
		put(rec, "family", i);
		put(rec, "m", static_cast<long>(m));
		put(rec, "d", static_cast<long>(d));
		put(rec, "p", p.to_string());
		value(rec, "steinhaus_mean", cmp.steinhaus.mean);
		value(rec, "rademacher_mean", cmp.rademacher.mean);
		value(rec, "ratio", cmp.ratio);
		error(rec, "steinhaus_mean", cmp.steinhaus.std_error);
		error(rec, "rademacher_mean", cmp.rademacher.std_error);
		error(rec, "ratio", cmp.ratio_stderr);
		flag(rec, "comparison", cmp.pass);
	}
}

std::string run_timestamp()
{
	std::time_t t = std::time(nullptr);
	if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
		t = static_cast<std::time_t>(parse_u64(epoch, "SOURCE_DATE_EPOCH"));
	std::tm utc {};
	gmtime_r(&t, &utc);
	char buffer[32];
	std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
	return buffer;
}

std::string csv_cell(const std::string& text)
{
	if (text.find_first_of(",\"\n") == std::string::npos)
		return text;
	std::string out = "\"";
	for (char c : text)
	{
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line)
{
	std::vector<std::string> cells;
	std::string cell;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i)
	{
		const char c = line[i];
		if (quoted)
		{
			if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
			{
				cell += '"';
				++i;
			}
			else if (c == '"')
				quoted = false;
			else
				cell += c;
		}
		else if (c == '"')
			quoted = true;
		else if (c == ',')
		{
			cells.push_back(std::move(cell));
			cell.clear();
		}
		else
			cell += c;
	}
	cells.push_back(std::move(cell));
	return cells;
}

} // namespace

std::vector<std::string> expand_range(std::string_view text)
{
	const std::string t = trim(text);
	if (t.empty())
		throw PreconditionViolation {"empty parameter range"};
	std::vector<std::string> out;
	if (const auto dots = t.find(".."); dots != std::string::npos)
	{
		const long lo = parse_long(trim(t.substr(0, dots)), "range");
		const long hi = parse_long(trim(t.substr(dots + 2)), "range");
		for (long v = lo; v <= hi; ++v)
			out.push_back(std::to_string(v));
	}
	else
	{
		std::stringstream in {t};
		std::string item;
		while (std::getline(in, item, ','))
			if (auto s = trim(item); !s.empty())
				out.push_back(std::move(s));
	}
	if (out.empty())
		throw PreconditionViolation {"empty parameter range '" + t + "'"};
	return out;
}

ExperimentConfig ExperimentConfig::load(const std::string& path)
{
	boost::property_tree::ptree tree;
	try
	{
		boost::property_tree::ini_parser::read_ini(path, tree);
	}
	catch (const boost::property_tree::ini_parser_error& e)
	{
		throw PreconditionViolation {"config: " + std::string {e.what()}};
	}
	ExperimentConfig config;
	bool has_seed = false;
	for (const auto& [key, node] : tree)
	{
		if (key == "params")
		{
			for (const auto& [name, entry] : node)
				config.params[name] = entry.data();
			continue;
		}
		if (!node.empty())
			throw PreconditionViolation {"config: unknown section [" + key + "]"};
		const std::string value = trim(node.data());
		if (key == "suite")
			config.suite = value;
		else if (key == "seed")
		{
			config.seed = parse_u64(value, "seed");
			has_seed = true;
		}
		else if (key == "out")
			config.out = value;
		else if (key == "samples")
			config.samples = parse_u64(value, "samples");
		else if (key == "grid")
			config.grid = parse_u64(value, "grid");
		else
			throw PreconditionViolation {"config: unknown key '" + key + "'"};
	}
	if (!has_seed)
		throw PreconditionViolation {"config: the seed is required"};
	return config;
}

void ExperimentConfig::validate() const
{
	const SuiteSpec& spec = spec_for(suite);
	for (const auto& [name, text] : params)
	{
		if (!spec.defaults.contains(name))
			throw PreconditionViolation {"suite '" + suite + "' has no parameter '" + name + "'"};
		expand_range(text);
	}
}

const std::vector<std::string>& suite_names()
{
	static const std::vector<std::string> names = [] {
		std::vector<std::string> out;
		for (const auto& entry : suite_specs())
			out.push_back(entry.first);
		return out;
	}();
	return names;
}

const std::vector<std::string>& anchor_names()
{
	static const std::vector<std::string> names {kernel_anchor, mean_anchor,   sandwich_anchor, block_anchor,
	                                             eta_anchor,    square_anchor, uhmd_anchor,     pack_anchor,
	                                             lift_anchor,   riesz_anchor,  weyl_anchor,     alias_anchor,
	                                             steinhaus_anchor};
	return names;
}

bool ResultRecord::all_pass() const
{
	return std::all_of(passes.begin(), passes.end(), [](const auto& p) { return p.second; });
}

std::optional<double> ResultRecord::value(std::string_view name) const
{
	for (const auto& [key, v] : values)
		if (key == name)
			return v;
	return std::nullopt;
}

std::optional<std::string> ResultRecord::param(std::string_view name) const
{
	for (const auto& [key, v] : params)
		if (key == name)
			return v;
	return std::nullopt;
}

std::optional<bool> ResultRecord::pass(std::string_view name) const
{
	for (const auto& [key, v] : passes)
		if (key == name)
			return v;
	return std::nullopt;
}

std::vector<ResultRecord> run_suite(const ExperimentConfig& config)
{
	config.validate();
	if (config.out)
	{
		std::ofstream probe {*config.out, std::ios::app};
		if (!probe)
			throw Error {"cannot write to '" + *config.out + "'"};
	}
	static const std::map<std::string, std::function<void(const Params&, Recorder&)>> runners {
	    {"kernels", run_kernels}, {"sampling", run_sampling}, {"eta", run_eta},           {"martingale", run_martingale},
	    {"lift", run_lift},       {"weyl", run_weyl},         {"steinhaus", run_steinhaus}};

	const Params params {config, spec_for(config.suite)};
	Recorder recorder {config.suite, config.seed};
	runners.at(config.suite)(params, recorder);
	auto records = recorder.take();
	const std::string stamp = run_timestamp();
	for (auto& record : records)
		record.timestamp = stamp;
	if (config.out)
		write_records(records, *config.out);
	return records;
}

std::string records_to_json(const std::vector<ResultRecord>& records)
{
	json out = json::array();
	for (const auto& r : records)
	{
		json item;
		item["experiment"] = r.suite;
		item["anchor"] = r.anchor;
		item["seed"] = r.seed;
		item["params"] = json::object();
		for (const auto& [k, v] : r.params)
			item["params"][k] = v;
		item["estimates"] = json::object();
		for (const auto& [k, v] : r.values)
			item["estimates"][k] = std::isfinite(v) ? json(v) : json(nullptr);
		item["stderr"] = json::object();
		for (const auto& [k, v] : r.std_errors)
			item["stderr"][k] = std::isfinite(v) ? json(v) : json(nullptr);
		item["pass"] = json::object();
		for (const auto& [k, v] : r.passes)
			item["pass"][k] = v;
		item["timestamp"] = r.timestamp;
		out.push_back(std::move(item));
	}
	return out.dump(2) + "\n";
}

std::vector<ResultRecord> records_from_json(std::string_view text)
{
	std::vector<ResultRecord> out;
	try
	{
		const json data = json::parse(text);
		auto number = [](const json& v) {
			return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
		};
		for (const auto& item : data)
		{
			ResultRecord r;
			r.suite = item.at("experiment").get<std::string>();
			r.anchor = item.at("anchor").get<std::string>();
			r.seed = item.at("seed").get<std::uint64_t>();
			for (const auto& [k, v] : item.at("params").items())
				r.params.emplace_back(k, v.get<std::string>());
			for (const auto& [k, v] : item.at("estimates").items())
				r.values.emplace_back(k, number(v));
			for (const auto& [k, v] : item.at("stderr").items())
				r.std_errors.emplace_back(k, number(v));
			for (const auto& [k, v] : item.at("pass").items())
				r.passes.emplace_back(k, v.get<bool>());
			r.timestamp = item.value("timestamp", "");
			out.push_back(std::move(r));
		}
	}
	catch (const json::exception& e)
	{
		throw Error {"malformed records: " + std::string {e.what()}};
	}
	return out;
}

void write_records(const std::vector<ResultRecord>& records, const std::string& path)
{
	std::ofstream file {path, std::ios::trunc};
	if (!file)
		throw Error {"cannot write to '" + path + "'"};
	file << records_to_json(records);
	if (!file)
		throw Error {"failed writing '" + path + "'"};
}

std::vector<ResultRecord> read_records(const std::string& path)
{
	std::ifstream file {path};
	if (!file)
		throw Error {"cannot read '" + path + "'"};
	std::stringstream buffer;
	buffer << file.rdbuf();
	return records_from_json(buffer.str());
}

Report report(const std::vector<ResultRecord>& records)
{
	if (records.empty())
		throw PreconditionViolation {"report: no records"};

	// Sections in order of first appearance; columns in order of first appearance.
	std::vector<std::string> anchors;
	std::map<std::string, std::vector<const ResultRecord*>> groups;
	for (const auto& r : records)
	{
		if (!groups.contains(r.anchor))
			anchors.push_back(r.anchor);
		groups[r.anchor].push_back(&r);
	}

	Report out;
	std::ostringstream csv, summary;
	std::size_t failing_total = 0;
	for (const auto& anchor : anchors)
	{
		const auto& group = groups[anchor];
		std::vector<std::string> header;
		std::set<std::string> seen;
		auto column = [&](const std::string& name) {
			if (seen.insert(name).second)
				header.push_back(name);
		};
		for (const auto* r : group)
		{
			for (const auto& p : r->params)
				column(p.first);
		}
		for (const auto* r : group)
			for (const auto& v : r->values)
				column(v.first);
		for (const auto* r : group)
			for (const auto& e : r->std_errors)
				column(e.first + "_stderr");
		for (const auto* r : group)
			for (const auto& f : r->passes)
				column("pass_" + f.first);

		if (&anchor != &anchors.front())
			csv << "\n";
		csv << "# " << anchor << "\n";
		for (std::size_t i = 0; i < header.size(); ++i)
			csv << (i ? "," : "") << csv_cell(header[i]);
		csv << "\n";
		std::size_t failing = 0;
		std::vector<std::string> failures;
		for (const auto* r : group)
		{
			std::map<std::string, std::string> cells;
			for (const auto& [k, v] : r->params)
				cells[k] = v;
			for (const auto& [k, v] : r->values)
				cells[k] = format_double(v);
			for (const auto& [k, v] : r->std_errors)
				cells[k + "_stderr"] = format_double(v);
			for (const auto& [k, v] : r->passes)
				cells["pass_" + k] = v ? "true" : "false";
			for (std::size_t i = 0; i < header.size(); ++i)
			{
				const auto it = cells.find(header[i]);
				csv << (i ? "," : "") << (it == cells.end() ? "" : csv_cell(it->second));
			}
			csv << "\n";
			if (!r->all_pass())
			{
				++failing;
				std::string where;
				for (const auto& [k, v] : r->params)
					where += (where.empty() ? "" : " ") + k + "=" + v;
				for (const auto& [k, v] : r->passes)
					if (!v)
						where += " [" + k + " failed]";
				failures.push_back(where);
			}
		}
		failing_total += failing;
		summary << anchor << ": " << group.size() << " record" << (group.size() == 1 ? "" : "s") << ", "
		        << (failing == 0 ? "all pass" : std::to_string(failing) + " failing") << "\n";
		for (const auto& f : failures)
			summary << "  " << f << "\n";
	}
	summary << (failing_total == 0 ? "PASS" : "FAIL") << ": " << records.size() << " records, " << failing_total
	        << " failing\n";
	out.csv = csv.str();
	out.summary = summary.str();
	return out;
}

std::vector<CsvSection> parse_report_csv(std::string_view csv)
{
	std::vector<CsvSection> out;
	std::size_t pos = 0;
	while (pos < csv.size())
	{
		auto end = csv.find('\n', pos);
		if (end == std::string_view::npos)
			end = csv.size();
		const std::string_view line = csv.substr(pos, end - pos);
		pos = end + 1;
		if (line.empty())
			continue;
		if (line.starts_with("# "))
		{
			out.push_back(CsvSection {std::string {line.substr(2)}, {}, {}});
			continue;
		}
		if (out.empty())
			throw Error {"report CSV: data before the first section"};
		if (out.back().header.empty())
			out.back().header = split_csv_line(line);
		else
			out.back().rows.push_back(split_csv_line(line));
	}
	return out;
}

} // namespace hardy
