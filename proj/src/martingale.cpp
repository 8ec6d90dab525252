#include "hardy/martingale.hpp"

#include "hardy/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace hardy
{

namespace
{

constexpr std::size_t chunk_size = 4096;

// Runs body(rng) once per sample; chunk c draws from its own substream of `seed`.
template <typename Body>
void for_each_sample(std::uint64_t seed, std::size_t samples, Body&& body)
{
	std::size_t chunk = 0;
	for (std::size_t start = 0; start < samples; start += chunk_size, ++chunk)
	{
		Rng rng {substream_seed(seed, chunk)};
		const std::size_t end = std::min(samples, start + chunk_size);
		for (std::size_t i = start; i < end; ++i)
			body(rng);
	}
}

class Moments
{
public:
	void add(double v)
	{
		sum_.add(v);
		sum_sq_.add(v * v);
		++count_;
	}

	MonteCarloEstimate estimate() const
	{
		MonteCarloEstimate out;
		if (count_ == 0)
			return out;
		const auto n = static_cast<double>(count_);
		out.mean = sum_.value() / n;
		if (count_ > 1)
		{
			const double var = std::max(0.0, (sum_sq_.value() - n * out.mean * out.mean) / (n - 1.0));
			out.std_error = std::sqrt(var / n);
		}
		return out;
	}

private:
	CompensatedSum<double> sum_, sum_sq_;
	std::size_t count_ = 0;
};

double relative(const MonteCarloEstimate& e)
{
	return e.mean > 0.0 ? e.std_error / e.mean : 0.0;
}

std::vector<double> draw_angles(int m, Rng& rng)
{
	std::vector<double> theta(static_cast<std::size_t>(m));
	for (double& t : theta)
		t = uniform_angle(rng);
	return theta;
}

using Wide = __int128;

long long narrow(Wide v, const char* what)
{
	if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
		throw Error {std::string {what} + ": integer overflow"};
	return static_cast<long long>(v);
}

} // namespace

HardyMartingale::HardyMartingale(SequenceSpace space, Vector m0) : space_ {space}, m0_ {std::move(m0)}
{
	require_dim(m0_.size(), space_, "HardyMartingale");
}

int HardyMartingale::add_level(int degree_bound)
{
	if (degree_bound < 1)
		throw PreconditionViolation {"HardyMartingale::add_level: degree bound must be >= 1"};
	levels_.push_back(MartingaleLevel {degree_bound, {}});
	return levels();
}

void HardyMartingale::add_term(int n, MultiIndex frequencies, const Vector& coefficient)
{
	if (n < 1 || n > levels())
		throw PreconditionViolation {"HardyMartingale::add_term: no such level"};
	require_dim(coefficient.size(), space_, "HardyMartingale::add_term");
	auto& level = levels_[static_cast<std::size_t>(n - 1)];
	if (static_cast<int>(frequencies.size()) != n)
		throw PreconditionViolation {"HardyMartingale::add_term: key length must equal the level"};
	if (frequencies.back() <= 0)
		throw PreconditionViolation {"HardyMartingale::add_term: last frequency must be positive"};
	for (int p : frequencies)
		if (std::abs(p) > level.degree_bound)
			throw PreconditionViolation {"HardyMartingale::add_term: frequency exceeds the level's degree bound"};
	auto [it, inserted] = level.terms.try_emplace(std::move(frequencies), coefficient);
	if (!inserted)
		it->second += coefficient;
}

std::vector<Vector> HardyMartingale::differences(std::span<const double> theta) const
{
	if (static_cast<int>(theta.size()) < levels())
		throw DimensionMismatch {"HardyMartingale::differences: too few angles"};
	std::vector<Vector> out;
	out.reserve(levels_.size() + 1);
	out.push_back(m0_);
	for (const auto& level : levels_)
	{
		Vector value = Vector::Zero(space_.dim());
		for (const auto& [key, c] : level.terms)
		{
			double phase = 0.0;
			for (std::size_t k = 0; k < key.size(); ++k)
				phase += key[k] * theta[k];
			value += std::polar(1.0, phase) * c;
		}
		out.push_back(std::move(value));
	}
	return out;
}

bool HardyMartingale::martingale_property() const
{
	for (std::size_t n = 0; n < levels_.size(); ++n)
		for (const auto& entry : levels_[n].terms)
			if (entry.first.size() != n + 1 || entry.first.back() <= 0)
				return false;
	return true;
}

HardyMartingale steinhaus_martingale(SequenceSpace space, int m)
{
	HardyMartingale out {space, Vector::Zero(space.dim())};
	for (int n = 1; n <= m; ++n)
	{
		out.add_level(1);
		MultiIndex key(static_cast<std::size_t>(n), 0);
		key.back() = 1;
		out.add_term(n, std::move(key), Vector::Unit(space.dim(), 0));
	}
	return out;
}

HardyMartingale random_martingale(SequenceSpace space, int m, Rng& rng, const RandomMartingaleOptions& options)
{
	if (options.max_degree < 1 || options.terms_per_level < 1)
		throw PreconditionViolation {"random_martingale: degree and term counts must be positive"};
	Vector m0 = options.with_m0 ? random_complex_vector(space.dim(), rng) : Vector::Zero(space.dim());
	HardyMartingale out {space, std::move(m0)};
	if (!options.degree_bounds.empty() && static_cast<int>(options.degree_bounds.size()) < m)
		throw PreconditionViolation {"random_martingale: fewer degree bounds than levels"};
	std::uniform_int_distribution<int> degree(1, options.max_degree);
	for (int n = 1; n <= m; ++n)
	{
		const int r = options.degree_bounds.empty() ? degree(rng) : options.degree_bounds[static_cast<std::size_t>(n - 1)];
		out.add_level(r);
		std::uniform_int_distribution<int> free(-r, r);
		std::uniform_int_distribution<int> last(1, r);
		for (int t = 0; t < options.terms_per_level; ++t)
		{
			MultiIndex key(static_cast<std::size_t>(n));
			for (int k = 0; k + 1 < n; ++k)
				key[static_cast<std::size_t>(k)] = free(rng);
			key.back() = last(rng);
			out.add_term(n, std::move(key), random_complex_vector(space.dim(), rng));
		}
	}
	return out;
}

PathStatistics sample_path(const HardyMartingale& martingale, std::uint64_t seed, std::size_t samples)
{
	if (samples < 1)
		throw PreconditionViolation {"sample_path: samples must be >= 1"};
	const int m = martingale.levels();
	const Exponent p = martingale.space().p();
	std::vector<Moments> level_moments(static_cast<std::size_t>(m + 1));
	Moments final_moments;
	for_each_sample(seed, samples, [&](Rng& rng) {
		const auto theta = draw_angles(m, rng);
		const auto diffs = martingale.differences(theta);
		Vector total = Vector::Zero(martingale.space().dim());
		for (std::size_t n = 0; n < diffs.size(); ++n)
		{
			level_moments[n].add(lp_norm(diffs[n], p));
			total += diffs[n];
		}
		final_moments.add(lp_norm(total, p));
	});
	PathStatistics out;
	out.samples = samples;
	for (const auto& moments : level_moments)
		out.differences.push_back(moments.estimate());
	out.final_value = final_moments.estimate();
	return out;
}

SquareFunctionCheck square_fn_check(const HardyMartingale& martingale, double eta_bound, std::uint64_t seed,
                                    std::size_t samples)
{
	const PathStatistics stats = sample_path(martingale, seed, samples);
	SquareFunctionCheck out;
	double squares = 0.0;
	double spread = 0.0;
	for (const auto& e : stats.differences)
	{
		squares += e.mean * e.mean;
		spread += e.mean * e.std_error;
	}
	out.lhs = std::sqrt(squares);
	out.rhs = 2.0 * eta_bound * stats.final_value.mean;
	// The level means are correlated, so their errors are added rather than combined in quadrature.
	const double lhs_rel = out.lhs > 0.0 ? spread / squares : 0.0;
	const double rhs_rel = relative(stats.final_value);
	out.relative_stderr = std::hypot(lhs_rel, rhs_rel);
	out.pass = out.lhs <= out.rhs * (1.0 + 3.0 * out.relative_stderr);
	return out;
}

UhmdEstimate uhmd_estimate(const HardyMartingale& martingale, std::size_t sign_patterns, std::uint64_t seed,
                           std::size_t samples)
{
	if (sign_patterns < 1)
		throw PreconditionViolation {"uhmd_estimate: sign_patterns must be >= 1"};
	if (samples < 1)
		throw PreconditionViolation {"uhmd_estimate: samples must be >= 1"};
	const int m = martingale.levels();
	const auto width = static_cast<Eigen::Index>(m + 1);

	// Column 0 is always the all-plus pattern.
	std::vector<std::vector<int>> patterns;
	if (m + 1 <= 10)
	{
		const std::size_t count = std::size_t {1} << (m + 1);
		for (std::size_t bits = 0; bits < count; ++bits)
		{
			std::vector<int> eps(static_cast<std::size_t>(width));
			for (Eigen::Index n = 0; n < width; ++n)
				eps[static_cast<std::size_t>(n)] = (bits >> n) & 1U ? -1 : 1;
			patterns.push_back(std::move(eps));
		}
	}
	else
	{
		Rng rng {substream_seed(seed, std::numeric_limits<std::uint64_t>::max())};
		std::bernoulli_distribution coin;
		patterns.emplace_back(static_cast<std::size_t>(width), 1);
		for (std::size_t t = 0; t < sign_patterns; ++t)
		{
			std::vector<int> eps(static_cast<std::size_t>(width));
			for (int& e : eps)
				e = coin(rng) ? -1 : 1;
			patterns.push_back(std::move(eps));
		}
	}
	Matrix signs(width, static_cast<Eigen::Index>(patterns.size()));
	for (std::size_t j = 0; j < patterns.size(); ++j)
		for (Eigen::Index n = 0; n < width; ++n)
			signs(n, static_cast<Eigen::Index>(j)) = static_cast<double>(patterns[j][static_cast<std::size_t>(n)]);

	const Exponent p = martingale.space().p();
	std::vector<CompensatedSum<double>> sums(patterns.size());
	Matrix diffs(martingale.space().dim(), width);
	for_each_sample(seed, samples, [&](Rng& rng) {
		const auto theta = draw_angles(m, rng);
		const auto values = martingale.differences(theta);
		for (Eigen::Index n = 0; n < width; ++n)
			diffs.col(n) = values[static_cast<std::size_t>(n)];
		const Matrix flipped = diffs * signs;
		for (std::size_t j = 0; j < patterns.size(); ++j)
			sums[j].add(lp_norm(flipped.col(static_cast<Eigen::Index>(j)), p));
	});

	UhmdEstimate out;
	out.patterns = patterns.size();
	const double denominator = sums[0].value();
	if (denominator == 0.0)
		return out;
	out.defined = true;
	for (std::size_t j = 0; j < patterns.size(); ++j)
	{
		const double ratio = sums[j].value() / denominator;
		if (ratio > out.constant)
		{
			out.constant = ratio;
			out.worst_pattern = patterns[j];
		}
	}
	return out;
}

long long LacunaryPack::block_high(int n) const
{
	const auto idx = static_cast<std::size_t>(ell.at(static_cast<std::size_t>(n - 1)) - 1);
	return narrow(static_cast<Wide>(lambda.at(idx)) * a.at(idx), "LacunaryPack::block_high");
}

LacunaryPack lacunary_pack(std::span<const long long> a, std::span<const long long> lambda,
                           std::span<const int> degree_bounds, int m)
{
	if (m < 0)
		throw PreconditionViolation {"lacunary_pack: m must be >= 0"};
	if (static_cast<int>(degree_bounds.size()) < m)
		throw PreconditionViolation {"lacunary_pack: fewer degree bounds than levels"};
	if (a.size() != lambda.size())
		throw DimensionMismatch {"lacunary_pack: a and lambda differ in length"};
	for (std::size_t i = 0; i < a.size(); ++i)
	{
		if (a[i] < 1 || lambda[i] < 1)
			throw PreconditionViolation {"lacunary_pack: a and lambda must be positive"};
		if (i + 1 < a.size() && static_cast<Wide>(a[i]) * lambda[i] >= a[i + 1])
			throw PreconditionViolation {"lacunary_pack: a_n * lambda_n < a_{n+1} fails at position " +
			                             std::to_string(i + 1)};
	}

	LacunaryPack out;
	out.a.assign(a.begin(), a.end());
	out.lambda.assign(lambda.begin(), lambda.end());
	Wide partial = 0; // Σ_{k<n} μ_k
	int previous = 0;
	for (int n = 1; n <= m; ++n)
	{
		const Wide r = degree_bounds[static_cast<std::size_t>(n - 1)];
		if (r < 1)
			throw PreconditionViolation {"lacunary_pack: degree bounds must be >= 1"};
		int chosen = 0;
		const int first = n == 1 ? 1 : std::max(static_cast<int>(r), previous) + 1;
		for (int pos = first; pos <= static_cast<int>(a.size()); ++pos)
		{
			const Wide ap = a[static_cast<std::size_t>(pos - 1)];
			const Wide lp = lambda[static_cast<std::size_t>(pos - 1)];
			const bool admissible = n == 1 ? lp > r : (lp - r) * ap >= r * (2 + (r + 1) * partial);
			if (admissible)
			{
				chosen = pos;
				break;
			}
		}
		if (chosen == 0)
			throw PreconditionViolation {"lacunary_pack: the supplied prefix of (a, lambda) is too short for level " +
			                             std::to_string(n)};
		const Wide mu = a[static_cast<std::size_t>(chosen - 1)] + r * partial;
		out.mu.push_back(narrow(mu, "lacunary_pack"));
		out.ell.push_back(chosen);
		partial += mu;
		narrow(partial * (r + 1), "lacunary_pack");
		previous = chosen;
	}
	return out;
}

PackVerification verify_pack(const LacunaryPack& pack, std::span<const int> degree_bounds,
                             std::size_t exhaustive_limit)
{
	PackVerification out;
	const int m = pack.levels();
	if (static_cast<int>(degree_bounds.size()) < m || static_cast<int>(pack.ell.size()) != m)
		throw DimensionMismatch {"verify_pack: pack and degree bounds disagree"};

	out.ell_increasing = true;
	for (int n = 1; n < m; ++n)
		out.ell_increasing = out.ell_increasing && pack.ell[static_cast<std::size_t>(n)] > pack.ell[static_cast<std::size_t>(n - 1)];

	out.blocks_disjoint = true;
	for (int i = 1; i <= m; ++i)
		for (int j = i + 1; j <= m; ++j)
			if (!(pack.block_high(i) < pack.block_low(j) || pack.block_high(j) < pack.block_low(i)))
				out.blocks_disjoint = false;

	out.corners_ok = true;
	bool all_enumerated = m > 0;
	bool enumerated_ok = true;
	for (int n = 1; n <= m; ++n)
	{
		const int r = degree_bounds[static_cast<std::size_t>(n - 1)];
		const Wide low = pack.block_low(n);
		const Wide high = pack.block_high(n);
		// A linear form over the box is extremal at its corners.
		Wide min_sum = 0, max_sum = 0;
		for (int k = 1; k < n; ++k)
		{
			const Wide mu = pack.mu[static_cast<std::size_t>(k - 1)];
			const Wide mag = mu < 0 ? -mu : mu;
			min_sum -= r * mag;
			max_sum += r * mag;
		}
		const Wide mu_n = pack.mu[static_cast<std::size_t>(n - 1)];
		min_sum += mu_n >= 0 ? mu_n : r * mu_n;
		max_sum += mu_n >= 0 ? r * mu_n : mu_n;
		out.corners_ok = out.corners_ok && low <= min_sum && max_sum <= high;

		// Exhaustive enumeration of (p_1, …, p_n) with p_n ∈ [1, r], |p_k| <= r.
		double count = static_cast<double>(r);
		for (int k = 1; k < n; ++k)
			count *= 2.0 * r + 1.0;
		if (count > static_cast<double>(exhaustive_limit))
		{
			all_enumerated = false;
			continue;
		}
		std::vector<int> p(static_cast<std::size_t>(n), -r);
		p.back() = 1;
		while (true)
		{
			Wide sum = 0;
			for (int k = 0; k < n; ++k)
				sum += static_cast<Wide>(pack.mu[static_cast<std::size_t>(k)]) * p[static_cast<std::size_t>(k)];
			if (sum < low || sum > high)
				enumerated_ok = false;
			int k = 0;
			for (; k < n; ++k)
			{
				auto& digit = p[static_cast<std::size_t>(k)];
				const int lo = k == n - 1 ? 1 : -r;
				if (digit < r)
				{
					++digit;
					break;
				}
				digit = lo;
			}
			if (k == n)
				break;
		}
	}
	out.exhaustive_run = all_enumerated;
	out.exhaustive_ok = enumerated_ok;
	return out;
}

LacunarySpec random_lacunary_spec(int m, Rng& rng)
{
	if (m < 0)
		throw PreconditionViolation {"random_lacunary_spec: m must be >= 0"};
	LacunarySpec spec;
	std::uniform_int_distribution<int> degree(1, 3);
	for (int n = 0; n < m; ++n)
		spec.degree_bounds.push_back(degree(rng));
	std::uniform_int_distribution<long long> start(1, 4), jitter(0, 2), gap(1, 3);
	long long a = start(rng);
	for (int n = 1; n <= 64; ++n)
	{
		const long long lambda = 4 + n / 3 + jitter(rng);
		spec.a.push_back(a);
		spec.lambda.push_back(lambda);
		const Wide next = static_cast<Wide>(a) * lambda + gap(rng);
		if (next > Wide {1000000000000000LL})
			break;
		a = static_cast<long long>(next);
	}
	return spec;
}

VecTrigPoly substitute_freq(const HardyMartingale& martingale, const LacunaryPack& pack,
                            std::span<const double> theta)
{
	const int m = martingale.levels();
	if (pack.levels() < m)
		throw DimensionMismatch {"substitute_freq: the pack has fewer levels than the martingale"};
	if (static_cast<int>(theta.size()) < m)
		throw DimensionMismatch {"substitute_freq: too few angles"};
	VecTrigPoly out {martingale.space()};
	if (martingale.m0().cwiseAbs().maxCoeff() > 0.0)
		out.set(0, martingale.m0());
	for (int n = 1; n <= m; ++n)
	{
		const long long low = pack.block_low(n);
		const long long high = pack.block_high(n);
		for (const auto& [key, c] : martingale.level(n).terms)
		{
			Wide freq = 0;
			double phase = 0.0;
			for (std::size_t k = 0; k < key.size(); ++k)
			{
				freq += static_cast<Wide>(pack.mu[k]) * key[k];
				phase += key[k] * theta[k];
			}
			if (freq < low || freq > high)
				throw Error {"substitute_freq: frequency of level " + std::to_string(n) + " escapes its block"};
			out.add(narrow(freq, "substitute_freq"), std::polar(1.0, phase) * c);
		}
	}
	return out;
}

RandomizationComparison steinhaus_vs_rademacher(std::span<const Vector> xs, const SequenceSpace& space,
                                                std::uint64_t seed, std::size_t samples)
{
	if (xs.empty())
		throw PreconditionViolation {"steinhaus_vs_rademacher: empty family"};
	if (samples < 1)
		throw PreconditionViolation {"steinhaus_vs_rademacher: samples must be >= 1"};
	Matrix family(space.dim(), static_cast<Eigen::Index>(xs.size()));
	for (std::size_t k = 0; k < xs.size(); ++k)
	{
		require_dim(xs[k].size(), space, "steinhaus_vs_rademacher");
		family.col(static_cast<Eigen::Index>(k)) = xs[k];
	}
	const Exponent p = space.p();
	Vector weights(family.cols());

	Moments steinhaus;
	for_each_sample(substream_seed(seed, 0), samples, [&](Rng& rng) {
		for (Eigen::Index k = 0; k < weights.size(); ++k)
			weights(k) = std::polar(1.0, uniform_angle(rng));
		steinhaus.add(lp_norm(family * weights, p));
	});
	Moments rademacher;
	for_each_sample(substream_seed(seed, 1), samples, [&](Rng& rng) {
		std::bernoulli_distribution coin;
		for (Eigen::Index k = 0; k < weights.size(); ++k)
			weights(k) = coin(rng) ? -1.0 : 1.0;
		rademacher.add(lp_norm(family * weights, p));
	});

	RandomizationComparison out;
	out.steinhaus = steinhaus.estimate();
	out.rademacher = rademacher.estimate();
	const double rel = std::hypot(relative(out.steinhaus), relative(out.rademacher));
	if (out.rademacher.mean > 0.0)
	{
		out.ratio = out.steinhaus.mean / out.rademacher.mean;
		out.ratio_stderr = out.ratio * rel;
	}
	out.pass = out.steinhaus.mean <= 2.0 * out.rademacher.mean * (1.0 + 3.0 * rel);
	return out;
}

WeylCheck weyl_check(const MultiPoly& f, long n, std::size_t grid_size)
{
	const SequenceSpace scalar {1, Exponent {1.0}};
	VecTrigPoly g {scalar};
	WeylCheck out;
	std::size_t arity = 0;
	for (const auto& [key, c] : f)
	{
		if (arity == 0)
			arity = key.size();
		else if (key.size() != arity)
			throw DimensionMismatch {"weyl_check: multi-frequencies of different lengths"};
		Wide freq = 0;
		Wide power = 1;
		for (int k : key)
		{
			freq += power * k;
			power *= n;
			narrow(power, "weyl_check");
		}
		g.add(narrow(freq, "weyl_check"), Vector::Constant(1, c));
		if (std::all_of(key.begin(), key.end(), [](int k) { return k == 0; }))
			out.rhs += c;
	}
	const std::size_t s = grid_size ? grid_size : static_cast<std::size_t>(g.band_radius()) + 1;
	out.lhs = grid_mean(g, SampleGrid {s})(0);
	out.gap = std::abs(out.lhs - out.rhs);
	return out;
}

} // namespace hardy
