#include "hardy/lifting.hpp"

#include <algorithm>

namespace hardy
{

namespace
{

constexpr double leak_tolerance = 1e-9;

std::size_t next_pow2(std::size_t n)
{
	std::size_t s = 1;
	while (s < n)
		s <<= 1;
	return s;
}

// L²(ℓ^d_1) norm from grid samples.
double l2_of_l1(const Matrix& values)
{
	CompensatedSum<double> sum;
	for (Eigen::Index j = 0; j < values.cols(); ++j)
	{
		const double v = values.col(j).cwiseAbs().sum();
		sum.add(v * v);
	}
	return std::sqrt(sum.value() / static_cast<double>(values.cols()));
}

} // namespace

std::size_t default_lift_grid(long band)
{
	return next_pow2(128 * static_cast<std::size_t>(4 * (band + 1) + 1));
}

LiftResult lift(const VecTrigPoly& f, const QuotientSpace& qs, std::size_t grid_size)
{
	if (!f.analytic())
		throw PreconditionViolation {"lift: f must be analytic"};
	if (f.space() != qs.ambient())
		throw DimensionMismatch {"lift: f must take values in the ambient space of the quotient"};

	LiftReport report;
	report.band = f.empty() ? 0 : f.max_freq();
	report.lift_band = 4 * (report.band + 1);
	const long L = report.lift_band;
	const std::size_t s = grid_size ? grid_size : default_lift_grid(report.band);
	if (s < 2 * static_cast<std::size_t>(L) + 1)
		throw PreconditionViolation {"lift: grid too small for the lifting band"};
	report.grid_size = s;
	const auto cols = static_cast<Eigen::Index>(s);
	const Eigen::Index d = f.dim();

	// Pointwise minimal representatives of the cosets f(ω) + Y.
	const Matrix f_values = f.sample(s);
	Matrix g_values(d, cols);
	CompensatedSum<double> f_sq;
	for (Eigen::Index j = 0; j < cols; ++j)
	{
		const CosetMinimum best = min_l1_coset(f_values.col(j), qs);
		g_values.col(j) = best.representative;
		f_sq.add(best.lower_bound * best.lower_bound);
	}
	report.f_norm = std::sqrt(f_sq.value() / static_cast<double>(s));
	report.g_norm = l2_of_l1(g_values);

	// Band-limited g by discrete Fourier inversion on [−L, L].
	std::vector<Complex> roots(s);
	for (std::size_t m = 0; m < s; ++m)
		roots[m] = root_of_unity(-static_cast<long long>(m), static_cast<long long>(s));
	VecTrigPoly h {f.space()};
	VecTrigPoly minus {f.space()};
	for (long k = -L; k <= L; ++k)
	{
		const auto step = static_cast<std::size_t>(((k % static_cast<long>(s)) + static_cast<long>(s)) % static_cast<long>(s));
		Vector c = Vector::Zero(d);
		std::size_t m = 0;
		for (Eigen::Index j = 0; j < cols; ++j)
		{
			c += roots[m] * g_values.col(j);
			m += step;
			if (m >= s)
				m -= s;
		}
		c /= static_cast<double>(s);
		if (c.cwiseAbs().maxCoeff() == 0.0)
			continue;
		if (k < 0)
		{
			report.negative_leak = std::max(report.negative_leak, qs.distance_to_subspace_l2(c));
			minus.set(k, std::move(c));
		}
		else
			h.set(k, std::move(c));
	}
	const double scale = std::max(1.0, report.g_norm);
	if (report.negative_leak > leak_tolerance * scale)
		throw Error {"lift: a negative-frequency coefficient of g is not in Y; enlarge the grid"};

	for (long k = 0; k <= L; ++k)
		report.residual = std::max(report.residual, qs.distance_to_subspace_l2(h.coeff(k) - f.coeff(k)));
	report.riesz_norm = minus.empty() ? 0.0 : l2_of_l1(minus.sample(s));
	report.h_norm = h.empty() ? 0.0 : l2_of_l1(h.sample(s));
	report.ratio = report.f_norm > 0.0 ? report.h_norm / report.f_norm : 1.0;
	return LiftResult {std::move(h), report};
}

double riesz_ratio_L1_Lhalf(const VecTrigPoly& g, std::size_t grid_size)
{
	const double denominator = mixed_norm(g, Exponent {2.0}, Exponent {1.0}, grid_size);
	if (denominator == 0.0)
		return 0.0;
	return mixed_norm(riesz_minus(g), Exponent {2.0}, Exponent {0.5}, grid_size) / denominator;
}

double riesz_lower_L1_Lhalf(int trials, int d, int band, std::uint64_t seed, std::size_t grid_size)
{
	if (trials < 1)
		throw PreconditionViolation {"riesz_lower_L1_Lhalf: trials must be >= 1"};
	if (band < 1)
		throw PreconditionViolation {"riesz_lower_L1_Lhalf: band must be >= 1"};
	const SequenceSpace space {d, Exponent {1.0}};
	double best = 0.0;
	for (int t = 0; t < trials; ++t)
	{
		Rng rng {substream_seed(seed, static_cast<std::uint64_t>(t))};
		// Alternate dense trials with ones concentrated on negative frequencies.
		const long hi = t % 2 == 0 ? band : -1;
		const VecTrigPoly g = random_trigpoly(space, -band, hi, rng);
		best = std::max(best, riesz_ratio_L1_Lhalf(g, grid_size));
	}
	return best;
}

} // namespace hardy
