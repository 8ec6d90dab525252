#include "hardy/sampling.hpp"

namespace hardy
{

namespace
{
// Relative slack for floating-point comparisons of mathematically exact inequalities.
constexpr double rounding_slack = 1e-12;
}

SampleGrid::SampleGrid(std::size_t s) : s_ {s}
{
	if (s == 0)
		throw PreconditionViolation {"SampleGrid: size must be positive"};
}

SampleGrid SampleGrid::paley_block(int n)
{
	if (n < 1)
		throw PreconditionViolation {"SampleGrid::paley_block: n must be >= 1"};
	return SampleGrid {12 * static_cast<std::size_t>(n)};
}

double discrete_mean(const VecTrigPoly& f, const SampleGrid& grid)
{
	const Matrix values = f.sample(grid.size());
	CompensatedSum<double> sum;
	for (Eigen::Index j = 0; j < values.cols(); ++j)
		sum.add(lp_norm(values.col(j), f.space().p()));
	return sum.value() / static_cast<double>(grid.size());
}

Vector grid_mean(const VecTrigPoly& f, const SampleGrid& grid)
{
	const Matrix values = f.sample(grid.size());
	Vector mean(f.dim());
	for (Eigen::Index i = 0; i < values.rows(); ++i)
	{
		CompensatedSum<Complex> sum;
		for (Eigen::Index j = 0; j < values.cols(); ++j)
			sum.add(values(i, j));
		mean(i) = sum.value() / static_cast<double>(grid.size());
	}
	return mean;
}

ExactMeanCheck exact_mean_check(const VecTrigPoly& g, std::size_t s)
{
	ExactMeanCheck out;
	out.precondition_met = s > static_cast<std::size_t>(g.band_radius());
	out.grid_mean = grid_mean(g, SampleGrid {s});
	out.zeroth_coefficient = g.coeff(0);
	out.residual = (out.grid_mean - out.zeroth_coefficient).cwiseAbs().maxCoeff();
	out.pass = out.precondition_met && out.residual <= 1e-10;
	return out;
}

double reference_integral(const VecTrigPoly& f, std::size_t base_size)
{
	return discrete_mean(f, SampleGrid {16 * base_size});
}

std::size_t lemma52_grid_size(int n, double eps)
{
	if (!(eps > 0.0 && eps < 1.0))
		throw PreconditionViolation {"lemma52_bounds: eps must lie in (0, 1)"};
	if (n < 1)
		throw PreconditionViolation {"lemma52_bounds: degree must be >= 1"};
	const auto bracket = static_cast<std::size_t>(std::floor(2.0 / eps));
	return (1 + bracket) * static_cast<std::size_t>(n);
}

SamplingBounds lemma52_bounds(const VecTrigPoly& f, int n, double eps)
{
	if (!f.analytic() || f.max_freq() > n)
		throw PreconditionViolation {"lemma52_bounds: f must be analytic of degree <= n"};
	SamplingBounds out;
	out.s_min = lemma52_grid_size(n, eps);
	out.lower_factor = 1.0 - eps;
	out.upper_factor = 1.0 / (1.0 - eps);
	out.grid_mean = discrete_mean(f, SampleGrid {out.s_min});
	out.reference = reference_integral(f, out.s_min);
	const double slack = rounding_slack * out.reference;
	out.lower_ok = out.lower_factor * out.reference <= out.grid_mean + slack;
	out.upper_ok = out.grid_mean <= out.upper_factor * out.reference + slack;
	return out;
}

BlockSamplingBounds prop53_bounds(const VecTrigPoly& h, int n)
{
	if (n < 1)
		throw PreconditionViolation {"prop53_bounds: n must be >= 1"};
	if (!h.analytic() || h.max_freq() > 3L * n)
		throw PreconditionViolation {"prop53_bounds: h must be analytic of degree <= 3n"};
	const SampleGrid grid = SampleGrid::paley_block(n);
	BlockSamplingBounds out;
	out.grid_mean = discrete_mean(h, grid);
	out.reference = reference_integral(h, grid.size());
	if (out.reference == 0.0)
	{
		out.ratio = out.grid_mean == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
		out.pass = out.grid_mean == 0.0;
		return out;
	}
	out.ratio = out.grid_mean / out.reference;
	out.pass = out.ratio >= 1.0 / 3.0 - rounding_slack && out.ratio <= 3.0 + rounding_slack;
	return out;
}

} // namespace hardy
