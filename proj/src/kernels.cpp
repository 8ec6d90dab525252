#include "hardy/kernels.hpp"

#include <cstdlib>

namespace hardy
{

KernelSpec KernelSpec::fejer(int n)
{
	if (n < 1)
		throw PreconditionViolation {"KernelSpec::fejer: n must be >= 1"};
	return KernelSpec {Fejer {n}};
}

KernelSpec KernelSpec::vallee_poussin(int n, int r)
{
	if (n < 1)
		throw PreconditionViolation {"KernelSpec::vallee_poussin: n must be >= 1"};
	if (r < 2)
		throw PreconditionViolation {"KernelSpec::vallee_poussin: r must be an integer >= 2"};
	return KernelSpec {ValleePoussin {n, r}};
}

KernelSpec KernelSpec::poisson(double radius)
{
	if (!(radius >= 0.0 && radius < 1.0))
		throw PreconditionViolation {"KernelSpec::poisson: radius must lie in [0, 1)"};
	return KernelSpec {Poisson {radius}};
}

std::string KernelSpec::name() const
{
	struct Visitor
	{
		std::string operator()(const Fejer& k) const { return "Fejer(" + std::to_string(k.n) + ")"; }
		std::string operator()(const ValleePoussin& k) const
		{
			return "VdP(" + std::to_string(k.n) + "," + std::to_string(k.r) + ")";
		}
		std::string operator()(const Poisson& k) const { return "Poisson(" + std::to_string(k.radius) + ")"; }
	};
	return std::visit(Visitor {}, kind_);
}

std::optional<long> KernelSpec::band() const
{
	struct Visitor
	{
		std::optional<long> operator()(const Fejer& k) const { return k.n - 1; }
		std::optional<long> operator()(const ValleePoussin& k) const { return static_cast<long>(k.r) * k.n - 1; }
		std::optional<long> operator()(const Poisson&) const { return std::nullopt; }
	};
	return std::visit(Visitor {}, kind_);
}

double kernel_eval(const KernelSpec& kernel, double theta)
{
	struct Visitor
	{
		double theta;
		double operator()(const Fejer& k) const { return fejer_value(k.n, theta); }
		double operator()(const ValleePoussin& k) const
		{
			return (k.r * fejer_value(k.r * k.n, theta) - fejer_value(k.n, theta)) / (k.r - 1);
		}
		double operator()(const Poisson& k) const
		{
			const double rho = k.radius;
			return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(theta) + rho * rho);
		}
	};
	return std::visit(Visitor {theta}, kernel.kind());
}

double kernel_coeff(const KernelSpec& kernel, long k)
{
	const double a = static_cast<double>(std::labs(k));
	struct Visitor
	{
		double a;
		double operator()(const Fejer& kn) const { return std::max(0.0, 1.0 - a / kn.n); }
		double operator()(const ValleePoussin& kn) const
		{
			if (a <= kn.n)
				return 1.0;
			if (a >= static_cast<double>(kn.r) * kn.n)
				return 0.0;
			return (kn.r - a / kn.n) / (kn.r - 1);
		}
		double operator()(const Poisson& kn) const { return std::pow(kn.radius, a); }
	};
	return std::visit(Visitor {a}, kernel.kind());
}

double kernel_l1(const KernelSpec& kernel, std::size_t grid_size)
{
	const auto band = kernel.band();
	const std::size_t needed = band ? 4 * static_cast<std::size_t>(*band + 1) : 64;
	if (grid_size < needed)
		throw PreconditionViolation {"kernel_l1: grid of " + std::to_string(grid_size) +
		                             " points is too small for " + kernel.name()};
	CompensatedSum<double> sum;
	for (std::size_t j = 0; j < grid_size; ++j)
		sum.add(std::abs(kernel_eval(kernel, two_pi * static_cast<double>(j) / grid_size)));
	return sum.value() / static_cast<double>(grid_size);
}

} // namespace hardy
