#ifndef HARDY_KERNELS_HPP
#define HARDY_KERNELS_HPP

#include "hardy/common.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace hardy
{

struct Fejer
{
	int n;
};

struct ValleePoussin
{
	int n;
	int r;
};

struct Poisson
{
	double radius;
};

/// A real, even summability kernel on the circle: Fejér K_n, de la Vallée-Poussin
/// V_{n,r} = (r K_{rn} − K_n)/(r − 1), or the Poisson kernel P_ρ.
class KernelSpec
{
public:
	using Kind = std::variant<Fejer, ValleePoussin, Poisson>;

	static KernelSpec fejer(int n);
	static KernelSpec vallee_poussin(int n, int r);
	static KernelSpec poisson(double radius);

	const Kind& kind() const noexcept { return kind_; }
	std::string name() const;

	/// Largest |k| with a nonzero Fourier coefficient; empty for Poisson.
	std::optional<long> band() const;

private:
	explicit KernelSpec(Kind kind) : kind_ {kind} {}
	Kind kind_;
};

/// (1/n)(sin(nθ/2)/sin(θ/2))², evaluated through its coefficient sum near θ = 0.
template <typename Real>
Real fejer_value(int n, Real theta)
{
	using std::remainder;
	using std::sin;
	using std::cos;
	const Real t = remainder(theta, Real(two_pi));
	if (std::abs(t) < Real(1e-6))
	{
		Real sum = 1;
		for (int k = 1; k < n; ++k)
			sum += 2 * (1 - Real(k) / n) * cos(k * t);
		return sum;
	}
	const Real ratio = sin(n * t / 2) / sin(t / 2);
	return ratio * ratio / n;
}

double kernel_eval(const KernelSpec& kernel, double theta);
double kernel_coeff(const KernelSpec& kernel, long k);

/// Mean of |K| on the grid of `grid_size` equispaced angles. For Fejér and
/// de la Vallée-Poussin kernels the grid must have at least 4(band + 1) points.
double kernel_l1(const KernelSpec& kernel, std::size_t grid_size);

/// (r + 1)/(r − 1), the L¹ bound of V_{n,r}.
inline double vallee_poussin_l1_bound(int r)
{
	return static_cast<double>(r + 1) / static_cast<double>(r - 1);
}

} // namespace hardy

#endif
