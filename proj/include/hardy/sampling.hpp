#ifndef HARDY_SAMPLING_HPP
#define HARDY_SAMPLING_HPP

#include "hardy/trigpoly.hpp"

#include <cstddef>

namespace hardy
{

/// The s-th roots of unity, angles 2πk/s.
class SampleGrid
{
public:
	explicit SampleGrid(std::size_t s);
	/// B_n: the 12n-th roots of unity.
	static SampleGrid paley_block(int n);

	std::size_t size() const noexcept { return s_; }
	double angle(std::size_t k) const { return two_pi * static_cast<double>(k) / static_cast<double>(s_); }
	Complex point(std::size_t k) const { return std::polar(1.0, angle(k)); }

private:
	std::size_t s_;
};

/// (1/s) Σ_{ω ∈ grid} ‖f(ω)‖_X with compensated summation.
double discrete_mean(const VecTrigPoly& f, const SampleGrid& grid);

/// Vector-valued grid mean (1/s) Σ f(ω), no norm taken.
Vector grid_mean(const VecTrigPoly& f, const SampleGrid& grid);

struct ExactMeanCheck
{
	Vector grid_mean;
	Vector zeroth_coefficient;
	double residual = 0.0;        ///< ‖grid_mean − ĝ(0)‖_∞
	bool precondition_met = false; ///< s > band radius
	bool pass = false;             ///< precondition met and residual <= 1e-10
};

/// Tests the identity ∫ g dm = (1/s) Σ_{ω ∈ A_s} g(ω) for s > band radius of g.
/// When s <= band radius the check still runs but is reported as failing.
ExactMeanCheck exact_mean_check(const VecTrigPoly& g, std::size_t s);

/// Discrete mean on a grid 16 times the given size, the reference integral.
double reference_integral(const VecTrigPoly& f, std::size_t base_size);

struct SamplingBounds
{
	std::size_t s_min = 0;
	double lower_factor = 0.0;
	double upper_factor = 0.0;
	double grid_mean = 0.0;
	double reference = 0.0;
	bool lower_ok = false;
	bool upper_ok = false;
};

/// s_min = (1 + ⌊2/ε⌋)·n; checks
/// (1 − ε)·∫‖f‖ <= (1/s)Σ‖f(ω)‖ <= (1 − ε)^{-1}·∫‖f‖ at s = s_min.
/// f must be analytic with frequencies in [0, n].
SamplingBounds lemma52_bounds(const VecTrigPoly& f, int n, double eps);

std::size_t lemma52_grid_size(int n, double eps);

struct BlockSamplingBounds
{
	double grid_mean = 0.0;  ///< mean of ‖h‖ over B_n
	double reference = 0.0;
	double ratio = 0.0;      ///< grid_mean / reference
	bool pass = false;       ///< 1/3 <= ratio <= 3
};

/// The (1/3, 3) comparison between the B_n mean and ∫‖h‖ for h of degree <= 3n.
BlockSamplingBounds prop53_bounds(const VecTrigPoly& h, int n);

} // namespace hardy

#endif
