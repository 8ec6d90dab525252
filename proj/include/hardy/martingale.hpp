#ifndef HARDY_MARTINGALE_HPP
#define HARDY_MARTINGALE_HPP

#include "hardy/trigpoly.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace hardy
{

using MultiIndex = std::vector<int>;

/// One difference dM_n = Σ_{(p_1..p_n)} M_{n,p} exp(i Σ p_k θ_k) with p_n > 0 and
/// |p_k| <= degree_bound for every key.
struct MartingaleLevel
{
	int degree_bound = 1;
	std::map<MultiIndex, Vector> terms;
};

/// A finite X-valued Hardy martingale on 𝕋^m, stored by its differences.
class HardyMartingale
{
public:
	HardyMartingale(SequenceSpace space, Vector m0);

	const SequenceSpace& space() const noexcept { return space_; }
	const Vector& m0() const noexcept { return m0_; }
	int levels() const noexcept { return static_cast<int>(levels_.size()); }
	/// Level n, 1-based.
	const MartingaleLevel& level(int n) const { return levels_.at(static_cast<std::size_t>(n - 1)); }

	/// Appends level m + 1 with the given box bound; returns its index.
	int add_level(int degree_bound);
	/// Adds a term to level n; the key must have length n, a positive last entry and
	/// all entries bounded by the level's degree bound.
	void add_term(int n, MultiIndex frequencies, const Vector& coefficient);

	/// dM_0 … dM_m at the angles θ_1 … θ_m.
	std::vector<Vector> differences(std::span<const double> theta) const;

	/// Every difference has mean zero in its last variable, read off the coefficients.
	bool martingale_property() const;

private:
	SequenceSpace space_;
	Vector m0_;
	std::vector<MartingaleLevel> levels_;
};

/// dM_0 = 0, dM_n = e^{iθ_n} e_1.
HardyMartingale steinhaus_martingale(SequenceSpace space, int m);

struct RandomMartingaleOptions
{
	int max_degree = 2;
	int terms_per_level = 4;
	bool with_m0 = true;
	std::vector<int> degree_bounds; ///< fixed r_n per level; drawn from [1, max_degree] when empty
};

/// Complex Gaussian coefficients on a random sparse admissible support.
HardyMartingale random_martingale(SequenceSpace space, int m, Rng& rng, const RandomMartingaleOptions& options = {});

struct MonteCarloEstimate
{
	double mean = 0.0;
	double std_error = 0.0;
};

struct PathStatistics
{
	std::vector<MonteCarloEstimate> differences; ///< E‖dM_n‖, n = 0..m
	MonteCarloEstimate final_value;              ///< E‖M_m‖
	std::size_t samples = 0;
};

/// Monte-Carlo over independent uniform angles; samples are drawn in fixed-size
/// chunks with substreams derived from the seed, so results depend only on the seed.
PathStatistics sample_path(const HardyMartingale& martingale, std::uint64_t seed, std::size_t samples);

struct SquareFunctionCheck
{
	double lhs = 0.0;             ///< [Σ_{n=0}^m (E‖dM_n‖)²]^{1/2}
	double rhs = 0.0;             ///< 2·eta_bound·E‖M_m‖
	double relative_stderr = 0.0;
	bool pass = false;            ///< lhs <= rhs·(1 + 3·relative_stderr)
};

SquareFunctionCheck square_fn_check(const HardyMartingale& martingale, double eta_bound, std::uint64_t seed,
                                    std::size_t samples);

struct UhmdEstimate
{
	double constant = 0.0;  ///< max over patterns of E‖Σ ε_n dM_n‖ / E‖M_m‖
	std::vector<int> worst_pattern;
	std::size_t patterns = 0;
	bool defined = false;   ///< false for the zero martingale
};

/// Sign patterns are enumerated exhaustively when 2^{m+1} <= 1024, otherwise
/// `sign_patterns` random patterns (plus the all-plus one) are drawn.
UhmdEstimate uhmd_estimate(const HardyMartingale& martingale, std::size_t sign_patterns, std::uint64_t seed,
                           std::size_t samples);

/// Integers μ_n and strictly increasing positions ℓ_n (1-based into a, λ) with
/// a_{ℓ_n} <= Σ_{k<=n} μ_k p_k <= λ_{ℓ_n} a_{ℓ_n} whenever p_n >= 1 and |p_k| <= r_n.
struct LacunaryPack
{
	std::vector<long long> a;
	std::vector<long long> lambda;
	std::vector<long long> mu;
	std::vector<int> ell;

	int levels() const noexcept { return static_cast<int>(mu.size()); }
	long long block_low(int n) const { return a.at(static_cast<std::size_t>(ell.at(static_cast<std::size_t>(n - 1)) - 1)); }
	long long block_high(int n) const;
};

/// Builds the pack level by level: ℓ_1 is the first position with λ_ℓ > r_1 and
/// μ_1 = a_{ℓ_1}; for n >= 2, ℓ_n is the first position beyond max(r_n, ℓ_{n-1}) with
/// (λ_ℓ/r_n − 1)·a_ℓ >= 2 + (r_n + 1)·Σ_{k<n} μ_k, and μ_n = a_{ℓ_n} + r_n Σ_{k<n} μ_k.
LacunaryPack lacunary_pack(std::span<const long long> a, std::span<const long long> lambda,
                           std::span<const int> degree_bounds, int m);

struct PackVerification
{
	bool corners_ok = false;
	bool exhaustive_run = false;
	bool exhaustive_ok = false;
	bool blocks_disjoint = false;
	bool ell_increasing = false;
	bool ok() const { return corners_ok && (!exhaustive_run || exhaustive_ok) && blocks_disjoint && ell_increasing; }
};

/// Exact integer check of the packing inequality at the extreme points, and over all
/// admissible (p_1..p_n) when Π(2r_n + 1) <= exhaustive_limit.
PackVerification verify_pack(const LacunaryPack& pack, std::span<const int> degree_bounds,
                             std::size_t exhaustive_limit = 100000);

struct LacunarySpec
{
	std::vector<long long> a;
	std::vector<long long> lambda;
	std::vector<int> degree_bounds;
};

/// Random admissible (a, λ, r) with a_n λ_n < a_{n+1} and λ increasing.
LacunarySpec random_lacunary_spec(int m, Rng& rng);

/// η ↦ M_m(θ_1 + μ_1 η, …, θ_m + μ_m η), an analytic polynomial whose level-n
/// frequencies lie in [a_{ℓ_n}, λ_{ℓ_n} a_{ℓ_n}].
VecTrigPoly substitute_freq(const HardyMartingale& martingale, const LacunaryPack& pack,
                            std::span<const double> theta);

struct RandomizationComparison
{
	MonteCarloEstimate steinhaus;  ///< E‖Σ e^{iθ_k} x_k‖
	MonteCarloEstimate rademacher; ///< E‖Σ ε_k x_k‖
	double ratio = 0.0;
	double ratio_stderr = 0.0;
	bool pass = false;             ///< steinhaus <= 2·rademacher·(1 + 3σ_rel)
};

RandomizationComparison steinhaus_vs_rademacher(std::span<const Vector> xs, const SequenceSpace& space,
                                                std::uint64_t seed, std::size_t samples);

/// Trigonometric polynomial on 𝕋^{p+1}: multi-frequency (k_0..k_p) → coefficient.
using MultiPoly = std::map<MultiIndex, Complex>;

struct WeylCheck
{
	Complex lhs;   ///< ∫ f(θ, nθ, …, n^pθ) dm(θ)
	Complex rhs;   ///< ∫_{𝕋^{p+1}} f = coefficient of the zero multi-frequency
	double gap = 0.0;
};

/// grid_size 0 selects the smallest grid on which the one-variable mean is exact.
WeylCheck weyl_check(const MultiPoly& f, long n, std::size_t grid_size = 0);

} // namespace hardy

#endif
