#ifndef HARDY_LIFTING_HPP
#define HARDY_LIFTING_HPP

#include "hardy/trigpoly.hpp"

#include <cstddef>
#include <cstdint>

namespace hardy
{

/// Norms measured while lifting an analytic ℓ^d_1/Y-valued polynomial f to an
/// analytic ℓ^d_1-valued h. All norms are L²(𝕋; ·) norms by quadrature on the lifting grid.
struct LiftReport
{
	double f_norm = 0.0;     ///< ‖f‖ in the quotient (certified pointwise lower bounds)
	double g_norm = 0.0;     ///< the pointwise minimal preimage g
	double riesz_norm = 0.0; ///< ‖ℜ₋(g)‖
	double h_norm = 0.0;
	double ratio = 0.0;      ///< h_norm / f_norm
	double residual = 0.0;   ///< max_k dist(ĥ(k) − f̂(k), Y)
	double negative_leak = 0.0; ///< max_{k<0} dist(ĝ(k), Y)
	std::size_t grid_size = 0;
	long band = 0;           ///< band of f
	long lift_band = 0;      ///< band kept when recovering g, 4·(band + 1)
};

struct LiftResult
{
	VecTrigPoly h;
	LiftReport report;
};

/// Lifts f through the quotient map q: ℓ^d_1 → ℓ^d_1/Y. Coefficients of f are
/// ambient vectors standing for their cosets. At each grid point the coset of f(ω)
/// is replaced by its minimal ℓ¹ representative g(ω); g is recovered on the band
/// [−lift_band, lift_band] by discrete Fourier inversion and h = g − ℜ₋(g).
/// Throws when grid_size < 2·lift_band + 1, or when a negative coefficient of g
/// leaves Y by more than 1e-9.
LiftResult lift(const VecTrigPoly& f, const QuotientSpace& qs, std::size_t grid_size = 0);

/// Default lifting grid: a power of two >= 128·(lift_band + 1).
std::size_t default_lift_grid(long band);

/// ‖ℜ₋(g)‖_{L²(ℓ^{1/2})} / ‖g‖_{L²(ℓ¹)} with the quasi-norm (Σ|x_j|^{1/2})².
double riesz_ratio_L1_Lhalf(const VecTrigPoly& g, std::size_t grid_size = 4096);

/// Largest ratio over `trials` seeded random g with d coordinates and frequencies in
/// [−band, band]: an empirical lower bound on the norm of ℜ₋ from L²(ℓ^d_1) to L²(ℓ^d_{1/2}).
double riesz_lower_L1_Lhalf(int trials, int d, int band, std::uint64_t seed, std::size_t grid_size = 4096);

} // namespace hardy

#endif
