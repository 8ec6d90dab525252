#ifndef HARDY_TRIGPOLY_HPP
#define HARDY_TRIGPOLY_HPP

#include "hardy/common.hpp"
#include "hardy/kernels.hpp"
#include "hardy/spaces.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hardy
{

/// X-valued trigonometric polynomial Σ_k c_k e^{ikθ} with finitely many
/// nonzero coefficients c_k ∈ X = ℓ^d_p. Coefficients are stored sparsely.
class VecTrigPoly
{
public:
	using Coefficients = std::map<long, Vector>;

	explicit VecTrigPoly(SequenceSpace space) : space_ {space} {}
	VecTrigPoly(SequenceSpace space, Coefficients coeffs);

	static VecTrigPoly constant(SequenceSpace space, Vector value);
	static VecTrigPoly monomial(SequenceSpace space, long k, Vector value);

	const SequenceSpace& space() const noexcept { return space_; }
	int dim() const noexcept { return space_.dim(); }
	const Coefficients& coeffs() const noexcept { return coeffs_; }

	/// Coefficient at frequency k (zero vector when absent).
	Vector coeff(long k) const;
	void set(long k, Vector value);
	void add(long k, const Vector& value);

	bool empty() const noexcept { return coeffs_.empty(); }
	long min_freq() const;
	long max_freq() const;
	/// max |k| over stored frequencies (0 when empty).
	long band_radius() const;
	bool analytic() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

	Vector operator()(double theta) const;

	VecTrigPoly& operator+=(const VecTrigPoly& other);
	VecTrigPoly& operator-=(const VecTrigPoly& other);
	VecTrigPoly& operator*=(Complex scalar);

	/// Values at the s equispaced angles 2πj/s, as the columns of a d × s matrix.
	Matrix sample(std::size_t s) const;

	/// Rotation f(θ + φ).
	VecTrigPoly rotated(double phi) const;

private:
	SequenceSpace space_;
	Coefficients coeffs_;
};

VecTrigPoly operator+(VecTrigPoly a, const VecTrigPoly& b);
VecTrigPoly operator-(VecTrigPoly a, const VecTrigPoly& b);
VecTrigPoly operator*(Complex scalar, VecTrigPoly f);

/// Max over frequencies of the ℓ^∞ distance between coefficients.
double coefficient_distance(const VecTrigPoly& a, const VecTrigPoly& b);

inline Vector eval(const VecTrigPoly& f, double theta) { return f(theta); }

/// Convolution with a summability kernel: coefficient k scaled by K̂(k); frequencies
/// where K̂ vanishes are dropped.
VecTrigPoly convolve(const VecTrigPoly& f, const KernelSpec& kernel);

/// Keeps exactly the strictly negative frequencies.
VecTrigPoly riesz_minus(const VecTrigPoly& f);
/// f − riesz_minus(f): frequencies k >= 0, including the constant term.
VecTrigPoly analytic_part(const VecTrigPoly& f);

/// Smallest power of two >= 8·(band radius + 1).
std::size_t default_grid(const VecTrigPoly& f);

/// ((1/s) Σ_{ω ∈ A_s} ‖f(ω)‖_X^e)^{1/e} on the s-th roots of unity; for e = ∞ the
/// grid maximum refined by golden-section search in the neighbouring cells.
/// Requires grid_size >= 2·band_radius + 1.
double lp_norm(const VecTrigPoly& f, Exponent exponent, std::size_t grid_size);
double lp_norm(const VecTrigPoly& f, Exponent exponent);

/// Same as lp_norm but measuring values in an arbitrary (quasi-)norm ℓ_x.
double mixed_norm(const VecTrigPoly& f, Exponent outer, Exponent inner, std::size_t grid_size);

/// sup_θ ‖f(θ)‖ measured in ℓ_inner: grid max plus local refinement.
double sup_norm(const VecTrigPoly& f, Exponent inner, std::size_t grid_size);

/// Text record: first line "space <dim> <p>", then one line "k re_1 im_1 … re_d im_d"
/// per stored frequency, 17 significant digits.
std::string serialize(const VecTrigPoly& f);
VecTrigPoly parse_trigpoly(std::string_view text);

/// Random polynomial with complex Gaussian coefficients on [lo, hi].
VecTrigPoly random_trigpoly(SequenceSpace space, long lo, long hi, Rng& rng);

} // namespace hardy

#endif
