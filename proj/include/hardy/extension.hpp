#ifndef HARDY_EXTENSION_HPP
#define HARDY_EXTENSION_HPP

#include "hardy/trigpoly.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace hardy
{

/// A finitely supported operator on H¹ or L¹ with values in Y, given by its
/// values y_k = u(e^{ik(·)}). Analytic-only symbols have no negative keys.
class OperatorSymbol
{
public:
	enum class Side
	{
		analytic,
		two_sided
	};

	OperatorSymbol(SequenceSpace codomain, Side side) : values_ {codomain}, side_ {side} {}
	OperatorSymbol(VecTrigPoly values, Side side);

	const SequenceSpace& codomain() const noexcept { return values_.space(); }
	Side side() const noexcept { return side_; }
	bool analytic_only() const noexcept { return side_ == Side::analytic; }

	void set(long k, Vector y);
	Vector value(long k) const { return values_.coeff(k); }

	/// The symbol θ ↦ Σ_k y_k e^{ikθ}, as a polynomial.
	const VecTrigPoly& as_polynomial() const noexcept { return values_; }
	long support_radius() const { return values_.band_radius(); }
	bool empty() const { return values_.empty(); }

	/// u applied to an analytic polynomial: Σ_k f̂(k) y_k (scalar f).
	Vector apply(const std::vector<std::pair<long, Complex>>& f_coeffs) const;

private:
	VecTrigPoly values_;
	Side side_;
};

/// ⟨u, F⟩ = Σ_k ⟨y_k, F̂(k)⟩, bilinear.
Complex pairing(const OperatorSymbol& u, const VecTrigPoly& f);

/// Pairing in exact integer arithmetic; empty when some coefficient is not a
/// Gaussian integer.
std::optional<std::complex<long long>> exact_pairing(const OperatorSymbol& u, const VecTrigPoly& f);

/// sup_θ ‖Σ_k y_k e^{ikθ}‖_Y: the norm of the symbol as an operator on L¹.
double l1_op_norm(const OperatorSymbol& u, std::size_t grid_size);
double l1_op_norm(const OperatorSymbol& u);

struct H1SearchOptions
{
	std::size_t trials = 1000;
	std::uint64_t seed = 1;
};

struct H1LowerBound
{
	double value = 0.0;       ///< certified lower bound on ‖u‖_{H¹→Y}
	std::size_t tested = 0;   ///< number of test functions evaluated
	double best_radius = 0.0; ///< |w| of the best reproducing-kernel witness (-1: random polynomial)
};

/// Lower bound on ‖u‖_{H¹→Y} from test functions of known H¹ norm: the normalised
/// kernels f_w = (1 − |w|²)/(1 − w̄e^{iθ})², f̂_w(k) = (1 − |w|²)(k + 1)w̄^k, and
/// random analytic polynomials whose H¹ norm is bounded above from grid samples.
H1LowerBound h1_op_norm_lower(const OperatorSymbol& u, const H1SearchOptions& options = {});

struct ExtensionOptions
{
	std::size_t grid_size = 0; ///< 0: 16·(support radius + neg_band)
	int max_iterations = 500;
	double tolerance = 1e-7;
	std::size_t h1_trials = 1000;
	std::uint64_t seed = 1;
};

struct ExtensionResult
{
	OperatorSymbol extension;
	double objective = 0.0;       ///< sup norm of the returned two-sided symbol
	double zero_completion = 0.0; ///< sup norm of u itself
	double h1_lower = 0.0;
	double lambda_est = 0.0;      ///< objective / h1_lower (NaN for the zero symbol)
	std::vector<double> history;  ///< best grid objective after each iteration
	int iterations = 0;
	bool converged = false;
};

/// Minimises sup_θ ‖u(θ) + Σ_{k=-neg_band}^{-1} z_k e^{ikθ}‖_Y over completions z.
/// The objective is a maximum of norms of affine maps, hence convex; it is minimised
/// on a θ-grid by a smoothing continuation with L-BFGS.
ExtensionResult extend_min(const OperatorSymbol& u, int neg_band, const ExtensionOptions& options = {});

/// u(h) = (ĥ(3), ĥ(9), …, ĥ(3ⁿ)) into Y, dim Y = n.
OperatorSymbol paley_symbol(int n, SequenceSpace codomain);

/// f(θ) = Σ_{k=1}^n e^{i3^kθ} e_k in ℓⁿ_p.
VecTrigPoly lacunary_test_function(int n, Exponent p);

struct EtaCertificate
{
	int n = 0;
	Exponent p {1.0};
	VecTrigPoly f;
	OperatorSymbol u;
	double pairing = 0.0;  ///< ⟨f, u⟩, computed exactly
	double f_norm = 0.0;   ///< ‖f‖_{H¹(ℓⁿ_p)} by quadrature
	double u_bound = 0.0;  ///< 2·max(1, n^{1/q − 1/2}) from Paley's inequality
	double eta_lower = 0.0;
};

EtaCertificate eta_lower_certificate(int n, Exponent p);

/// n^{1-1/r}, r = min(2, p), after checking the Banach–Mazur witness.
double eta_upper(int n, Exponent p);

struct TensorNormBounds
{
	double lower = 0.0;
	double upper = 0.0;
};

/// Two-sided bounds on the projective norm of F ∈ H¹ ⊗̂ X. The lower bound pairs F
/// with finitely supported dual symbols normalised by their L¹-operator (sup) norm;
/// the upper bound is the cheapest of several explicit representations Σ h_i ⊗ x_i.
TensorNormBounds tensor_norm_bounds(const VecTrigPoly& f, int dual_trials = 8, std::uint64_t seed = 1);

} // namespace hardy

#endif
