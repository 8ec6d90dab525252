#ifndef HARDY_SPACES_HPP
#define HARDY_SPACES_HPP

#include "hardy/common.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace hardy
{

/// An exponent in (0, ∞]; infinity is a distinguished tag, never a large float.
class Exponent
{
public:
	explicit Exponent(double p);
	static Exponent infinity() noexcept { return Exponent {}; }

	bool is_infinite() const noexcept { return infinite_; }
	/// Finite value, or +inf for the tagged exponent.
	double value() const noexcept
	{
		return infinite_ ? std::numeric_limits<double>::infinity() : p_;
	}
	/// 1/p, exactly 0 for p = ∞.
	double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / p_; }

	/// Conjugate exponent q with 1/p + 1/q = 1; requires p >= 1.
	Exponent dual() const;

	std::string to_string() const;
	static Exponent parse(std::string_view text);

	friend bool operator==(const Exponent& a, const Exponent& b) noexcept
	{
		return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
	}

private:
	Exponent() noexcept : p_ {0.0}, infinite_ {true} {}

	double p_;
	bool infinite_;
};

/// ℓ_p (quasi-)norm of a complex vector for any p in (0, ∞].
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& x, Exponent p)
{
	const Eigen::Index n = x.size();
	double peak = 0.0;
	double total = 0.0;
	for (Eigen::Index i = 0; i < n; ++i)
	{
		const double m = std::abs(x(i));
		peak = std::max(peak, m);
		total += m;
	}
	if (p.is_infinite() || peak == 0.0)
		return peak;
	const double e = p.value();
	if (e == 1.0)
		return total;
	double sum = 0.0;
	if (e == 2.0)
	{
		for (Eigen::Index i = 0; i < n; ++i)
		{
			const double m = std::abs(x(i)) / peak;
			sum += m * m;
		}
		return peak * std::sqrt(sum);
	}
	for (Eigen::Index i = 0; i < n; ++i)
		sum += std::pow(std::abs(x(i)) / peak, e);
	return peak * std::pow(sum, 1.0 / e);
}

/// The finite-dimensional complex space ℓⁿ_p, 1 <= p <= ∞.
class SequenceSpace
{
public:
	SequenceSpace(int dim, Exponent p);

	int dim() const noexcept { return dim_; }
	Exponent p() const noexcept { return p_; }
	SequenceSpace dual() const { return {dim_, p_.dual()}; }

	friend bool operator==(const SequenceSpace&, const SequenceSpace&) = default;

private:
	int dim_;
	Exponent p_;
};

void require_dim(Eigen::Index size, const SequenceSpace& space, const char* what);

template <typename Derived>
double norm(const Eigen::MatrixBase<Derived>& x, const SequenceSpace& space)
{
	require_dim(x.size(), space, "norm");
	return lp_norm(x, space.p());
}

/// Vector w with ‖w‖_{p'} = 1 and Re Σ conj(w_j) x_j = ‖x‖_p (zero for x = 0).
Vector norming_functional(const Vector& x, Exponent p);

/// ℓ¹ quotient ℓ^d_1 / Y, Y given by the (linearly independent) columns of a basis matrix.
class QuotientSpace
{
public:
	QuotientSpace(SequenceSpace ambient, Matrix basis);

	const SequenceSpace& ambient() const noexcept { return ambient_; }
	const Matrix& basis() const noexcept { return basis_; }
	int subspace_dim() const noexcept { return static_cast<int>(basis_.cols()); }

	/// Euclidean distance of v to Y, used to test membership.
	double distance_to_subspace_l2(const Vector& v) const;

private:
	SequenceSpace ambient_;
	Matrix basis_;
};

/// Minimiser of ‖x − y‖₁ over y ∈ Y, with a dual certificate.
struct CosetMinimum
{
	Vector representative;  ///< x − y*, a near-minimal element of the coset x + Y
	Vector y_coefficients;  ///< y* = basis · y_coefficients
	double value = 0.0;     ///< ‖representative‖₁, an upper bound on the distance
	double lower_bound = 0.0; ///< dual objective, a certified lower bound
};

/// Solves the complex ℓ¹ distance-to-subspace problem. Complex moduli make it a
/// second-order cone program; a log-barrier Newton method is used.
CosetMinimum min_l1_coset(const Vector& x, const QuotientSpace& qs);

double quotient_norm(const Vector& x, const QuotientSpace& qs);

class LinearMap
{
public:
	LinearMap(Matrix matrix, SequenceSpace domain, SequenceSpace codomain);

	const Matrix& matrix() const noexcept { return matrix_; }
	const SequenceSpace& domain() const noexcept { return domain_; }
	const SequenceSpace& codomain() const noexcept { return codomain_; }

	Vector operator()(const Vector& x) const;

private:
	Matrix matrix_;
	SequenceSpace domain_;
	SequenceSpace codomain_;
};

struct OperatorNormEstimate
{
	double value = 0.0;
	bool exact = false; ///< false: value is a lower bound from power iteration and sampling
};

/// ‖T‖ between ℓ_p spaces. Exact for ℓ¹ domains, ℓ^∞ codomains and 2 → 2;
/// otherwise a lower bound.
OperatorNormEstimate operator_norm(const LinearMap& map, std::uint64_t seed = 0x5eed,
                                   int random_directions = 2000);

/// n×n discrete Fourier matrix with entries exp(2πi jk / n), j,k = 0..n-1.
Matrix fourier_matrix(int n);

struct BanachMazurWitness
{
	LinearMap forward;   ///< T: ℓⁿ_1 → ℓⁿ_p
	LinearMap inverse;   ///< T⁻¹: ℓⁿ_p → ℓⁿ_1
	double bound;        ///< n^{1-1/r}, r = min(2, p)
	double numeric_product; ///< computed ‖T‖·‖T⁻¹‖
};

/// Isomorphism ℓⁿ_1 → ℓⁿ_p realising d(ℓⁿ_p, ℓⁿ_1) <= n^{1-1/min(2,p)}:
/// the identity for p <= 2 and the Fourier matrix for p >= 2.
BanachMazurWitness bm_witness(int n, Exponent p);

/// min(2, p) as used in the distance bound.
Exponent min_two(Exponent p);

} // namespace hardy

#endif
