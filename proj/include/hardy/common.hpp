#ifndef HARDY_COMMON_HPP
#define HARDY_COMMON_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hardy
{

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
public:
	using Error::Error;
};

class PreconditionViolation : public Error
{
public:
	using Error::Error;
};

/// Neumaier's variant of Kahan summation.
template <typename T = double>
class CompensatedSum
{
public:
	void add(T value)
	{
		const T t = sum_ + value;
		if (std::abs(sum_) >= std::abs(value))
			comp_ += (sum_ - t) + value;
		else
			comp_ += (value - t) + sum_;
		sum_ = t;
	}
	T value() const { return sum_ + comp_; }

private:
	T sum_ {};
	T comp_ {};
};

template <>
class CompensatedSum<Complex>
{
public:
	void add(Complex value)
	{
		re_.add(value.real());
		im_.add(value.imag());
	}
	Complex value() const { return {re_.value(), im_.value()}; }

private:
	CompensatedSum<double> re_, im_;
};

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; derives independent substream seeds from a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index)
{
	std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

/// exp(2πi m/s), folded into the first quadrant so that quarter turns are exact and
/// conjugate and opposite roots agree to the last bit.
inline Complex root_of_unity(long long m, long long s)
{
	m %= s;
	if (m < 0)
		m += s;
	const long long quadrant = (4 * m) / s;
	const long long rest = 4 * m - quadrant * s; // in [0, s)
	const double angle = (std::numbers::pi / 2.0) * static_cast<double>(rest) / static_cast<double>(s);
	const Complex z {std::cos(angle), std::sin(angle)};
	switch (quadrant)
	{
	case 0: return z;
	case 1: return {-z.imag(), z.real()};
	case 2: return -z;
	default: return {z.imag(), -z.real()};
	}
}

inline double uniform_angle(Rng& rng)
{
	return std::uniform_real_distribution<double>(0.0, two_pi)(rng);
}

/// Standard complex Gaussian: E|z|^2 = 1.
inline Complex complex_gaussian(Rng& rng)
{
	std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
	const double re = normal(rng);
	const double im = normal(rng);
	return {re, im};
}

inline Vector random_complex_vector(Eigen::Index size, Rng& rng)
{
	Vector v(size);
	for (Eigen::Index j = 0; j < size; ++j)
		v(j) = complex_gaussian(rng);
	return v;
}

} // namespace hardy

#endif
