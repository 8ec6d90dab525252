#include "hardy/kernels.hpp"

#include <doctest.h>

#include <numbers>

using namespace hardy;

namespace
{

// Fourier coefficient of the kernel by direct quadrature of kernel_eval.
double quadrature_coeff(const KernelSpec& kernel, long k, std::size_t s)
{
	CompensatedSum<double> sum;
	for (std::size_t j = 0; j < s; ++j)
	{
		const double theta = two_pi * static_cast<double>(j) / static_cast<double>(s);
		sum.add(kernel_eval(kernel, theta) * std::cos(static_cast<double>(k) * theta));
	}
	return sum.value() / static_cast<double>(s);
}

} // namespace

TEST_SUITE("kernels")
{

TEST_CASE("point values")
{
	CHECK(kernel_eval(KernelSpec::fejer(4), 0.0) == doctest::Approx(4.0).epsilon(1e-14));
	CHECK(kernel_eval(KernelSpec::fejer(2), std::numbers::pi) == doctest::Approx(0.0).scale(1.0));
	CHECK(kernel_eval(KernelSpec::vallee_poussin(2, 2), 0.0) == doctest::Approx(6.0).epsilon(1e-14));
	// Poisson kernel at 0: (1 + ρ)/(1 − ρ).
	CHECK(kernel_eval(KernelSpec::poisson(0.5), 0.0) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("de la Vallee-Poussin coefficients")
{
	const auto v52 = KernelSpec::vallee_poussin(5, 2);
	CHECK(kernel_coeff(v52, 3) == 1.0);
	CHECK(kernel_coeff(v52, 10) == 0.0);
	CHECK(kernel_coeff(v52, -10) == 0.0);
	CHECK(*v52.band() == 9);

	const auto v22 = KernelSpec::vallee_poussin(2, 2);
	CHECK(kernel_coeff(v22, 3) == 0.5);
	CHECK(quadrature_coeff(v22, 3, 64) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("coefficients agree with quadrature")
{
	for (const auto& kernel : {KernelSpec::fejer(7), KernelSpec::vallee_poussin(4, 3), KernelSpec::poisson(0.3)})
		for (long k = -15; k <= 15; ++k)
			CHECK(std::abs(kernel_coeff(kernel, k) - quadrature_coeff(kernel, k, 256)) <= 1e-12);
}

TEST_CASE("L1 norms")
{
	for (int n = 1; n <= 10; ++n)
		CHECK(kernel_l1(KernelSpec::fejer(n), 256) == doctest::Approx(1.0).epsilon(1e-12));
	CHECK(kernel_l1(KernelSpec::vallee_poussin(4, 2), 512) <= 3.0);
	CHECK(kernel_l1(KernelSpec::vallee_poussin(4, 3), 512) <= 2.0);
	CHECK(kernel_l1(KernelSpec::vallee_poussin(4, 3), 512) > 1.0);
	CHECK(vallee_poussin_l1_bound(2) == 3.0);
}

TEST_CASE("invalid parameters")
{
	CHECK_THROWS_AS(KernelSpec::fejer(0), PreconditionViolation);
	CHECK_THROWS_AS(KernelSpec::vallee_poussin(3, 1), PreconditionViolation);
	CHECK_THROWS_AS(KernelSpec::poisson(1.0), PreconditionViolation);
	CHECK_FALSE(KernelSpec::poisson(0.5).band().has_value());
}

}
