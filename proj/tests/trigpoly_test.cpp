#include "hardy/trigpoly.hpp"

#include <doctest.h>

#include <numbers>

using namespace hardy;

namespace
{

Vector unit(int d, int j)
{
	Vector e = Vector::Zero(d);
	e(j) = 1.0;
	return e;
}

} // namespace

TEST_SUITE("trigpoly")
{

TEST_CASE("evaluation of constants and monomials")
{
	const SequenceSpace space {3, Exponent {2.0}};
	const auto c = VecTrigPoly::constant(space, unit(3, 0));
	CHECK((c(1.234) - unit(3, 0)).norm() == 0.0);

	const auto z = VecTrigPoly::monomial(space, 1, unit(3, 0));
	CHECK((z(0.0) - unit(3, 0)).norm() <= 1e-15);
	CHECK((z(std::numbers::pi) + unit(3, 0)).norm() <= 1e-15);
}

TEST_CASE("grid samples agree with pointwise evaluation")
{
	Rng rng {1};
	const auto f = random_trigpoly(SequenceSpace {3, Exponent {1.0}}, -5, 7, rng);
	const Matrix values = f.sample(37);
	for (int j = 0; j < 37; ++j)
		CHECK((values.col(j) - f(two_pi * j / 37.0)).norm() <= 1e-12);
}

TEST_CASE("de la Vallee-Poussin convolution keeps the plateau and kills the tail")
{
	Rng rng {2};
	const int n = 6;
	const SequenceSpace space {2, Exponent {1.0}};
	const auto f = random_trigpoly(space, 0, n, rng);
	CHECK(coefficient_distance(convolve(f, KernelSpec::vallee_poussin(n, 2)), f) == 0.0);

	const auto tail = VecTrigPoly::monomial(space, 2 * n, unit(2, 1));
	CHECK(convolve(tail, KernelSpec::vallee_poussin(n, 2)).empty());
}

TEST_CASE("Fejer convolution halves frequency 2 of K_4")
{
	// Coefficient of K_4 at k = 2 by quadrature on 2^14 points.
	const std::size_t s = 1 << 14;
	CompensatedSum<Complex> sum;
	for (std::size_t j = 0; j < s; ++j)
	{
		const double theta = two_pi * static_cast<double>(j) / static_cast<double>(s);
		sum.add(fejer_value(4, theta) * std::polar(1.0, -2.0 * theta));
	}
	const double quadrature = sum.value().real() / static_cast<double>(s);
	CHECK(quadrature == doctest::Approx(0.5).epsilon(1e-12));

	const SequenceSpace space {1, Exponent {1.0}};
	const auto f = VecTrigPoly::monomial(space, 2, unit(1, 0));
	const auto g = convolve(f, KernelSpec::fejer(4));
	CHECK(g.coeff(2)(0).real() == doctest::Approx(quadrature).epsilon(1e-12));
}

TEST_CASE("Riesz projection splits frequencies")
{
	const SequenceSpace space {2, Exponent {1.0}};
	VecTrigPoly f {space};
	f.set(1, unit(2, 0));
	f.set(-1, unit(2, 0));
	const auto minus = riesz_minus(f);
	CHECK(minus.coeffs().size() == 1);
	CHECK(minus.coeffs().begin()->first == -1);
	CHECK(coefficient_distance(minus + analytic_part(f), f) == 0.0);

	Rng rng {3};
	CHECK(riesz_minus(random_trigpoly(space, 0, 4, rng)).empty());
	CHECK(riesz_minus(VecTrigPoly::constant(space, unit(2, 1))).empty());
}

TEST_CASE("H1 norm of the lacunary test function")
{
	for (const Exponent p : {Exponent {1.0}, Exponent {1.5}, Exponent {2.0}, Exponent::infinity()})
	{
		const SequenceSpace space {2, p};
		VecTrigPoly f {space};
		f.set(3, unit(2, 0));
		f.set(9, unit(2, 1));
		CHECK(lp_norm(f, Exponent {1.0}, 64) == doctest::Approx(std::pow(2.0, p.reciprocal())).epsilon(1e-12));
	}
}

TEST_CASE("Lp norms of constants equal the value's norm")
{
	Rng rng {4};
	const SequenceSpace space {3, Exponent {1.5}};
	const Vector x = random_complex_vector(3, rng);
	const auto c = VecTrigPoly::constant(space, x);
	for (const Exponent e : {Exponent {0.5}, Exponent {1.0}, Exponent {2.0}, Exponent::infinity()})
		CHECK(lp_norm(c, e, 16) == doctest::Approx(norm(x, space)).epsilon(1e-14));
}

TEST_CASE("H1 norm of 1 + e^{i theta}")
{
	// |1 + e^{iθ}| = 2|cos(θ/2)| has mean 4/π.
	const SequenceSpace space {1, Exponent {1.0}};
	VecTrigPoly f {space};
	f.set(0, unit(1, 0));
	f.set(1, unit(1, 0));
	CHECK(lp_norm(f, Exponent {1.0}, 1 << 14) == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-8));
	CHECK(sup_norm(f, Exponent {1.0}, 64) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("text serialisation round-trips exactly")
{
	Rng rng {5};
	const auto f = random_trigpoly(SequenceSpace {3, Exponent {1.5}}, -4, 6, rng);
	const auto g = parse_trigpoly(serialize(f));
	CHECK(g.space() == f.space());
	CHECK(coefficient_distance(f, g) == 0.0);
	CHECK_THROWS_AS(parse_trigpoly("nonsense"), Error);
}

TEST_CASE("grids too coarse for the band are rejected")
{
	Rng rng {6};
	const auto f = random_trigpoly(SequenceSpace {2, Exponent {1.0}}, 0, 10, rng);
	CHECK_THROWS_AS(lp_norm(f, Exponent {1.0}, 20), PreconditionViolation);
	CHECK_NOTHROW(lp_norm(f, Exponent {1.0}, 21));
}

}
