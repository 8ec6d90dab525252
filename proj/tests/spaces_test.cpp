#include "hardy/spaces.hpp"

#include <doctest.h>

#include <cmath>

using namespace hardy;

TEST_SUITE("spaces")
{

TEST_CASE("norms of simple vectors")
{
	Vector e1 = Vector::Zero(4);
	e1(0) = 1.0;
	for (const Exponent p : {Exponent {1.0}, Exponent {1.5}, Exponent {2.0}, Exponent {4.0}, Exponent::infinity()})
		CHECK(norm(e1, SequenceSpace {4, p}) == doctest::Approx(1.0).epsilon(1e-15));

	CHECK(norm(Vector::Ones(4), SequenceSpace {4, Exponent {1.0}}) == 4.0);

	Vector v(2);
	v << 3.0, 4.0;
	CHECK(norm(v, SequenceSpace {2, Exponent {2.0}}) == doctest::Approx(5.0).epsilon(1e-15));
	CHECK(norm(v, SequenceSpace {2, Exponent::infinity()}) == 4.0);

	CHECK_THROWS_AS(norm(v, SequenceSpace {3, Exponent {2.0}}), DimensionMismatch);
}

TEST_CASE("exponents parse and print")
{
	CHECK(Exponent::parse("3/2").value() == 1.5);
	CHECK(Exponent::parse("inf").is_infinite());
	CHECK(Exponent::parse("2").dual().value() == 2.0);
	CHECK(Exponent {1.0}.dual().is_infinite());
	CHECK(Exponent::parse(Exponent {1.5}.to_string()).value() == 1.5);
	CHECK(min_two(Exponent::infinity()).value() == 2.0);
	CHECK(min_two(Exponent {1.5}).value() == 1.5);
}

TEST_CASE("norming functionals attain the norm")
{
	Rng rng {11};
	for (const Exponent p : {Exponent {1.0}, Exponent {1.5}, Exponent {3.0}, Exponent::infinity()})
	{
		const Vector x = random_complex_vector(5, rng);
		const Vector w = norming_functional(x, p);
		CHECK(w.dot(x).real() == doctest::Approx(lp_norm(x, p)).epsilon(1e-12));
		CHECK(lp_norm(w, p.dual()) == doctest::Approx(1.0).epsilon(1e-12));
	}
}

TEST_CASE("quotient norm: members of Y and the trivial subspace")
{
	Rng rng {5};
	const SequenceSpace l4 {4, Exponent {1.0}};
	const Matrix basis = Matrix::Random(4, 2);
	const QuotientSpace qs {l4, basis};
	const Vector y = basis * random_complex_vector(2, rng);
	CHECK(quotient_norm(y, qs) <= 1e-10 * y.cwiseAbs().sum());

	const QuotientSpace trivial {l4, Matrix(4, 0)};
	const Vector x = random_complex_vector(4, rng);
	CHECK(quotient_norm(x, trivial) == doctest::Approx(x.cwiseAbs().sum()).epsilon(1e-15));
}

TEST_CASE("quotient norm of (1, 0) modulo span(1, -1)")
{
	Vector x(2), b(2);
	x << 1.0, 0.0;
	b << 1.0, -1.0;
	const QuotientSpace qs {SequenceSpace {2, Exponent {1.0}}, b};

	// Grid search over complex t of |1 - t| + |t|.
	double grid_min = 1e300;
	for (int i = -200; i <= 200; ++i)
		for (int j = -200; j <= 200; ++j)
		{
			const Complex t {i / 100.0, j / 100.0};
			grid_min = std::min(grid_min, std::abs(1.0 - t) + std::abs(t));
		}
	CHECK(grid_min == doctest::Approx(1.0).epsilon(1e-12));
	CHECK(quotient_norm(x, qs) == doctest::Approx(grid_min).epsilon(1e-9));
}

TEST_CASE("coset minimum against the two-point closed form")
{
	// min_t |x1 - t b1| + |x2 - t b2| = min(|b1|, |b2|) |x1/b1 - x2/b2|: a weighted
	// distance to two points is minimised at the point of larger weight.
	Rng rng {7};
	for (int trial = 0; trial < 200; ++trial)
	{
		const Vector x = random_complex_vector(2, rng);
		const Vector b = random_complex_vector(2, rng);
		const double expected = std::min(std::abs(b(0)), std::abs(b(1))) * std::abs(x(0) / b(0) - x(1) / b(1));
		const CosetMinimum best = min_l1_coset(x, QuotientSpace {SequenceSpace {2, Exponent {1.0}}, b});
		CHECK(best.value == doctest::Approx(expected).epsilon(1e-9));
		CHECK(best.lower_bound <= best.value);
		CHECK(best.lower_bound >= best.value * (1.0 - 1e-10));
		CHECK((x - b * best.y_coefficients - best.representative).norm() <= 1e-12);
	}
}

TEST_CASE("coset certificates are tight on random instances")
{
	Rng rng {13};
	for (int trial = 0; trial < 300; ++trial)
	{
		const int d = 2 + trial % 5;
		const int k = std::min(d - 1, 1 + trial % 3);
		const Matrix basis = [&] {
			Matrix m(d, k);
			for (int c = 0; c < k; ++c)
				m.col(c) = random_complex_vector(d, rng);
			return m;
		}();
		const Vector x = random_complex_vector(d, rng);
		const CosetMinimum best = min_l1_coset(x, QuotientSpace {SequenceSpace {d, Exponent {1.0}}, basis});
		CHECK(best.lower_bound <= best.value);
		CHECK(best.value - best.lower_bound <= 1e-10 * best.value);

		// No random nearby point of the coset does better.
		for (int probe = 0; probe < 10; ++probe)
		{
			const Vector c = best.y_coefficients + 1e-3 * random_complex_vector(k, rng);
			CHECK((x - basis * c).cwiseAbs().sum() >= best.value * (1.0 - 1e-12));
		}
	}
}

TEST_CASE("Banach-Mazur witnesses")
{
	for (int n = 1; n <= 5; ++n)
	{
		const auto w = bm_witness(n, Exponent {1.0});
		CHECK(w.bound == 1.0);
		CHECK(w.forward.matrix().isApprox(Matrix::Identity(n, n)));
	}
	CHECK(bm_witness(4, Exponent {2.0}).bound == doctest::Approx(2.0).epsilon(1e-15));

	const auto w = bm_witness(2, Exponent::infinity());
	CHECK(w.numeric_product <= std::sqrt(2.0) + 1e-9);

	// Independent estimate by sampling directions of the unit sphere of l^2.
	// T: l1 -> linf has norm max |T_ij|; T^{-1}: linf -> l1 peaks at unimodular vectors.
	const double forward = w.forward.matrix().cwiseAbs().maxCoeff();
	double inverse = 0.0;
	for (int i = 0; i < 4096; ++i)
	{
		Vector x(2);
		x << 1.0, std::polar(1.0, two_pi * i / 4096.0);
		inverse = std::max(inverse, (w.inverse.matrix() * x).cwiseAbs().sum());
	}
	CHECK(forward * inverse == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
	CHECK(w.numeric_product >= forward * inverse - 1e-9);
}

TEST_CASE("operator norms between l_p spaces")
{
	Matrix a(2, 2);
	a << 1.0, 2.0, -3.0, 0.5;
	const SequenceSpace l1 {2, Exponent {1.0}}, linf {2, Exponent::infinity()}, l2 {2, Exponent {2.0}};
	// l1 -> l1: largest column sum; l1 -> linf: largest entry.
	CHECK(operator_norm(LinearMap {a, l1, l1}).value == doctest::Approx(4.0));
	CHECK(operator_norm(LinearMap {a, l1, linf}).value == doctest::Approx(3.0));
	const Eigen::JacobiSVD<Matrix> svd(a);
	CHECK(operator_norm(LinearMap {a, l2, l2}).value == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
}

}
