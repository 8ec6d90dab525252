#include "hardy/martingale.hpp"

#include <doctest.h>

#include <set>

using namespace hardy;

namespace
{

Vector unit(int d, int j)
{
	Vector e = Vector::Zero(d);
	e(j) = 1.0;
	return e;
}

// Plain Monte Carlo of E|Σ_{k<m} e^{iθ_k}| with its own generator.
std::pair<double, double> steinhaus_modulus(int m, std::size_t samples, std::uint64_t seed)
{
	std::mt19937 rng {static_cast<std::mt19937::result_type>(seed)};
	std::uniform_real_distribution<double> angle {0.0, two_pi};
	double sum = 0.0, sum_sq = 0.0;
	for (std::size_t s = 0; s < samples; ++s)
	{
		Complex total = 0.0;
		for (int k = 0; k < m; ++k)
			total += std::polar(1.0, angle(rng));
		const double v = std::abs(total);
		sum += v;
		sum_sq += v * v;
	}
	const double mean = sum / static_cast<double>(samples);
	const double var = sum_sq / static_cast<double>(samples) - mean * mean;
	return {mean, std::sqrt(var / static_cast<double>(samples))};
}

} // namespace

TEST_SUITE("martingale")
{

TEST_CASE("construction rules")
{
	HardyMartingale m {SequenceSpace {2, Exponent {1.0}}, Vector::Zero(2)};
	CHECK(m.add_level(2) == 1);
	CHECK(m.add_level(1) == 2);
	CHECK_NOTHROW(m.add_term(2, {1, 1}, unit(2, 0)));
	CHECK_THROWS_AS(m.add_term(2, {1, 0}, unit(2, 0)), PreconditionViolation);
	CHECK_THROWS_AS(m.add_term(2, {2, 1}, unit(2, 0)), PreconditionViolation);
	CHECK_THROWS_AS(m.add_term(1, {1, 1}, unit(2, 0)), PreconditionViolation);
	CHECK_THROWS_AS(m.add_term(1, {-1}, unit(2, 0)), PreconditionViolation);
	CHECK(m.martingale_property());

	Rng rng {1};
	for (int trial = 0; trial < 20; ++trial)
		CHECK(random_martingale(SequenceSpace {3, Exponent {1.5}}, 1 + trial % 6, rng).martingale_property());
}

TEST_CASE("differences at given angles")
{
	const auto m = steinhaus_martingale(SequenceSpace {1, Exponent {1.0}}, 3);
	const std::vector<double> theta {0.1, 0.2, 0.3};
	const auto d = m.differences(theta);
	REQUIRE(d.size() == 4);
	CHECK(d[0].norm() == 0.0);
	for (int n = 1; n <= 3; ++n)
		CHECK(std::abs(d[static_cast<std::size_t>(n)](0) - std::polar(1.0, theta[static_cast<std::size_t>(n - 1)])) <= 1e-15);
}

TEST_CASE("mean modulus of a Steinhaus sum")
{
	const auto m = steinhaus_martingale(SequenceSpace {1, Exponent {1.0}}, 16);
	const auto stats = sample_path(m, 42, 200000);
	const auto [oracle, oracle_se] = steinhaus_modulus(16, 200000, 7);
	CHECK(std::abs(stats.final_value.mean - oracle) <= 4.0 * std::hypot(stats.final_value.std_error, oracle_se));
	CHECK(std::abs(stats.final_value.mean - 0.886 * 4.0) < 0.1);
	for (std::size_t n = 1; n <= 16; ++n)
		CHECK(stats.differences[n].mean == doctest::Approx(1.0).epsilon(1e-12));

	HardyMartingale only_m0 {SequenceSpace {2, Exponent {2.0}}, unit(2, 1) * 3.0};
	const auto trivial = sample_path(only_m0, 1, 100);
	CHECK(trivial.final_value.mean == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("sample paths depend only on the seed")
{
	Rng rng {3};
	const auto m = random_martingale(SequenceSpace {4, Exponent {1.0}}, 4, rng);
	const auto a = sample_path(m, 99, 10000);
	const auto b = sample_path(m, 99, 10000);
	const auto c = sample_path(m, 100, 10000);
	CHECK(a.final_value.mean == b.final_value.mean);
	CHECK(a.final_value.mean != c.final_value.mean);
}

TEST_CASE("square-function inequality")
{
	const auto steinhaus = steinhaus_martingale(SequenceSpace {1, Exponent {1.0}}, 16);
	const auto check = square_fn_check(steinhaus, 1.0, 5, 100000);
	CHECK(check.lhs == doctest::Approx(4.0).epsilon(1e-12));
	CHECK(check.rhs == doctest::Approx(2.0 * 0.886 * 4.0).epsilon(0.02));
	CHECK(check.pass);

	HardyMartingale only_m0 {SequenceSpace {2, Exponent {1.0}}, unit(2, 0) * 2.0};
	const auto trivial = square_fn_check(only_m0, 1.0, 5, 1000);
	CHECK(trivial.lhs == 2.0);
	CHECK(trivial.rhs == 4.0);
	CHECK(trivial.pass);

	Rng rng {8};
	for (int i = 0; i < 10; ++i)
	{
		const auto m = random_martingale(SequenceSpace {4, Exponent {1.0}}, 1 + i % 8, rng);
		CHECK(square_fn_check(m, 1.0, substream_seed(8, static_cast<std::uint64_t>(i)), 20000).pass);
	}
}

TEST_CASE("sign-flipped sums")
{
	HardyMartingale single {SequenceSpace {2, Exponent {1.0}}, Vector::Zero(2)};
	single.add_level(1);
	single.add_term(1, {1}, unit(2, 0));
	const auto k1 = uhmd_estimate(single, 16, 1, 5000);
	CHECK(k1.defined);
	CHECK(k1.constant == doctest::Approx(1.0).epsilon(1e-12));

	const auto steinhaus = steinhaus_martingale(SequenceSpace {1, Exponent {1.0}}, 8);
	const auto k8 = uhmd_estimate(steinhaus, 64, 2, 20000);
	CHECK(k8.patterns == 512);
	CHECK(k8.constant >= 1.0);
	CHECK(k8.constant <= 1.05);

	const HardyMartingale zero {SequenceSpace {1, Exponent {1.0}}, Vector::Zero(1)};
	CHECK_FALSE(uhmd_estimate(zero, 4, 1, 100).defined);
}

TEST_CASE("lacunary pack of the first level")
{
	const std::vector<long long> a {2, 6, 24, 120};
	const std::vector<long long> lambda {2, 3, 4, 5};
	const std::vector<int> r {1};
	const auto pack = lacunary_pack(a, lambda, r, 1);
	REQUIRE(pack.levels() == 1);
	CHECK(pack.ell[0] == 1);
	CHECK(pack.mu[0] == 2);
	CHECK(pack.block_low(1) == 2);
	CHECK(pack.block_high(1) == 4);
	const auto verified = verify_pack(pack, r);
	CHECK(verified.ok());
	CHECK(verified.exhaustive_run);
}

TEST_CASE("lacunary packs follow the recipe")
{
	Rng rng {4};
	for (int i = 0; i < 100; ++i)
	{
		const int m = 1 + i % 6;
		const auto spec = random_lacunary_spec(m, rng);
		const auto pack = lacunary_pack(spec.a, spec.lambda, spec.degree_bounds, m);

		// Recompute ell and mu from the recipe with exact integers.
		long long prefix = 0;
		int previous = 0;
		for (int n = 1; n <= m; ++n)
		{
			const auto r = static_cast<__int128>(spec.degree_bounds[static_cast<std::size_t>(n - 1)]);
			int ell = n == 1 ? 1 : std::max(static_cast<int>(r), previous) + 1;
			for (;; ++ell)
			{
				const auto al = static_cast<__int128>(spec.a[static_cast<std::size_t>(ell - 1)]);
				const auto ll = static_cast<__int128>(spec.lambda[static_cast<std::size_t>(ell - 1)]);
				if (n == 1 ? ll > r : (ll - r) * al >= r * (2 + (r + 1) * prefix))
					break;
			}
			CHECK(pack.ell[static_cast<std::size_t>(n - 1)] == ell);
			const long long mu = n == 1 ? spec.a[static_cast<std::size_t>(ell - 1)]
			                            : spec.a[static_cast<std::size_t>(ell - 1)] + static_cast<long long>(r) * prefix;
			CHECK(pack.mu[static_cast<std::size_t>(n - 1)] == mu);
			prefix += mu;
			previous = ell;
		}
		CHECK(verify_pack(pack, spec.degree_bounds).ok());
	}
}

TEST_CASE("short prefixes are reported")
{
	const std::vector<long long> a {2, 6};
	const std::vector<long long> lambda {2, 3};
	const std::vector<int> r {1, 1, 1};
	CHECK_THROWS_AS(lacunary_pack(a, lambda, r, 3), Error);
}

TEST_CASE("frequency substitution")
{
	const std::vector<long long> a {2, 6, 24, 120};
	const std::vector<long long> lambda {2, 3, 4, 5};
	const std::vector<int> r {1};
	const auto pack = lacunary_pack(a, lambda, r, 1);

	const Vector m0 = unit(2, 1) * 0.5;
	HardyMartingale m {SequenceSpace {2, Exponent {1.0}}, m0};
	m.add_level(1);
	m.add_term(1, {1}, unit(2, 0));
	const std::vector<double> theta {0.0};
	const auto g = substitute_freq(m, pack, theta);
	CHECK(g.coeffs().size() == 2);
	CHECK((g.coeff(0) - m0).norm() == 0.0);
	CHECK((g.coeff(2) - unit(2, 0)).norm() <= 1e-15);
}

TEST_CASE("substituted supports lie in disjoint blocks")
{
	Rng rng {6};
	for (int trial = 0; trial < 10; ++trial)
	{
		const auto spec = random_lacunary_spec(4, rng);
		const auto pack = lacunary_pack(spec.a, spec.lambda, spec.degree_bounds, 4);
		RandomMartingaleOptions options;
		options.degree_bounds = spec.degree_bounds;
		options.terms_per_level = 6;
		const auto m = random_martingale(SequenceSpace {2, Exponent {1.0}}, 4, rng, options);
		std::vector<double> theta(4);
		for (double& t : theta)
			t = uniform_angle(rng);
		const auto g = substitute_freq(m, pack, theta);

		// Expand the substitution by hand: key p contributes at Σ μ_k p_k with phase e^{iΣ p_k θ_k}.
		VecTrigPoly expected {m.space()};
		expected.add(0, m.m0());
		std::set<long> support;
		for (int n = 1; n <= 4; ++n)
			for (const auto& [key, c] : m.level(n).terms)
			{
				long freq = 0;
				double phase = 0.0;
				for (std::size_t k = 0; k < key.size(); ++k)
				{
					freq += pack.mu[k] * key[k];
					phase += key[k] * theta[k];
				}
				CHECK(freq >= pack.block_low(n));
				CHECK(freq <= pack.block_high(n));
				expected.add(freq, std::polar(1.0, phase) * c);
				support.insert(freq);
			}
		CHECK(coefficient_distance(g, expected) <= 1e-12);
		for (int n = 1; n < 4; ++n)
			CHECK(pack.block_high(n) < pack.block_low(n + 1));
	}
}

TEST_CASE("Steinhaus versus Rademacher")
{
	Rng rng {9};
	const std::vector<Vector> single {random_complex_vector(3, rng)};
	const auto one = steinhaus_vs_rademacher(single, SequenceSpace {3, Exponent {2.0}}, 1, 1000);
	CHECK(one.steinhaus.mean == doctest::Approx(single[0].norm()).epsilon(1e-12));
	CHECK(one.rademacher.mean == doctest::Approx(single[0].norm()).epsilon(1e-12));
	CHECK(one.ratio == doctest::Approx(1.0).epsilon(1e-12));

	const std::vector<Vector> ones(16, Vector::Ones(1));
	const auto scalar = steinhaus_vs_rademacher(ones, SequenceSpace {1, Exponent {1.0}}, 2, 200000);
	CHECK(scalar.pass);
	CHECK(std::abs(scalar.ratio - 0.886 / 0.798) < 0.03);

	std::vector<Vector> basis;
	for (int k = 0; k < 5; ++k)
		basis.push_back(unit(5, k));
	const auto l1 = steinhaus_vs_rademacher(basis, SequenceSpace {5, Exponent {1.0}}, 3, 1000);
	CHECK(l1.steinhaus.mean == doctest::Approx(5.0).epsilon(1e-12));
	CHECK(l1.rademacher.mean == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("equidistribution along powers of n")
{
	const MultiPoly one {{MultiIndex {0, 0}, Complex {1.0, 0.0}}};
	const auto c = weyl_check(one, 3);
	CHECK(c.lhs == Complex {1.0, 0.0});
	CHECK(c.rhs == Complex {1.0, 0.0});

	const MultiPoly orthogonal {{MultiIndex {1, -1}, Complex {1.0, 0.0}}};
	const auto o = weyl_check(orthogonal, 7);
	CHECK(std::abs(o.lhs) <= 1e-15);
	CHECK(o.rhs == Complex {0.0, 0.0});

	const MultiPoly aliased {{MultiIndex {5, -1}, Complex {1.0, 0.0}}};
	const auto a = weyl_check(aliased, 5);
	CHECK(a.lhs == Complex {1.0, 0.0});
	CHECK(a.rhs == Complex {0.0, 0.0});
	CHECK(a.gap == 1.0);
}

}
