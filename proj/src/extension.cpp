#include "hardy/extension.hpp"

#include "lbfgs.hpp"

#include <algorithm>
#include <limits>

namespace hardy
{

OperatorSymbol::OperatorSymbol(VecTrigPoly values, Side side) : values_ {std::move(values)}, side_ {side}
{
	if (side_ == Side::analytic && !values_.analytic())
		throw PreconditionViolation {"OperatorSymbol: analytic symbol with a negative frequency"};
}

void OperatorSymbol::set(long k, Vector y)
{
	if (side_ == Side::analytic && k < 0)
		throw PreconditionViolation {"OperatorSymbol::set: analytic symbol with a negative frequency"};
	values_.set(k, std::move(y));
}

Vector OperatorSymbol::apply(const std::vector<std::pair<long, Complex>>& f_coeffs) const
{
	Vector out = Vector::Zero(codomain().dim());
	for (const auto& [k, c] : f_coeffs)
	{
		const auto it = values_.coeffs().find(k);
		if (it != values_.coeffs().end())
			out += c * it->second;
	}
	return out;
}

Complex pairing(const OperatorSymbol& u, const VecTrigPoly& f)
{
	if (u.codomain().dim() != f.dim())
		throw DimensionMismatch {"pairing: symbol and polynomial dimensions differ"};
	CompensatedSum<Complex> sum;
	for (const auto& [k, c] : f.coeffs())
	{
		const Vector y = u.value(k);
		for (Eigen::Index j = 0; j < c.size(); ++j)
			sum.add(y(j) * c(j));
	}
	return sum.value();
}

std::optional<std::complex<long long>> exact_pairing(const OperatorSymbol& u, const VecTrigPoly& f)
{
	if (u.codomain().dim() != f.dim())
		throw DimensionMismatch {"exact_pairing: symbol and polynomial dimensions differ"};
	auto integral = [](double v, long long& out) {
		if (std::abs(v) > 1e15 || v != std::round(v))
			return false;
		out = static_cast<long long>(std::llround(v));
		return true;
	};
	long long re = 0, im = 0;
	for (const auto& [k, c] : f.coeffs())
	{
		const Vector y = u.value(k);
		for (Eigen::Index j = 0; j < c.size(); ++j)
		{
			long long a, b, cr, ci;
			if (!integral(y(j).real(), a) || !integral(y(j).imag(), b) || !integral(c(j).real(), cr) ||
			    !integral(c(j).imag(), ci))
				return std::nullopt;
			re += a * cr - b * ci;
			im += a * ci + b * cr;
		}
	}
	return std::complex<long long> {re, im};
}

double l1_op_norm(const OperatorSymbol& u, std::size_t grid_size)
{
	if (u.empty())
		return 0.0;
	return sup_norm(u.as_polynomial(), u.codomain().p(), grid_size);
}

double l1_op_norm(const OperatorSymbol& u)
{
	return l1_op_norm(u, 8 * (2 * static_cast<std::size_t>(u.support_radius()) + 1));
}

namespace
{

std::size_t next_pow2(std::size_t n)
{
	std::size_t s = 1;
	while (s < n)
		s <<= 1;
	return s;
}

} // namespace

H1LowerBound h1_op_norm_lower(const OperatorSymbol& u, const H1SearchOptions& options)
{
	if (!u.analytic_only())
		throw PreconditionViolation {"h1_op_norm_lower: symbol must be analytic"};
	H1LowerBound out;
	if (u.empty())
		return out;

	const Exponent py = u.codomain().p();
	const auto& values = u.as_polynomial().coeffs();
	auto consider = [&](double ratio, double radius) {
		++out.tested;
		if (ratio > out.value)
		{
			out.value = ratio;
			out.best_radius = radius;
		}
	};

	// Monomials e^{ikθ} on the support: unit H¹ norm, image y_k.
	for (const auto& [k, y] : values)
		consider(lp_norm(y, py), 1.0);

	// Normalised reproducing kernels: ‖f_w‖_{H¹} = 1 exactly.
	const std::size_t kernel_trials = std::max<std::size_t>(1, options.trials / 2);
	const std::size_t angles = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(kernel_trials / 4.0)));
	const std::size_t radii = std::max<std::size_t>(1, kernel_trials / angles);
	for (std::size_t i = 0; i < radii; ++i)
	{
		// |w| = 1 − 10^{-t}, t ∈ [0, 4] (w = 0 first).
		const double t = radii == 1 ? 0.0 : 4.0 * static_cast<double>(i) / static_cast<double>(radii - 1);
		const double radius = i == 0 ? 0.0 : 1.0 - std::pow(10.0, -t);
		const double weight = 1.0 - radius * radius;
		for (std::size_t a = 0; a < (i == 0 ? 1 : angles); ++a)
		{
			const double arg = -two_pi * static_cast<double>(a) / static_cast<double>(angles);
			Vector image = Vector::Zero(u.codomain().dim());
			for (const auto& [k, y] : values)
			{
				const auto kd = static_cast<double>(k);
				const Complex w_bar_k = std::polar(std::pow(radius, kd), std::remainder(kd * arg, two_pi));
				image += (weight * (kd + 1.0)) * w_bar_k * y;
			}
			consider(lp_norm(image, py), radius);
		}
	}

	// Random analytic polynomials. With s >= K(r + 1), ∫|f| <= (r + 1)/(r − 1)·(grid mean).
	const long band = u.support_radius();
	const std::size_t s = next_pow2(32 * static_cast<std::size_t>(band + 1));
	const double r = band == 0 ? 0.0 : std::floor(static_cast<double>(s) / static_cast<double>(band)) - 1.0;
	const double inflation = band == 0 ? 1.0 : (r + 1.0) / (r - 1.0);
	const SequenceSpace scalar {1, Exponent {1.0}};
	Rng rng {options.seed};
	std::uniform_int_distribution<long> freq(0, band);
	const std::size_t poly_trials = options.trials > out.tested ? options.trials - out.tested : 0;
	for (std::size_t t = 0; t < poly_trials; ++t)
	{
		VecTrigPoly f {scalar};
		for (const auto& entry : values)
			f.set(entry.first, Vector::Constant(1, complex_gaussian(rng)));
		const int extras = static_cast<int>(t % 4);
		for (int e = 0; e < extras; ++e)
			f.add(freq(rng), Vector::Constant(1, complex_gaussian(rng)));
		std::vector<std::pair<long, Complex>> coeffs;
		for (const auto& [k, c] : f.coeffs())
			coeffs.emplace_back(k, c(0));
		const double image = lp_norm(u.apply(coeffs), py);
		const double h1_upper = inflation * lp_norm(f, Exponent {1.0}, s);
		if (h1_upper > 0.0)
			consider(image / h1_upper, -1.0);
	}
	return out;
}

namespace
{

// Smoothed norm N_δ(v) and its complex gradient ∂N/∂Re v + i ∂N/∂Im v.
double smoothed_norm(const Eigen::Ref<const Vector>& v, Exponent p, double delta, Vector& grad)
{
	const Eigen::Index d = v.size();
	Eigen::ArrayXd m(d);
	for (Eigen::Index j = 0; j < d; ++j)
		m(j) = std::sqrt(std::norm(v(j)) + delta * delta);
	grad.resize(d);
	if (p.is_infinite())
	{
		const double peak = m.maxCoeff();
		const Eigen::ArrayXd e = ((m - peak) / delta).exp();
		const double total = e.sum();
		for (Eigen::Index j = 0; j < d; ++j)
			grad(j) = (e(j) / total) * v(j) / m(j);
		return peak + delta * std::log(total);
	}
	const double e = p.value();
	const double n = std::pow(m.pow(e).sum(), 1.0 / e);
	for (Eigen::Index j = 0; j < d; ++j)
		grad(j) = std::pow(m(j) / n, e - 1.0) * v(j) / m(j);
	return n;
}

} // namespace

ExtensionResult extend_min(const OperatorSymbol& u, int neg_band, const ExtensionOptions& options)
{
	if (!u.analytic_only())
		throw PreconditionViolation {"extend_min: symbol must be analytic"};
	if (neg_band < 1)
		throw PreconditionViolation {"extend_min: neg_band must be >= 1"};

	const SequenceSpace y_space = u.codomain();
	const Exponent py = y_space.p();
	const Eigen::Index d = y_space.dim();
	const Eigen::Index nb = neg_band;
	const long width = u.support_radius() + neg_band;
	std::size_t grid = options.grid_size ? options.grid_size : 16 * static_cast<std::size_t>(width);
	grid = std::max(grid, 2 * static_cast<std::size_t>(width) + 1);
	const auto g = static_cast<Eigen::Index>(grid);

	const Matrix base = u.as_polynomial().sample(grid);
	Matrix exps(nb, g); // e^{-ikθ_j}, k = 1..neg_band
	for (Eigen::Index k = 0; k < nb; ++k)
		for (Eigen::Index j = 0; j < g; ++j)
		{
			const long m = ((k + 1) * j) % g;
			exps(k, j) = root_of_unity(-m, g);
		}

	auto unpack = [&](const RealVector& x) {
		Matrix z(d, nb);
		for (Eigen::Index i = 0; i < d * nb; ++i)
			z(i % d, i / d) = Complex {x(i), x(d * nb + i)};
		return z;
	};
	auto grid_objective = [&](const Matrix& z) {
		const Matrix values = base + z * exps;
		double best = 0.0;
		for (Eigen::Index j = 0; j < g; ++j)
			best = std::max(best, lp_norm(values.col(j), py));
		return best;
	};

	RealVector x = RealVector::Zero(2 * d * nb);
	const double f0 = grid_objective(unpack(x));
	RealVector best_x = x;
	double best_value = f0;

	ExtensionResult out {.extension = OperatorSymbol {u.as_polynomial(), OperatorSymbol::Side::two_sided}, .history = {}};
	out.history.push_back(f0);

	if (f0 > 0.0)
	{
		int remaining = options.max_iterations;
		double previous_stage = f0;
		for (double mu_rel = 1e-1; mu_rel >= 1e-7 && remaining > 0; mu_rel /= 4.0)
		{
			const double mu = mu_rel * f0;
			detail::SmoothObjective smooth = [&](const RealVector& xv, RealVector& grad) {
				const Matrix values = base + unpack(xv) * exps;
				Eigen::ArrayXd norms(g);
				std::vector<Vector> grads(static_cast<std::size_t>(g));
				for (Eigen::Index j = 0; j < g; ++j)
					norms(j) = smoothed_norm(values.col(j), py, mu, grads[static_cast<std::size_t>(j)]);
				const double peak = norms.maxCoeff();
				const Eigen::ArrayXd weights = ((norms - peak) / mu).exp();
				const double total = weights.sum();
				Matrix weighted(d, g);
				for (Eigen::Index j = 0; j < g; ++j)
					weighted.col(j) = (weights(j) / total) * grads[static_cast<std::size_t>(j)];
				const Matrix gz = weighted * exps.adjoint();
				grad.resize(2 * d * nb);
				for (Eigen::Index i = 0; i < d * nb; ++i)
				{
					grad(i) = gz(i % d, i / d).real();
					grad(d * nb + i) = gz(i % d, i / d).imag();
				}
				return peak + mu * std::log(total);
			};
			auto track = [&](const RealVector& xv) {
				const double value = grid_objective(unpack(xv));
				if (value < best_value)
				{
					best_value = value;
					best_x = xv;
				}
				out.history.push_back(best_value);
			};
			const int budget = std::max(1, std::min(remaining, options.max_iterations / 6));
			x = best_x;
			const auto report = detail::lbfgs_minimize(smooth, x, budget, 1e-12 * f0, track);
			remaining -= report.iterations;
			out.iterations += report.iterations;
			if (mu_rel < 1e-5 && previous_stage - best_value <= options.tolerance * f0)
			{
				out.converged = true;
				break;
			}
			previous_stage = best_value;
		}
	}
	else
		out.converged = true;

	OperatorSymbol extension {u.as_polynomial(), OperatorSymbol::Side::two_sided};
	const Matrix z = unpack(best_x);
	for (Eigen::Index k = 0; k < nb; ++k)
		extension.set(-(k + 1), z.col(k));

	const std::size_t sup_grid = std::max<std::size_t>(grid, 8 * (2 * static_cast<std::size_t>(width) + 1));
	out.zero_completion = l1_op_norm(u, sup_grid);
	out.objective = l1_op_norm(extension, sup_grid);
	if (out.objective <= out.zero_completion)
		out.extension = std::move(extension);
	else
		out.objective = out.zero_completion;

	out.h1_lower = h1_op_norm_lower(u, {options.h1_trials, options.seed}).value;
	out.lambda_est = out.h1_lower > 0.0 ? out.objective / out.h1_lower : std::numeric_limits<double>::quiet_NaN();
	return out;
}

OperatorSymbol paley_symbol(int n, SequenceSpace codomain)
{
	if (codomain.dim() != n)
		throw DimensionMismatch {"paley_symbol: codomain dimension must equal n"};
	OperatorSymbol u {codomain, OperatorSymbol::Side::analytic};
	long frequency = 1;
	for (int k = 0; k < n; ++k)
	{
		frequency *= 3;
		u.set(frequency, Vector::Unit(n, k));
	}
	return u;
}

VecTrigPoly lacunary_test_function(int n, Exponent p)
{
	VecTrigPoly f {SequenceSpace {n, p}};
	long frequency = 1;
	for (int k = 0; k < n; ++k)
	{
		frequency *= 3;
		f.set(frequency, Vector::Unit(n, k));
	}
	return f;
}

EtaCertificate eta_lower_certificate(int n, Exponent p)
{
	if (n < 1)
		throw PreconditionViolation {"eta_lower_certificate: n must be >= 1"};
	VecTrigPoly f = lacunary_test_function(n, p);
	const Exponent q = p.dual();
	OperatorSymbol u = paley_symbol(n, SequenceSpace {n, q});

	const auto exact = exact_pairing(u, f);
	if (!exact || exact->imag() != 0 || exact->real() != n)
		throw Error {"eta_lower_certificate: exact pairing differs from n"};
	const double pair = static_cast<double>(exact->real());

	const std::size_t grid = 2 * static_cast<std::size_t>(f.band_radius()) + 1;
	const double f_norm = lp_norm(f, Exponent {1.0}, grid);
	const double expected = std::pow(static_cast<double>(n), p.reciprocal());
	if (std::abs(f_norm - expected) > 1e-9)
		throw Error {"eta_lower_certificate: quadrature norm of the lacunary function is off"};

	const double u_bound = 2.0 * std::max(1.0, std::pow(static_cast<double>(n), q.reciprocal() - 0.5));
	const double eta_lower = pair / (u_bound * f_norm);
	return EtaCertificate {n, p, std::move(f), std::move(u), pair, f_norm, u_bound, eta_lower};
}

double eta_upper(int n, Exponent p)
{
	const BanachMazurWitness witness = bm_witness(n, p);
	if (witness.numeric_product > witness.bound + 1e-9)
		throw Error {"eta_upper: Banach-Mazur witness exceeds its declared bound"};
	return witness.bound;
}

namespace
{

// DFT coefficients ŵ(k), k ∈ [−S/2, S/2), of grid samples (columns).
VecTrigPoly interpolant(const Matrix& samples, SequenceSpace space)
{
	const auto s = samples.cols();
	std::vector<Complex> roots(static_cast<std::size_t>(s));
	for (Eigen::Index m = 0; m < s; ++m)
		roots[static_cast<std::size_t>(m)] = root_of_unity(-static_cast<long long>(m), static_cast<long long>(s));
	VecTrigPoly out {space};
	for (long k = -s / 2; k < s / 2; ++k)
	{
		const long step = ((k % s) + s) % s;
		Vector c = Vector::Zero(samples.rows());
		long m = 0;
		for (Eigen::Index j = 0; j < s; ++j)
		{
			c += roots[static_cast<std::size_t>(m)] * samples.col(j);
			m += step;
			if (m >= s)
				m -= s;
		}
		out.set(k, c / static_cast<double>(s));
	}
	return out;
}

// Lower bound |⟨u, F⟩| / sup‖u‖ for the symbol y_k = conj(φ̂(k)) built from φ.
double dual_ratio(const VecTrigPoly& phi, const VecTrigPoly& f)
{
	OperatorSymbol u {f.space().dual(), OperatorSymbol::Side::two_sided};
	for (const auto& [k, c] : phi.coeffs())
		u.set(k, c.conjugate());
	const double sup = l1_op_norm(u, 4 * (2 * static_cast<std::size_t>(phi.band_radius()) + 1));
	if (sup == 0.0)
		return 0.0;
	return std::abs(pairing(u, f)) / sup;
}

double scalar_l1(const VecTrigPoly& f)
{
	return lp_norm(f, Exponent {1.0}, next_pow2(64 * static_cast<std::size_t>(f.band_radius() + 1)));
}

} // namespace

TensorNormBounds tensor_norm_bounds(const VecTrigPoly& f, int dual_trials, std::uint64_t seed)
{
	if (!f.analytic())
		throw PreconditionViolation {"tensor_norm_bounds: F must be analytic"};
	TensorNormBounds out;
	if (f.empty())
		return out;
	const SequenceSpace x_space = f.space();
	const Exponent p = x_space.p();
	const long band = f.max_freq();
	const Eigen::Index d = f.dim();

	// Lower bound: pointwise norming functionals of F, band-limited.
	const std::size_t s = next_pow2(16 * static_cast<std::size_t>(band + 1));
	const Matrix values = f.sample(s);
	Matrix norming(d, static_cast<Eigen::Index>(s));
	for (Eigen::Index j = 0; j < norming.cols(); ++j)
		norming.col(j) = norming_functional(values.col(j), p);
	const VecTrigPoly phi = interpolant(norming, x_space.dual());
	out.lower = dual_ratio(phi, f);
	for (long cut = static_cast<long>(s) / 2; cut > band; cut /= 2)
		out.lower = std::max(out.lower, dual_ratio(convolve(phi, KernelSpec::fejer(static_cast<int>(cut))), f));
	Rng rng {seed};
	for (int t = 0; t < dual_trials; ++t)
	{
		VecTrigPoly noisy = random_trigpoly(x_space.dual(), -band, band, rng);
		noisy *= 0.05 / (1.0 + t);
		out.lower = std::max(out.lower, dual_ratio(phi + noisy, f));
	}

	// Upper bound: coordinatewise split Σ_j ‖F_j‖_{H¹}·‖e_j‖.
	const SequenceSpace scalar {1, Exponent {1.0}};
	double coordinatewise = 0.0;
	for (Eigen::Index j = 0; j < d; ++j)
	{
		VecTrigPoly fj {scalar};
		for (const auto& [k, c] : f.coeffs())
			if (c(j) != Complex {})
				fj.set(k, Vector::Constant(1, c(j)));
		coordinatewise += scalar_l1(fj);
	}

	// Rank-one peeling from the singular value decomposition of the coefficient matrix.
	std::vector<long> freqs;
	Matrix coeffs(d, static_cast<Eigen::Index>(f.coeffs().size()));
	for (const auto& [k, c] : f.coeffs())
	{
		coeffs.col(static_cast<Eigen::Index>(freqs.size())) = c;
		freqs.push_back(k);
	}
	Eigen::JacobiSVD<Matrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
	double peeled = 0.0;
	for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
	{
		const double sigma = svd.singularValues()(i);
		if (sigma == 0.0)
			continue;
		VecTrigPoly h {scalar};
		for (std::size_t idx = 0; idx < freqs.size(); ++idx)
			h.set(freqs[idx], Vector::Constant(1, sigma * std::conj(svd.matrixV()(static_cast<Eigen::Index>(idx), i))));
		peeled += scalar_l1(h) * lp_norm(svd.matrixU().col(i), p);
	}
	out.upper = std::min(coordinatewise, peeled);
	return out;
}

} // namespace hardy
