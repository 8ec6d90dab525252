#include "hardy/trigpoly.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hardy
{

VecTrigPoly::VecTrigPoly(SequenceSpace space, Coefficients coeffs) : space_ {space}
{
	for (auto& [k, v] : coeffs)
		set(k, std::move(v));
}

VecTrigPoly VecTrigPoly::constant(SequenceSpace space, Vector value)
{
	return monomial(space, 0, std::move(value));
}

VecTrigPoly VecTrigPoly::monomial(SequenceSpace space, long k, Vector value)
{
	VecTrigPoly f {space};
	f.set(k, std::move(value));
	return f;
}

Vector VecTrigPoly::coeff(long k) const
{
	const auto it = coeffs_.find(k);
	return it == coeffs_.end() ? Vector::Zero(dim()) : it->second;
}

void VecTrigPoly::set(long k, Vector value)
{
	require_dim(value.size(), space_, "VecTrigPoly::set");
	coeffs_[k] = std::move(value);
}

void VecTrigPoly::add(long k, const Vector& value)
{
	require_dim(value.size(), space_, "VecTrigPoly::add");
	auto [it, inserted] = coeffs_.try_emplace(k, value);
	if (!inserted)
		it->second += value;
}

long VecTrigPoly::min_freq() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
long VecTrigPoly::max_freq() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

long VecTrigPoly::band_radius() const
{
	return std::max(std::labs(min_freq()), std::labs(max_freq()));
}

Vector VecTrigPoly::operator()(double theta) const
{
	Vector value = Vector::Zero(dim());
	for (const auto& [k, c] : coeffs_)
		value += std::polar(1.0, std::remainder(static_cast<double>(k) * theta, two_pi)) * c;
	return value;
}

VecTrigPoly& VecTrigPoly::operator+=(const VecTrigPoly& other)
{
	if (!(other.space_ == space_))
		throw DimensionMismatch {"VecTrigPoly: adding polynomials over different spaces"};
	for (const auto& [k, c] : other.coeffs_)
		add(k, c);
	return *this;
}

VecTrigPoly& VecTrigPoly::operator-=(const VecTrigPoly& other)
{
	if (!(other.space_ == space_))
		throw DimensionMismatch {"VecTrigPoly: subtracting polynomials over different spaces"};
	for (const auto& [k, c] : other.coeffs_)
		add(k, -c);
	return *this;
}

VecTrigPoly& VecTrigPoly::operator*=(Complex scalar)
{
	for (auto& [k, c] : coeffs_)
		c *= scalar;
	return *this;
}

Matrix VecTrigPoly::sample(std::size_t s) const
{
	Matrix values = Matrix::Zero(dim(), static_cast<Eigen::Index>(s));
	if (s == 0 || coeffs_.empty())
		return values;
	std::vector<Complex> roots(s);
	for (std::size_t m = 0; m < s; ++m)
		roots[m] = root_of_unity(static_cast<long long>(m), static_cast<long long>(s));

	// values = C·E with E(i, j) = ω^{k_i j}, formed a block of columns at a time.
	const long ls = static_cast<long>(s);
	const auto terms = static_cast<Eigen::Index>(coeffs_.size());
	Matrix c(dim(), terms);
	std::vector<std::size_t> steps;
	for (const auto& [k, coeff] : coeffs_)
	{
		c.col(static_cast<Eigen::Index>(steps.size())) = coeff;
		steps.push_back(static_cast<std::size_t>(((k % ls) + ls) % ls));
	}
	constexpr std::size_t block = 512;
	Matrix phases(terms, static_cast<Eigen::Index>(std::min(block, s)));
	for (std::size_t start = 0; start < s; start += block)
	{
		const std::size_t width = std::min(block, s - start);
		for (Eigen::Index i = 0; i < terms; ++i)
		{
			const std::size_t step = steps[static_cast<std::size_t>(i)];
			std::size_t m = (step * start) % s;
			for (std::size_t j = 0; j < width; ++j)
			{
				phases(i, static_cast<Eigen::Index>(j)) = roots[m];
				m += step;
				if (m >= s)
					m -= s;
			}
		}
		values.middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(width)).noalias() =
		    c * phases.leftCols(static_cast<Eigen::Index>(width));
	}
	return values;
}

VecTrigPoly VecTrigPoly::rotated(double phi) const
{
	VecTrigPoly g {space_};
	for (const auto& [k, c] : coeffs_)
		g.set(k, std::polar(1.0, std::remainder(static_cast<double>(k) * phi, two_pi)) * c);
	return g;
}

VecTrigPoly operator+(VecTrigPoly a, const VecTrigPoly& b) { return a += b; }
VecTrigPoly operator-(VecTrigPoly a, const VecTrigPoly& b) { return a -= b; }
VecTrigPoly operator*(Complex scalar, VecTrigPoly f) { return f *= scalar; }

double coefficient_distance(const VecTrigPoly& a, const VecTrigPoly& b)
{
	double worst = 0.0;
	const VecTrigPoly difference = a - b;
	for (const auto& [k, c] : difference.coeffs())
		worst = std::max(worst, c.cwiseAbs().maxCoeff());
	return worst;
}

VecTrigPoly convolve(const VecTrigPoly& f, const KernelSpec& kernel)
{
	VecTrigPoly g {f.space()};
	for (const auto& [k, c] : f.coeffs())
	{
		const double multiplier = kernel_coeff(kernel, k);
		if (multiplier != 0.0)
			g.set(k, multiplier * c);
	}
	return g;
}

VecTrigPoly riesz_minus(const VecTrigPoly& f)
{
	VecTrigPoly g {f.space()};
	for (const auto& [k, c] : f.coeffs())
		if (k < 0)
			g.set(k, c);
	return g;
}

VecTrigPoly analytic_part(const VecTrigPoly& f)
{
	VecTrigPoly g {f.space()};
	for (const auto& [k, c] : f.coeffs())
		if (k >= 0)
			g.set(k, c);
	return g;
}

std::size_t default_grid(const VecTrigPoly& f)
{
	const std::size_t target = 8 * static_cast<std::size_t>(f.band_radius() + 1);
	std::size_t s = 1;
	while (s < target)
		s <<= 1;
	return s;
}

namespace
{

void require_grid(const VecTrigPoly& f, std::size_t grid_size, const char* what)
{
	const auto needed = 2 * static_cast<std::size_t>(f.band_radius()) + 1;
	if (grid_size < needed)
		throw PreconditionViolation {std::string {what} + ": grid of " + std::to_string(grid_size) +
		                             " points cannot resolve band radius " +
		                             std::to_string(f.band_radius())};
}

double golden_max(const VecTrigPoly& f, Exponent inner, double lo, double hi)
{
	constexpr double inv_phi = 0.6180339887498949;
	auto value = [&](double t) { return lp_norm(f(t), inner); };
	double a = lo, b = hi;
	double c = b - inv_phi * (b - a);
	double d = a + inv_phi * (b - a);
	double fc = value(c), fd = value(d);
	double best = std::max(fc, fd);
	for (int it = 0; it < 80 && b - a > 1e-15; ++it)
	{
		if (fc > fd)
		{
			b = d;
			d = c;
			fd = fc;
			c = b - inv_phi * (b - a);
			fc = value(c);
		}
		else
		{
			a = c;
			c = d;
			fc = fd;
			d = a + inv_phi * (b - a);
			fd = value(d);
		}
		best = std::max({best, fc, fd});
	}
	return best;
}

} // namespace

double sup_norm(const VecTrigPoly& f, Exponent inner, std::size_t grid_size)
{
	if (f.empty())
		return 0.0;
	require_grid(f, grid_size, "sup_norm");
	const Matrix values = f.sample(grid_size);
	std::vector<std::pair<double, std::size_t>> peaks;
	peaks.reserve(grid_size);
	for (std::size_t j = 0; j < grid_size; ++j)
		peaks.emplace_back(lp_norm(values.col(static_cast<Eigen::Index>(j)), inner), j);
	const std::size_t refine = std::min<std::size_t>(4, peaks.size());
	std::partial_sort(peaks.begin(), peaks.begin() + static_cast<long>(refine), peaks.end(),
	                  [](const auto& a, const auto& b) { return a.first > b.first; });
	double best = peaks.front().first;
	const double h = two_pi / static_cast<double>(grid_size);
	for (std::size_t i = 0; i < refine; ++i)
	{
		const double centre = h * static_cast<double>(peaks[i].second);
		best = std::max(best, golden_max(f, inner, centre - h, centre));
		best = std::max(best, golden_max(f, inner, centre, centre + h));
	}
	return best;
}

double mixed_norm(const VecTrigPoly& f, Exponent outer, Exponent inner, std::size_t grid_size)
{
	if (outer.is_infinite())
		return sup_norm(f, inner, grid_size);
	require_grid(f, grid_size, "lp_norm");
	if (f.empty())
		return 0.0;
	const Matrix values = f.sample(grid_size);
	const double e = outer.value();
	CompensatedSum<double> sum;
	for (Eigen::Index j = 0; j < values.cols(); ++j)
	{
		const double v = lp_norm(values.col(j), inner);
		sum.add(e == 1.0 ? v : std::pow(v, e));
	}
	const double mean = sum.value() / static_cast<double>(grid_size);
	return e == 1.0 ? mean : std::pow(mean, 1.0 / e);
}

double lp_norm(const VecTrigPoly& f, Exponent exponent, std::size_t grid_size)
{
	return mixed_norm(f, exponent, f.space().p(), grid_size);
}

double lp_norm(const VecTrigPoly& f, Exponent exponent)
{
	return lp_norm(f, exponent, default_grid(f));
}

std::string serialize(const VecTrigPoly& f)
{
	std::string out = "space " + std::to_string(f.dim()) + " " + f.space().p().to_string() + "\n";
	char buffer[64];
	for (const auto& [k, c] : f.coeffs())
	{
		out += std::to_string(k);
		for (Eigen::Index j = 0; j < c.size(); ++j)
		{
			std::snprintf(buffer, sizeof buffer, " %.17g %.17g", c(j).real(), c(j).imag());
			out += buffer;
		}
		out += '\n';
	}
	return out;
}

VecTrigPoly parse_trigpoly(std::string_view text)
{
	std::istringstream in {std::string {text}};
	std::string tag, p_text;
	int dim = 0;
	if (!(in >> tag >> dim >> p_text) || tag != "space")
		throw Error {"parse_trigpoly: missing 'space <dim> <p>' header"};
	VecTrigPoly f {SequenceSpace {dim, Exponent::parse(p_text)}};
	std::string line;
	std::getline(in, line);
	while (std::getline(in, line))
	{
		if (line.find_first_not_of(" \t\r") == std::string::npos)
			continue;
		std::istringstream row {line};
		long k = 0;
		if (!(row >> k))
			throw Error {"parse_trigpoly: bad frequency in line '" + line + "'"};
		Vector c(dim);
		for (int j = 0; j < dim; ++j)
		{
			double re = 0, im = 0;
			if (!(row >> re >> im))
				throw Error {"parse_trigpoly: expected " + std::to_string(2 * dim) +
				             " numbers after the frequency in line '" + line + "'"};
			c(j) = Complex {re, im};
		}
		f.set(k, std::move(c));
	}
	return f;
}

VecTrigPoly random_trigpoly(SequenceSpace space, long lo, long hi, Rng& rng)
{
	VecTrigPoly f {space};
	for (long k = lo; k <= hi; ++k)
		f.set(k, random_complex_vector(space.dim(), rng));
	return f;
}

} // namespace hardy
