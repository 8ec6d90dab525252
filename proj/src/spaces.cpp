#include "hardy/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hardy
{

Exponent::Exponent(double p) : p_ {p}, infinite_ {false}
{
	if (std::isinf(p) && p > 0)
	{
		p_ = 0.0;
		infinite_ = true;
		return;
	}
	if (!(p > 0.0) || !std::isfinite(p))
		throw PreconditionViolation {"Exponent: must lie in (0, inf], got " + std::to_string(p)};
}

Exponent Exponent::dual() const
{
	if (infinite_)
		return Exponent {1.0};
	if (p_ < 1.0)
		throw PreconditionViolation {"Exponent::dual: requires p >= 1"};
	if (p_ == 1.0)
		return infinity();
	return Exponent {p_ / (p_ - 1.0)};
}

std::string Exponent::to_string() const
{
	if (infinite_)
		return "inf";
	std::ostringstream out;
	out.precision(17);
	out << p_;
	return out.str();
}

Exponent Exponent::parse(std::string_view text)
{
	if (text == "inf" || text == "infinity" || text == "Inf" || text == "∞")
		return infinity();
	const auto slash = text.find('/');
	auto number = [](std::string_view s) {
		double v = 0.0;
		const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (ec != std::errc {} || ptr != s.data() + s.size())
			throw PreconditionViolation {"Exponent::parse: bad number '" + std::string {s} + "'"};
		return v;
	};
	if (slash != std::string_view::npos)
		return Exponent {number(text.substr(0, slash)) / number(text.substr(slash + 1))};
	return Exponent {number(text)};
}

SequenceSpace::SequenceSpace(int dim, Exponent p) : dim_ {dim}, p_ {p}
{
	if (dim < 1)
		throw PreconditionViolation {"SequenceSpace: dim must be >= 1"};
	if (!p.is_infinite() && p.value() < 1.0)
		throw PreconditionViolation {"SequenceSpace: p must be >= 1"};
}

void require_dim(Eigen::Index size, const SequenceSpace& space, const char* what)
{
	if (size != space.dim())
		throw DimensionMismatch {std::string {what} + ": vector of length " + std::to_string(size) +
		                         " in a space of dimension " + std::to_string(space.dim())};
}

Vector norming_functional(const Vector& x, Exponent p)
{
	Vector w = Vector::Zero(x.size());
	const double nx = lp_norm(x, p);
	if (nx == 0.0)
		return w;
	if (p.is_infinite())
	{
		Eigen::Index j;
		x.cwiseAbs().maxCoeff(&j);
		w(j) = x(j) / std::abs(x(j));
		return w;
	}
	const double e = p.value();
	for (Eigen::Index j = 0; j < x.size(); ++j)
	{
		const double m = std::abs(x(j));
		if (m == 0.0)
			continue;
		if (e == 1.0)
			w(j) = x(j) / m;
		else
			w(j) = x(j) / m * std::pow(m / nx, e - 1.0);
	}
	return w;
}

QuotientSpace::QuotientSpace(SequenceSpace ambient, Matrix basis)
    : ambient_ {ambient}, basis_ {std::move(basis)}
{
	if (ambient_.p().is_infinite() || ambient_.p().value() != 1.0)
		throw PreconditionViolation {"QuotientSpace: ambient space must be ℓ¹"};
	if (basis_.cols() > 0 && basis_.rows() != ambient_.dim())
		throw DimensionMismatch {"QuotientSpace: basis rows must equal ambient dimension"};
	if (basis_.cols() == 0)
		basis_.resize(ambient_.dim(), 0);
	if (basis_.cols() >= ambient_.dim())
		throw PreconditionViolation {"QuotientSpace: dim Y must be smaller than the ambient dimension"};
	if (basis_.cols() > 0)
	{
		Eigen::ColPivHouseholderQR<Matrix> qr(basis_);
		qr.setThreshold(1e-12);
		if (qr.rank() != basis_.cols())
			throw PreconditionViolation {"QuotientSpace: basis vectors are linearly dependent"};
	}
}

double QuotientSpace::distance_to_subspace_l2(const Vector& v) const
{
	require_dim(v.size(), ambient_, "QuotientSpace::distance_to_subspace_l2");
	if (basis_.cols() == 0)
		return v.norm();
	const Vector c = basis_.colPivHouseholderQr().solve(v);
	return (v - basis_ * c).norm();
}

double quotient_norm(const Vector& x, const QuotientSpace& qs)
{
	return min_l1_coset(x, qs).value;
}

LinearMap::LinearMap(Matrix matrix, SequenceSpace domain, SequenceSpace codomain)
    : matrix_ {std::move(matrix)}, domain_ {domain}, codomain_ {codomain}
{
	if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
		throw DimensionMismatch {"LinearMap: matrix shape does not match the spaces"};
}

Vector LinearMap::operator()(const Vector& x) const
{
	require_dim(x.size(), domain_, "LinearMap");
	return matrix_ * x;
}

namespace
{

bool is_one(Exponent p) { return !p.is_infinite() && p.value() == 1.0; }
bool is_two(Exponent p) { return !p.is_infinite() && p.value() == 2.0; }

// Boyd's nonlinear power method for ‖A‖_{p→q}; returns the best value reached.
double power_iteration(const Matrix& a, Exponent p, Exponent q, Vector x, int iterations)
{
	const Exponent p_dual = p.dual();
	x /= lp_norm(x, p);
	double best = lp_norm(a * x, q);
	for (int it = 0; it < iterations; ++it)
	{
		const Vector y = a * x;
		const Vector w = norming_functional(y, q);
		const Vector z = a.adjoint() * w;
		if (z.squaredNorm() == 0.0)
			break;
		Vector next = norming_functional(z, p_dual);
		const double nn = lp_norm(next, p);
		if (nn == 0.0)
			break;
		next /= nn;
		const double value = lp_norm(a * next, q);
		const bool stalled = value <= best * (1.0 + 1e-15);
		best = std::max(best, value);
		x = std::move(next);
		if (stalled)
			break;
	}
	return best;
}

} // namespace

OperatorNormEstimate operator_norm(const LinearMap& map, std::uint64_t seed, int random_directions)
{
	const Matrix& a = map.matrix();
	const Exponent p = map.domain().p();
	const Exponent q = map.codomain().p();
	if (a.size() == 0)
		return {0.0, true};

	if (is_one(p))
	{
		double best = 0.0;
		for (Eigen::Index k = 0; k < a.cols(); ++k)
			best = std::max(best, lp_norm(a.col(k), q));
		return {best, true};
	}
	if (q.is_infinite())
	{
		double best = 0.0;
		const Exponent p_dual = p.dual();
		for (Eigen::Index j = 0; j < a.rows(); ++j)
			best = std::max(best, lp_norm(a.row(j).transpose(), p_dual));
		return {best, true};
	}
	if (is_two(p) && is_two(q))
	{
		Eigen::JacobiSVD<Matrix> svd(a);
		return {svd.singularValues()(0), true};
	}

	double best = 0.0;
	for (Eigen::Index k = 0; k < a.cols(); ++k)
		best = std::max(best, power_iteration(a, p, q, Vector::Unit(a.cols(), k), 200));
	best = std::max(best, power_iteration(a, p, q, Vector::Ones(a.cols()), 200));

	Rng rng {seed};
	for (int t = 0; t < random_directions; ++t)
	{
		Vector x = random_complex_vector(a.cols(), rng);
		// Unimodular directions matter for ℓ^∞-type domains.
		if (t % 2 == 1)
			for (Eigen::Index j = 0; j < x.size(); ++j)
				x(j) = x(j) / std::abs(x(j));
		const double nx = lp_norm(x, p);
		best = std::max(best, lp_norm(a * x, q) / nx);
		if (t % 50 == 0)
			best = std::max(best, power_iteration(a, p, q, x, 100));
	}
	return {best, false};
}

Matrix fourier_matrix(int n)
{
	Matrix w(n, n);
	for (int j = 0; j < n; ++j)
		for (int k = 0; k < n; ++k)
		{
			const long long m = (static_cast<long long>(j) * k) % n;
			w(j, k) = root_of_unity(m, n);
		}
	return w;
}

Exponent min_two(Exponent p)
{
	if (p.is_infinite() || p.value() >= 2.0)
		return Exponent {2.0};
	return p;
}

BanachMazurWitness bm_witness(int n, Exponent p)
{
	const SequenceSpace l1 {n, Exponent {1.0}};
	const SequenceSpace lp {n, p};
	const double r_inv = min_two(p).reciprocal();
	const double bound = std::pow(static_cast<double>(n), 1.0 - r_inv);

	const bool use_fourier = p.is_infinite() || p.value() > 2.0;
	Matrix t = use_fourier ? fourier_matrix(n) : Matrix::Identity(n, n);
	Matrix t_inv = use_fourier ? Matrix(t.adjoint() / static_cast<double>(n)) : Matrix::Identity(n, n);

	LinearMap forward {std::move(t), l1, lp};
	LinearMap inverse {std::move(t_inv), lp, l1};
	const double product = operator_norm(forward).value * operator_norm(inverse).value;
	return {std::move(forward), std::move(inverse), bound, product};
}

} // namespace hardy
