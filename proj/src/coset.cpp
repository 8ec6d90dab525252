// Complex ℓ¹ distance to a subspace:  min_c Σ_j |x_j − (Bc)_j|.
//
// Each term is a second-order cone |r_j| <= t_j. For barrier weight τ the slack t_j
// minimising τ t − log(t² − ρ²) is t = (1 + s)/τ with s = sqrt(1 + τ²ρ²), so the
// barrier problem reduces to the smooth convex function Σ_j g(ρ_j) in c alone,
//     g(ρ) = s − log(1 + s),   g'(ρ) = τ²ρ / (1 + s),   g''(ρ) = τ² / (s (1 + s)).
// The central path is followed to τ = 1e7 (data normalised to ‖x‖₁ = 1); beyond that
// the residuals that vanish at the optimum drown in rounding. Those coordinates are
// then pinned to zero and the remaining, now smooth, objective is minimised exactly.
// Dual certificates come from the central-path multipliers and from the signs at
// the polished point; the larger one is reported.

#include "hardy/spaces.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace hardy
{

namespace
{

struct BarrierProblem
{
	RealMatrix m;  // 2d × 2k real form of the basis
	RealVector x;  // 2d real form of the target
	Eigen::Index d;
	Eigen::Index k2;

	void derivatives(const RealVector& v, double tau, RealVector& grad, RealMatrix& hess) const
	{
		const RealVector e = x - m * v;
		grad.setZero(k2);
		hess.setZero(k2, k2);
		for (Eigen::Index j = 0; j < d; ++j)
		{
			const auto mj = m.middleRows(2 * j, 2);
			const Eigen::Vector2d ej = e.segment<2>(2 * j);
			const double rho = ej.norm();
			const double s = std::hypot(1.0, tau * rho);
			const double tangential = tau * tau / (1.0 + s); // g'(ρ)/ρ
			const double radial = tau * tau / (s * (1.0 + s)); // g''(ρ)
			grad.noalias() -= tangential * (mj.transpose() * ej);
			Eigen::Matrix2d local = tangential * Eigen::Matrix2d::Identity();
			if (rho > 0.0)
			{
				const Eigen::Vector2d dir = ej / rho;
				local += (radial - tangential) * dir * dir.transpose();
			}
			hess.noalias() += mj.transpose() * local * mj;
		}
	}
};

// Damped Newton: Σ g(ρ_j) is self-concordant (a partial minimisation of the standard
// cone barrier), so the step 1/(1 + λ) never leaves the domain and needs no function
// values.
void center(const BarrierProblem& prob, RealVector& v, double tau)
{
	RealVector grad;
	RealMatrix hess;
	for (int it = 0; it < 60; ++it)
	{
		prob.derivatives(v, tau, grad, hess);
		const RealVector step = hess.ldlt().solve(-grad);
		const double decrement2 = -grad.dot(step);
		if (!(decrement2 > 1e-16))
			return;
		const double lambda = std::sqrt(decrement2);
		v += (lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0) * step;
	}
}

// Re⟨w, x⟩ for w pushed into the dual feasible set {Bᴴw = 0, |w_j| <= 1}.
double dual_value(Vector w, const Vector& x, const Matrix& basis, const Matrix& gram)
{
	w -= basis * gram.ldlt().solve(basis.adjoint() * w);
	const double peak = w.cwiseAbs().maxCoeff();
	if (peak > 1.0)
		w /= peak;
	return std::max(0.0, w.dot(x).real()); // Eigen's dot conjugates the left operand
}

struct Polished
{
	Vector c;
	Vector w;
};

// Pins the residuals indexed by `active` to zero and minimises Σ_{j ∉ active} |r_j| by
// Newton's method on the remaining affine set; returns the point and a sign vector.
std::optional<Polished> polish(const Vector& x, const Matrix& basis, const Vector& c0,
                               const std::vector<Eigen::Index>& active)
{
	const Eigen::Index d = x.size();
	const Eigen::Index k = basis.cols();
	const auto a = static_cast<Eigen::Index>(active.size());
	if (a > k)
		return std::nullopt;
	Matrix ba(a, k);
	Vector xa(a);
	for (Eigen::Index i = 0; i < a; ++i)
	{
		ba.row(i) = basis.row(active[static_cast<std::size_t>(i)]);
		xa(i) = x(active[static_cast<std::size_t>(i)]);
	}
	// c = c_p + N z with B_A c_p = x_A and B_A N = 0.
	Vector cp = c0;
	Matrix null_basis = Matrix::Identity(k, k);
	if (a > 0)
	{
		const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(ba);
		if (cod.rank() < a)
			return std::nullopt;
		cp = c0 + cod.solve(xa - ba * c0);
		Eigen::JacobiSVD<Matrix> svd(ba, Eigen::ComputeFullV);
		null_basis = svd.matrixV().rightCols(k - a);
	}
	std::vector<bool> pinned(static_cast<std::size_t>(d), false);
	for (auto j : active)
		pinned[static_cast<std::size_t>(j)] = true;

	const Eigen::Index free = 2 * (k - a);
	auto coefficients = [&](const RealVector& z) {
		Vector zc(k - a);
		for (Eigen::Index i = 0; i < k - a; ++i)
			zc(i) = Complex {z(i), z(k - a + i)};
		return Vector {cp + null_basis * zc};
	};
	auto objective = [&](const Vector& c) {
		const Vector r = x - basis * c;
		double total = 0.0;
		for (Eigen::Index j = 0; j < d; ++j)
			if (!pinned[static_cast<std::size_t>(j)])
				total += std::abs(r(j));
		return total;
	};

	RealVector z = RealVector::Zero(free);
	if (free > 0)
	{
		// Real form of B N: columns for Re z and Im z.
		const Matrix bn = basis * null_basis;
		for (int it = 0; it < 50; ++it)
		{
			const Vector r = x - basis * coefficients(z);
			RealVector grad = RealVector::Zero(free);
			RealMatrix hess = RealMatrix::Zero(free, free);
			for (Eigen::Index j = 0; j < d; ++j)
			{
				if (pinned[static_cast<std::size_t>(j)])
					continue;
				const double rho = std::abs(r(j));
				if (rho == 0.0)
					return std::nullopt;
				Eigen::MatrixXd mj(2, free);
				for (Eigen::Index i = 0; i < k - a; ++i)
				{
					const Complex b = bn(j, i);
					mj(0, i) = b.real();
					mj(1, i) = b.imag();
					mj(0, k - a + i) = -b.imag();
					mj(1, k - a + i) = b.real();
				}
				const Eigen::Vector2d u {r(j).real() / rho, r(j).imag() / rho};
				grad -= mj.transpose() * u;
				hess += mj.transpose() * ((Eigen::Matrix2d::Identity() - u * u.transpose()) / rho) * mj;
			}
			const RealVector step = hess.completeOrthogonalDecomposition().solve(-grad);
			if (!step.allFinite())
				break;
			// Tiny steps are taken as they are: the objective can no longer resolve them.
			if (step.norm() < 1e-7 * (1.0 + z.norm()))
			{
				z += step;
				if (step.norm() < 1e-15 * (1.0 + z.norm()))
					break;
				continue;
			}
			const double before = objective(coefficients(z));
			double alpha = 1.0;
			bool moved = false;
			for (int ls = 0; ls < 40; ++ls)
			{
				const RealVector trial = z + alpha * step;
				if (objective(coefficients(trial)) < before)
				{
					z = trial;
					moved = true;
					break;
				}
				alpha *= 0.5;
			}
			if (!moved)
				break;
		}
	}

	Polished out {coefficients(z), Vector::Zero(d)};
	const Vector r = x - basis * out.c;
	for (Eigen::Index j = 0; j < d; ++j)
		if (!pinned[static_cast<std::size_t>(j)])
			out.w(j) = r(j) / std::abs(r(j));
	// Multipliers on the pinned coordinates: B_Aᴴ w_A = −Bᴴ w (least squares).
	if (a > 0)
	{
		const Vector rhs = -(basis.adjoint() * out.w);
		const Vector wa = ba.adjoint().completeOrthogonalDecomposition().solve(rhs);
		for (Eigen::Index i = 0; i < a; ++i)
			out.w(active[static_cast<std::size_t>(i)]) = wa(i);
	}
	return out;
}

} // namespace

CosetMinimum min_l1_coset(const Vector& x, const QuotientSpace& qs)
{
	require_dim(x.size(), qs.ambient(), "min_l1_coset");
	const Matrix& basis = qs.basis();
	const Eigen::Index d = x.size();
	const Eigen::Index k = basis.cols();

	CosetMinimum out;
	const double scale = x.cwiseAbs().sum();
	if (k == 0 || scale == 0.0)
	{
		out.representative = x;
		out.y_coefficients = Vector::Zero(k);
		out.value = scale;
		out.lower_bound = scale;
		return out;
	}

	BarrierProblem prob {RealMatrix(2 * d, 2 * k), RealVector(2 * d), d, 2 * k};
	for (Eigen::Index j = 0; j < d; ++j)
	{
		prob.x(2 * j) = x(j).real() / scale;
		prob.x(2 * j + 1) = x(j).imag() / scale;
		for (Eigen::Index i = 0; i < k; ++i)
		{
			const Complex b = basis(j, i);
			prob.m(2 * j, i) = b.real();
			prob.m(2 * j + 1, i) = b.imag();
			prob.m(2 * j, k + i) = -b.imag();
			prob.m(2 * j + 1, k + i) = b.real();
		}
	}

	RealVector v = prob.m.colPivHouseholderQr().solve(prob.x);
	constexpr double tau_final = 1e7;
	double tau = 1.0;
	for (;;)
	{
		center(prob, v, tau);
		if (tau >= tau_final)
			break;
		tau = std::min(10.0 * tau, tau_final);
	}

	Vector c(k);
	for (Eigen::Index i = 0; i < k; ++i)
		c(i) = Complex {v(i), v(k + i)};
	const Vector xs = x / scale;
	Vector r = xs - basis * c;
	const Matrix gram = basis.adjoint() * basis;

	// Central-path multipliers w_j = τ r_j / (1 + s_j).
	Vector w(d);
	for (Eigen::Index j = 0; j < d; ++j)
	{
		const double s = std::hypot(1.0, tau * std::abs(r(j)));
		w(j) = tau * r(j) / (1.0 + s);
	}
	double dual = dual_value(w, xs, basis, gram);

	// Which residuals vanish at the optimum is not always clear from the barrier
	// point, so the t smallest are pinned for every t <= k. Each attempt yields a
	// valid primal point and a valid dual bound; the best of each is kept.
	std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
	std::iota(order.begin(), order.end(), Eigen::Index {0});
	std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return std::abs(r(i)) < std::abs(r(j)); });
	const Vector c_barrier = c;
	double best = r.cwiseAbs().sum();
	const Eigen::Index max_pinned = std::min(k, d - 1);
	Eigen::Index likely = 0;
	while (likely < max_pinned && std::abs(r(order[static_cast<std::size_t>(likely)])) < 1e3 / tau_final)
		++likely;
	std::vector<Eigen::Index> attempts {likely};
	for (Eigen::Index t = 0; t <= max_pinned; ++t)
		if (t != likely)
			attempts.push_back(t);
	for (const Eigen::Index t : attempts)
	{
		if (best - dual <= 1e-14)
			break;
		const std::vector<Eigen::Index> active(order.begin(), order.begin() + t);
		const auto refined = polish(xs, basis, c_barrier, active);
		if (!refined)
			continue;
		const Vector r_refined = xs - basis * refined->c;
		const double value = r_refined.cwiseAbs().sum();
		if (value <= best)
		{
			best = value;
			c = refined->c;
			r = r_refined;
		}
		dual = std::max(dual, dual_value(refined->w, xs, basis, gram));
	}

	out.representative = scale * r;
	out.y_coefficients = scale * c;
	out.value = scale * r.cwiseAbs().sum();
	out.lower_bound = std::min(scale * dual, out.value);
	return out;
}

} // namespace hardy
