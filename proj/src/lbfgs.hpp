#ifndef HARDY_SRC_LBFGS_HPP
#define HARDY_SRC_LBFGS_HPP

#include "hardy/common.hpp"

#include <deque>
#include <functional>

namespace hardy::detail
{

/// Objective returning f(x) and writing ∇f(x).
using SmoothObjective = std::function<double(const RealVector&, RealVector&)>;

struct LbfgsReport
{
	int iterations = 0;
	bool converged = false;
};

/// Limited-memory BFGS with Armijo backtracking. `on_iterate` is called with every
/// accepted iterate.
inline LbfgsReport lbfgs_minimize(const SmoothObjective& objective, RealVector& x, int max_iterations,
                                  double gradient_tolerance,
                                  const std::function<void(const RealVector&)>& on_iterate, int memory = 10)
{
	LbfgsReport report;
	std::deque<RealVector> s_hist, y_hist;
	std::deque<double> rho_hist;
	RealVector grad(x.size());
	double fx = objective(x, grad);
	RealVector trial_grad(x.size());

	for (int it = 0; it < max_iterations; ++it)
	{
		if (grad.lpNorm<Eigen::Infinity>() <= gradient_tolerance)
		{
			report.converged = true;
			break;
		}
		// Two-loop recursion.
		RealVector q = grad;
		std::vector<double> alpha(s_hist.size());
		for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i)
		{
			alpha[i] = rho_hist[i] * s_hist[i].dot(q);
			q -= alpha[i] * y_hist[i];
		}
		if (!s_hist.empty())
			q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
		for (std::size_t i = 0; i < s_hist.size(); ++i)
		{
			const double beta = rho_hist[i] * y_hist[i].dot(q);
			q += (alpha[i] - beta) * s_hist[i];
		}
		RealVector direction = -q;
		double slope = grad.dot(direction);
		if (!(slope < 0.0))
		{
			direction = -grad;
			slope = -grad.squaredNorm();
			s_hist.clear();
			y_hist.clear();
			rho_hist.clear();
		}

		double step = s_hist.empty() ? std::min(1.0, 1.0 / std::max(1e-300, grad.norm())) : 1.0;
		bool accepted = false;
		RealVector trial;
		double ft = 0.0;
		for (int ls = 0; ls < 50; ++ls)
		{
			trial = x + step * direction;
			ft = objective(trial, trial_grad);
			if (std::isfinite(ft) && ft <= fx + 1e-4 * step * slope)
			{
				accepted = true;
				break;
			}
			step *= 0.5;
		}
		++report.iterations;
		if (!accepted)
			break;

		const RealVector s = trial - x;
		const RealVector y = trial_grad - grad;
		const double sy = s.dot(y);
		if (sy > 1e-16 * s.norm() * y.norm())
		{
			s_hist.push_back(s);
			y_hist.push_back(y);
			rho_hist.push_back(1.0 / sy);
			if (static_cast<int>(s_hist.size()) > memory)
			{
				s_hist.pop_front();
				y_hist.pop_front();
				rho_hist.pop_front();
			}
		}
		const double decrease = fx - ft;
		x = trial;
		grad = trial_grad;
		fx = ft;
		if (on_iterate)
			on_iterate(x);
		if (decrease <= 1e-15 * std::max(1.0, std::abs(fx)))
		{
			report.converged = true;
			break;
		}
	}
	return report;
}

} // namespace hardy::detail

#endif
