#include "convroof/refine.hpp"

#include <cmath>
#include <limits>

#include "convroof/de.hpp"
#include "convroof/errors.hpp"
#include "convroof/parallel.hpp"

namespace convroof {

void RefineConfig::validate() const {
    if (maxIter < 0) throw InputError("refine: maxIter must be non-negative");
    if (!(gradTol > 0.0 && stepTol > 0.0)) throw InputError("refine: tolerances must be positive");
    if (!(fdStep >= 1e-9 && fdStep <= 1e-4)) throw InputError("refine: fdStep must lie in [1e-9, 1e-4]");
    if (!(armijo > 0.0 && armijo < 1.0)) throw InputError("refine: armijo constant must lie in (0, 1)");
    if (!(shrink > 0.0 && shrink < 1.0)) throw InputError("refine: shrink factor must lie in (0, 1)");
    if (maxBacktracks < 1) throw InputError("refine: need at least one backtracking step");
}

RealVector fd_gradient(const RealFunction& f, const RealVector& x, double h, int threads) {
    RealVector g(x.size());
    parallel_for(static_cast<std::size_t>(x.size()), threads, [&](std::size_t idx) {
        const auto j = static_cast<Eigen::Index>(idx);
        RealVector xp = x;
        xp(j) += h;
        const double fp = f(xp);
        xp(j) = x(j) - h;
        const double fm = f(xp);
        if (!std::isfinite(fp) || !std::isfinite(fm)) throw NonFinite("fd_gradient: non-finite function value");
        g(j) = (fp - fm) / (2.0 * h);
    });
    return g;
}

BfgsResult bfgs_minimize(const RealFunction& f, const RealVector& x0, const RefineConfig& config) {
    config.validate();
    const Eigen::Index n = x0.size();
    RealVector x = x0;
    double fx = f(x);
    if (!std::isfinite(fx)) throw NonFinite("bfgs: objective is not finite at the starting point");
    RealVector g = fd_gradient(f, x, config.fdStep, config.threads);

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    bool identity = true;
    bool scaled = false;

    for (int it = 0; it < config.maxIter; ++it) {
        if (g.lpNorm<Eigen::Infinity>() <= config.gradTol) return {x, fx, it, BfgsStop::GradientTolerance};

        RealVector p = -h * g;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            h.setIdentity();
            identity = true;
            p = -g;
            slope = -g.squaredNorm();
        }

        double alpha = 1.0;
        RealVector xn;
        double fn = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int bt = 0; bt < config.maxBacktracks; ++bt) {
            xn = x + alpha * p;
            fn = f(xn);
            if (std::isfinite(fn) && fn <= fx + config.armijo * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= config.shrink;
        }
        if (!accepted) {
            if (identity) return {x, fx, it, BfgsStop::LineSearchFailed};
            // Retry once along steepest descent before giving up.
            h.setIdentity();
            identity = true;
            continue;
        }

        const RealVector s = xn - x;
        if (s.lpNorm<Eigen::Infinity>() <= config.stepTol) {
            return {xn, fn, it + 1, BfgsStop::StepTolerance};
        }
        const RealVector gn = fd_gradient(f, xn, config.fdStep, config.threads);
        const RealVector y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                h *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const RealVector hy = h * y;
            const double yhy = y.dot(hy);
            h.noalias() -= rho * (s * hy.transpose() + hy * s.transpose());
            h.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
            identity = false;
        }
        x = xn;
        fx = fn;
        g = gn;
    }
    return {x, fx, config.maxIter, BfgsStop::MaxIterations};
}

RefineResult refine_unitary(const MixedState& state, const SemiUnitary& u0, const RefineConfig& config) {
    if (u0.r() != state.rank()) throw RankMismatch("refine: semi-unitary column count differs from state rank");
    const Eigen::Index k = u0.k();
    const Eigen::Index r = u0.r();
    const RealFunction f = [&](const RealVector& x) {
        const std::optional<SemiUnitary> u = try_project_qr(matrix_from_agent(x, k, r));
        return u ? objective_j(state, *u) : std::numeric_limits<double>::infinity();
    };

    const double j0 = objective_j(state, u0);
    const BfgsResult opt = bfgs_minimize(f, agent_from_matrix(u0.matrix()), config);
    std::optional<SemiUnitary> u = try_project_qr(matrix_from_agent(opt.x, k, r));
    if (!u) return {u0, j0, j0, opt.iterations, opt.reason};
    const double j = objective_j(state, *u);
    if (!(j <= j0)) return {u0, j0, j0, opt.iterations, opt.reason};
    return {*std::move(u), j, j0, opt.iterations, opt.reason};
}

}  // namespace convroof
