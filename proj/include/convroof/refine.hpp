#pragma once

#include <functional>

#include "convroof/linalg.hpp"
#include "convroof/mixed_state.hpp"

namespace convroof {

struct RefineConfig {
    int maxIter = 500;
    double gradTol = 1e-9;      // sup-norm of the gradient
    double stepTol = 1e-12;     // sup-norm of the accepted step
    double fdStep = 1e-6;       // central-difference step, in [1e-9, 1e-4]
    double armijo = 1e-4;       // sufficient-decrease constant
    double shrink = 0.5;        // backtracking factor
    int maxBacktracks = 60;
    int threads = 1;            // workers for the finite-difference coordinates

    void validate() const;  // throws InputError
};

using RealFunction = std::function<double(const RealVector&)>;

/// Central differences (f(x + h e_j) - f(x - h e_j)) / 2h. Throws NonFinite.
RealVector fd_gradient(const RealFunction& f, const RealVector& x, double h, int threads = 1);

enum class BfgsStop { GradientTolerance, StepTolerance, MaxIterations, LineSearchFailed };

struct BfgsResult {
    RealVector x;
    double f;
    int iterations;
    BfgsStop reason;

    bool line_search_failed() const { return reason == BfgsStop::LineSearchFailed; }
};

/// BFGS with an inverse-Hessian update and Armijo backtracking. Non-finite trial
/// values are rejected as steps. Returns the best point found; f(x*) <= f(x0).
BfgsResult bfgs_minimize(const RealFunction& f, const RealVector& x0, const RefineConfig& config);

struct RefineResult {
    SemiUnitary u;
    double j;
    double initialJ;
    int iterations;
    BfgsStop reason;
};

/// Minimizes x -> J(state, project_qr(reshape(x))) starting from U0.
RefineResult refine_unitary(const MixedState& state, const SemiUnitary& u0, const RefineConfig& config);

}  // namespace convroof
