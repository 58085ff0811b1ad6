#pragma once

#include "renorm/cheb.hpp"
#include "renorm/interval.hpp"

#include <functional>

namespace renorm {

inline double rsqrt(double x) { return std::sqrt(x); }
inline Interval rsqrt(const Interval& a) {
    return iv_sqrt(Interval(std::max(0.0, a.lo()), std::max(0.0, a.hi())));
}

// Affine conjugacy data: T(x) = -alpha (x + beta), alpha = 1/(2 beta - 2 gamma),
// beta = sqrt(b - lambda/(1+eps)), gamma = sqrt(b - 1).  Requires lambda < 0,
// b >= 1 up to rounding.
template <class R>
struct ScalingT {
    R b, lambda, eps;
    R alpha, beta, gamma;
    R e{};  // branch switch point; 0 in the Feigenbaum case

    R T(const R& x) const { return -alpha * (x + beta); }
    R Tinv(const R& y) const { return -y / alpha - beta; }
};

template <class R>
ScalingT<R> make_scaling(const R& b, const R& lambda, const R& eps) {
    ScalingT<R> sd;
    sd.b = b;
    sd.lambda = lambda;
    sd.eps = eps;
    sd.beta = rsqrt(b - lambda / (1.0 + eps));
    sd.gamma = rsqrt(b - 1.0);
    sd.alpha = 1.0 / (2.0 * sd.beta - 2.0 * sd.gamma);
    return sd;
}

using Scaling = ScalingT<double>;
using ScalingBox = ScalingT<Interval>;

// Analytic perturbation term with declared sup bounds.
struct Perturbation {
    std::function<double(double)> tau;
    std::function<double(double)> dtau;
    double delta = 0;    // sup |tau|
    double eps_bar = 0;  // sup |tau'|

    static Perturbation zero() {
        return {[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 0.0};
    }
    double operator()(double x) const { return tau(x); }
};

// Numeric (non-rigorous) iterate of the factorized inverse branch.
struct Iterate {
    Cheb u;
    double t = 0, s = 0;  // u'(-1/2), u'(0)

    static Iterate initial(double lo, double hi, int degree);
    void refresh_derivatives();
};

struct OperatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : OperatorError {
    using OperatorError::OperatorError;
};

// lambda - u(T(sqrt(1 - u(T(-sqrt(1 - lambda^2)))))) at b = 1, eps = 0
double feig_lambda_residual(const Cheb& u, double lambda);
double solve_lambda_feig(const Cheb& u);

double solve_e(const Cheb& u, double b, double lambda, double eps, const Perturbation& tau);
// Damped fixed-point iteration for (lambda, b); e is re-solved along the way.
Scaling solve_bl(const Cheb& u, double eps, const Perturbation& tau, double lambda0, double b0,
                 double damping = 0.5, double tol = 1e-12);

// w(T(x)) for the branch map
double eval_w_of_x(const Cheb& u, const Scaling& sd, const Perturbation& tau, double x);
double eval_V(const Cheb& u, const Scaling& sd, const Perturbation& tau, double x);

// One application of the operator; the normalization u(-1/2)=0, u(0)=1 is
// re-imposed affinely and the drift is reported.
struct StepResult {
    Iterate next;
    Scaling sd;
    double norm_drift;
};
StepResult apply_T(const Iterate& it, double eps, const Perturbation& tau);

struct FixedPointResult {
    Iterate it;
    Scaling sd;
    double sup_change = 0;
    double family_residual = 0;  // sup residual of the functional equation
    double critical_point = 0;
    int iterations = 0;
    bool converged = false;
};

// phi(x) = b - Tinv(u^{-1}(x))^2 assembled from the inverse branches.
double eval_phi(const Cheb& u, const Scaling& sd, double x);
double family_residual(const Cheb& u, const Scaling& sd, const Perturbation& tau, int grid = 200);

FixedPointResult iterate_numeric(double eps, const Perturbation& tau, int degree = 100,
                                 int max_iter = 400, double tol = 1e-11);

} // namespace renorm
