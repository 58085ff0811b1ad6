#include "renorm/operator.hpp"

#include "renorm/roots.hpp"

#include <cmath>

namespace renorm {

namespace {

// Source intervals for the factorized inverse branch: the Feigenbaum case
// lives on J = (-1.05, 0.05), the perturbed family on I_1 = (-1.23, 0.23).
constexpr double kFeigLo = -1.05, kFeigHi = 0.05;
constexpr double kPertLo = -1.23, kPertHi = 0.23;

bool trivial_tau(const Perturbation& tau) { return tau.delta == 0 && tau.eps_bar == 0; }

} // namespace

Iterate Iterate::initial(double lo, double hi, int degree) {
    Iterate it;
    // quadratic through u(-1/2) = 0, u(0) = 1 with s roughly at the target
    it.u = Cheb::sample([](double x) { return 2.0 * (x + 0.5) * (1.0 + 0.24 * x); }, lo, hi,
                        degree);
    it.refresh_derivatives();
    return it;
}

void Iterate::refresh_derivatives() {
    Cheb du = u.derivative();
    t = du(-0.5);
    s = du(0.0);
}

double feig_lambda_residual(const Cheb& u, double lambda) {
    Scaling sd = make_scaling(1.0, lambda, 0.0);
    double inner = u(sd.T(-std::sqrt(1.0 - lambda * lambda)));
    double outer = u(sd.T(std::sqrt(1.0 - inner)));
    return lambda - outer;
}

double solve_lambda_feig(const Cheb& u) {
    auto f = [&](double l) { return feig_lambda_residual(u, l); };
    // the root moves with u along the iteration; scan for a bracket first
    double prev = -0.7, fprev = f(prev);
    for (double l = -0.68; l < -0.01; l += 0.02) {
        double fl = f(l);
        if ((fprev > 0) != (fl > 0)) return bisect_root_numeric(f, prev, l);
        prev = l;
        fprev = fl;
    }
    throw NoConvergence("no sign change for the scaling equation in (-0.7, -0.01)");
}

double solve_e(const Cheb& u, double b, double lambda, double eps, const Perturbation& tau) {
    if (eps == 0 && trivial_tau(tau)) return 0.0;
    Scaling sd = make_scaling(b, lambda, eps);
    Cheb du = u.derivative();
    // damped fixed-point iteration of e = E(e); |E'| = O(eps) so this contracts
    double e = -0.5 * (sd.beta + sd.gamma);
    for (int i = 0; i < 200; ++i) {
        double Te = sd.T(e);
        double en = -du(Te) * 0.5 * sd.alpha * (eps - tau.dtau(u(Te)));
        if (std::fabs(en - e) < 1e-15) return en;
        e = en;
    }
    return e;
}

namespace {

double eval_L(const Cheb& u, const Scaling& sd, const Perturbation& tau) {
    double l = sd.lambda, ep = sd.eps, b = sd.b;
    double q = ep * l / (1 + ep) + l * l / ((1 + ep) * (1 + ep)) - l / (1 + ep) * tau(1.0);
    double mid = u(sd.T(-std::sqrt(b - q)));
    return u(sd.T(std::sqrt(b - mid)));
}

double eval_B(const Cheb& u, const Scaling& sd, const Perturbation& tau) {
    double l = sd.lambda, ep = sd.eps, b = sd.b, e = sd.e;
    double uTe = u(sd.T(e));
    double q = l / (1 + ep) * (b - e * e + ep * uTe - tau(uTe));
    return u(sd.T(-std::sqrt(b - q)));
}

} // namespace

Scaling solve_bl(const Cheb& u, double eps, const Perturbation& tau, double lambda0, double b0,
                 double damping, double tol) {
    (void)lambda0;
    double b = b0;
    // lambda solves L(lambda; b) = lambda, which does not involve e; bisecting
    // it to machine precision at every b keeps the outer loop free of jitter
    auto solve_lambda = [&](double bb) {
        auto f = [&](double l) { return eval_L(u, make_scaling(bb, l, eps), tau) - l; };
        double prev = 0, fprev = 0;
        bool have = false;
        for (double l = -0.7; l < -0.01; l += 0.02) {
            double fl = f(l);
            if (!std::isfinite(fl)) {
                have = false;
                continue;
            }
            if (have && (fprev > 0) != (fl > 0)) return bisect_root_numeric(f, prev, l);
            prev = l;
            fprev = fl;
            have = true;
        }
        throw NoConvergence("no sign change for the scaling equation in (-0.7, -0.01)");
    };
    auto residual_b = [&](double bb) {
        double lambda = solve_lambda(bb);
        Scaling sd = make_scaling(bb, lambda, eps);
        sd.e = solve_e(u, bb, lambda, eps, tau);
        return eval_B(u, sd, tau) - bb;
    };
    if (!(eps == 0 && trivial_tau(tau))) {
        // residual of the b equation controls the square-root branch switch
        // of V at x = e, so polish b to machine precision once a damped pass
        // has located it
        for (int i = 0; i < 500; ++i) {
            double rb = residual_b(b);
            if (std::fabs(rb) < tol) break;
            b += damping * rb;
            if (i == 499) throw NoConvergence("solve_bl did not reach the residual tolerance");
        }
        double h = std::max(64.0 * tol, 1e-10);
        try {
            b = bisect_root_numeric(residual_b, b - h, b + h, 1e-16);
        } catch (const NoSignChange&) {
            // residual already at its numeric floor inside the bracket; the
            // damped value of b stands
        } catch (const NoConvergence&) {
        }
    }
    double lambda = solve_lambda(b);
    Scaling sd = make_scaling(b, lambda, eps);
    sd.e = solve_e(u, b, lambda, eps, tau);
    return sd;
}

double eval_w_of_x(const Cheb& u, const Scaling& sd, const Perturbation& tau, double x) {
    double uTx = u(sd.T(x));
    return sd.b -
           sd.lambda / (1 + sd.eps) * (sd.b - x * x + sd.eps * uTx - tau(uTx));
}

double eval_V(const Cheb& u, const Scaling& sd, const Perturbation& tau, double x) {
    double w = eval_w_of_x(u, sd, tau, x);
    double inner = u(sd.T(-std::sqrt(std::max(0.0, w))));
    double sign = (sd.e - x) >= 0 ? 1.0 : -1.0;
    // b - inner pinches to 0 at x = e; clamp the rounding residue
    return sign * std::sqrt(std::max(0.0, sd.b - inner));
}

StepResult apply_T(const Iterate& it, double eps, const Perturbation& tau) {
    Scaling sd;
    if (eps == 0 && trivial_tau(tau)) {
        sd = make_scaling(1.0, solve_lambda_feig(it.u), 0.0);
        sd.e = 0;
    } else {
        sd = solve_bl(it.u, eps, tau, -0.3995, 1.0 + 0.01 * eps * eps);
    }

    const Cheb& u = it.u;
    auto raw = [&](double y) {
        double x = sd.Tinv(y);
        return (1.0 / sd.lambda) * u(sd.T(eval_V(u, sd, tau, x)));
    };
    Cheb un = Cheb::sample(raw, u.lo(), u.hi(), u.degree());
    // re-impose u(-1/2) = 0, u(0) = 1 affinely in the target coordinate
    double v0 = un(-0.5), v1 = un(0.0);
    double drift = std::max(std::fabs(v0), std::fabs(v1 - 1.0));
    std::vector<double> vals = un.values();
    for (double& v : vals) v = (v - v0) / (v1 - v0);
    StepResult r;
    r.next.u = Cheb::from_values(std::move(vals), u.lo(), u.hi());
    r.next.refresh_derivatives();
    r.sd = sd;
    r.norm_drift = drift;
    return r;
}

double eval_phi(const Cheb& u, const Scaling& sd, double x) {
    double p = sd.Tinv(u.inverse(x));
    return sd.b - p * p;
}

double family_residual(const Cheb& u, const Scaling& sd, const Perturbation& tau, int grid) {
    double worst = 0;
    for (int i = 0; i <= grid; ++i) {
        double x = (double)i / grid;
        double inner = eval_phi(u, sd, sd.lambda * x);
        double lhs = eval_phi(u, sd, x);
        double rhs = (1 + sd.eps) / sd.lambda * eval_phi(u, sd, inner) - sd.eps * x + tau(x);
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

FixedPointResult iterate_numeric(double eps, const Perturbation& tau, int degree, int max_iter,
                                 double tol) {
    bool feig = eps == 0 && trivial_tau(tau);
    double lo = feig ? kFeigLo : kPertLo, hi = feig ? kFeigHi : kPertHi;
    FixedPointResult r;
    r.it = Iterate::initial(lo, hi, degree);
    for (int i = 0; i < max_iter; ++i) {
        StepResult st = apply_T(r.it, eps, tau);
        r.sup_change = st.next.u.sup_diff(r.it.u);
        if (feig) {
            r.it = st.next;
        } else {
            // the wide-interval iteration has a weakly damped oscillatory
            // mode; averaging consecutive iterates removes it
            std::vector<double> va = r.it.u.values(), vb = st.next.u.values();
            for (size_t j = 0; j < va.size(); ++j) va[j] = 0.5 * (va[j] + vb[j]);
            r.it.u = Cheb::from_values(std::move(va), lo, hi);
            r.it.refresh_derivatives();
        }
        r.sd = st.sd;
        r.iterations = i + 1;
        if (r.sup_change < tol) {
            r.it = st.next;
            r.converged = true;
            break;
        }
    }
    r.family_residual = family_residual(r.it.u, r.sd, tau);
    r.critical_point = r.it.u(r.sd.T(0.0));
    return r;
}

} // namespace renorm
