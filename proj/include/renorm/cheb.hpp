#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace renorm {

// Barycentric Chebyshev interpolant on [a, b] through the extrema nodes
// x_j = cos(j pi / N).  Double precision; used only on the numeric paths.
class Cheb {
  public:
    Cheb() = default;

    template <class F>
    static Cheb sample(F&& f, double a, double b, int degree) {
        Cheb c;
        c.init_nodes(a, b, degree);
        for (int j = 0; j <= degree; ++j) c.v_[j] = f(c.x_[j]);
        return c;
    }
    static Cheb from_values(std::vector<double> values, double a, double b) {
        Cheb c;
        c.init_nodes(a, b, (int)values.size() - 1);
        c.v_ = std::move(values);
        return c;
    }

    double lo() const { return a_; }
    double hi() const { return b_; }
    int degree() const { return (int)x_.size() - 1; }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return v_; }

    double operator()(double x) const {
        // barycentric formula; exact at nodes
        double num = 0, den = 0;
        for (size_t j = 0; j < x_.size(); ++j) {
            double dx = x - x_[j];
            if (dx == 0) return v_[j];
            double q = w_[j] / dx;
            num += q * v_[j];
            den += q;
        }
        return num / den;
    }

    // Interpolant of the derivative via the spectral differentiation matrix.
    Cheb derivative() const {
        int n = degree();
        std::vector<double> dv(n + 1, 0.0);
        for (int i = 0; i <= n; ++i) {
            double diag = 0;
            for (int j = 0; j <= n; ++j) {
                if (i == j) continue;
                double dij = (w_[j] / w_[i]) / (x_[i] - x_[j]);
                dv[i] += dij * v_[j];
                diag -= dij;
            }
            dv[i] += diag * v_[i];
        }
        return from_values(std::move(dv), a_, b_);
    }

    double deriv_at(double x) const { return derivative()(x); }

    // Inverse for a monotone interpolant; y must be between the end values.
    double inverse(double y) const {
        double fa = v_.back(), fb = v_.front();  // x_ is decreasing: x_[0] = b
        bool increasing = fb > fa;
        double lo = a_, hi = b_;
        if ((increasing && (y < fa || y > fb)) || (!increasing && (y > fa || y < fb)))
            throw std::domain_error("Cheb::inverse target outside range");
        for (int i = 0; i < 200 && hi - lo > 1e-15 * (1 + std::fabs(lo)); ++i) {
            double m = 0.5 * (lo + hi);
            double fm = (*this)(m);
            if ((fm < y) == increasing) lo = m;
            else hi = m;
        }
        return 0.5 * (lo + hi);
    }

    double sup_diff(const Cheb& o) const {
        double d = 0;
        for (size_t j = 0; j < v_.size(); ++j) d = std::max(d, std::fabs(v_[j] - o.v_[j]));
        return d;
    }

  private:
    void init_nodes(double a, double b, int degree) {
        if (degree < 1) throw std::invalid_argument("Cheb degree must be >= 1");
        a_ = a;
        b_ = b;
        x_.resize(degree + 1);
        v_.resize(degree + 1);
        w_.resize(degree + 1);
        for (int j = 0; j <= degree; ++j) {
            double c = std::cos(j * M_PI / degree);
            x_[j] = 0.5 * (a + b) + 0.5 * (b - a) * c;
            w_[j] = (j % 2 == 0 ? 1.0 : -1.0);
        }
        w_[0] *= 0.5;
        w_[degree] *= 0.5;
    }

    double a_ = -1, b_ = 1;
    std::vector<double> x_, v_, w_;
};

} // namespace renorm
