#include "renorm/ts_region.hpp"

#include "renorm/roots.hpp"

#include <cmath>
#include <fstream>

namespace renorm {

Interval chart_upper_at_left(int k, const Interval& t, const Interval& s) {
    BoundSet b = make_bounds_chain(t, s);
    return b.fs[k - 2].ib.upper(Interval(-1.0));
}

Interval chart_lower_at_right(int k, const Interval& t, const Interval& s) {
    BoundSet b = make_bounds_chain(t, s);
    return b.fs[k - 2].ib.lower(Interval(1.0));
}

namespace {

double eval_or_nan(const std::function<double(double)>& f, double s) {
    try {
        return f(s);
    } catch (const IntervalError&) {
        // inadmissible (t, s): the envelope geometry does not close
        return std::nan("");
    }
}

// Root of f(s) = 0 in s; seeded near a previous root when available, falling
// back to a full scan.  f is increasing in s across its zero for both curve
// families.
double curve_root(const std::function<double(double)>& f, double seed) {
    double a = std::nan(""), b = std::nan(""), fa = 0, fb = 0;
    if (std::isfinite(seed)) {
        for (double h = 1e-4; h <= 0.3; h *= 2) {
            double flo = eval_or_nan(f, seed - h), fhi = eval_or_nan(f, seed + h);
            if (std::isfinite(flo) && std::isfinite(fhi) && (flo > 0) != (fhi > 0)) {
                a = seed - h;
                b = seed + h;
                fa = flo;
                fb = fhi;
                break;
            }
        }
    }
    if (!std::isfinite(a)) {
        double prev = std::nan(""), fprev = std::nan("");
        for (double s = 1.7; s <= 3.4; s += 0.005) {
            double fs = eval_or_nan(f, s);
            if (std::isfinite(fprev) && std::isfinite(fs) && (fprev > 0) != (fs > 0)) {
                a = prev;
                b = s;
                fa = fprev;
                fb = fs;
                break;
            }
            if (std::isfinite(fs)) {
                prev = s;
                fprev = fs;
            }
        }
    }
    if (!std::isfinite(a)) throw NoRoot("no admissible s-bracket for the boundary curve");
    (void)fb;
    for (int i = 0; i < 80 && b - a > 1e-14; ++i) {
        double m = 0.5 * (a + b);
        double fm = eval_or_nan(f, m);
        if (!std::isfinite(fm)) throw NoRoot("curve bisection hit an inadmissible point");
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double curve_Z_seeded(int k, double t, double seed) {
    return curve_root(
        [k, t](double s) {
            return chart_upper_at_left(k, Interval(t), Interval(s)).mid() + 1.0;
        },
        seed);
}

double curve_C_seeded(int k, double t, double seed) {
    return curve_root(
        [k, t](double s) {
            return chart_lower_at_right(k, Interval(t), Interval(s)).mid() - 1.0;
        },
        seed);
}

} // namespace

double curve_Z(int k, double t) { return curve_Z_seeded(k, t, std::nan("")); }
double curve_C(int k, double t) { return curve_C_seeded(k, t, std::nan("")); }

double DerivativeRegion::lower(double t) const {
    size_t n = t_nodes.size();
    if (t <= t_nodes.front()) return s_lo.front();
    if (t >= t_nodes.back()) return s_lo.back();
    for (size_t i = 1; i < n; ++i)
        if (t <= t_nodes[i]) {
            double w = (t - t_nodes[i - 1]) / (t_nodes[i] - t_nodes[i - 1]);
            return s_lo[i - 1] + w * (s_lo[i] - s_lo[i - 1]);
        }
    return s_lo.back();
}

double DerivativeRegion::upper(double t) const {
    size_t n = t_nodes.size();
    if (t <= t_nodes.front()) return s_hi.front();
    if (t >= t_nodes.back()) return s_hi.back();
    for (size_t i = 1; i < n; ++i)
        if (t <= t_nodes[i]) {
            double w = (t - t_nodes[i - 1]) / (t_nodes[i] - t_nodes[i - 1]);
            return s_hi[i - 1] + w * (s_hi[i] - s_hi[i - 1]);
        }
    return s_hi.back();
}

bool DerivativeRegion::contains(double t, double s) const {
    if (t < t_lo() || t > t_hi()) return false;
    return s > lower(t) && s < upper(t);
}

DerivativeRegion build_S_tilde(int nodes) {
    // track roots along t so each node only needs a local bracket
    double z2 = curve_Z(2, kTMin), z3 = curve_Z(3, kTMin);
    double c2 = curve_C(2, kTMin), c3 = curve_C(3, kTMin);
    // the steep curve Z3 exits the admissible band quickly; once it does, the
    // lower boundary is Z2 alone
    auto z3_or_low = [&](double t, double seed) {
        try {
            return curve_Z_seeded(3, t, seed);
        } catch (const NoRoot&) {
            return -1e300;
        }
    };
    auto span = [&](double t, double& lo, double& hi) {
        z2 = curve_Z_seeded(2, t, z2);
        double z3t = z3_or_low(t, z3 > 0 ? z3 : 2.2);
        if (z3t > 0) z3 = z3t;
        c2 = curve_C_seeded(2, t, c2);
        c3 = curve_C_seeded(3, t, c3);
        lo = std::max(z2, z3t);
        hi = std::min(c2, c3);
    };
    // locate the right tip where the band closes
    double t_right = kTMin;
    double lo, hi;
    double step = 1e-3;
    for (double t = kTMin;; t += step) {
        span(t, lo, hi);
        if (hi - lo <= 0) {
            double a = t_right, b = t;
            for (int i = 0; i < 50 && b - a > 1e-10; ++i) {
                double m = 0.5 * (a + b);
                span(m, lo, hi);
                (hi - lo > 0 ? a : b) = m;
            }
            t_right = a;
            break;
        }
        t_right = t;
        if (t > kTStar + 0.1) throw EmptyRegion("right tip of the derivative region not found");
    }
    DerivativeRegion r;
    for (int i = 0; i <= nodes; ++i) {
        double t = kTMin + (t_right - kTMin) * i / nodes;
        span(t, lo, hi);
        if (hi <= lo) throw EmptyRegion("derivative region band is empty at an interior node");
        // interval re-verification of the node residuals on the active curves
        Interval rz = (lo == z2 ? chart_upper_at_left(2, Interval(t), Interval(lo))
                                : chart_upper_at_left(3, Interval(t), Interval(lo))) +
                      Interval(1.0);
        Interval rc = (hi == c2 ? chart_lower_at_right(2, Interval(t), Interval(hi))
                                : chart_lower_at_right(3, Interval(t), Interval(hi))) -
                      Interval(1.0);
        if (iv_abs(rz).lo() > 1e-8 || iv_abs(rc).lo() > 1e-8)
            throw VerificationFailed("boundary curve node residual fails re-verification");
        r.t_nodes.push_back(t);
        r.s_lo.push_back(lo);
        r.s_hi.push_back(hi);
    }
    return r;
}

InvarianceReport check_S_invariance(const DerivativeRegion& region, const LambdaRange& lambda_range,
                                    int s_cells) {
    InvarianceReport rep;
    rep.min_margin = 1e300;
    size_t n = region.t_nodes.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        Interval tc(region.t_nodes[i], region.t_nodes[i + 1]);
        double slo = std::min(region.s_lo[i], region.s_lo[i + 1]);
        double shi = std::max(region.s_hi[i], region.s_hi[i + 1]);
        for (int j = 0; j < s_cells; ++j) {
            Interval sc(slo + (shi - slo) * j / s_cells, slo + (shi - slo) * (j + 1) / s_cells);
            Interval lam = lambda_range(tc, sc);
            double margin = (transfer_T(lam, tc, sc) - Interval(kTMin)).lo();
            rep.min_margin = std::min(rep.min_margin, margin);
            ++rep.cells;
        }
    }
    rep.ok = rep.min_margin > 0;
    return rep;
}

std::pair<Interval, Interval> target_intervals(const Interval& t) {
    return {range_I2(t), range_I3(t)};
}

double target_width_slope(int k) {
    const double l1 = 1.23, r1 = 0.23;
    double c = k == 2 ? 0.16 : 3.5;
    // width(t) = 2 m_k + c (t - t*)((r1 + 0.5) + (l1 - 0.5)); the slope is
    // c (r1 + l1), nonzero with the printed endpoint formulas
    return c * (r1 + l1);
}

void write_region_csv(const DerivativeRegion& region, const std::string& path) {
    std::ofstream os(path);
    os << "t,s_lo,s_hi,Z2,C2\n";
    os.precision(17);
    for (size_t i = 0; i < region.t_nodes.size(); ++i) {
        double t = region.t_nodes[i];
        os << t << "," << region.s_lo[i] << "," << region.s_hi[i] << "," << curve_Z(2, t) << ","
           << curve_C(2, t) << "\n";
    }
}

} // namespace renorm
