#pragma once

#include "renorm/bounds.hpp"

#include <functional>
#include <string>
#include <vector>

namespace renorm {

struct EmptyRegion : IntervalError {
    using IntervalError::IntervalError;
};
struct VerificationFailed : IntervalError {
    using IntervalError::IntervalError;
};

// Endpoint functionals of the chain envelopes whose zero level sets bound the
// realizable derivative region: the upper envelope of factor k at the left
// chart endpoint and the lower envelope at the right chart endpoint.
Interval chart_upper_at_left(int k, const Interval& t, const Interval& s);
Interval chart_lower_at_right(int k, const Interval& t, const Interval& s);

// s-roots of chart_upper_at_left = -1 and chart_lower_at_right = +1; the
// class over factor k is nonempty only for s above the first curve and below
// the second.
double curve_Z(int k, double t);
double curve_C(int k, double t);

// Leftmost admissible t of the invariant subregion.
inline constexpr double kTMin = kTStar - 0.0004;

// Polygonal region between s_lo = max(Z2, Z3) and s_hi = min(C2, C3) over
// [kTMin, t_hi], where t_hi is where the two boundaries meet.
struct DerivativeRegion {
    std::vector<double> t_nodes;
    std::vector<double> s_lo, s_hi;

    double t_lo() const { return t_nodes.front(); }
    double t_hi() const { return t_nodes.back(); }
    double lower(double t) const;
    double upper(double t) const;
    bool contains(double t, double s) const;
};

DerivativeRegion build_S_tilde(int nodes = 64);

// Derivative at -1/2 of the renormalized function, as a function of the
// scaling constant and the current derivative pair.
inline Interval transfer_T(const Interval& lambda, const Interval& t, const Interval& s) {
    return t * s / (4.0 * lambda * (lambda - 1.0));
}

// Interval-valued scaling-constant range attached to a derivative cell.
using LambdaRange = std::function<Interval(const Interval& t, const Interval& s)>;

struct InvarianceReport {
    bool ok = false;
    double min_margin = 0;
    int cells = 0;
};

// Verifies transfer_T(lambda, t, s) > kTMin over every covering cell of the
// region and every lambda in the attached range.
InvarianceReport check_S_invariance(const DerivativeRegion& region, const LambdaRange& lambda_range,
                                    int s_cells = 8);

// The t-dependent target intervals of the two factorizations (range_I2/I3)
// and the t-slope of their widths.  The printed endpoint formulas make the
// width affine in t with a nonzero slope; the slope is reported rather than
// normalized away.
std::pair<Interval, Interval> target_intervals(const Interval& t);
double target_width_slope(int k);

void write_region_csv(const DerivativeRegion& region, const std::string& path);

} // namespace renorm
