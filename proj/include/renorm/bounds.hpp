#pragma once

#include "renorm/conformal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace renorm {

struct OutOfDomain : IntervalError {
    using IntervalError::IntervalError;
};
struct AuxSolveFailed : IntervalError {
    using IntervalError::IntervalError;
};
struct NoIntersection : IntervalError {
    using IntervalError::IntervalError;
};

// Interpolation and derivative data for a normalized univalent-factor bound
// problem on (-1, 1): f(c1) = c3, f(c2) = c4, f'(c1) = T, f'(c2) = S, and
// global range bounds mm <= f <= MM on the real slice.
struct A1Context {
    Interval c1, c2, c3, c4;
    Interval T, S;
    Interval mm, MM;

    void validate() const;
};

// Classical a-priori bounds: value envelope from the two-sided chord
// comparisons and the logarithmic-derivative bracket
//   (1+c1)/((x-c1)(1+x)) <= f'(x)/(f(x)-c3) <= (1-c1)/((x-c1)(1-x)).
struct ClassicalBounds {
    Interval f_lo, f_hi;
    Interval ratio_lo, ratio_hi;
};
ClassicalBounds classical_bounds(const A1Context& c, const Interval& x);

// Affine envelope of f'' on [c1, c2] implied by convexity of f' and the
// second-derivative inequality:
//   m(x) = -2((c2-x)T + (x-c1)S)/((c2-c1)(1+c1)) <= f''(x),
//   f''(x) <= 2((c2-x)T + (x-c1)S)/((c2-c1)(1-c2)) = M(x).
void second_derivative_envelope(const A1Context& c, const Interval& x, Interval& m, Interval& M);

enum class Direction { lower, upper };
struct Tangent {
    Interval slope;
    Interval break_point;
};
// Break-point construction for the middle piece: the minimal-growth derivative
// curve is followed until a straight line to the matching endpoint slope makes
// the total integral equal c4 - c3.
Tangent tangent_construction(const A1Context& c, Direction dir);

// Largest admissible f''(c1) (and the analogue at c2) from the Schwarzian
// comparison; closed-form roots of the defining quadratics.
Interval solve_Z(const A1Context& c);
Interval solve_X(const A1Context& c);

// The (t, s)-parametrized piecewise envelope pair: three pieces on (-1, c1),
// (c1, c2), (c2, 1), pinching to the interpolation data at c1 and c2.
struct ImprovedBounds {
    A1Context ctx;
    Interval Z, X;
    Tangent lo_tan, hi_tan;

    static ImprovedBounds make(const A1Context& ctx);

    Interval lower(const Interval& x) const;
    Interval upper(const Interval& x) const;
    // Upper bound on f' for x strictly right of c1 (the only range the
    // pipeline queries); from the logarithmic-derivative bracket applied to
    // the envelope.
    Interval deriv_majorant(const Interval& x) const;
};

// Conformal chart pair transferring bounds between the working space and the
// normalized coordinates: phi1 maps the source interval into (-1,1), theta
// maps bound values back into the target interval.
struct Chart {
    std::function<Interval(const Interval&)> phi1;
    std::function<Interval(const Interval&)> phi1_deriv;
    std::function<Interval(const Interval&)> theta;
    std::function<Interval(const Interval&)> theta_deriv;
};

struct Factorization {
    Chart chart;
    ImprovedBounds ib;
};

// Evaluable enclosure of all admissible functions of the working space with
// derivative data (t, s): um <= u <= Um on the source interval, u' <= Du on
// (0, r1).
struct BoundSet {
    std::vector<Factorization> fs;
    Interval t, s;
    double source_lo = 0, source_hi = 0;

    Interval um(const Interval& x) const;
    Interval Um(const Interval& x) const;
    Interval Du(const Interval& x) const;
};

// Unperturbed-family working space: J = (-1.05, 0.05), range (-m, m) with
// m = 1.1593855, slit data d-bar = 0.5 + i*im_dbar, single factorization
// through the Moebius-square-root charts.
BoundSet make_bounds_feig(const Interval& t, const Interval& s,
                          const Interval& im_dbar = Interval(0.3524));

// Perturbed-family working space: I1 = (-1.23, 0.23), two factorizations
// through the lens chains with t-dependent target ranges I2(t), I3(t).
BoundSet make_bounds_chain(const Interval& t, const Interval& s);

// t-dependent target ranges of the perturbed-family working space.
Interval range_I2(const Interval& t);
Interval range_I3(const Interval& t);

// Reference fixed-point data used to center the t-dependent ranges.
inline constexpr double kTStar = 1.9142899327;
inline constexpr double kSStar = 2.2366548836;

void write_bounds_csv(const BoundSet& b, const std::string& path, int grid);

} // namespace renorm
