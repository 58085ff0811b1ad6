#pragma once

#include "renorm/interval.hpp"

#include <functional>

namespace renorm {

struct NoSignChange : IntervalError {
    NoSignChange() : IntervalError("bracketing endpoints do not have certified opposite signs") {}
};
struct NoRoot : IntervalError {
    using IntervalError::IntervalError;
};

// Certified bracketed bisection.  f is an interval extension; the returned
// interval [a,b] has width <= tol (or as tight as the enclosures permit) and
// carries a proof: the enclosures of f at the endpoints have definite opposite
// signs, so a root lies inside by the intermediate value theorem.
template <class F>
Interval bisect_root(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
    auto sign_at = [&](double x) -> int {
        Interval v = f(Interval(x));
        if (v.is_positive()) return 1;
        if (v.is_negative()) return -1;
        return 0;
    };
    int sa = sign_at(a), sb = sign_at(b);
    if (sa == 0 || sb == 0 || sa == sb) throw NoSignChange();
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        int sm = sign_at(m);
        if (sm == 0) break;  // enclosure at m straddles 0: keep the certified bracket
        if (sm == sa) a = m;
        else b = m;
    }
    return Interval(a, b);
}

// Plain double-precision bisection for the non-rigorous numeric paths.
template <class F>
double bisect_root_numeric(F&& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw NoSignChange();
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        double fm = f(m);
        if (fm == 0) return m;
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; }
        else b = m;
    }
    return 0.5 * (a + b);
}

} // namespace renorm
