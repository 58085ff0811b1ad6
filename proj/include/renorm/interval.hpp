#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace renorm {

struct IntervalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByIntervalContainingZero : IntervalError {
    DivisionByIntervalContainingZero() : IntervalError("division by interval containing zero") {}
};
struct NegativeArgument : IntervalError {
    NegativeArgument() : IntervalError("sqrt of interval with negative lower endpoint") {}
};
struct BranchCutStraddle : IntervalError {
    BranchCutStraddle() : IntervalError("box straddles the branch cut and no side was selected") {}
};

namespace detail {

inline double down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
// libm transcendentals are faithful but not correctly rounded; pad a few ulps.
inline double down_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = down(x);
    return x;
}
inline double up_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = up(x);
    return x;
}
constexpr int kLibmPad = 4;

} // namespace detail

// Closed real interval [lo, hi] with outward-rounded arithmetic: every
// operation returns an interval that contains the exact real result.
class Interval {
  public:
    Interval() : lo_(0), hi_(0) {}
    explicit Interval(double x) : lo_(x), hi_(x) { check(); }
    Interval(double lo, double hi) : lo_(lo), hi_(hi) { check(); }

    static Interval hull(double a, double b) {
        return Interval(std::min(a, b), std::max(a, b));
    }
    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }
    // Enclosure of pi.
    static Interval pi() {
        return Interval(detail::down(std::numbers::pi), detail::up(std::numbers::pi));
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const { return contains(0.0) ? 0.0 : std::min(std::fabs(lo_), std::fabs(hi_)); }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool strictly_contains(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
    bool subset_of(const Interval& o) const { return o.contains(*this); }
    bool strict_subset_of(const Interval& o) const { return o.strictly_contains(*this); }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool is_positive() const { return lo_ > 0; }
    bool is_negative() const { return hi_ < 0; }

    // Intersection; throws if empty.
    Interval intersect(const Interval& o) const {
        double l = std::max(lo_, o.lo_), h = std::min(hi_, o.hi_);
        if (l > h) throw IntervalError("empty intersection");
        return Interval(l, h);
    }

    Interval operator-() const { return Interval(-hi_, -lo_); }

    Interval operator+(const Interval& o) const {
        return Interval(detail::down(lo_ + o.lo_), detail::up(hi_ + o.hi_));
    }
    Interval operator-(const Interval& o) const {
        return Interval(detail::down(lo_ - o.hi_), detail::up(hi_ - o.lo_));
    }
    Interval operator*(const Interval& o) const {
        double p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
        return Interval(detail::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                        detail::up(std::max(std::max(p1, p2), std::max(p3, p4))));
    }
    Interval operator/(const Interval& o) const {
        if (o.contains(0.0)) throw DivisionByIntervalContainingZero();
        double p1 = lo_ / o.lo_, p2 = lo_ / o.hi_, p3 = hi_ / o.lo_, p4 = hi_ / o.hi_;
        return Interval(detail::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                        detail::up(std::max(std::max(p1, p2), std::max(p3, p4))));
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    friend Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
    friend Interval operator+(const Interval& a, double b) { return a + Interval(b); }
    friend Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
    friend Interval operator-(const Interval& a, double b) { return a - Interval(b); }
    friend Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
    friend Interval operator*(const Interval& a, double b) { return a * Interval(b); }
    friend Interval operator/(double a, const Interval& b) { return Interval(a) / b; }
    friend Interval operator/(const Interval& a, double b) { return a / Interval(b); }

    friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
        return os << "[" << iv.lo_ << ", " << iv.hi_ << "]";
    }

  private:
    void check() const {
        if (!(lo_ <= hi_)) throw IntervalError("invalid interval endpoints");
    }
    double lo_, hi_;
};

// Tight square: [a,b]^2 respecting sign, never negative.
inline Interval sqr(const Interval& a) {
    double l2 = a.lo() * a.lo(), h2 = a.hi() * a.hi();
    double hi = detail::up(std::max(l2, h2));
    double lo = a.contains(0.0) ? 0.0 : detail::down(std::min(l2, h2));
    return Interval(lo, hi);
}

inline Interval iv_abs(const Interval& a) {
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return Interval(0.0, std::max(-a.lo(), a.hi()));
}

inline Interval iv_sqrt(const Interval& a) {
    if (a.lo() < 0) throw NegativeArgument();
    double lo = a.lo() == 0 ? 0.0 : detail::down(std::sqrt(a.lo()));
    double hi = detail::up(std::sqrt(a.hi()));
    return Interval(std::max(lo, 0.0), hi);
}

inline Interval iv_exp(const Interval& a) {
    return Interval(std::max(0.0, detail::down_n(std::exp(a.lo()), detail::kLibmPad)),
                    detail::up_n(std::exp(a.hi()), detail::kLibmPad));
}

inline Interval iv_log(const Interval& a) {
    if (a.lo() <= 0) throw NegativeArgument();
    return Interval(detail::down_n(std::log(a.lo()), detail::kLibmPad),
                    detail::up_n(std::log(a.hi()), detail::kLibmPad));
}

// x^kappa for x >= 0 (x > 0 when kappa may be negative), via exp(kappa log x).
// A lower endpoint within rounding dust of 0 is treated as a clamped zero:
// the true range then lies in [0, x.hi()] and 0^kappa = 0 for kappa > 0.
inline Interval iv_pow(const Interval& x, const Interval& kappa) {
    if (x.lo() <= 0.0 && kappa.lo() > 0) {
        if (x.lo() < -1e-9) throw NegativeArgument();
        if (x.hi() <= 0.0) return Interval(0.0);
        return Interval(0.0, iv_exp(iv_log(Interval(x.hi())) * kappa).hi());
    }
    return iv_exp(iv_log(x) * kappa);
}
inline Interval iv_pow(const Interval& x, double kappa) { return iv_pow(x, Interval(kappa)); }

inline Interval iv_atan(const Interval& a) {
    return Interval(detail::down_n(std::atan(a.lo()), detail::kLibmPad),
                    detail::up_n(std::atan(a.hi()), detail::kLibmPad));
}

// tan on an interval strictly inside (-pi/2, pi/2).
inline Interval iv_tan(const Interval& a) {
    double half_pi = std::numbers::pi / 2;
    if (a.lo() <= -half_pi || a.hi() >= half_pi)
        throw IntervalError("tan argument outside (-pi/2, pi/2)");
    return Interval(detail::down_n(std::tan(a.lo()), detail::kLibmPad),
                    detail::up_n(std::tan(a.hi()), detail::kLibmPad));
}

namespace detail {
// Does [lo, hi] contain a point congruent to c (mod 2pi)?  Padded outward.
inline bool range_hits(double lo, double hi, double c) {
    const double two_pi = 2 * std::numbers::pi;
    double k = std::ceil((lo - c) / two_pi - 1e-12);
    double x = c + k * two_pi;
    return x <= hi + 1e-12;
}
} // namespace detail

inline Interval iv_sin(const Interval& a) {
    const double pi = std::numbers::pi;
    if (a.width() >= 2 * pi) return Interval(-1.0, 1.0);
    double lo = std::min(std::sin(a.lo()), std::sin(a.hi()));
    double hi = std::max(std::sin(a.lo()), std::sin(a.hi()));
    if (detail::range_hits(a.lo(), a.hi(), pi / 2)) hi = 1.0;
    if (detail::range_hits(a.lo(), a.hi(), -pi / 2)) lo = -1.0;
    return Interval(std::max(-1.0, detail::down_n(lo, detail::kLibmPad)),
                    std::min(1.0, detail::up_n(hi, detail::kLibmPad)));
}

inline Interval iv_cos(const Interval& a) {
    const double pi = std::numbers::pi;
    if (a.width() >= 2 * pi) return Interval(-1.0, 1.0);
    double lo = std::min(std::cos(a.lo()), std::cos(a.hi()));
    double hi = std::max(std::cos(a.lo()), std::cos(a.hi()));
    if (detail::range_hits(a.lo(), a.hi(), 0.0)) hi = 1.0;
    if (detail::range_hits(a.lo(), a.hi(), pi)) lo = -1.0;
    return Interval(std::max(-1.0, detail::down_n(lo, detail::kLibmPad)),
                    std::min(1.0, detail::up_n(hi, detail::kLibmPad)));
}

enum class CutSide { none, upper, lower };

// Axis-aligned rectangle { re + i*im } with enclosure semantics: the result of
// every operation contains the exact complex image of every member point.
struct ComplexBox {
    Interval re, im;

    ComplexBox() = default;
    ComplexBox(const Interval& r, const Interval& i) : re(r), im(i) {}
    ComplexBox(double r, double i) : re(r), im(i) {}

    static ComplexBox point(double r, double i = 0.0) { return ComplexBox(Interval(r), Interval(i)); }
    static ComplexBox hull(const ComplexBox& a, const ComplexBox& b) {
        return ComplexBox(Interval::hull(a.re, b.re), Interval::hull(a.im, b.im));
    }

    bool contains(double r, double i) const { return re.contains(r) && im.contains(i); }
    bool contains(const ComplexBox& o) const { return re.contains(o.re) && im.contains(o.im); }
    bool intersects(const ComplexBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }

    ComplexBox conj() const { return ComplexBox(re, -im); }
    ComplexBox operator-() const { return ComplexBox(-re, -im); }

    ComplexBox operator+(const ComplexBox& o) const { return ComplexBox(re + o.re, im + o.im); }
    ComplexBox operator-(const ComplexBox& o) const { return ComplexBox(re - o.re, im - o.im); }
    ComplexBox operator*(const ComplexBox& o) const {
        return ComplexBox(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    ComplexBox operator/(const ComplexBox& o) const {
        Interval d = sqr(o.re) + sqr(o.im);
        if (d.contains(0.0)) throw DivisionByIntervalContainingZero();
        return ComplexBox((re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d);
    }

    friend ComplexBox operator+(const Interval& a, const ComplexBox& b) {
        return ComplexBox(a + b.re, b.im);
    }
    friend ComplexBox operator-(const Interval& a, const ComplexBox& b) {
        return ComplexBox(a - b.re, -b.im);
    }
    friend ComplexBox operator*(const Interval& a, const ComplexBox& b) {
        return ComplexBox(a * b.re, a * b.im);
    }
    friend ComplexBox operator*(double a, const ComplexBox& b) { return Interval(a) * b; }
    friend ComplexBox operator/(const ComplexBox& a, const Interval& b) {
        return ComplexBox(a.re / b, a.im / b);
    }

    friend std::ostream& operator<<(std::ostream& os, const ComplexBox& z) {
        return os << z.re << " + i*" << z.im;
    }
};

inline Interval box_abs2(const ComplexBox& z) { return sqr(z.re) + sqr(z.im); }
inline Interval box_abs(const ComplexBox& z) {
    Interval a2 = box_abs2(z);
    // outward rounding of 0+0 can dip below zero; |z|^2 is nonnegative
    return iv_sqrt(Interval(std::max(0.0, a2.lo()), a2.hi()));
}

inline bool box_meets_negative_ray(const ComplexBox& z) {
    return z.im.contains(0.0) && z.re.lo() <= 0.0;
}

// Principal square root of a box.  When the box straddles the cut R_-, a
// side must be selected; the box is then clipped to that closed half plane.
ComplexBox box_sqrt_principal(const ComplexBox& z, CutSide side = CutSide::none);

// Principal log; requires the box to avoid R_- and 0.
ComplexBox box_log(const ComplexBox& z);

inline ComplexBox box_exp(const ComplexBox& z) {
    Interval r = iv_exp(z.re);
    return ComplexBox(r * iv_cos(z.im), r * iv_sin(z.im));
}

// Principal power z^kappa for boxes avoiding the cut.
inline ComplexBox box_pow(const ComplexBox& z, const Interval& kappa) {
    return box_exp(kappa * box_log(z));
}

inline ComplexBox box_sqrt_via_pow(const ComplexBox& z) { return box_pow(z, Interval(0.5)); }

// Subset tests (spec: iv_subset and box variant).
inline bool iv_subset(const Interval& a, const Interval& b) { return b.contains(a); }
inline bool iv_subset_strict(const Interval& a, const Interval& b) { return b.strictly_contains(a); }
inline bool box_subset(const ComplexBox& a, const ComplexBox& b) { return b.contains(a); }

} // namespace renorm
