#include "renorm/interval.hpp"

namespace renorm {

namespace {

// Crude but sound enclosure for boxes containing 0: the image lies in the
// closed right half of the disk of radius sqrt(max|z|).
ComplexBox sqrt_origin_fallback(const ComplexBox& z) {
    double s = detail::up(std::sqrt(box_abs(z).hi()));
    Interval re(0.0, s);
    Interval im(-s, s);
    if (z.im.lo() >= 0) im = Interval(0.0, s);
    else if (z.im.hi() <= 0) im = Interval(-s, 0.0);
    return ComplexBox(re, im);
}

} // namespace

ComplexBox box_sqrt_principal(const ComplexBox& z_in, CutSide side) {
    ComplexBox z = z_in;
    if (box_meets_negative_ray(z)) {
        if (side == CutSide::none) throw BranchCutStraddle();
        // Clip to the chosen closed half plane; the value on the cut is the
        // limit from that side.
        if (side == CutSide::upper)
            z.im = z.im.intersect(Interval(0.0, std::max(0.0, z.im.hi())));
        else
            z.im = z.im.intersect(Interval(std::min(0.0, z.im.lo()), 0.0));
    }

    Interval m = box_abs(z);
    Interval t_plus = m + z.re;   // 2*Re(sqrt z)^2
    Interval t_minus = m - z.re;  // 2*Im(sqrt z)^2

    if (t_plus.lo() > 0.0) {
        Interval u = iv_sqrt(t_plus / 2.0);
        return ComplexBox(u, z.im / (2.0 * u));
    }
    if (t_minus.lo() > 0.0 && !z.im.contains(0.0)) {
        Interval v = iv_sqrt(t_minus / 2.0);
        if (z.im.lo() > 0) return ComplexBox(z.im / (2.0 * v), v);
        return ComplexBox(z.im / (-2.0 * v), -v);
    }
    if (t_minus.lo() > 0.0) {
        // One-signed limit onto the cut (im endpoint 0 after clipping).
        Interval v = iv_sqrt(t_minus / 2.0);
        if (z.im.hi() > 0 || side == CutSide::upper) {
            Interval u = z.im.hi() > 0 ? Interval(0.0, (z.im / (2.0 * v)).hi()) : Interval(0.0);
            return ComplexBox(u, v);
        }
        Interval u = z.im.lo() < 0 ? Interval(0.0, (z.im / (-2.0 * v)).hi()) : Interval(0.0);
        return ComplexBox(u, -v);
    }
    return sqrt_origin_fallback(z);
}

ComplexBox box_log(const ComplexBox& z) {
    if (box_meets_negative_ray(z)) throw BranchCutStraddle();
    Interval a2 = box_abs2(z);
    if (a2.contains(0.0)) throw IntervalError("log of box containing 0");

    // arg is monotone along straight segments, so corner values bound it on
    // a rectangle avoiding the cut.
    double args[4] = {
        std::atan2(z.im.lo(), z.re.lo()), std::atan2(z.im.lo(), z.re.hi()),
        std::atan2(z.im.hi(), z.re.lo()), std::atan2(z.im.hi(), z.re.hi())};
    double alo = args[0], ahi = args[0];
    for (double a : args) {
        alo = std::min(alo, a);
        ahi = std::max(ahi, a);
    }
    Interval arg(detail::down_n(alo, detail::kLibmPad), detail::up_n(ahi, detail::kLibmPad));
    return ComplexBox(0.5 * iv_log(a2), arg);
}

} // namespace renorm
