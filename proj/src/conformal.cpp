#include "renorm/conformal.hpp"

#include <utility>

namespace renorm {

namespace {

// true iff the box is a segment of the real axis
bool is_real_segment(const ComplexBox& z) { return z.im.lo() == 0 && z.im.hi() == 0; }

} // namespace

Containment SlitPlane::contains(const ComplexBox& z) const {
    bool clear = true;
    // cut along R \ J (closed rays)
    if (z.im.contains(0.0)) {
        if (z.re.hi() <= J.lo() || z.re.lo() >= J.hi())
            if (is_real_segment(z)) return Containment::outside;
        if (!(J.lo() < z.re.lo() && z.re.hi() < J.hi())) clear = false;
    }
    if (has_d) {
        for (double sgn : {1.0, -1.0}) {
            Interval c = sgn * dx;
            if (z.re.intersects(c) && !(iv_abs(z.im).hi() < dy.lo())) {
                if (z.re.lo() >= c.lo() && z.re.hi() <= c.hi() && iv_abs(z.im).lo() >= dy.hi())
                    return Containment::outside;
                clear = false;
            }
        }
    }
    return clear ? Containment::inside : Containment::straddle;
}

Interval poincare_radius(const Interval& theta) {
    if (!(theta.lo() > 0 && theta.hi() < std::numbers::pi)) throw AngleOutOfRange();
    Interval t = iv_tan(theta / 4.0);
    return iv_log((Interval(1.0) + t) / (Interval(1.0) - t));
}

PoincareNeighborhood::PoincareNeighborhood(const Interval& J_, const Interval& theta_, Side side_)
    : J(J_), theta(theta_), side(side_) {
    if (!(theta.lo() > 0 && theta.hi() < std::numbers::pi)) throw AngleOutOfRange();
    if (!(J.lo() < J.hi())) throw IntervalError("lens base interval is degenerate");
}

Interval PoincareNeighborhood::center_x() const {
    return (Interval(J.lo()) + Interval(J.hi())) / 2.0;
}

Interval PoincareNeighborhood::center_y_upper() const {
    Interval half = (Interval(J.hi()) - Interval(J.lo())) / 2.0;
    return -half * iv_cos(theta) / iv_sin(theta);
}

Interval PoincareNeighborhood::radius() const {
    Interval half = (Interval(J.hi()) - Interval(J.lo())) / 2.0;
    return half / iv_sin(theta);
}

Containment PoincareNeighborhood::contains(const ComplexBox& z) const {
    Interval cx = center_x(), cy = center_y_upper(), r2 = sqr(radius());
    auto disk_test = [&](const ComplexBox& part, bool up) {
        Interval d2 = sqr(part.re - cx) + sqr(part.im - (up ? cy : -cy));
        if (d2.hi() < r2.lo()) return Containment::inside;
        if (d2.lo() > r2.hi()) return Containment::outside;
        return Containment::straddle;
    };
    bool want_up = side != Side::lower, want_dn = side != Side::upper;
    bool all_in = true, all_out = true;
    auto feed = [&](const ComplexBox& part, bool up) {
        Containment c;
        if (is_real_segment(part)) {
            // the disk meets R exactly in J; every side of the lens contains J
            c = disk_test(part, true);
        } else if (up ? want_up : want_dn) {
            c = disk_test(part, up);
        } else {
            // unwanted open half plane; only its real-axis edge can be inside
            c = Containment::outside;
            if (part.im.contains(0.0) &&
                disk_test(ComplexBox(part.re, Interval(0.0)), true) != Containment::outside)
                c = Containment::straddle;
        }
        all_in = all_in && c == Containment::inside;
        all_out = all_out && c == Containment::outside;
    };
    if (z.im.hi() >= 0)
        feed(ComplexBox(z.re, Interval(std::max(0.0, z.im.lo()), z.im.hi())), true);
    if (z.im.lo() < 0)
        feed(ComplexBox(z.re, Interval(z.im.lo(), std::min(0.0, z.im.hi()))), false);
    if (all_in) return Containment::inside;
    if (all_out) return Containment::outside;
    return Containment::straddle;
}

std::vector<ComplexBox> PoincareNeighborhood::boundary_boxes(int n) const {
    Interval cx = center_x(), cy = center_y_upper(), rho = radius();
    Interval hp = Interval::pi() / 2.0;
    // the upper arc is the part of the defining circle above R: central angles
    // pi/2 - theta .. pi/2 + theta around the (below-axis) center
    double plo = (hp - theta).lo(), phi = (hp + theta).hi();
    std::vector<ComplexBox> out;
    for (int i = 0; i < n; ++i) {
        Interval seg(plo + (phi - plo) * i / n, plo + (phi - plo) * (i + 1) / n);
        Interval x = cx + rho * iv_cos(seg);
        Interval y = cy + rho * iv_sin(seg);
        if (side != Side::lower) out.emplace_back(x, y);
        if (side != Side::upper) out.emplace_back(x, -y);
    }
    return out;
}

ConformalChain chain_constants(int k, const Interval& I, const Interval& theta,
                               const Interval& target) {
    if (!(theta.lo() > 0 && theta.hi() < std::numbers::pi)) throw AngleOutOfRange();
    ConformalChain c;
    c.k = k;
    c.I = I;
    c.theta = theta;
    c.kappa = 2.0 * theta / Interval::pi();
    c.target = target;
    // eval(0) = q(sigma_kappa(a)) forces a = sigma_{1/kappa}(q^{-1}(target))
    Interval qinv = (target - c.qmid()) / c.qhalf();
    c.a = cm::sigma_pow(qinv, 1.0 / c.kappa);
    c.residual = iv_abs(c.eval(Interval(0.0)) - target);
    if (!(c.residual.hi() < 1e-9))
        throw NormalizationUnsolvable("chain normalization residual too large");
    return c;
}

MoebiusSqrtMap MoebiusSqrtMap::solve(const Interval& x0, const Interval& h, double u1, double v1,
                                     double u2, double v2) {
    MoebiusSqrtMap m;
    m.x0 = x0;
    m.h = h;
    auto g = [&](double u) {
        Interval t = Interval(u) - x0;
        return t / iv_sqrt(sqr(t) + sqr(h));
    };
    Interval g1 = g(u1), g2 = g(u2);
    // the two interpolation conditions are linear in (A, B)
    m.A = (Interval(v2) - Interval(v1)) / (g2 - g1);
    m.B = Interval(v1) - m.A * g1;
    Interval r = iv_abs(m.eval(Interval(u2)) - v2);
    if (!(r.hi() < 1e-9))
        throw NormalizationUnsolvable("slit map normalization residual too large");
    return m;
}

Interval MoebiusSqrtMap::eval(const Interval& x) const {
    Interval t = x - x0;
    return A * t / iv_sqrt(sqr(t) + sqr(h)) + B;
}

ComplexBox MoebiusSqrtMap::eval(const ComplexBox& z, CutSide side) const {
    ComplexBox t = (-x0) + z;
    ComplexBox s2 = sqr(h) + t * t;
    try {
        return B + A * (t / box_sqrt_principal(s2, side));
    } catch (const BranchCutStraddle&) {
        throw SlitViolation("box straddles a vertical slit of the four-slit plane");
    }
}

Interval MoebiusSqrtMap::inverse(const Interval& y) const {
    Interval w = (y - B) / A;
    return x0 + h * w / iv_sqrt(Interval(1.0) - sqr(w));
}

ComplexBox MoebiusSqrtMap::inverse(const ComplexBox& w, CutSide side) const {
    ComplexBox y = ((-B) + w) / A;
    ComplexBox s2 = Interval(1.0) - y * y;
    try {
        return x0 + h * (y / box_sqrt_principal(s2, side));
    } catch (const BranchCutStraddle&) {
        throw SlitViolation("box straddles a slit of the double slit plane");
    }
}

Interval MoebiusSqrtMap::deriv(const Interval& x) const {
    Interval s2 = sqr(x - x0) + sqr(h);
    return A * sqr(h) / (s2 * iv_sqrt(s2));
}

ComplexBox MoebiusSqrtMap::deriv(const ComplexBox& z, CutSide side) const {
    ComplexBox t = (-x0) + z;
    ComplexBox s2 = sqr(h) + t * t;
    try {
        return (A * sqr(h)) * cm::one_over(s2 * box_sqrt_principal(s2, side));
    } catch (const BranchCutStraddle&) {
        throw SlitViolation("box straddles a vertical slit of the four-slit plane");
    }
}

MoebiusSqrtMap make_phi1(const Interval& im_dbar) {
    return MoebiusSqrtMap::solve(Interval(0.5), im_dbar, -1.05, -1.0, 0.05, 1.0);
}

MoebiusSqrtMap make_phi2() {
    return MoebiusSqrtMap::solve(Interval(0.0), Interval(0.69), 0.0, 0.0, 1.0, 1.0);
}

ComplexBox feig_phi(int which, const ComplexBox& z, CutSide side) {
    if (which == 1) return make_phi1().eval(z, side);
    if (which == 2) return make_phi2().eval(z, side);
    throw DomainViolation("feig_phi: which must be 1 or 2");
}

} // namespace renorm
