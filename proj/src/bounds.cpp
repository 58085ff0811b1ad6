#include "renorm/bounds.hpp"

#include "renorm/roots.hpp"

#include <fstream>

namespace renorm {

namespace {

Interval iv_max(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}
Interval iv_min(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

// quadratic minimal/maximal growth curves of f' on [c1, c2] and their
// integrals, from the affine second-derivative envelope
struct MiddleCurves {
    Interval c1, c2, T, S;
    Interval m_c1, mu;  // lower envelope: f'' >= m_c1 + mu (x - c1)
    Interval M_c2, nu;  // upper envelope about c2

    explicit MiddleCurves(const A1Context& c) : c1(c.c1), c2(c.c2), T(c.T), S(c.S) {
        Interval A = c.c2 - c.c1, B1 = Interval(1.0) + c.c1, B2 = Interval(1.0) - c.c2;
        m_c1 = -2.0 * T / B1;
        mu = -2.0 * (S - T) / (A * B1);
        M_c2 = 2.0 * S / B2;
        nu = 2.0 * (S - T) / (A * B2);
    }
    // y(x) = T + int_{c1}^x m: slowest-growing admissible derivative
    Interval y(const Interval& x) const {
        Interval d = x - c1;
        return T + m_c1 * d + mu * sqr(d) / 2.0;
    }
    Interval int_y(const Interval& x) const {
        Interval d = x - c1;
        return T * d + m_c1 * sqr(d) / 2.0 + mu * d * sqr(d) / 6.0;
    }
    // Y(x) = S + int_{c2}^x M: slowest derivative approaching c2 from the left
    Interval Y(const Interval& x) const {
        Interval d = x - c2;
        return S + M_c2 * d + nu * sqr(d) / 2.0;
    }
    Interval int_Y_to_c2(const Interval& x) const {
        Interval d = x - c2;
        return -(S * d + M_c2 * sqr(d) / 2.0 + nu * d * sqr(d) / 6.0);
    }
};

} // namespace

void A1Context::validate() const {
    bool ok = -1 < c1.lo() && c1.hi() < c2.lo() && c2.hi() < 1 && c3.lo() < c4.hi() &&
              T.lo() > 0 && S.lo() > 0 && mm.lo() <= c3.lo() && MM.hi() >= c4.hi();
    if (!ok) throw OutOfDomain("interpolation data violates the chart ordering");
}

ClassicalBounds classical_bounds(const A1Context& c, const Interval& x) {
    if (x.lo() < -1 || x.hi() > 1) throw OutOfDomain("classical bounds need x inside [-1,1]");
    const double big = 1e300;
    Interval base = (c.c4 - c.c3) / (c.c2 - c.c1);
    Interval ratio;
    try {
        Interval e1 = base * (Interval(1.0) + c.c2) / (Interval(1.0) + x);
        Interval e2 = base * (Interval(1.0) - c.c2) / (Interval(1.0) - x);
        ratio = Interval::hull(e1, e2);
    } catch (const DivisionByIntervalContainingZero&) {
        // chord comparison degenerates at the closed endpoints
        ratio = Interval(-big, big);
    }
    ClassicalBounds out;
    Interval f = c.c3 + (x - c.c1) * ratio;
    out.f_lo = Interval(f.lo());
    out.f_hi = Interval(f.hi());
    try {
        out.ratio_lo = (Interval(1.0) + c.c1) / ((x - c.c1) * (Interval(1.0) + x));
        out.ratio_hi = (Interval(1.0) - c.c1) / ((x - c.c1) * (Interval(1.0) - x));
    } catch (const DivisionByIntervalContainingZero&) {
        out.ratio_lo = Interval(-big, big);
        out.ratio_hi = Interval(-big, big);
    }
    return out;
}

void second_derivative_envelope(const A1Context& c, const Interval& x, Interval& m, Interval& M) {
    Interval A = c.c2 - c.c1;
    Interval w = (c.c2 - x) * c.T + (x - c.c1) * c.S;
    m = -2.0 * w / (A * (Interval(1.0) + c.c1));
    M = 2.0 * w / (A * (Interval(1.0) - c.c2));
}

Interval solve_Z(const A1Context& c) {
    // (2T - Z(c2-c1))^2 = 4T^3/S, root without a pole left of c1
    Interval A = c.c2 - c.c1;
    Interval Z = 2.0 * c.T * (Interval(1.0) - iv_sqrt(c.T / c.S)) / A;
    Interval res = 4.0 * c.T * sqr(c.T) / sqr(2.0 * c.T - Z * A) - c.S;
    if (!res.contains(0.0) && iv_abs(res).lo() > 1e-9 * c.S.hi())
        throw AuxSolveFailed("maximal second derivative at c1 fails its defining equation");
    return Z;
}

Interval solve_X(const A1Context& c) {
    // (2S + X(c2-c1))^2 = 4S^3/T
    Interval A = c.c2 - c.c1;
    Interval X = 2.0 * c.S * (iv_sqrt(c.S / c.T) - Interval(1.0)) / A;
    Interval res = 4.0 * c.S * sqr(c.S) / sqr(2.0 * c.S + X * A) - c.T;
    if (!res.contains(0.0) && iv_abs(res).lo() > 1e-9 * c.T.hi())
        throw AuxSolveFailed("maximal second derivative at c2 fails its defining equation");
    return X;
}

Tangent tangent_construction(const A1Context& c, Direction dir) {
    MiddleCurves mc(c);
    Interval gap = c.c4 - c.c3;
    double a = c.c1.mid(), b = c.c2.mid();
    if (dir == Direction::lower) {
        // area of: follow y to the break point, then the line to (c2, S)
        auto area = [&](const Interval& x) {
            return mc.int_y(x) + (c.c2 - x) * (c.S + mc.y(x)) / 2.0 - gap;
        };
        Interval Aa = area(Interval(a)), Ab = area(Interval(b));
        if (Aa.hi() < 0 || Ab.lo() > 0)
            throw NoIntersection("convexity geometry inadmissible for the lower middle piece");
        if (Aa.lo() <= 0) return {(c.S - c.T) / (c.c2 - c.c1), Interval(a)};  // pure chord
        if (Ab.hi() >= 0) return {mc.m_c1 + mc.mu * (c.c2 - c.c1), Interval(b)};  // pure curve
        Interval xk = bisect_root(area, a, b);
        Interval d = c.c2 - xk;
        if (d.lo() <= 0) return {mc.m_c1 + mc.mu * (c.c2 - c.c1), Interval(b)};
        return {(c.S - mc.y(xk)) / d, xk};
    }
    // upper: the line from (c1, T) to the curve Y, then Y into c2
    auto area = [&](const Interval& x) {
        return (x - c.c1) * (c.T + mc.Y(x)) / 2.0 + mc.int_Y_to_c2(x) - gap;
    };
    Interval Ba = area(Interval(a)), Bb = area(Interval(b));
    if (Ba.lo() > 0 || Bb.hi() < 0)
        throw NoIntersection("convexity geometry inadmissible for the upper middle piece");
    if (Bb.lo() <= 0) return {(c.S - c.T) / (c.c2 - c.c1), Interval(b)};  // pure chord
    if (Ba.hi() >= 0) return {mc.M_c2 - mc.nu * (c.c2 - c.c1), Interval(a)};  // pure curve
    Interval Xk = bisect_root(area, a, b);
    Interval d = Xk - c.c1;
    if (d.lo() <= 0) return {mc.M_c2 - mc.nu * (c.c2 - c.c1), Interval(a)};
    return {(mc.Y(Xk) - c.T) / d, Xk};
}

ImprovedBounds ImprovedBounds::make(const A1Context& ctx) {
    ctx.validate();
    ImprovedBounds b;
    b.ctx = ctx;
    b.Z = solve_Z(ctx);
    b.X = solve_X(ctx);
    b.lo_tan = tangent_construction(ctx, Direction::lower);
    b.hi_tan = tangent_construction(ctx, Direction::upper);
    return b;
}

namespace {

Interval clip(const Interval& x, double lo, double hi) { return x.intersect(Interval(lo, hi)); }

} // namespace

Interval ImprovedBounds::lower(const Interval& x) const {
    if (x.lo() < -1 || x.hi() > 1) throw OutOfDomain("improved bounds need x inside [-1,1]");
    const A1Context& c = ctx;
    MiddleCurves mc(c);
    bool have = false;
    Interval out;
    auto add = [&](const Interval& v) { out = have ? Interval::hull(out, v) : v; have = true; };
    if (x.lo() < c.c1.hi()) {
        Interval xi = clip(x, x.lo(), c.c1.hi());
        Interval d = xi - c.c1, B1 = Interval(1.0) + c.c1;
        add(c.c3 - c.T * (c.c1 - xi) + (c.T * B1 + c.mm - c.c3) * sqr(d) / sqr(B1));
    }
    if (x.hi() > c.c1.lo() && x.lo() < c.c2.hi()) {
        Interval xi = clip(x, c.c1.lo(), c.c2.hi());
        double xk = lo_tan.break_point.mid();
        if (xi.lo() < xk)
            add(c.c3 + mc.int_y(clip(xi, xi.lo(), xk)));
        if (xi.hi() > xk) {
            Interval xr = clip(xi, xk, xi.hi());
            Interval xkv = lo_tan.break_point;
            Interval w = c.S + lo_tan.slope * (xr - c.c2);
            add(c.c3 + mc.int_y(xkv) + (xr - xkv) * (mc.y(xkv) + w) / 2.0);
        }
    }
    if (x.hi() > c.c2.lo()) {
        Interval xi = clip(x, c.c2.lo(), x.hi());
        Interval den = 2.0 * c.S + X * (c.c2 - xi);
        // (4S^3/X)(1/den - 1/(2S)) = 2S^2 (xi - c2)/den, which avoids the
        // cancellation between the two reciprocals
        if (den.lo() > 0)
            add(c.c4 + 2.0 * sqr(c.S) * (xi - c.c2) / den);
        else
            // extremal pole enclosure touches the range; the chord envelope
            // below still covers this subrange
            add(classical_bounds(c, xi).f_lo);
    }
    // the chord envelope is also valid; keep the pointwise maximum, and cap
    // the enclosure with the classical upper bound: reporting
    // min(lower, classical_hi) only weakens the bound, but cancels the
    // dependency widening of the quadrature at the pinch points
    ClassicalBounds cb = classical_bounds(c, x);
    return iv_min(iv_max(out, cb.f_lo), cb.f_hi);
}

Interval ImprovedBounds::upper(const Interval& x) const {
    if (x.lo() < -1 || x.hi() > 1) throw OutOfDomain("improved bounds need x inside [-1,1]");
    const A1Context& c = ctx;
    MiddleCurves mc(c);
    bool have = false;
    Interval out;
    auto add = [&](const Interval& v) { out = have ? Interval::hull(out, v) : v; have = true; };
    if (x.lo() < c.c1.hi()) {
        Interval xi = clip(x, x.lo(), c.c1.hi());
        Interval den = 2.0 * c.T + Z * (c.c1 - xi);
        // (4T^3/Z)(1/den - 1/(2T)) = 2T^2 (xi - c1)/den
        if (den.lo() > 0)
            add(c.c3 + 2.0 * sqr(c.T) * (xi - c.c1) / den);
        else
            add(classical_bounds(c, xi).f_hi);
    }
    if (x.hi() > c.c1.lo() && x.lo() < c.c2.hi()) {
        Interval xi = clip(x, c.c1.lo(), c.c2.hi());
        double Xk = hi_tan.break_point.mid();
        if (xi.hi() > Xk)
            add(c.c4 - mc.int_Y_to_c2(clip(xi, Xk, xi.hi())));
        if (xi.lo() < Xk) {
            Interval xl = clip(xi, xi.lo(), Xk);
            Interval Xkv = hi_tan.break_point;
            Interval W = c.T + hi_tan.slope * (xl - c.c1);
            add(c.c4 - (mc.int_Y_to_c2(Xkv) + (Xkv - xl) * (W + mc.Y(Xkv)) / 2.0));
        }
    }
    if (x.hi() > c.c2.lo()) {
        Interval xi = clip(x, c.c2.lo(), x.hi());
        Interval d = xi - c.c2, B2 = Interval(1.0) - c.c2;
        add(c.c4 + c.S * d + (c.MM - c.c4 - c.S * B2) * sqr(d) / sqr(B2));
    }
    ClassicalBounds cb = classical_bounds(c, x);
    return iv_max(iv_min(out, cb.f_hi), cb.f_lo);
}

Interval ImprovedBounds::deriv_majorant(const Interval& x) const {
    if (!(x.lo() > ctx.c1.hi()))
        throw OutOfDomain("derivative majorant is only defined right of c1");
    if (x.hi() >= 1) throw OutOfDomain("derivative majorant needs x < 1");
    Interval F = upper(x);
    return (F - ctx.c3) * (Interval(1.0) - ctx.c1) / ((x - ctx.c1) * (Interval(1.0) - x));
}

Interval BoundSet::um(const Interval& x) const {
    bool first = true;
    Interval out;
    Interval unit(-1.0, 1.0);
    for (const auto& f : fs) {
        // values are a priori confined to the chart range (mm, MM); clamping
        // there keeps theta inside its domain and only tightens the bound
        Interval xi = f.chart.phi1(x).intersect(unit);
        Interval v = iv_max(f.ib.lower(xi), f.ib.ctx.mm);
        Interval w = f.chart.theta(iv_min(v, f.ib.ctx.MM));
        out = first ? w : iv_max(out, w);
        first = false;
    }
    return out;
}

Interval BoundSet::Um(const Interval& x) const {
    bool first = true;
    Interval out;
    Interval unit(-1.0, 1.0);
    for (const auto& f : fs) {
        Interval xi = f.chart.phi1(x).intersect(unit);
        Interval v = iv_min(f.ib.upper(xi), f.ib.ctx.MM);
        Interval w = f.chart.theta(iv_max(v, f.ib.ctx.mm));
        out = first ? w : iv_min(out, w);
        first = false;
    }
    return out;
}

Interval BoundSet::Du(const Interval& x) const {
    const Factorization& f = fs.front();
    Interval xi = f.chart.phi1(x);
    Interval lo = iv_max(f.ib.lower(xi), f.ib.ctx.mm);
    Interval hi = iv_min(f.ib.upper(xi), f.ib.ctx.MM);
    Interval val = Interval::hull(lo, hi).intersect(Interval(f.ib.ctx.mm.lo(), f.ib.ctx.MM.hi()));
    return f.chart.theta_deriv(val) * f.ib.deriv_majorant(xi) * f.chart.phi1_deriv(x);
}

BoundSet make_bounds_feig(const Interval& t, const Interval& s, const Interval& im_dbar) {
    MoebiusSqrtMap p1 = make_phi1(im_dbar);
    MoebiusSqrtMap p2 = make_phi2();
    Chart ch;
    ch.phi1 = [p1](const Interval& x) { return p1.eval(x); };
    ch.phi1_deriv = [p1](const Interval& x) { return p1.deriv(x); };
    ch.theta = [p2](const Interval& y) { return p2.inverse(y); };
    ch.theta_deriv = [p2](const Interval& y) {
        return Interval(1.0) / p2.deriv(p2.inverse(y));
    };
    A1Context c;
    c.c1 = p1.eval(Interval(-0.5));
    c.c2 = p1.eval(Interval(0.0));
    c.c3 = p2.eval(Interval(0.0));
    c.c4 = p2.eval(Interval(1.0));
    c.T = t / (ch.theta_deriv(c.c3) * ch.phi1_deriv(Interval(-0.5)));
    c.S = s / (ch.theta_deriv(c.c4) * ch.phi1_deriv(Interval(0.0)));
    const double m = 1.1593855;
    c.mm = p2.eval(Interval(-m));
    c.MM = p2.eval(Interval(m));
    BoundSet b;
    b.t = t;
    b.s = s;
    b.source_lo = -1.05;
    b.source_hi = 0.05;
    b.fs.push_back({ch, ImprovedBounds::make(c)});
    return b;
}

Interval range_I2(const Interval& t) {
    const double m2 = 1.63825, l1 = 1.23, r1 = 0.23;
    Interval d = t - kTStar;
    return Interval((0.16 * d * (0.5 - l1) - m2).lo(), (0.16 * d * (r1 + 0.5) + m2).hi());
}

Interval range_I3(const Interval& t) {
    const double m3 = 1.6430509, l1 = 1.23, r1 = 0.23;
    Interval d = t - kTStar;
    return Interval((3.5 * d * (0.5 - l1) - m3).lo(), (3.5 * d * (r1 + 0.5) + m3).hi());
}

namespace {

const ConformalChain& source_chain() {
    static const ConformalChain c1 =
        chain_constants(1, Interval(-1.23, 0.23), 4.0 * Interval::pi() / 5.0, Interval(-0.5));
    return c1;
}

Interval target_angle(int k) {
    return (k == 2 ? Interval(0.830267) : Interval(0.830825)) * Interval::pi();
}

} // namespace

BoundSet make_bounds_chain(const Interval& t, const Interval& s) {
    const ConformalChain& ch1 = source_chain();
    BoundSet b;
    b.t = t;
    b.s = s;
    b.source_lo = -1.23;
    b.source_hi = 0.23;
    for (int k : {2, 3}) {
        // the target chart is built on the t-dependent range interval itself,
        // so the a-priori range bounds are the chart endpoints
        Interval range = k == 2 ? range_I2(t) : range_I3(t);
        ConformalChain chk = chain_constants(k, range, target_angle(k), Interval(0.0));
        Chart ch;
        ch.phi1 = [&ch1](const Interval& x) { return ch1.invert_closed(x); };
        ch.phi1_deriv = [&ch1](const Interval& x) { return ch1.invert_deriv(x); };
        ch.theta = [chk](const Interval& y) { return chk.eval_closed(y); };
        ch.theta_deriv = [chk](const Interval& y) { return chk.deriv(y); };
        A1Context c;
        c.c1 = ch1.invert(Interval(-0.5));
        c.c2 = ch1.invert(Interval(0.0));
        c.c3 = chk.invert(Interval(0.0));
        c.c4 = chk.invert(Interval(1.0));
        c.T = t / (ch.theta_deriv(c.c3) * ch.phi1_deriv(Interval(-0.5)));
        c.S = s / (ch.theta_deriv(c.c4) * ch.phi1_deriv(Interval(0.0)));
        c.mm = Interval(-1.0);
        c.MM = Interval(1.0);
        b.fs.push_back({ch, ImprovedBounds::make(c)});
    }
    return b;
}

void write_bounds_csv(const BoundSet& b, const std::string& path, int grid) {
    std::ofstream os(path);
    os << "x,um_lo,um_hi,Um_lo,Um_hi,Du_hi\n";
    os.precision(17);
    for (int i = 1; i < grid; ++i) {
        double x = b.source_lo + (b.source_hi - b.source_lo) * i / grid;
        Interval lo = b.um(Interval(x)), hi = b.Um(Interval(x));
        os << x << "," << lo.lo() << "," << lo.hi() << "," << hi.lo() << "," << hi.hi() << ",";
        try {
            os << b.Du(Interval(x)).hi();
        } catch (const OutOfDomain&) {
        }
        os << "\n";
    }
}

} // namespace renorm
