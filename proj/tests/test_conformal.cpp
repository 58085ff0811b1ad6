#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "renorm/conformal.hpp"

#include <cmath>

using namespace renorm;

// lens data used by the perturbed-family proof
static const Interval kI1(-1.23, 0.23);
static const Interval kI2(-1.63975634, 1.63975634);
static const Interval kI3(-1.6760020, 1.6760020);
static const double kTheta1 = 4.0 * M_PI / 5.0;
static const double kTheta2 = 0.830267 * M_PI;
static const double kTheta3 = 0.830825 * M_PI;

TEST_CASE("hyperbolic lens radius") {
    // theta = pi/2: log((1+tan(pi/8))/(1-tan(pi/8)))
    Interval r = poincare_radius(Interval(M_PI / 2));
    CHECK(r.contains(0.8813735870195430));
    CHECK(r.width() < 1e-12);
    // monotone increasing in theta, to 0 as theta -> 0
    CHECK(poincare_radius(Interval(0.01)).hi() < 0.006);
    CHECK(poincare_radius(Interval(3.0)).lo() > poincare_radius(Interval(2.0)).hi());
    CHECK_THROWS_AS(poincare_radius(Interval(0.0)), AngleOutOfRange);
    CHECK_THROWS_AS(poincare_radius(Interval(3.2)), AngleOutOfRange);
}

TEST_CASE("lens membership") {
    PoincareNeighborhood D(Interval(-1.0, 1.0), Interval(M_PI / 3));
    // real points of J are inside, for any theta
    CHECK(D.contains(ComplexBox::point(0.0)) == Containment::inside);
    CHECK(D.contains(ComplexBox::point(-0.9)) == Containment::inside);
    // real points beyond J are outside
    CHECK(D.contains(ComplexBox::point(1.2)) == Containment::outside);
    // far on the imaginary axis: outside for a small opening angle
    CHECK(D.contains(ComplexBox::point(0.0, 5.0)) == Containment::outside);
    // top of the lens: height (1 - cos theta)/sin theta at the midpoint
    double h = (1 - std::cos(M_PI / 3)) / std::sin(M_PI / 3);
    CHECK(D.contains(ComplexBox::point(0.0, h - 0.01)) == Containment::inside);
    CHECK(D.contains(ComplexBox::point(0.0, h + 0.01)) == Containment::outside);
    ComplexBox across(Interval(-0.05, 0.05), Interval(h - 0.01, h + 0.01));
    CHECK(D.contains(across) == Containment::straddle);
}

TEST_CASE("lens membership, wide opening angle") {
    // theta > pi/2: the lens bulges past the vertical through the endpoints
    PoincareNeighborhood D(Interval(-1.0, 1.0), Interval(0.83 * M_PI));
    CHECK(D.contains(ComplexBox::point(1.2, 0.7)) == Containment::inside);
    CHECK(D.contains(ComplexBox::point(1.2, 0.0)) == Containment::outside);
    CHECK(D.contains(ComplexBox::point(0.0, 3.0)) == Containment::inside);
    CHECK(D.contains(ComplexBox::point(0.0, 4.2)) == Containment::outside);
}

TEST_CASE("one-sided lens membership") {
    PoincareNeighborhood Dup(Interval(-1.0, 1.0), Interval(M_PI / 2), Side::upper);
    CHECK(Dup.contains(ComplexBox::point(0.0, 0.5)) == Containment::inside);
    CHECK(Dup.contains(ComplexBox::point(0.0, -0.5)) == Containment::outside);
    // real segment of J belongs to both halves
    CHECK(Dup.contains(ComplexBox::point(0.3)) == Containment::inside);
    // box dipping below R straddles
    ComplexBox dip(Interval(0.0, 0.1), Interval(-0.05, 0.05));
    CHECK(Dup.contains(dip) == Containment::straddle);
}

TEST_CASE("lens boundary meets R at the endpoints of J") {
    for (double th : {0.4, M_PI / 2, kTheta1}) {
        PoincareNeighborhood D(Interval(-1.23, 0.23), Interval(th));
        auto boxes = D.boundary_boxes(64);
        // first and last upper-arc boxes touch R at the endpoints of J
        bool hit_left = false, hit_right = false;
        for (const auto& b : boxes) {
            if (b.contains(0.23, 0.0)) hit_right = true;
            if (b.contains(-1.23, 0.0)) hit_left = true;
        }
        CHECK(hit_left);
        CHECK(hit_right);
        // every boundary box straddles the lens boundary or touches it
        for (const auto& b : boxes) CHECK(D.contains(b) != Containment::inside);
    }
}

TEST_CASE("boundary boxes enclose the analytic arc") {
    PoincareNeighborhood D(Interval(-1.0, 1.0), Interval(2.0));
    auto boxes = D.boundary_boxes(128);
    // sample the upper arc from its closed form and find it in some box
    double cy = -std::cos(2.0) / std::sin(2.0), rho = 1.0 / std::sin(2.0);
    for (int i = 0; i <= 50; ++i) {
        double phi = (M_PI / 2 - 2.0) + 4.0 * i / 50.0;
        double x = rho * std::cos(phi), y = cy + rho * std::sin(phi);
        bool found = false;
        for (const auto& b : boxes)
            if (b.contains(x, y) || b.contains(x, -y)) found = true;
        CHECK(found);
    }
}

TEST_CASE("chain constants") {
    ConformalChain c1 = chain_constants(1, kI1, Interval(kTheta1), Interval(-0.5));
    ConformalChain c2 = chain_constants(2, kI2, Interval(kTheta2), Interval(0.0));
    ConformalChain c3 = chain_constants(3, kI3, Interval(kTheta3), Interval(0.0));
    CHECK(c1.kappa.contains(0.4));
    CHECK(c1.kappa.width() < 1e-12);
    CHECK(std::fabs(c2.kappa.mid() - 0.339466) < 1e-6);
    CHECK(std::fabs(c3.kappa.mid() - (2 - 2 * 0.830825)) < 1e-9);
    // the affine part alone meets each normalization, so every a_k vanishes
    for (const auto& c : {c1, c2, c3}) {
        CHECK(iv_abs(c.a).hi() < 1e-12);
        CHECK(c.residual.hi() < 1e-12);
    }
    CHECK(c1.eval(Interval(0.0)).contains(-0.5));
    CHECK(c2.eval(Interval(0.0)).contains(0.0));
}

TEST_CASE("chain monotone bijection onto I") {
    ConformalChain c2 = chain_constants(2, kI2, Interval(kTheta2), Interval(0.0));
    double prev = -1e9;
    for (int i = 1; i < 40; ++i) {
        double x = -1.0 + 2.0 * i / 40.0;
        Interval y = c2.eval(Interval(x));
        CHECK(y.lo() > prev);
        CHECK(kI2.contains(y));
        prev = y.hi();
    }
    // endpoint correspondence, via the inverse (the forward map is only
    // kappa/2-Hoelder at the ends)
    CHECK(c2.invert(Interval(kI2.hi() - 1e-6)).lo() > 1 - 1e-3);
    CHECK(c2.invert(Interval(kI2.lo() + 1e-6)).hi() < -1 + 1e-3);
}

TEST_CASE("chain round trips on a 100-point grid") {
    ConformalChain c1 = chain_constants(1, kI1, Interval(kTheta1), Interval(-0.5));
    ConformalChain c2 = chain_constants(2, kI2, Interval(kTheta2), Interval(0.0));
    for (const auto& c : {c1, c2}) {
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                double x = -0.85 + 1.7 * i / 9.0;
                double y = -0.85 + 1.7 * j / 9.0;
                ComplexBox z = ComplexBox::point(x, y);
                ComplexBox back = c.invert(c.eval(z));
                CHECK(back.contains(x, y));
                CHECK(back.re.width() < 1e-10);
                CHECK(back.im.width() < 1e-10);
            }
        }
    }
}

TEST_CASE("chain symmetry and image side") {
    ConformalChain c2 = chain_constants(2, kI2, Interval(kTheta2), Interval(0.0));
    for (double x : {-0.6, 0.1, 0.7}) {
        ComplexBox z = ComplexBox::point(x, 0.4);
        ComplexBox w = c2.eval(z);
        ComplexBox wc = c2.eval(z.conj());
        CHECK(wc.re.intersects(w.re));
        CHECK(wc.im.intersects(-w.im));
        // upper half plane maps into the upper half of the lens
        CHECK(w.im.lo() > 0);
    }
    // image lies in the target lens
    PoincareNeighborhood D2(kI2, Interval(kTheta2));
    CHECK(D2.contains(c2.eval(ComplexBox::point(0.3, 0.5))) == Containment::inside);
}

TEST_CASE("chain derivative matches difference quotients") {
    ConformalChain c2 = chain_constants(2, kI2, Interval(kTheta2), Interval(0.0));
    for (double x : {-0.5, 0.0, 0.45}) {
        double hstep = 1e-6;
        double fd = (c2.eval(Interval(x + hstep)).mid() - c2.eval(Interval(x - hstep)).mid()) /
                    (2 * hstep);
        Interval d = c2.deriv(Interval(x));
        CHECK(std::fabs(d.mid() - fd) < 1e-7 * std::fabs(fd));
        // inverse derivative is the reciprocal
        Interval w = c2.eval(Interval(x));
        Interval di = c2.invert_deriv(w);
        CHECK((d * di).contains(1.0));
    }
}

TEST_CASE("slit maps: normalization and monotonicity") {
    MoebiusSqrtMap p1 = make_phi1();
    MoebiusSqrtMap p2 = make_phi2();
    CHECK(p1.eval(Interval(-1.05)).contains(-1.0));
    CHECK(p1.eval(Interval(0.05)).contains(1.0));
    CHECK(p2.eval(Interval(0.0)).contains(0.0));
    CHECK(p2.eval(Interval(1.0)).contains(1.0));
    // closed forms: A2 = sqrt(1 + 0.69^2), B2 = 0
    CHECK(p2.A.contains(std::sqrt(1 + 0.69 * 0.69)));
    CHECK(iv_abs(p2.B).hi() < 1e-14);
    double prev = -1e9;
    for (int i = 0; i <= 40; ++i) {
        double x = -2.0 + 4.0 * i / 40.0;
        Interval y = p1.eval(Interval(x));
        CHECK(y.lo() > prev);
        prev = y.hi();
    }
}

TEST_CASE("slit map round trips on 100-point grids") {
    MoebiusSqrtMap p1 = make_phi1();
    for (int i = 0; i < 100; ++i) {
        double x = -1.04 + 1.08 * i / 99.0;
        Interval back = p1.inverse(p1.eval(Interval(x)));
        CHECK(back.contains(x));
        CHECK(back.width() < 1e-10);
    }
    MoebiusSqrtMap p2 = make_phi2();
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            double x = -1.0 + 2.0 * i / 9.0;
            double y = 0.05 + 0.4 * j / 9.0;
            ComplexBox back = p2.inverse(p2.eval(ComplexBox::point(x, y)));
            CHECK(back.contains(x, y));
            CHECK(back.re.width() < 1e-10);
            CHECK(back.im.width() < 1e-10);
        }
    }
}

TEST_CASE("slit map derivative and slit detection") {
    MoebiusSqrtMap p1 = make_phi1();
    double hstep = 1e-6;
    for (double x : {-0.8, -0.3, 0.02}) {
        double fd = (p1.eval(Interval(x + hstep)).mid() - p1.eval(Interval(x - hstep)).mid()) /
                    (2 * hstep);
        CHECK(std::fabs(p1.deriv(Interval(x)).mid() - fd) < 1e-7 * std::fabs(fd));
    }
    // a box across the vertical slit through 0.5 + 0.3524i must be rejected
    ComplexBox bad(Interval(0.45, 0.55), Interval(0.4, 0.5));
    CHECK_THROWS_AS(p1.eval(bad), SlitViolation);
    CHECK(feig_phi(2, ComplexBox::point(0.3, 0.2)).im.lo() > 0);
    CHECK_THROWS_AS(feig_phi(3, ComplexBox::point(0.0, 0.0)), DomainViolation);
}

TEST_CASE("four-slit plane membership") {
    SlitPlane P = SlitPlane::four_slit(Interval(-1.05, 0.05), Interval(0.5), Interval(0.3524));
    CHECK(P.contains(ComplexBox::point(-0.5, 0.0)) == Containment::inside);
    CHECK(P.contains(ComplexBox::point(0.5, 0.1)) == Containment::inside);
    CHECK(P.contains(ComplexBox::point(2.0, 0.0)) == Containment::outside);
    CHECK(P.contains(ComplexBox(Interval(0.49, 0.51), Interval(0.5, 0.6))) ==
          Containment::straddle);
    CHECK(P.contains(ComplexBox(Interval(-0.51, -0.49), Interval(-0.6, -0.5))) ==
          Containment::straddle);
    CHECK(P.contains(ComplexBox(Interval(-2.0, -1.5), Interval(-0.1, 0.1))) ==
          Containment::straddle);
    SlitPlane C1 = SlitPlane::cut(Interval(-1.0, 1.0));
    CHECK(C1.contains(ComplexBox::point(0.5, 0.5)) == Containment::inside);
    CHECK(C1.contains(ComplexBox::point(1.5, 0.0)) == Containment::outside);
}

TEST_CASE("schwarz image calculus") {
    PoincareNeighborhood D(Interval(-1.0, 1.0), Interval(1.2), Side::upper);
    PoincareNeighborhood im = schwarz_image(D, Interval(-0.5, 0.5));
    CHECK(im.theta.contains(1.2));
    CHECK(im.side == Side::upper);
    // shrinking the base interval shrinks the lens: boundary of the image lens
    // stays inside the source lens
    for (const auto& b : im.boundary_boxes(64)) {
        if (b.im.hi() <= 0) continue;
        CHECK(D.contains(b) != Containment::outside);
        if (b.im.lo() > 0.01) CHECK(D.contains(b) == Containment::inside);
    }
}
