#pragma once

#include "renorm/interval.hpp"

#include <vector>

namespace renorm {

struct AngleOutOfRange : IntervalError {
    AngleOutOfRange() : IntervalError("opening angle must lie strictly inside (0, pi)") {}
};
struct NormalizationUnsolvable : IntervalError {
    using IntervalError::IntervalError;
};
struct SlitViolation : IntervalError {
    using IntervalError::IntervalError;
};
struct DomainViolation : IntervalError {
    using IntervalError::IntervalError;
};

enum class Containment { inside, outside, straddle };
enum class Side { both, upper, lower };

// Plane cut along R \ J, optionally with four vertical slits rising from
// x0 +- i*y0 and its mirror -x0 +- i*y0.
struct SlitPlane {
    Interval J;
    bool has_d = false;
    Interval dx, dy;  // slit base point x0 + i*y0, y0 > 0

    static SlitPlane cut(const Interval& J) { return {J, false, Interval(0.0), Interval(0.0)}; }
    static SlitPlane four_slit(const Interval& J, const Interval& dx, const Interval& dy) {
        return {J, true, dx, dy};
    }
    Containment contains(const ComplexBox& z) const;
};

// Hyperbolic radius of the lens neighborhood of opening angle theta.
Interval poincare_radius(const Interval& theta);
inline Interval poincare_radius(double theta) { return poincare_radius(Interval(theta)); }

// Lens-shaped neighborhood of the real interval J whose boundary arcs meet R
// at the endpoints of J at angle theta.  Each one-sided half is exactly the
// intersection of a half plane with the disk of center
// (mid(J), -|J|/2 * cot(theta)) and radius |J|/(2 sin(theta)); that disk meets
// R exactly in J for every theta in (0, pi).
struct PoincareNeighborhood {
    Interval J;
    Interval theta;
    Side side = Side::both;

    PoincareNeighborhood(const Interval& J_, const Interval& theta_, Side side_ = Side::both);

    Interval center_x() const;
    Interval center_y_upper() const;  // y coordinate of the upper-arc disk center
    Interval radius() const;

    Containment contains(const ComplexBox& z) const;
    // n boxes per active arc enclosing the boundary, parametrized by the
    // central angle of the defining disk.
    std::vector<ComplexBox> boundary_boxes(int n) const;
};

// Image enclosure from the hyperbolic Schwarz lemma: any admissible holomorphic
// map sending J into J' maps each half lens over J into the same-angle half
// lens over J'.  The caller certifies the interval image.
inline PoincareNeighborhood schwarz_image(const PoincareNeighborhood& src, const Interval& Jprime) {
    return PoincareNeighborhood(Jprime, src.theta, src.side);
}

namespace cm {

inline Interval cm_pow(const Interval& z, const Interval& kappa) { return iv_pow(z, kappa); }
inline ComplexBox cm_pow(const ComplexBox& z, const Interval& kappa) { return box_pow(z, kappa); }
inline Interval one_over(const Interval& z) { return Interval(1.0) / z; }
inline ComplexBox one_over(const ComplexBox& z) {
    return ComplexBox(Interval(1.0), Interval(0.0)) / z;
}

// sigma_kappa(z) = ((1+z)^k - (1-z)^k)/((1+z)^k + (1-z)^k); inverse is
// sigma_{1/kappa}; sigma_{1/2} is the disk uniformization of the double slit
// plane.
template <class T>
T sigma_pow(const T& z, const Interval& kappa) {
    T p = cm_pow(Interval(1.0) + z, kappa);
    T q = cm_pow(Interval(1.0) - z, kappa);
    return (p - q) / (p + q);
}
template <class T>
T sigma_deriv(const T& z, const Interval& kappa) {
    T p = cm_pow(Interval(1.0) + z, kappa);
    T q = cm_pow(Interval(1.0) - z, kappa);
    T s = p + q;
    // sigma' = 4 kappa (1-z^2)^(kappa-1) / ((1+z)^kappa + (1-z)^kappa)^2
    return (4.0 * kappa) * cm_pow(Interval(1.0) - z * z, kappa - 1.0) / (s * s);
}

template <class T>
T zeta(const T& z) {
    return sigma_pow(z, Interval(0.5));
}
template <class T>
T zeta_inv(const T& w) {
    return (2.0 * w) / (Interval(1.0) + w * w);
}
template <class T>
T zeta_deriv(const T& z) {
    return sigma_deriv(z, Interval(0.5));
}

template <class T>
T moebius(const T& z, const Interval& a) {
    return (a + z) / (Interval(1.0) - a * z);
}
template <class T>
T moebius_inv(const T& w, const Interval& a) {
    return ((-a) + w) / (Interval(1.0) + a * w);
}
template <class T>
T moebius_deriv(const T& z, const Interval& a) {
    T d = Interval(1.0) - a * z;
    return (Interval(1.0) + a * a) * one_over(d * d);
}

} // namespace cm

// Composite uniformization of the double slit plane onto the lens over I with
// opening angle theta: affine(sigma_kappa(moebius(zeta(z)))), kappa = 2 - 2 theta/pi.
// Restricted to (-1, 1) it is a monotone bijection onto I.
struct ConformalChain {
    int k = 0;
    Interval I;       // target real interval
    Interval theta;
    Interval kappa;
    Interval a;       // Moebius normalization constant
    Interval target;  // required image of 0
    Interval residual;

    Interval qmid() const { return (Interval(I.lo()) + Interval(I.hi())) / 2.0; }
    Interval qhalf() const { return (Interval(I.hi()) - Interval(I.lo())) / 2.0; }

    template <class T>
    T eval(const T& z) const {
        using namespace cm;
        return qmid() + qhalf() * sigma_pow(moebius(zeta(z), a), kappa);
    }
    template <class T>
    T invert(const T& w) const {
        using namespace cm;
        T q = ((-qmid()) + w) / qhalf();
        return zeta_inv(moebius_inv(sigma_pow(q, 1.0 / kappa), a));
    }
    template <class T>
    T deriv(const T& z) const {
        using namespace cm;
        T zz = zeta(z);
        T mz = moebius(zz, a);
        return qhalf() * sigma_deriv(mz, kappa) * moebius_deriv(zz, a) * zeta_deriv(z);
    }
    template <class T>
    T invert_deriv(const T& w) const {
        return cm::one_over(deriv(invert(w)));
    }

    // Real-slice evaluation on the closed interval [-1, 1]: every stage maps
    // [-1, 1] into itself, so intersecting restores enclosures whose outward
    // rounding strays past an endpoint.
    Interval eval_closed(const Interval& z) const {
        using namespace cm;
        Interval unit(-1.0, 1.0);
        Interval w = moebius(zeta(z.intersect(unit)), a).intersect(unit);
        return qmid() + qhalf() * sigma_pow(w, kappa).intersect(unit);
    }
    Interval invert_closed(const Interval& w) const {
        using namespace cm;
        Interval unit(-1.0, 1.0);
        Interval q = (((-qmid()) + w) / qhalf()).intersect(unit);
        Interval m = sigma_pow(q, 1.0 / kappa).intersect(unit);
        return zeta_inv(moebius_inv(m, a)).intersect(unit);
    }
};

// Solves the normalization eval(0) = target; with the affine part sending 0 to
// mid(I), the constant has the closed form a = sigma_{1/kappa}(q^{-1}(target)).
ConformalChain chain_constants(int k, const Interval& I, const Interval& theta,
                               const Interval& target);

// Moebius-square-root isomorphism of a four-slit plane onto a double slit
// plane: w = A (z - x0)/sqrt((z - x0)^2 + h^2) + B, slits at x0 +- i[h, inf).
struct MoebiusSqrtMap {
    Interval x0, h;
    Interval A, B;

    static MoebiusSqrtMap solve(const Interval& x0, const Interval& h, double u1, double v1,
                                double u2, double v2);

    Interval eval(const Interval& x) const;
    ComplexBox eval(const ComplexBox& z, CutSide side = CutSide::none) const;
    Interval inverse(const Interval& y) const;
    ComplexBox inverse(const ComplexBox& w, CutSide side = CutSide::none) const;
    Interval deriv(const Interval& x) const;
    ComplexBox deriv(const ComplexBox& z, CutSide side = CutSide::none) const;
};

// The two isomorphisms used by the unperturbed-family proof, with baseline
// slit data d = 0.5 + 0.3524i and p = 0.69i:
//   which = 1: Phi1(-1.05) = -1, Phi1(0.05) = 1 on the four-slit plane over
//              (-1.05, 0.05);
//   which = 2: Phi2(0) = 0, Phi2(1) = 1 on the four-slit plane over
//              (-1.1593855, 1.1593855).
MoebiusSqrtMap make_phi1(const Interval& im_dbar = Interval(0.3524));
MoebiusSqrtMap make_phi2();
ComplexBox feig_phi(int which, const ComplexBox& z, CutSide side = CutSide::none);

} // namespace renorm
