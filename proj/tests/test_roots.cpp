#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "renorm/roots.hpp"

#include <cmath>

using namespace renorm;

TEST_CASE("certified bisection encloses sqrt(2)") {
    auto f = [](const Interval& x) { return sqr(x) - 2.0; };
    Interval r = bisect_root(f, 1.0, 2.0);
    double ref = std::sqrt(2.0);
    CHECK(r.lo() <= ref);
    CHECK(r.hi() >= ref);
    CHECK(r.width() <= 1e-12);
}

TEST_CASE("certified bisection refuses brackets without a sign change") {
    auto f = [](const Interval& x) { return sqr(x) - 2.0; };
    CHECK_THROWS_AS(bisect_root(f, 0.0, 1.0), NoSignChange);
    // an endpoint enclosure straddling zero is not a certificate either
    auto g = [](const Interval& x) { return x - 1.0; };
    CHECK_THROWS_AS(bisect_root(g, 1.0, 2.0), NoSignChange);
}

TEST_CASE("certified bisection keeps the bracket when the midpoint straddles") {
    // f crosses zero exactly at 1.25, a representable midpoint; the enclosure
    // there contains 0 and the loop must stop without losing the bracket
    auto f = [](const Interval& x) { return x - 1.25; };
    Interval r = bisect_root(f, 1.0, 1.5);
    CHECK(r.lo() <= 1.25);
    CHECK(r.hi() >= 1.25);
}

TEST_CASE("numeric bisection matches closed forms") {
    double r = bisect_root_numeric([](double x) { return std::cos(x); }, 1.0, 2.0);
    CHECK(std::fabs(r - M_PI / 2) < 1e-13);
    double q = bisect_root_numeric([](double x) { return x * x * x - 5.0; }, 1.0, 2.0);
    CHECK(std::fabs(q - std::cbrt(5.0)) < 1e-13);
    CHECK_THROWS_AS(bisect_root_numeric([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    NoSignChange);
}
