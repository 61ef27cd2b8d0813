#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "ckgeo/hplane.hpp"

using namespace ckgeo;

namespace {

// numeric oracle: geodesic length between two points by integrating ds = d(theta)/sin(theta)
// along the connecting semicircle (Simpson rule)
double length_oracle(const HPoint& p, const HPoint& q) {
    if (std::abs(p.x - q.x) < 1e-12) return std::abs(std::log(q.y / p.y));
    double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x));
    double th1 = std::atan2(p.y, p.x - c);
    double th2 = std::atan2(q.y, q.x - c);
    if (th1 > th2) std::swap(th1, th2);
    int n = 20000;
    double h = (th2 - th1) / n;
    double s = 0.0;
    auto f = [](double t) { return 1.0 / std::sin(t); };
    for (int i = 0; i < n; ++i) {
        double a = th1 + i * h;
        s += (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h)) * h / 6.0;
    }
    return s;
}

std::vector<MobiusIsometry> sample_isometries(unsigned seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<MobiusIsometry> out;
    while ((int)out.size() < count) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.1) out.emplace_back(a, b, c, d);
    }
    return out;
}

std::vector<HPoint> sample_on(const Geodesic& g, double lo, double hi, int n) {
    std::vector<HPoint> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(g.point_at(lo + (hi - lo) * i / n));
    return pts;
}

const Geodesic imag_axis{IdealPoint(0.0), IdealPoint::infinity()};

}  // namespace

TEST_CASE("dist basics") {
    HPoint i(0, 1), i2(0, 2);
    CHECK(dist(i, i) == Catch::Approx(0.0).margin(1e-12));
    CHECK(dist(i, i2) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(dist(i2, i) == Catch::Approx(dist(i, i2)).epsilon(1e-12));
}

TEST_CASE("dist matches length integration oracle") {
    HPoint p(1, 1), q(3, 1);
    CHECK(dist(p, q) == Catch::Approx(length_oracle(p, q)).margin(1e-6));
    // a few more generic pairs
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> v(0.2, 4.0);
    for (int t = 0; t < 10; ++t) {
        HPoint a(u(rng), v(rng)), b(u(rng), v(rng));
        CHECK(dist(a, b) == Catch::Approx(length_oracle(a, b)).margin(1e-6));
    }
}

TEST_CASE("isometry invariance of dist") {
    HPoint p(1, 1), q(-0.5, 2.5);
    for (const auto& m : sample_isometries(11, 20)) {
        CHECK(dist(m.apply(p), m.apply(q)) == Catch::Approx(dist(p, q)).margin(1e-9));
    }
}

TEST_CASE("classify_isometry") {
    CHECK(classify_isometry(MobiusIsometry::identity()) == IsometryType::Elliptic);
    CHECK(classify_isometry({2.0, 0, 0, 0.5}) == IsometryType::Hyperbolic);
    CHECK(classify_isometry({1, 1, 0, 1}) == IsometryType::Parabolic);
    // rotation about i
    double t = 0.7;
    CHECK(classify_isometry({std::cos(t), std::sin(t), -std::sin(t), std::cos(t)}) ==
          IsometryType::Elliptic);
}

TEST_CASE("axis of dilation") {
    MobiusIsometry m(2.0, 0, 0, 0.5);  // z -> 4z
    auto [g, len] = axis(m);
    CHECK(len == Catch::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(g.vertical());
    CHECK(g.endpoint_plus().at_infinity);  // attracting end at infinity
    CHECK(g.endpoint_minus().value == Catch::Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(axis(MobiusIsometry::identity()), NotHyperbolic);
}

TEST_CASE("axis of generic hyperbolic matrix vs quadratic-root oracle") {
    MobiusIsometry m(2.0, 1.0, 1.0, 1.0);  // trace 3
    auto [g, len] = axis(m);
    // fixed points: roots of c r^2 + (d-a) r - b = 0, i.e. r^2 - r - 1 = 0
    double r1 = (1.0 - std::sqrt(5.0)) / 2.0;
    double r2 = (1.0 + std::sqrt(5.0)) / 2.0;
    double e1 = g.endpoint_minus().value, e2 = g.endpoint_plus().value;
    CHECK(std::min(e1, e2) == Catch::Approx(r1).margin(1e-9));
    CHECK(std::max(e1, e2) == Catch::Approx(r2).margin(1e-9));
    CHECK(len == Catch::Approx(2.0 * std::acosh(1.5)).margin(1e-12));
    // translation length equals on-axis displacement, and m preserves the axis
    for (double c : {-1.0, 0.0, 2.0}) {
        HPoint p = g.point_at(c);
        HPoint mp = m.apply(p);
        CHECK(g.contains(mp, 1e-9));
        CHECK(dist(p, mp) == Catch::Approx(len).margin(1e-9));
    }
}

TEST_CASE("axis stable under powers") {
    MobiusIsometry m(2.0, 1.0, 1.0, 1.0);
    auto [g1, l1] = axis(m);
    MobiusIsometry p = m;
    for (int n = 2; n <= 4; ++n) {
        p = p * m;
        auto [gn, ln] = axis(p);
        CHECK(gn.same_line(g1, 1e-9));
        CHECK(ln == Catch::Approx(n * l1).margin(1e-8));
    }
}

TEST_CASE("geodesic chart is unit-speed and self-consistent") {
    Geodesic semi(IdealPoint(-1.0), IdealPoint(3.0));
    for (double t : {-2.0, -0.3, 0.0, 1.7}) {
        HPoint p = semi.point_at(t);
        CHECK(semi.contains(p, 1e-9));
        CHECK(semi.coord_of(p) == Catch::Approx(t).margin(1e-9));
        CHECK(dist(semi.point_at(0.0), p) == Catch::Approx(std::abs(t)).margin(1e-9));
    }
    Geodesic vert(IdealPoint::infinity(), IdealPoint(2.0));
    CHECK(dist(vert.point_at(-1.0), vert.point_at(1.5)) == Catch::Approx(2.5).margin(1e-12));
}

TEST_CASE("project_point basics") {
    HPoint p = imag_axis.point_at(0.4);
    HPoint f = project_point(imag_axis, p);
    CHECK(dist(p, f) < 1e-9);

    // golden-section oracle along the imaginary axis for p = 3+4i
    HPoint q(3, 4);
    double lo = -5, hi = 5;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    while (hi - lo > 1e-10) {
        double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
        if (dist(q, imag_axis.point_at(c1)) < dist(q, imag_axis.point_at(c2)))
            hi = c2;
        else
            lo = c1;
    }
    HPoint best = imag_axis.point_at(0.5 * (lo + hi));
    HPoint got = project_point(imag_axis, q);
    CHECK(got.x == Catch::Approx(0.0).margin(1e-6));
    CHECK(got.y == Catch::Approx(5.0).margin(1e-6));
    CHECK(dist(got, best) < 1e-5);

    Geodesic unit(IdealPoint(-1.0), IdealPoint(1.0));
    HPoint g2 = project_point(unit, HPoint(0, 2));
    CHECK(g2.x == Catch::Approx(0.0).margin(1e-9));
    CHECK(g2.y == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("project_point is minimizing, equivariant, 1-Lipschitz") {
    Geodesic beta(IdealPoint(-2.0), IdealPoint(0.5));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    std::uniform_real_distribution<double> uy(0.1, 5.0);
    auto isos = sample_isometries(31, 5);
    for (int t = 0; t < 30; ++t) {
        HPoint p(ux(rng), uy(rng));
        HPoint f = project_point(beta, p);
        CHECK(beta.contains(f, 1e-7));
        double df = dist(p, f);
        for (const HPoint& s : sample_on(beta, -6, 6, 200)) {
            CHECK(df <= dist(p, s) + 1e-6);
        }
        // equivariance
        for (const auto& m : isos) {
            HPoint lhs = project_point(beta.transformed(m), m.apply(p));
            HPoint rhs = m.apply(f);
            CHECK(dist(lhs, rhs) < 1e-6);
        }
        // 1-Lipschitz against another random point
        HPoint q(ux(rng), uy(rng));
        CHECK(dist(f, project_point(beta, q)) <= dist(p, q) + 1e-6);
    }
}

TEST_CASE("project_geodesic symmetric crossing cases") {
    Geodesic unit(IdealPoint(-1.0), IdealPoint(1.0));
    Interval iv = project_geodesic(imag_axis, unit);
    CHECK(iv.diameter() == Catch::Approx(0.0).margin(1e-9));
    // degenerate interval sits at i <-> coordinate ln 1 = 0
    CHECK(iv.lo == Catch::Approx(0.0).margin(1e-9));
    CHECK_THROWS_AS(project_geodesic(imag_axis, imag_axis), SameGeodesic);
}

TEST_CASE("project_geodesic vs dense sampling oracle") {
    Geodesic alpha(IdealPoint(2.0), IdealPoint(3.0));
    Interval iv = project_geodesic(imag_axis, alpha);
    double lo = kInf, hi = -kInf;
    for (const HPoint& s : sample_on(alpha, -10, 10, 1000)) {
        double c = imag_axis.coord_of(project_point(imag_axis, s));
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(iv.diameter() == Catch::Approx(hi - lo).margin(1e-4));
    CHECK(iv.lo == Catch::Approx(std::log(2.0)).margin(1e-9));
    CHECK(iv.hi == Catch::Approx(std::log(3.0)).margin(1e-9));
    // the projection of every sampled point lies in the interval
    CHECK(lo >= iv.lo - 1e-6);
    CHECK(hi <= iv.hi + 1e-6);
}

TEST_CASE("project_geodesic of a parallel vertical line is unbounded upward") {
    Geodesic alpha(IdealPoint(5.0), IdealPoint::infinity());
    Interval iv = project_geodesic(imag_axis, alpha);
    CHECK(iv.lo == Catch::Approx(std::log(5.0)).margin(1e-9));
    CHECK(std::isinf(iv.hi));
    // sampling oracle: finite end matches, top end grows with the window
    auto window_hull = [&](double w) {
        double lo2 = kInf, hi2 = -kInf;
        for (const HPoint& s : sample_on(alpha, -w, w, 400)) {
            double c = imag_axis.coord_of(project_point(imag_axis, s));
            lo2 = std::min(lo2, c);
            hi2 = std::max(hi2, c);
        }
        return Interval(lo2, hi2);
    };
    Interval h8 = window_hull(8.0), h16 = window_hull(16.0);
    CHECK(h8.lo == Catch::Approx(std::log(5.0)).margin(1e-4));
    CHECK(h16.hi > h8.hi + 7.0);  // unbounded above
}

TEST_CASE("proj_distance") {
    Geodesic a1(IdealPoint(2.0), IdealPoint(3.0));
    Geodesic a2(IdealPoint(-3.0), IdealPoint(-2.0));
    double d = proj_distance(imag_axis, a1, a2);
    CHECK(d == Catch::Approx(proj_distance(imag_axis, a2, a1)).margin(1e-12));
    CHECK(d > 0.0);
    // sampling oracle for the union hull
    double lo = kInf, hi = -kInf;
    for (const auto* g : {&a1, &a2}) {
        for (const HPoint& s : sample_on(*g, -10, 10, 1000)) {
            double c = imag_axis.coord_of(project_point(imag_axis, s));
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    }
    CHECK(d == Catch::Approx(hi - lo).margin(1e-4));
    // x -> -x fixes the imaginary axis, so both semicircles project to [ln2, ln3]
    CHECK(d == Catch::Approx(std::log(1.5)).margin(1e-9));

    // union with itself is the single diameter
    CHECK(proj_distance(imag_axis, a1, a1) ==
          Catch::Approx(project_geodesic(imag_axis, a1).diameter()).margin(1e-12));

    // semicircles centered at 0 project to single points i resp. 2i
    // (every point of |z| = r projects to ri), so the union has diameter ln 2
    Geodesic u1(IdealPoint(-1.0), IdealPoint(1.0));
    Geodesic u2(IdealPoint(-2.0), IdealPoint(2.0));
    CHECK(proj_distance(imag_axis, u1, u2) == Catch::Approx(std::log(2.0)).margin(1e-9));
    double worst = 0.0;
    for (const auto* g : {&u1, &u2}) {
        for (const HPoint& s : sample_on(*g, -8, 8, 400)) {
            double c = imag_axis.coord_of(project_point(imag_axis, s));
            double ref = (g == &u1) ? 0.0 : std::log(2.0);
            worst = std::max(worst, std::abs(c - ref));
        }
    }
    CHECK(worst < 1e-6);  // each semicircle really is a one-point projection

    CHECK_THROWS_AS(proj_distance(imag_axis, imag_axis, a1), SameGeodesic);
}

TEST_CASE("geodesic_separation") {
    Geodesic a(IdealPoint(2.0), IdealPoint(3.0));
    // endpoints map to 1/2, 1/3 under z -> 1/z... direct formula: cosh d = |2+3|/|3-2| = 5
    CHECK(geodesic_separation(imag_axis, a) == Catch::Approx(std::acosh(5.0)).margin(1e-9));
    CHECK(geodesic_separation(a, imag_axis) == Catch::Approx(std::acosh(5.0)).margin(1e-9));
    // minimization oracle
    double best = kInf;
    for (const HPoint& p : sample_on(imag_axis, -4, 4, 400)) {
        best = std::min(best, dist(p, project_point(a, p)));
    }
    CHECK(geodesic_separation(imag_axis, a) == Catch::Approx(best).margin(1e-4));

    Geodesic crossing(IdealPoint(-1.0), IdealPoint(1.0));
    CHECK(geodesic_separation(imag_axis, crossing) == 0.0);
    Geodesic asymptotic(IdealPoint(0.0), IdealPoint(7.0));
    CHECK(geodesic_separation(imag_axis, asymptotic) == 0.0);
}

TEST_CASE("project_ideal_coord endpoint directions") {
    CHECK(std::isinf(imag_axis.project_ideal_coord(IdealPoint::infinity())));
    CHECK(imag_axis.project_ideal_coord(IdealPoint::infinity()) > 0);
    CHECK(imag_axis.project_ideal_coord(IdealPoint(0.0)) < 0);
    Geodesic semi(IdealPoint(-1.0), IdealPoint(1.0));
    CHECK(semi.project_ideal_coord(IdealPoint(1.0)) > 0);
    CHECK(std::isinf(semi.project_ideal_coord(IdealPoint(-1.0))));
    CHECK(semi.project_ideal_coord(IdealPoint(-1.0)) < 0);
}
