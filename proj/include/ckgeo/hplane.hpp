#pragma once

// Upper half-plane model of the hyperbolic plane: points, Mobius isometries,
// complete geodesics with arclength charts, closest-point projections and
// projection distances between geodesics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "ckgeo/errors.hpp"

namespace ckgeo {

inline constexpr double kEpsGeom = 1e-9;  // coincidence tolerance
inline constexpr double kEpsVar = 1e-6;   // variational / projection tolerance
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct HPoint {
    double x = 0.0;
    double y = 1.0;

    HPoint() = default;
    HPoint(double px, double py) : x(px), y(py) {
        if (!(std::isfinite(px) && std::isfinite(py)) || py <= kEpsGeom) {
            throw Error("HPoint: coordinates must be finite with y > 0");
        }
    }
};

struct IdealPoint {
    double value = 0.0;
    bool at_infinity = false;

    IdealPoint() = default;
    explicit IdealPoint(double v) : value(v) {
        if (!std::isfinite(v)) throw Error("IdealPoint: non-finite boundary value");
    }
    static IdealPoint infinity() {
        IdealPoint p;
        p.at_infinity = true;
        return p;
    }
    bool same_as(const IdealPoint& o, double eps = kEpsGeom) const {
        if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
        return std::abs(value - o.value) < eps;
    }
};

inline double dist(const HPoint& p, const HPoint& q) {
    double dx = p.x - q.x;
    double dy = p.y - q.y;
    double arg = 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    return std::acosh(std::max(1.0, arg));
}

enum class IsometryType { Elliptic, Parabolic, Hyperbolic };

// Real 2x2 matrix with det = 1 acting on the upper half-plane by z -> (az+b)/(cz+d).
struct MobiusIsometry {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    MobiusIsometry() = default;
    MobiusIsometry(double ma, double mb, double mc, double md) : a(ma), b(mb), c(mc), d(md) {
        double det = a * d - b * c;
        if (!(det > 0.0) || !std::isfinite(det)) {
            throw Error("MobiusIsometry: determinant must be positive and finite");
        }
        double s = std::sqrt(det);
        a /= s;
        b /= s;
        c /= s;
        d /= s;
    }

    static MobiusIsometry identity() { return {}; }

    double trace() const { return a + d; }

    MobiusIsometry inverse() const { return {d, -b, -c, a}; }

    MobiusIsometry operator*(const MobiusIsometry& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    HPoint apply(const HPoint& p) const {
        std::complex<double> z(p.x, p.y);
        std::complex<double> w = (a * z + b) / (c * z + d);
        return {w.real(), w.imag()};
    }

    IdealPoint apply(const IdealPoint& p) const {
        if (p.at_infinity) {
            if (std::abs(c) < kEpsGeom) return IdealPoint::infinity();
            return IdealPoint(a / c);
        }
        double den = c * p.value + d;
        if (std::abs(den) < kEpsGeom) return IdealPoint::infinity();
        return IdealPoint((a * p.value + b) / den);
    }

    // Entrywise max difference after Frobenius normalization and fixing the
    // projective sign ambiguity; insensitive to a common scalar factor.
    double proj_distance_to(const MobiusIsometry& o) const {
        double n1 = std::sqrt(a * a + b * b + c * c + d * d);
        double n2 = std::sqrt(o.a * o.a + o.b * o.b + o.c * o.c + o.d * o.d);
        auto diff = [&](double s) {
            return std::max({std::abs(a / n1 - s * o.a / n2), std::abs(b / n1 - s * o.b / n2),
                             std::abs(c / n1 - s * o.c / n2), std::abs(d / n1 - s * o.d / n2)});
        };
        return std::min(diff(1.0), diff(-1.0));
    }
};

inline IsometryType classify_isometry(const MobiusIsometry& m) {
    // +-identity first: trace 2 but no parabolic dynamics
    if (std::abs(m.b) <= kEpsGeom && std::abs(m.c) <= kEpsGeom && std::abs(m.a - m.d) <= kEpsGeom) {
        return IsometryType::Elliptic;
    }
    double t = std::abs(m.trace());
    if (t > 2.0 + kEpsGeom) return IsometryType::Hyperbolic;
    if (std::abs(t - 2.0) <= kEpsGeom) return IsometryType::Parabolic;
    return IsometryType::Elliptic;
}

// Closed interval of arclength coordinates on a host geodesic; ends may be infinite
// when the projected object is asymptotic to the host.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double a, double b) : lo(std::min(a, b)), hi(std::max(a, b)) {}
    double diameter() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

inline double union_diameter(const Interval& a, const Interval& b) {
    return std::max(a.hi, b.hi) - std::min(a.lo, b.lo);
}

// Complete geodesic: vertical ray (one ideal endpoint at infinity) or semicircle
// centered on the boundary line. Carries an orientation ("plus" endpoint) and an
// arclength origin; coord_of/point_at convert between points and coordinates.
class Geodesic {
  public:
    Geodesic(IdealPoint minus, IdealPoint plus) : minus_(minus), plus_(plus) {
        if (minus.same_as(plus)) throw Error("Geodesic: endpoints must be distinct");
        if (minus.at_infinity || plus.at_infinity) {
            vertical_ = true;
            x0_ = minus.at_infinity ? plus.value : minus.value;
            sigma_ = plus.at_infinity ? 1.0 : -1.0;
        } else {
            vertical_ = false;
            center_ = 0.5 * (minus.value + plus.value);
            radius_ = 0.5 * std::abs(plus.value - minus.value);
            // raw chart ln tan(theta/2) increases toward the left endpoint
            sigma_ = (plus.value < minus.value) ? 1.0 : -1.0;
        }
    }

    const IdealPoint& endpoint_minus() const { return minus_; }
    const IdealPoint& endpoint_plus() const { return plus_; }
    bool vertical() const { return vertical_; }

    bool same_line(const Geodesic& o, double eps = kEpsGeom) const {
        return (minus_.same_as(o.minus_, eps) && plus_.same_as(o.plus_, eps)) ||
               (minus_.same_as(o.plus_, eps) && plus_.same_as(o.minus_, eps));
    }

    HPoint point_at(double coord) const {
        double t = coord + t_origin_;
        if (vertical_) return {x0_, std::exp(sigma_ * t)};
        double theta = 2.0 * std::atan(std::exp(sigma_ * t));
        return {center_ + radius_ * std::cos(theta), radius_ * std::sin(theta)};
    }

    // Arclength coordinate of a point assumed to lie on the geodesic.
    double coord_of(const HPoint& p) const { return raw_coord(p) - t_origin_; }

    bool contains(const HPoint& p, double eps = kEpsVar) const {
        if (vertical_) return std::abs(p.x - x0_) < eps;
        double dx = p.x - center_;
        return std::abs(std::hypot(dx, p.y) - radius_) < eps;
    }

    void set_origin(const HPoint& p) { t_origin_ += coord_of(p); }

    Geodesic transformed(const MobiusIsometry& m) const {
        Geodesic g(m.apply(minus_), m.apply(plus_));
        // keep the arclength origin at the image of the old origin
        g.set_origin(m.apply(point_at(0.0)));
        return g;
    }

    // Closest point of p on this geodesic.
    HPoint foot(const HPoint& p) const {
        if (vertical_) return {x0_, std::hypot(p.x - x0_, p.y)};
        MobiusIsometry m = standardize();
        HPoint w = m.apply(p);
        HPoint proj(0.0, std::hypot(w.x, w.y));
        return m.inverse().apply(proj);
    }

    // Arclength coordinate of the projection of an ideal point; +-infinity when the
    // ideal point is an endpoint of this geodesic (asymptotic direction).
    double project_ideal_coord(const IdealPoint& q) const {
        if (q.same_as(plus_)) return kInf;
        if (q.same_as(minus_)) return -kInf;
        if (vertical_) {
            // q is finite and distinct from x0
            return coord_of(HPoint(x0_, std::abs(q.value - x0_)));
        }
        MobiusIsometry m = standardize();
        IdealPoint w = m.apply(q);
        double r = w.at_infinity ? kInf : std::abs(w.value);
        if (r < kEpsGeom || std::isinf(r)) {
            // numerically at an endpoint; direction resolved above in exact cases
            return r < 1.0 ? std_zero_coord() : std_inf_coord();
        }
        return coord_of(m.inverse().apply(HPoint(0.0, r)));
    }

    // Mobius map sending this geodesic to the imaginary axis.
    MobiusIsometry standardize() const {
        if (vertical_) return {1.0, -x0_, 0.0, 1.0};
        double u = center_ - radius_;
        double v = center_ + radius_;
        // z -> (z - v)/(z - u): v -> 0, u -> infinity, det = v - u > 0
        return {1.0, -v, 1.0, -u};
    }

  private:
    double raw_coord(const HPoint& p) const {
        if (vertical_) return sigma_ * std::log(p.y);
        double theta = std::atan2(p.y, p.x - center_);
        return sigma_ * std::log(std::tan(0.5 * theta));
    }

    // Coordinates toward the standardized 0 / infinity endpoints (v resp. u).
    double std_zero_coord() const {
        // v = center + radius is the right endpoint; right endpoint is "plus" iff sigma < 0
        return sigma_ < 0.0 ? kInf : -kInf;
    }
    double std_inf_coord() const { return sigma_ < 0.0 ? -kInf : kInf; }

    IdealPoint minus_, plus_;
    bool vertical_ = false;
    double x0_ = 0.0;      // vertical case
    double center_ = 0.0;  // semicircle case
    double radius_ = 1.0;
    double sigma_ = 1.0;
    double t_origin_ = 0.0;
};

inline HPoint project_point(const Geodesic& beta, const HPoint& p) { return beta.foot(p); }

// Axis of a hyperbolic isometry, oriented from the repelling to the attracting
// fixed point, with origin at the foot of i. Second component is the translation length.
inline std::pair<Geodesic, double> axis(const MobiusIsometry& m) {
    if (classify_isometry(m) != IsometryType::Hyperbolic) {
        throw NotHyperbolic("axis: isometry is not hyperbolic");
    }
    double tr = m.trace();
    double length = 2.0 * std::acosh(std::abs(tr) / 2.0);
    IdealPoint rep, att;
    if (std::abs(m.c) > kEpsGeom) {
        double disc = std::sqrt(tr * tr - 4.0);
        double r1 = (m.a - m.d + disc) / (2.0 * m.c);
        double r2 = (m.a - m.d - disc) / (2.0 * m.c);
        // attracting fixed point: |m'(r)| < 1, i.e. |c r + d| > 1
        bool r1_att = std::abs(m.c * r1 + m.d) > 1.0;
        att = IdealPoint(r1_att ? r1 : r2);
        rep = IdealPoint(r1_att ? r2 : r1);
    } else {
        IdealPoint inf = IdealPoint::infinity();
        IdealPoint fin = IdealPoint(m.b / (m.d - m.a));
        if (std::abs(m.a) > std::abs(m.d)) {
            att = inf;
            rep = fin;
        } else {
            att = fin;
            rep = inf;
        }
    }
    Geodesic g(rep, att);
    g.set_origin(g.foot(HPoint(0.0, 1.0)));
    return {g, length};
}

// Interval on beta spanned by the projections of alpha's ideal endpoints.
inline Interval project_geodesic(const Geodesic& beta, const Geodesic& alpha) {
    if (beta.same_line(alpha)) throw SameGeodesic("project_geodesic: alpha equals beta");
    double c1 = beta.project_ideal_coord(alpha.endpoint_minus());
    double c2 = beta.project_ideal_coord(alpha.endpoint_plus());
    return {c1, c2};
}

inline double proj_distance(const Geodesic& beta, const Geodesic& alpha1, const Geodesic& alpha2) {
    if (beta.same_line(alpha1) || beta.same_line(alpha2)) {
        throw SameGeodesic("proj_distance: beta coincides with a source geodesic");
    }
    Interval i1 = project_geodesic(beta, alpha1);
    Interval i2 = project_geodesic(beta, alpha2);
    return union_diameter(i1, i2);
}

// Infimal distance between two complete geodesics; 0 when they cross or are asymptotic.
inline double geodesic_separation(const Geodesic& alpha, const Geodesic& beta) {
    if (alpha.same_line(beta)) return 0.0;
    MobiusIsometry m = alpha.standardize();
    IdealPoint p = m.apply(beta.endpoint_minus());
    IdealPoint q = m.apply(beta.endpoint_plus());
    if (p.at_infinity || q.at_infinity) return 0.0;  // shared endpoint with alpha
    double u = p.value, v = q.value;
    if (u == 0.0 || v == 0.0 || (u > 0.0) != (v > 0.0)) return 0.0;
    double ratio = std::abs(u + v) / std::abs(v - u);
    return std::acosh(std::max(1.0, ratio));
}

}  // namespace ckgeo
