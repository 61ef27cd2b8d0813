#pragma once

// Matrix representations of free groups acting on the upper half-plane,
// certified free and discrete by a ping-pong test with Dirichlet half-planes.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ckgeo/errors.hpp"
#include "ckgeo/freeword.hpp"
#include "ckgeo/hplane.hpp"

namespace ckgeo {

struct SchottkyRep {
    std::vector<MobiusIsometry> gens;
    double margin = 0.0;  // filled in by verify_ping_pong

    int rank() const { return (int)gens.size(); }
};

inline MobiusIsometry evaluate(const SchottkyRep& rep, const FreeWord& w) {
    MobiusIsometry m;
    for (int l : w.letters()) {
        int idx = std::abs(l) - 1;
        if (idx >= rep.rank()) throw Error("evaluate: letter outside representation rank");
        m = m * (l > 0 ? rep.gens[idx] : rep.gens[idx].inverse());
    }
    return m;
}

namespace detail {

// boundary angle of real x under z -> (z-i)/(z+i); infinity maps to angle 0
inline double boundary_angle(double x) {
    double phi = std::atan2(-2.0 * x, x * x - 1.0);
    return phi < 0 ? phi + 2.0 * std::numbers::pi : phi;
}

inline double boundary_point(double phi) {
    // inverse of boundary_angle; phi == 0 corresponds to infinity
    double t = std::tan(0.5 * phi);
    return t == 0.0 ? kInf : -1.0 / t;
}

struct Arc {
    double start;  // angle in [0, 2pi)
    double len;    // CCW extent, in (0, 2pi)
    double end() const { return start + len; }
};

// Dirichlet side function for base o = i and q = s(o): negative on the half-plane
// closer to q, evaluated on the boundary (x may be infinite).
inline double side_value(double x, const HPoint& q) {
    if (std::isinf(x)) return 1.0 - q.y;  // leading coefficient of the quadratic
    double dq = (x - q.x) * (x - q.x) + q.y * q.y;
    double dp = x * x + 1.0;
    return dq - q.y * dp;
}

// boundary arc of {z : d(z, s(o)) < d(z, o)} on the circle
inline Arc dirichlet_arc(const MobiusIsometry& s) {
    HPoint q = s.apply(HPoint(0.0, 1.0));
    // side_value is a quadratic in x: (1 - y_q) x^2 - 2 x_q x + (x_q^2 + y_q^2 - y_q)
    double A = 1.0 - q.y;
    double B = -2.0 * q.x;
    double C = q.x * q.x + q.y * q.y - q.y;
    double r1, r2;
    if (std::abs(A) < kEpsGeom) {
        // one root at infinity
        r1 = -C / B;
        r2 = kInf;
    } else {
        double disc = B * B - 4.0 * A * C;
        if (disc <= 0.0) throw Error("dirichlet_arc: degenerate bisector");
        double sq = std::sqrt(disc);
        r1 = (-B - sq) / (2.0 * A);
        r2 = (-B + sq) / (2.0 * A);
    }
    double t1 = std::isinf(r1) ? 0.0 : boundary_angle(r1);
    double t2 = std::isinf(r2) ? 0.0 : boundary_angle(r2);
    if (t1 > t2) std::swap(t1, t2);
    // the half-plane arc is one of (t1, t2) / (t2, t1 + 2pi); pick by a midpoint test
    double mid = 0.5 * (t1 + t2);
    Arc arc{t1, t2 - t1};
    if (side_value(boundary_point(mid), q) >= 0.0) {
        arc = {t2, t1 + 2.0 * std::numbers::pi - t2};
    }
    return arc;
}

}  // namespace detail

// Minimal cyclic gap between the 2k Dirichlet-domain boundary arcs of the
// generators and their inverses; positive margin certifies a free discrete
// action (Klein ping-pong with the half-planes as domains).
inline double verify_ping_pong(const SchottkyRep& rep) {
    std::vector<detail::Arc> arcs;
    for (const auto& g : rep.gens) {
        if (classify_isometry(g) != IsometryType::Hyperbolic) {
            throw NotHyperbolicGenerator("verify_ping_pong: generator not hyperbolic");
        }
        arcs.push_back(detail::dirichlet_arc(g));
        arcs.push_back(detail::dirichlet_arc(g.inverse()));
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const detail::Arc& a, const detail::Arc& b) { return a.start < b.start; });
    double margin = kInf;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        double next_start =
            (i + 1 < arcs.size()) ? arcs[i + 1].start : arcs[0].start + 2.0 * std::numbers::pi;
        margin = std::min(margin, next_start - arcs[i].end());
    }
    return margin;
}

// a = diag(3, 1/3), b = a conjugated by the quarter-turn about i; the commutator
// [a, b] is hyperbolic, so boundary curves of the once-punctured torus are geodesics
inline SchottkyRep default_schottky() {
    SchottkyRep rep;
    MobiusIsometry a(3.0, 0.0, 0.0, 1.0 / 3.0);
    double c = std::cos(std::numbers::pi / 4.0), s = std::sin(std::numbers::pi / 4.0);
    MobiusIsometry r(c, s, -s, c);
    rep.gens = {a, r * a * r.inverse()};
    rep.margin = verify_ping_pong(rep);
    if (!(rep.margin > 0.0)) throw Error("default_schottky: ping-pong certificate failed");
    FreeWord comm = commutator(FreeWord{1}, FreeWord{2});
    if (classify_isometry(evaluate(rep, comm)) != IsometryType::Hyperbolic) {
        throw Error("default_schottky: commutator not hyperbolic");
    }
    return rep;
}

}  // namespace ckgeo
