#pragma once

// Projection systems: an indexed family of lines/quasi-lines with projection
// maps pi_Y, the three-flavor projection distances d_Y, empirical estimation of
// the projection constant xi, and axiom verification over the truncation.

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "ckgeo/errors.hpp"
#include "ckgeo/freeword.hpp"
#include "ckgeo/hplane.hpp"
#include "ckgeo/schottky.hpp"

namespace ckgeo {

// point x on member X, by coordinate in X's chart
struct PointRef {
    int member = 0;
    double coord = 0.0;
};

struct AxiomReport {
    std::vector<std::array<int, 2>> axiom1_violations;  // (Y, X) with diam pi_Y(X) > xi
    std::vector<std::array<int, 3>> axiom2_violations;  // (Y, X, Z) with both sides > xi
    int axiom3_max_count = 0;                           // max #{Y : d_Y(X,Z) > xi}
    bool clean() const { return axiom1_violations.empty() && axiom2_violations.empty(); }
};

class ProjectionSystem {
  public:
    ProjectionSystem(int n, std::function<Interval(int, int)> projector)
        : n_(n), cache_(n * n), have_(n * n, false), projector_(std::move(projector)) {}

    static ProjectionSystem from_geodesics(std::vector<Geodesic> lines) {
        auto shared = std::make_shared<std::vector<Geodesic>>(std::move(lines));
        ProjectionSystem s((int)shared->size(), [shared](int Y, int X) {
            return project_geodesic((*shared)[Y], (*shared)[X]);
        });
        s.lines_ = shared;
        return s;
    }

    int size() const { return n_; }

    const Geodesic& geodesic(int i) const {
        if (!lines_) throw Error("ProjectionSystem: no geodesic geometry attached");
        return (*lines_)[i];
    }

    // pi_Y(X), cached
    const Interval& pi(int Y, int X) const {
        if (Y == X) throw InvalidCombination("pi: projection of a member onto itself");
        std::size_t k = (std::size_t)Y * n_ + X;
        if (!have_[k]) {
            cache_[k] = projector_(Y, X);
            have_[k] = true;
        }
        return cache_[k];
    }

    // set flavor: d_Y(X,Z) = diam(pi_Y(X) u pi_Y(Z)); X == Z gives a single diameter
    double dY(int Y, int X, int Z) const {
        if (Y == X || Y == Z) throw InvalidCombination("dY: Y must differ from X and Z");
        if (X == Z) return pi(Y, X).diameter();
        return union_diameter(pi(Y, X), pi(Y, Z));
    }

    // point flavor, three cases
    double dY(int Y, const PointRef& x, const PointRef& z) const {
        if (x.member == Y && z.member == Y) return std::abs(x.coord - z.coord);
        if (x.member == Y || z.member == Y) {
            const PointRef& on = (x.member == Y) ? x : z;
            const PointRef& off = (x.member == Y) ? z : x;
            const Interval& iv = pi(Y, off.member);
            return std::max(iv.hi, on.coord) - std::min(iv.lo, on.coord);
        }
        return dY(Y, x.member, z.member);
    }

    // smallest xi making axioms (1) and (2) hold on the truncation
    double estimate_xi() const {
        double xi = 0.0;
        for (int Y = 0; Y < n_; ++Y) {
            for (int X = 0; X < n_; ++X) {
                if (X != Y) xi = std::max(xi, pi(Y, X).diameter());
            }
        }
        for (int Y = 0; Y < n_; ++Y) {
            for (int X = Y + 1; X < n_; ++X) {
                for (int Z = 0; Z < n_; ++Z) {
                    if (Z == Y || Z == X) continue;
                    xi = std::max(xi, std::min(dY(Y, X, Z), dY(X, Y, Z)));
                }
            }
        }
        return xi;
    }

    AxiomReport verify_axioms(double xi) const {
        AxiomReport rep;
        for (int Y = 0; Y < n_; ++Y) {
            for (int X = 0; X < n_; ++X) {
                if (X != Y && pi(Y, X).diameter() > xi) rep.axiom1_violations.push_back({Y, X});
            }
        }
        for (int Y = 0; Y < n_; ++Y) {
            for (int X = Y + 1; X < n_; ++X) {
                for (int Z = 0; Z < n_; ++Z) {
                    if (Z == Y || Z == X) continue;
                    if (dY(Y, X, Z) > xi && dY(X, Y, Z) > xi) {
                        rep.axiom2_violations.push_back({Y, X, Z});
                    }
                }
            }
        }
        for (int X = 0; X < n_; ++X) {
            for (int Z = X + 1; Z < n_; ++Z) {
                int count = 0;
                for (int Y = 0; Y < n_; ++Y) {
                    if (Y == X || Y == Z) continue;
                    if (dY(Y, X, Z) > xi) ++count;
                }
                rep.axiom3_max_count = std::max(rep.axiom3_max_count, count);
            }
        }
        return rep;
    }

  private:
    int n_;
    mutable std::vector<Interval> cache_;
    mutable std::vector<char> have_;
    std::function<Interval(int, int)> projector_;
    std::shared_ptr<std::vector<Geodesic>> lines_;
};

// distinct axes of the conjugates w s w^-1, w over the radius-R ball
inline ProjectionSystem axes_family(const SchottkyRep& rep, const std::vector<FreeWord>& seeds,
                                    int radius) {
    std::vector<Geodesic> axes;
    for (const auto& s : seeds) {
        if (classify_isometry(evaluate(rep, s)) != IsometryType::Hyperbolic) {
            throw NotHyperbolicSeed("axes_family: seed does not evaluate to a hyperbolic matrix");
        }
        for (const auto& w : ball(rep.rank(), radius)) {
            Geodesic g = axis(evaluate(rep, w * s * w.inverse())).first;
            bool seen = false;
            for (const auto& have : axes) seen = seen || have.same_line(g, kEpsGeom);
            if (!seen) axes.push_back(g);
        }
    }
    return ProjectionSystem::from_geodesics(std::move(axes));
}

}  // namespace ckgeo
