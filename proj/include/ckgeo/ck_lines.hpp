#pragma once

// Quasi-lines L_v attached to Bass-Serre tree vertices, boundary lines of edges
// realized as peripheral axes in the vertex hyperbolic plane, and the
// projection Pi_{L_v}(L_{v'}) computed through the last two edges of the tree
// geodesic. The chart maps psi_e are calibrated from two exact edge-group
// points, so no case analysis over coset conventions is needed.

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ckgeo/bass_serre.hpp"
#include "ckgeo/errors.hpp"
#include "ckgeo/hplane.hpp"
#include "ckgeo/projections.hpp"

namespace ckgeo {

// a directed tree edge as seen from its source vertex: graph edge, crossing
// direction, and the local coset representative in the source vertex group
struct EdgeDesc {
    int edge = -1;
    int dir = 0;
    FreeWord local;
};

class CKLineFamily {
  public:
    explicit CKLineFamily(const BassSerreBall& ball) : ball_(&ball) {
        const AdmissibleGraph& g = ball.graph();
        fiber_len_.resize(g.vertices.size(), 0.0);
        for (int t = 0; t < (int)g.vertices.size(); ++t) {
            // calibrate the fiber length of z_t across the first non-loop edge
            for (const auto& e : g.edges) {
                if (e.loop) continue;
                if (e.tail == t) {
                    fiber_len_[t] = translation_length(e.head, e.w_head);
                    break;
                }
                if (e.head == t) {
                    fiber_len_[t] = translation_length(e.tail, e.w_tail);
                    break;
                }
            }
            if (fiber_len_[t] <= 0.0) throw Error("CKLineFamily: no tree edge calibrates vertex");
        }
    }

    const BassSerreBall& ball() const { return *ball_; }
    double fiber_length(int type) const { return fiber_len_[type]; }

    double translation_length(int type, const FreeWord& w) const {
        return axis(evaluate(ball_->graph().reps[type], w)).second;
    }

    // chart coordinate on L_v of a group element x lying in the coset rep_v G
    double coordinate(int v, const AmalgamElement& x) const {
        return chart_coord(ball_->vertex(v).rep, ball_->vertex(v).type, x);
    }

    // the tree edge from ball vertex u toward its ball neighbor n
    EdgeDesc edge_desc(int u, int n) const {
        const BSVertex& un = ball_->vertex(n);
        if (un.parent == u) return {un.via_edge, un.via_dir, un.via_local};
        const BSVertex& uu = ball_->vertex(u);
        if (uu.parent == n) return {uu.via_edge, -uu.via_dir, {}};
        throw Error("edge_desc: vertices not adjacent in the ball");
    }

    // boundary line of the edge (u, ed) inside the hyperbolic plane of u's type,
    // oriented along the peripheral word, origin at the foot of i
    const Geodesic& boundary_line(int u, const EdgeDesc& ed) const {
        int t = ball_->vertex(u).type;
        auto key = std::make_tuple(t, ed.edge, ed.dir, ed.local.str());
        auto it = line_cache_.find(key);
        if (it != line_cache_.end()) return it->second;
        const AdmissibleGraph& g = ball_->graph();
        Geodesic ax = axis(evaluate(g.reps[t], g.factor_word(ed.edge, ed.dir))).first;
        Geodesic moved = ax.transformed(evaluate(g.reps[t], ed.local));
        return line_cache_.emplace(key, moved).first->second;
    }

    // Pi_{L_v}(L_{far}): project through the last two edges of [far, v]
    Interval project(int v, int far) const {
        std::vector<int> p = ball_->path(far, v);
        if (p.size() < 3) throw TooClose("ck projection needs tree distance >= 2");
        int u = p[p.size() - 2];
        int w = p[p.size() - 3];
        Interval span = project_geodesic(boundary_line(u, edge_desc(u, v)),
                                         boundary_line(u, edge_desc(u, w)));
        const PsiParams& ps = psi_params(u, v);
        return {ps.apply(span.lo), ps.apply(span.hi)};
    }

    // diam(Pi_{L_w}(L_u) u Pi_{L_w}(L_v))
    double project_dist(int w, int u, int v) const {
        if (u == v) return project(w, u).diameter();
        return union_diameter(project(w, u), project(w, v));
    }

    // Pi_{L_root}(L_{x root}) read off the canonical tokens of x, without
    // requiring x root to lie in the built ball
    Interval project_onto_root(const AmalgamElement& x) const {
        AmalgamElement key = x.coset_key();
        const auto& toks = key.tokens();
        // tokens: S0 E1 S1 E2 ... En [id]
        if (key.crossings() < 2) throw TooClose("ck projection needs tree distance >= 2");
        // u = S0 E1 G, its far neighbor continues with S1 E2
        const Token& S0 = toks[0];
        const Token& E1 = toks[1];
        const Token& S1 = toks[2];
        const Token& E2 = toks[3];
        const AdmissibleGraph& g = ball_->graph();
        AmalgamElement rep_u = AmalgamElement::vertex_elt(g, S0.s.vertex, S0.s.base, S0.s.fiber) *
                               AmalgamElement::crossing(g, E1.edge, E1.dir);
        EdgeDesc toward_far{E2.edge, E2.dir, S1.s.base};
        EdgeDesc toward_root{E1.edge, -E1.dir, {}};
        int tu = rep_u.end_vertex();
        // the local word of the far edge can be astronomically long (powers of
        // boundary words), so move the axis endpoints letter by letter instead
        // of evaluating the whole word as one matrix
        Geodesic host = make_line(tu, toward_root);
        auto [e1, e2] = far_endpoints(tu, toward_far);
        double c1 = host.project_ideal_coord(e1);
        double c2 = host.project_ideal_coord(e2);
        Interval span{std::min(c1, c2), std::max(c1, c2)};
        PsiParams ps = compute_psi(rep_u, toward_root, AmalgamElement(g), g.root);
        return {ps.apply(span.lo), ps.apply(span.hi)};
    }

    // image vertex of v under the deck transformation by g
    int act_vertex(const AmalgamElement& g, int v) const { return ball_->act(g, v); }

    // g maps L_v to L_{gv} shifting chart coordinates by a constant
    double act_coord(const AmalgamElement& g, int v, double c) const {
        int gv = act_vertex(g, v);
        AmalgamElement delta = ball_->vertex(gv).rep.inverse() * g * ball_->vertex(v).rep;
        const Syllable& s = delta.syllable();
        return c + fiber_len_[ball_->vertex(v).type] * (double)s.fiber;
    }

  private:
    struct PsiParams {
        double q0 = 0.0, q1 = 0.0, tw = 1.0;
        double apply(double s) const { return q0 + (q1 - q0) * s / tw; }
    };

    double chart_coord(const AmalgamElement& rep, int type, const AmalgamElement& x) const {
        AmalgamElement r = rep.inverse() * x;
        if (!r.in_vertex_group()) throw Error("chart_coord: element not in the vertex coset");
        return fiber_len_[type] * (double)r.syllable().fiber;
    }

    // calibrate psi from the two edge-group points local * w^j, j = 0, 1, whose
    // arclength positions on the boundary line are 0 and tw
    PsiParams compute_psi(const AmalgamElement& rep_u, const EdgeDesc& toward_near,
                          const AmalgamElement& rep_v, int type_v) const {
        const AdmissibleGraph& g = ball_->graph();
        int tu = rep_u.end_vertex();
        const FreeWord& w = g.factor_word(toward_near.edge, toward_near.dir);
        PsiParams ps;
        ps.tw = translation_length(tu, w);
        double q[2];
        for (int j = 0; j < 2; ++j) {
            AmalgamElement p = rep_u *
                               AmalgamElement::vertex_elt(g, tu, toward_near.local * w.pow(j), 0) *
                               AmalgamElement::crossing(g, toward_near.edge, toward_near.dir);
            q[j] = chart_coord(rep_v, type_v, p);
        }
        ps.q0 = q[0];
        ps.q1 = q[1];
        return ps;
    }

    const PsiParams& psi_params(int u, int v) const {
        auto key = std::make_pair(u, v);
        auto it = psi_cache_.find(key);
        if (it != psi_cache_.end()) return it->second;
        PsiParams ps = compute_psi(ball_->vertex(u).rep, edge_desc(u, v), ball_->vertex(v).rep,
                                   ball_->vertex(v).type);
        return psi_cache_.emplace(key, ps).first->second;
    }

    Geodesic make_line(int type, const EdgeDesc& ed) const {
        const AdmissibleGraph& g = ball_->graph();
        Geodesic ax = axis(evaluate(g.reps[type], g.factor_word(ed.edge, ed.dir))).first;
        return ax.transformed(evaluate(g.reps[type], ed.local));
    }

    // ideal endpoints of local * axis(factor word), stable for long locals
    std::pair<IdealPoint, IdealPoint> far_endpoints(int type, const EdgeDesc& ed) const {
        const AdmissibleGraph& g = ball_->graph();
        Geodesic ax = axis(evaluate(g.reps[type], g.factor_word(ed.edge, ed.dir))).first;
        IdealPoint p = ax.endpoint_minus(), q = ax.endpoint_plus();
        const auto& letters = ed.local.letters();
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            const MobiusIsometry& gen = g.reps[type].gens[std::abs(*it) - 1];
            MobiusIsometry m = *it > 0 ? gen : gen.inverse();
            p = m.apply(p);
            q = m.apply(q);
        }
        return {p, q};
    }

    const BassSerreBall* ball_;
    std::vector<double> fiber_len_;
    mutable std::map<std::tuple<int, int, int, std::string>, Geodesic> line_cache_;
    mutable std::map<std::pair<int, int>, PsiParams> psi_cache_;
};

// membership modes for the projection systems built over a CKLineFamily
enum class CKClass { V1, V2, TypeAll, V1Type };

struct CKSystem {
    std::shared_ptr<CKLineFamily> fam;
    std::vector<int> members;  // ball vertex indices
    ProjectionSystem sys;
};

inline CKSystem ck_system(std::shared_ptr<CKLineFamily> fam, CKClass mode, int type = 0) {
    const BassSerreBall& ball = fam->ball();
    std::vector<int> members;
    for (int i = 0; i < (int)ball.size(); ++i) {
        bool in = false;
        switch (mode) {
            case CKClass::V1: in = ball.partition_class(i) == 1; break;
            case CKClass::V2: in = ball.partition_class(i) == 2; break;
            case CKClass::TypeAll: in = ball.vertex(i).type == type; break;
            case CKClass::V1Type:
                in = ball.partition_class(i) == 1 && ball.vertex(i).type == type;
                break;
        }
        if (in) members.push_back(i);
    }
    auto mem = std::make_shared<std::vector<int>>(members);
    ProjectionSystem sys((int)members.size(), [fam, mem](int Y, int X) {
        return fam->project((*mem)[Y], (*mem)[X]);
    });
    return {std::move(fam), std::move(members), std::move(sys)};
}

}  // namespace ckgeo
