#pragma once

// Loxodromic/elliptic classification through orbit growth, the commuting-pair
// inaccessibility witness, and the scenario bundles: Z^2, F_2 x Z, and the two
// flip presets acting on the quasi-trees of their V1/V2 line families.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ckgeo/admissible.hpp"
#include "ckgeo/bass_serre.hpp"
#include "ckgeo/ck_lines.hpp"
#include "ckgeo/errors.hpp"
#include "ckgeo/projections.hpp"
#include "ckgeo/quasitree.hpp"

namespace ckgeo {

enum class ElementClass { Loxodromic, Elliptic, Undetermined };

inline const char* to_string(ElementClass c) {
    switch (c) {
        case ElementClass::Loxodromic: return "loxodromic";
        case ElementClass::Elliptic: return "elliptic";
        default: return "undetermined";
    }
}

// an action is consumed through orbit displacements d(x0, g^n x0); graph-backed
// actions additionally expose the orbit vertex map and the graph metric
template <class G>
struct ActionHandle {
    std::string label;
    std::function<double(const G&, long)> orbit;  // may throw OrbitEscapedTruncation
    std::function<bool()> grow;                   // enlarge the truncation once; optional
    std::function<int(const G&)> orbit_vertex;    // sample index of g x0; optional
    std::function<double(int, int)> metric;       // graph distance between samples; optional
};

struct ClassifyParams {
    double eps_lox = 0.05;   // 0.05 x smallest calibrated fiber length
    double B_ell = 2.0;      // 3 xi-hat + 2
    double mono_slack = 1.0;  // snapping noise allowed in "monotone progressing"
    int N_orb = 16;
    int N = 12;
};

template <class G>
inline double stable_translation_length(const ActionHandle<G>& A, const G& g, int N) {
    if (N < 2) throw InvalidParams("stable_translation_length: N >= 2 required");
    return A.orbit(g, N) / (double)N;
}

template <class G>
inline ElementClass classify_element(const ActionHandle<G>& A, const G& g,
                                     const ClassifyParams& p) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            std::vector<double> v(p.N_orb + 1, 0.0);
            for (int n = 1; n <= p.N_orb; ++n) v[n] = A.orbit(g, n);
            double diam = *std::max_element(v.begin(), v.end());
            int N = std::min(p.N, p.N_orb);
            double stable = v[N] / (double)N;
            bool monotone = true;
            for (int n = 1; n <= p.N_orb; ++n) {
                monotone = monotone && v[n] >= v[n - 1] - p.mono_slack;
            }
            if (stable > p.eps_lox && monotone) return ElementClass::Loxodromic;
            if (diam <= p.B_ell) return ElementClass::Elliptic;
            return ElementClass::Undetermined;
        } catch (const OrbitEscapedTruncation&) {
            if (attempt == 0 && A.grow && A.grow()) continue;
            return ElementClass::Undetermined;  // reported, never coerced
        }
    }
    return ElementClass::Undetermined;
}

struct WitnessReport {
    bool commute = false;
    ElementClass a_in_X = ElementClass::Undetermined;
    ElementClass b_in_X = ElementClass::Undetermined;
    ElementClass a_in_Y = ElementClass::Undetermined;
    ElementClass b_in_Y = ElementClass::Undetermined;
    double stl_a_X = 0.0, stl_b_X = 0.0, stl_a_Y = 0.0, stl_b_Y = 0.0;
    bool witness = false;
};

template <class G>
inline WitnessReport lemma_key_witness(const G& a, const G& b, const ActionHandle<G>& X,
                                       const ActionHandle<G>& Y, const ClassifyParams& pX,
                                       const ClassifyParams& pY) {
    WitnessReport r;
    r.commute = (a * b == b * a);
    auto stl = [](const ActionHandle<G>& A, const G& g, int N) {
        try {
            return stable_translation_length(A, g, N);
        } catch (const OrbitEscapedTruncation&) {
            return std::nan("");
        }
    };
    r.a_in_X = classify_element(X, a, pX);
    r.b_in_X = classify_element(X, b, pX);
    r.a_in_Y = classify_element(Y, a, pY);
    r.b_in_Y = classify_element(Y, b, pY);
    r.stl_a_X = stl(X, a, pX.N);
    r.stl_b_X = stl(X, b, pX.N);
    r.stl_a_Y = stl(Y, a, pY.N);
    r.stl_b_Y = stl(Y, b, pY.N);
    r.witness = r.commute && r.a_in_X == ElementClass::Loxodromic &&
                r.b_in_X == ElementClass::Elliptic && r.b_in_Y == ElementClass::Loxodromic;
    return r;
}

// --- scenario element types ------------------------------------------------

struct Z2 {
    long x = 0, y = 0;
    Z2 operator*(const Z2& o) const { return {x + o.x, y + o.y}; }
    Z2 pow(long n) const { return {x * n, y * n}; }
    bool operator==(const Z2&) const = default;
};

struct F2Z {
    FreeWord w;
    long k = 0;
    F2Z operator*(const F2Z& o) const { return {w * o.w, k + o.k}; }
    F2Z pow(long n) const { return {w.pow(n), k * n}; }
    bool operator==(const F2Z&) const = default;
};

template <class G>
struct ScenarioBundle {
    std::string name;
    G a, b;
    ActionHandle<G> X, Y;
    ClassifyParams pX, pY;
};

// Z^2 with the two coordinate-line actions
inline ScenarioBundle<Z2> scenario_z2() {
    ScenarioBundle<Z2> s;
    s.name = "z2-torus";
    s.a = {1, 0};
    s.b = {0, 1};
    s.X = {"first coordinate line",
           [](const Z2& g, long n) { return std::abs((double)(g.x * n)); }, {}};
    s.Y = {"second coordinate line",
           [](const Z2& g, long n) { return std::abs((double)(g.y * n)); }, {}};
    s.pX = s.pY = ClassifyParams{};  // fiber length 1, xi-hat 0
    return s;
}

// F_2 x Z: fiber quasi-line vs base Cayley graph
inline ScenarioBundle<F2Z> scenario_seifert() {
    ScenarioBundle<F2Z> s;
    s.name = "seifert-f2xz";
    s.a = {FreeWord{}, 1};
    s.b = {FreeWord{1}, 0};
    s.X = {"fiber quasi-line", [](const F2Z& g, long n) { return std::abs((double)(g.k * n)); },
           {}};
    s.Y = {"base Cayley graph",
           [](const F2Z& g, long n) { return (double)g.w.pow(n).length(); }, {}};
    s.pX = s.pY = ClassifyParams{};
    return s;
}

// --- flip scenarios: actions on C_K of the V1 / V2 line families -----------

class FlipScenario {
  public:
    explicit FlipScenario(bool with_loop, int radius = 0, double k_override = 0.0,
                          double h = 0.25)
        : with_loop_(with_loop), k_override_(k_override), h_(h) {
        radius_ = radius > 0 ? radius : (with_loop ? 2 : 3);
        st_ = std::make_shared<State>();
        st_->graph = std::make_shared<AdmissibleGraph>(with_loop ? flip_with_loop()
                                                                 : flip_loopless());
        build_state(*st_, radius_, k_override_, h_);
    }

    const AdmissibleGraph& graph() const { return *st_->graph; }
    AmalgamElement z_mu() const { return AmalgamElement::z(*st_->graph, 0); }
    // the far-side central element, written as a root vertex-group element
    AmalgamElement z_omega() const {
        return AmalgamElement::vertex_elt(*st_->graph, 0, st_->graph->edges[0].w_tail, 0);
    }
    double xi(int cls) const { return cls == 1 ? st_->c1.xi : st_->c2.xi; }
    double K(int cls) const { return cls == 1 ? st_->c1.K : st_->c2.K; }
    double min_fiber() const {
        double m = kInf;
        for (std::size_t t = 0; t < st_->graph->vertices.size(); ++t) {
            m = std::min(m, st_->fam->fiber_length((int)t));
        }
        return m;
    }

    int base_sample(int cls) const { return cls == 1 ? st_->c1.base_sample : st_->c2.base_sample; }

    ClassifyParams params(int cls) const {
        ClassifyParams p;
        p.eps_lox = 0.05 * min_fiber();
        p.B_ell = 3.0 * xi(cls) + 2.0;
        p.mono_slack = 2.0 * h_ + 1.0;
        return p;
    }

    ActionHandle<AmalgamElement> action(int cls) const {
        ActionHandle<AmalgamElement> A;
        A.label = cls == 1 ? "C_K over the V1 lines" : "C_K over the V2 lines";
        auto st = st_;
        A.orbit_vertex = [st, cls](const AmalgamElement& g) {
            const ClassAction& c = cls == 1 ? st->c1 : st->c2;
            int gv = st->fam->act_vertex(g, c.base_ball);  // throws on escape
            auto it = c.pos.find(gv);
            if (it == c.pos.end()) {
                throw OrbitEscapedTruncation("orbit image left the member class truncation");
            }
            double coord = st->fam->act_coord(g, c.base_ball, 0.0);
            int s = c.tree.nearest_sample(it->second, coord);
            if (std::abs(c.tree.vertices[s].coord - coord) > c.tree.h) {
                throw OrbitEscapedTruncation("orbit coordinate beyond the sampled range");
            }
            return s;
        };
        A.metric = [st, cls](int i, int j) {
            const ClassAction& c = cls == 1 ? st->c1 : st->c2;
            return graph_distance(c.tree, i, j);
        };
        A.orbit = [st, cls, A](const AmalgamElement& g, long n) {
            const ClassAction& c = cls == 1 ? st->c1 : st->c2;
            return A.metric(c.base_sample, A.orbit_vertex(g.pow(n)));
        };
        // one radius + 2 rebuild, then report
        auto grown = grown_;
        int rad = radius_;
        double ko = k_override_, h = h_;
        A.grow = [st, grown, rad, ko, h]() {
            if (*grown) return false;
            *grown = true;
            State fresh;
            fresh.graph = st->graph;  // same graph object: elements stay valid
            build_state(fresh, rad + 2, ko, h);
            *st = std::move(fresh);  // handles observe the rebuilt state
            return true;
        };
        return A;
    }

    ScenarioBundle<AmalgamElement> bundle() const {
        return {with_loop_ ? "flip-with-loop" : "flip-loopless",
                z_mu(),
                z_omega(),
                action(1),
                action(2),
                params(1),
                params(2)};
    }

  private:
    struct ClassAction {
        std::shared_ptr<CKSystem> sys;
        QuasiTreeGraph tree;
        int base_ball = 0;
        int base_sample = 0;
        std::map<int, int> pos;  // ball index -> member position
        double xi = 0.0, K = 0.0;
    };

    struct State {
        std::shared_ptr<AdmissibleGraph> graph;
        std::shared_ptr<BassSerreBall> ball;
        std::shared_ptr<CKLineFamily> fam;
        ClassAction c1, c2;
    };

    // st.graph must already be set; everything else is rebuilt from it
    static void build_state(State& st, int radius, double k_override, double h) {
        st.ball = std::make_shared<BassSerreBall>(*st.graph, radius);
        st.fam = std::make_shared<CKLineFamily>(*st.ball);
        double fmax = 0.0;
        for (std::size_t t = 0; t < st.graph->vertices.size(); ++t) {
            fmax = std::max(fmax, st.fam->fiber_length((int)t));
        }
        double span = (ClassifyParams{}.N_orb + 1) * fmax;
        int u0 = *st.ball->find(AmalgamElement::crossing(*st.graph, 0, +1));
        build_class(st, st.c1, CKClass::V1, st.ball->root(), span, k_override, h);
        build_class(st, st.c2, CKClass::V2, u0, span, k_override, h);
    }

    static void build_class(State& st, ClassAction& c, CKClass mode, int base_ball, double span,
                            double k_override, double h) {
        c.sys = std::make_shared<CKSystem>(ck_system(st.fam, mode));
        c.base_ball = base_ball;
        for (std::size_t i = 0; i < c.sys->members.size(); ++i) {
            c.pos[c.sys->members[i]] = (int)i;
        }
        c.xi = c.sys->sys.estimate_xi();
        c.K = k_override > 0.0 ? k_override : std::ceil(4.0 * c.xi) + 1.0;
        // member ranges must contain the orbit coordinates, not just the
        // projection hull, or loxodromics would saturate and look elliptic
        std::vector<Interval> ranges(c.sys->members.size());
        for (std::size_t i = 0; i < c.sys->members.size(); ++i) ranges[i] = {-span, span};
        c.tree = build_quasi_tree(c.sys->sys, c.K, h, ranges);
        c.base_sample = c.tree.nearest_sample(c.pos.at(base_ball), 0.0);
    }

    bool with_loop_;
    int radius_;
    double k_override_;
    double h_;
    std::shared_ptr<bool> grown_ = std::make_shared<bool>(false);
    std::shared_ptr<State> st_;
};

// type-erased scenario runner: builds the named bundle and certifies it
inline WitnessReport run_scenario_witness(const std::string& name, int radius = 0,
                                          double k_override = 0.0, double h = 0.25) {
    if (name == "z2-torus") {
        auto s = scenario_z2();
        return lemma_key_witness(s.a, s.b, s.X, s.Y, s.pX, s.pY);
    }
    if (name == "seifert-f2xz") {
        auto s = scenario_seifert();
        return lemma_key_witness(s.a, s.b, s.X, s.Y, s.pX, s.pY);
    }
    if (name == "flip-loopless" || name == "flip-with-loop") {
        FlipScenario fs(name == "flip-with-loop", radius, k_override, h);
        auto s = fs.bundle();
        return lemma_key_witness(s.a, s.b, s.X, s.Y, s.pX, s.pY);
    }
    throw UnknownScenario("unknown scenario: " + name);
}

// --- lemma-level checks ----------------------------------------------------

struct LemmaImportantResult {
    double xi = 0.0;
    double lambda_paper = 0.0;
    double max_observed = 0.0;
    bool pass = false;
};

// peripheral axes family; lambda = max{xi, d(a, ga) + 2 xi, d(a, g^2 a) + 2 xi}
inline LemmaImportantResult lemma_important_check(const SchottkyRep& rep,
                                                  const std::vector<FreeWord>& boundary_words,
                                                  const Geodesic& alpha, const FreeWord& gamma,
                                                  int n_max, int R) {
    ProjectionSystem fam = axes_family(rep, boundary_words, R);
    auto in_family = [&](const Geodesic& g) {
        for (int i = 0; i < fam.size(); ++i) {
            if (fam.geodesic(i).same_line(g)) return true;
        }
        return false;
    };
    if (!in_family(alpha)) throw NotPeripheral("lemma_important_check: alpha not peripheral");
    MobiusIsometry mg = evaluate(rep, gamma);
    Geodesic gamma_axis = axis(mg).first;  // throws NotHyperbolic for bad gamma
    if (!in_family(gamma_axis)) {
        throw NotPeripheral("lemma_important_check: gamma axis not peripheral");
    }

    LemmaImportantResult r;
    r.xi = fam.estimate_xi();
    auto sep = [&](const Geodesic& g1, const Geodesic& g2) {
        return g1.same_line(g2) ? 0.0 : geodesic_separation(g1, g2);
    };
    Geodesic a1 = alpha.transformed(mg);
    Geodesic a2 = a1.transformed(mg);
    r.lambda_paper = std::max({r.xi, sep(alpha, a1) + 2.0 * r.xi, sep(alpha, a2) + 2.0 * r.xi});

    // gamma^n alpha is tracked through its ideal endpoints: deep translates
    // collapse toward the attracting fixed point and cannot be rebuilt as
    // Geodesic objects. beta = axis(gamma) is excluded -- gamma translates
    // along it, so projections onto it march off unboundedly (the proof orders
    // projections relative to pi_beta(axis), which requires beta != axis).
    MobiusIsometry mg_inv = mg.inverse();
    for (int sign : {+1, -1}) {
        const MobiusIsometry& m = sign > 0 ? mg : mg_inv;
        IdealPoint p = alpha.endpoint_minus(), q = alpha.endpoint_plus();
        for (int n = 1; n <= n_max; ++n) {
            p = m.apply(p);
            q = m.apply(q);
            for (int i = 0; i < fam.size(); ++i) {
                const Geodesic& beta = fam.geodesic(i);
                if (beta.same_line(alpha) || beta.same_line(gamma_axis)) continue;
                bool is_translate = (beta.endpoint_minus().same_as(p) &&
                                     beta.endpoint_plus().same_as(q)) ||
                                    (beta.endpoint_minus().same_as(q) &&
                                     beta.endpoint_plus().same_as(p));
                if (is_translate) continue;
                double c1 = beta.project_ideal_coord(p);
                double c2 = beta.project_ideal_coord(q);
                Interval iv{std::min(c1, c2), std::max(c1, c2)};
                double d = union_diameter(project_geodesic(beta, alpha), iv);
                r.max_observed = std::max(r.max_observed, d);
            }
        }
    }
    r.pass = r.max_observed <= r.lambda_paper + 1e-9;
    return r;
}

struct LemmaInproofResult {
    double xi = 0.0;
    double lambda = 0.0;      // chart-stretched lambda-hat
    double lambda_plane = 0.0;  // H^2-level lambda from the peripheral family
    double K = 0.0;
    double case1 = 0.0, case2 = 0.0, case3 = 0.0;  // observed maxima
    double bound1 = 0.0, bound2 = 0.0, bound3 = 0.0;
    double orbit_max = 0.0;
    bool cases_pass = false;
    bool cases_below_K = false;
    bool orbit_within_6K = false;
    bool pass = false;
};

// gamma = t z_omega t^-1 on the with-loop preset: per-case projection bounds
// at the vertices of V1 and the 6K orbit bound in C_K(V1)
inline LemmaInproofResult lemma_inproof_check(double k_override = 0.0, int n_max = 4,
                                              int radius = 2, double h = 0.25,
                                              int orbit_n_max = 0) {
    // lines conjugated by w3^n degenerate numerically past n ~ 4, so the orbit
    // bound for larger n uses equivariance: d(y0, g^n y0) = d(g^i y0, g^j y0)
    // with j - i = n and |i|, |j| <= n_max
    if (orbit_n_max <= 0) orbit_n_max = 2 * n_max;
    if (orbit_n_max > 2 * n_max)
        throw InvalidParams("lemma_inproof_check: orbit_n_max at most 2 n_max");
    auto graph = std::make_shared<AdmissibleGraph>(flip_with_loop());
    BassSerreBall ball(*graph, radius);
    FreeWord a{1}, b{2};
    FreeWord w3 = (a * b).inverse();

    AmalgamElement t = AmalgamElement::crossing(*graph, 1, +1);
    AmalgamElement zw = AmalgamElement::vertex_elt(*graph, 0, w3, 0);
    AmalgamElement gamma = t * zw * t.inverse();
    int root = ball.root();
    int hv = *ball.find(t);

    // make sure every gamma^n v0 is enumerated
    std::vector<int> gnv(2 * n_max + 1, root);
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        gnv[n + n_max] = ball.add_child(hv, 1, -1, Syllable{0, w3.pow(n), 0});
    }

    auto fam = std::make_shared<CKLineFamily>(ball);
    CKSystem v1 = ck_system(fam, CKClass::V1);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < v1.members.size(); ++i) pos[v1.members[i]] = (int)i;

    LemmaInproofResult r;
    r.xi = v1.sys.estimate_xi();

    // lambda from the hv orbifold: boundary lines of the thrice-punctured
    // sphere, alpha = the boundary toward the root edge, gamma acting as w3
    LemmaImportantResult li =
        lemma_important_check(graph->reps[0], {a, b, w3},
                              axis(evaluate(graph->reps[0], a)).first, w3, 2 * n_max, 3);
    r.lambda_plane = li.lambda_paper;
    // psi charts stretch arclength by fiber_length / translation_length
    double stretch = 1.0;
    for (int e = 0; e < (int)graph->edges.size(); ++e) {
        for (int dir : {+1, -1}) {
            int src = graph->source_of(e, dir);
            int tgt = graph->target_of(e, dir);
            double tw = fam->translation_length(src, graph->factor_word(e, dir));
            double s = fam->fiber_length(tgt) / tw;
            stretch = std::max({stretch, s, 1.0 / s});
        }
    }
    r.lambda = stretch * r.lambda_plane + stretch;
    r.bound3 = r.lambda;
    r.bound2 = r.lambda * r.lambda + r.lambda;
    r.bound1 = r.bound2 + 2.0 * r.xi;

    double k_min = 4.0 * r.xi + 4.0 + 2.0 * r.lambda + r.lambda * r.lambda;
    r.K = k_override > 0.0 ? k_override : std::ceil(k_min) + 1.0;
    if (r.K <= k_min) throw KTooSmall("lemma_inproof_check: K must exceed 4xi + 4 + 2l + l^2");

    std::vector<double> coords(2 * n_max + 1, 0.0);
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        coords[n + n_max] = fam->act_coord(gamma.pow(n), root, 0.0);
        PointRef y0{pos.at(root), 0.0};
        PointRef yn{pos.at(gnv[n + n_max]), coords[n + n_max]};
        for (int u : v1.members) {
            if (u == gnv[n + n_max]) continue;
            double d = v1.sys.dY(pos.at(u), y0, yn);
            if (u == root) {
                r.case1 = std::max(r.case1, d);
            } else if (ball.tree_distance(u, hv) == 1) {
                r.case2 = std::max(r.case2, d);
            } else {
                r.case3 = std::max(r.case3, d);
            }
        }
    }

    // orbit bound in the quasi-tree, with ranges wide enough for the orbit
    double cmax = 1.0;
    for (double c : coords) cmax = std::max(cmax, std::abs(c) + 1.0);
    std::vector<Interval> ranges(v1.members.size(), Interval{-cmax, cmax});
    QuasiTreeGraph tree = build_quasi_tree(v1.sys, r.K, h, ranges);
    for (int n = 1; n <= orbit_n_max; ++n) {
        int i = -(n / 2), j = n + i;
        int si = tree.nearest_sample(pos.at(gnv[i + n_max]), coords[i + n_max]);
        int sj = tree.nearest_sample(pos.at(gnv[j + n_max]), coords[j + n_max]);
        r.orbit_max = std::max(r.orbit_max, graph_distance(tree, si, sj));
    }

    r.cases_pass = r.case1 <= r.bound1 + 1e-9 && r.case2 <= r.bound2 + 1e-9 &&
                   r.case3 <= r.bound3 + 1e-9;
    r.cases_below_K = std::max({r.case1, r.case2, r.case3}) < r.K;
    r.orbit_within_6K = r.orbit_max <= 6.0 * r.K + 1e-9;
    r.pass = r.cases_pass && r.cases_below_K && r.orbit_within_6K;
    return r;
}

}  // namespace ckgeo
