#pragma once

// Graphs of groups with F_k x Z vertex groups and Z^2 edge groups glued by the
// flip rule (fiber <-> boundary), plus exact normal-form arithmetic for their
// fundamental groupoids: Britton reduction and left-greedy canonical coset
// factorization. All membership tests are symbolic.

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "ckgeo/errors.hpp"
#include "ckgeo/freeword.hpp"
#include "ckgeo/schottky.hpp"

namespace ckgeo {

// canonical representative of the coset base*<w>: base = rep * w^j with rep
// minimal in (length, lex) order; returns {rep, j}
inline std::pair<FreeWord, long> coset_rep(const FreeWord& base, const FreeWord& w) {
    if (w.identity()) throw Error("coset_rep: trivial cyclic subgroup word");
    long window = (long)(base.length() / w.length()) + 2;
    // walk j away from 0 in both directions, appending one w^{+-1} at a time;
    // track the shortest lengths first, break length ties by lex at the end
    std::size_t best_len = base.length();
    std::vector<long> best_js{0};
    FreeWord winv = w.inverse();
    for (long dir : {+1L, -1L}) {
        FreeWord cand = base;
        const FreeWord& step = dir > 0 ? winv : w;  // cand = base * w^{-dir*s}
        for (long s = 1; s <= window; ++s) {
            cand.append(step);
            if (cand.length() < best_len) {
                best_len = cand.length();
                best_js = {dir * s};
            } else if (cand.length() == best_len) {
                best_js.push_back(dir * s);
            }
        }
    }
    FreeWord best;
    long best_j = 0;
    bool first = true;
    for (long j : best_js) {
        FreeWord cand = base * w.pow(-j);
        if (first || cand < best) {
            best = cand;
            best_j = j;
            first = false;
        }
    }
    return {best, best_j};
}

inline bool in_cyclic(const FreeWord& base, const FreeWord& w, long* exp = nullptr) {
    auto [rep, j] = coset_rep(base, w);
    if (!rep.identity()) return false;
    if (exp) *exp = j;
    return true;
}

struct VertexGroup {
    int rank = 2;
};

// Tree edge: the flip identification reads (z_tail^m w_tail^j) = (w_head^m z_head^j).
// Loop edge (tail == head): stable letter t with t (w_tail^j z^m) t^{-1} = w_head^m z^j.
struct GraphEdge {
    int tail = 0, head = 0;
    FreeWord w_tail, w_head;
    bool loop = false;
};

struct AdmissibleGraph {
    std::vector<VertexGroup> vertices;
    std::vector<GraphEdge> edges;
    std::vector<SchottkyRep> reps;  // one per vertex
    int root = 0;

    // directed edge ends available at vertex v, as (edge index, direction)
    std::vector<std::pair<int, int>> ends_at(int v) const {
        std::vector<std::pair<int, int>> out;
        for (int e = 0; e < (int)edges.size(); ++e) {
            if (edges[e].loop) {
                if (edges[e].tail == v) {
                    out.push_back({e, +1});
                    out.push_back({e, -1});
                }
            } else {
                if (edges[e].tail == v) out.push_back({e, +1});
                if (edges[e].head == v) out.push_back({e, -1});
            }
        }
        return out;
    }

    int source_of(int e, int dir) const {
        const GraphEdge& ed = edges[e];
        if (ed.loop) return ed.tail;
        return dir > 0 ? ed.tail : ed.head;
    }
    int target_of(int e, int dir) const {
        const GraphEdge& ed = edges[e];
        if (ed.loop) return ed.tail;
        return dir > 0 ? ed.head : ed.tail;
    }
    // boundary word generating (with z) the subgroup factored over when crossing (e, dir)
    const FreeWord& factor_word(int e, int dir) const {
        const GraphEdge& ed = edges[e];
        if (ed.loop) return dir > 0 ? ed.w_head : ed.w_tail;
        return dir > 0 ? ed.w_tail : ed.w_head;
    }
    // boundary word on the far side: crossing swaps (boundary exponent, fiber)
    const FreeWord& target_word(int e, int dir) const {
        const GraphEdge& ed = edges[e];
        if (ed.loop) return dir > 0 ? ed.w_tail : ed.w_head;
        return dir > 0 ? ed.w_head : ed.w_tail;
    }
};

struct Syllable {
    int vertex = 0;
    FreeWord base;
    long fiber = 0;

    bool is_id() const { return base.identity() && fiber == 0; }
    bool operator==(const Syllable&) const = default;
};

struct Token {
    bool is_edge = false;
    Syllable s{};
    int edge = -1;
    int dir = 0;

    static Token syl(Syllable s) { return Token{false, std::move(s), -1, 0}; }
    static Token cross(int e, int d) { return Token{true, {}, e, d}; }
    bool inverse_of(const Token& o) const {
        return is_edge && o.is_edge && edge == o.edge && dir == -o.dir;
    }
    bool operator==(const Token&) const = default;
};

// Element of the fundamental groupoid of an AdmissibleGraph: alternating
// syllable/edge tokens, held in canonical normal form. Elements of the group
// itself are the loops at the root vertex.
class AmalgamElement {
  public:
    explicit AmalgamElement(const AdmissibleGraph& g)
        : g_(&g), toks_{Token::syl({g.root, {}, 0})} {}

    static AmalgamElement vertex_elt(const AdmissibleGraph& g, int v, FreeWord base, long fiber) {
        AmalgamElement x(g);
        x.toks_ = {Token::syl({v, std::move(base), fiber})};
        return x;
    }
    // central generator z_v
    static AmalgamElement z(const AdmissibleGraph& g, int v) { return vertex_elt(g, v, {}, 1); }
    // stable letter of a loop edge (sign = +-1), or a bare tree-edge crossing
    static AmalgamElement crossing(const AdmissibleGraph& g, int e, int dir) {
        AmalgamElement x(g);
        int s = g.source_of(e, dir), t = g.target_of(e, dir);
        x.toks_ = {Token::syl({s, {}, 0}), Token::cross(e, dir), Token::syl({t, {}, 0})};
        x.canonicalize();
        return x;
    }

    const AdmissibleGraph& graph() const { return *g_; }
    const std::vector<Token>& tokens() const { return toks_; }
    int start_vertex() const { return toks_.front().s.vertex; }
    int end_vertex() const { return toks_.back().s.vertex; }
    bool is_identity() const { return toks_.size() == 1 && toks_[0].s.is_id(); }
    bool in_vertex_group() const { return toks_.size() == 1; }
    const Syllable& syllable() const {
        if (!in_vertex_group()) throw Error("syllable: element not in a vertex group");
        return toks_[0].s;
    }
    // number of edge tokens in the normal form
    int crossings() const {
        int n = 0;
        for (const auto& t : toks_) n += t.is_edge;
        return n;
    }

    AmalgamElement operator*(const AmalgamElement& o) const {
        if (g_ != o.g_) throw Error("AmalgamElement: mixed graphs");
        if (end_vertex() != o.start_vertex()) {
            throw Error("AmalgamElement: path endpoints do not match");
        }
        AmalgamElement r = *this;
        r.toks_.insert(r.toks_.end(), o.toks_.begin(), o.toks_.end());
        r.canonicalize();
        return r;
    }

    AmalgamElement inverse() const {
        AmalgamElement r(*g_);
        r.toks_.clear();
        for (auto it = toks_.rbegin(); it != toks_.rend(); ++it) {
            if (it->is_edge) {
                r.toks_.push_back(Token::cross(it->edge, -it->dir));
            } else {
                r.toks_.push_back(Token::syl({it->s.vertex, it->s.base.inverse(), -it->s.fiber}));
            }
        }
        r.canonicalize();
        return r;
    }

    AmalgamElement pow(long n) const {
        AmalgamElement base = n < 0 ? inverse() : *this;
        long k = std::abs(n);
        AmalgamElement r = AmalgamElement::vertex_elt(*g_, start_vertex(), {}, 0);
        while (k-- > 0) r = r * base;
        return r;
    }

    bool operator==(const AmalgamElement& o) const { return toks_ == o.toks_; }

    // coset x G_v for v = end vertex: drop the final vertex-group factor
    AmalgamElement coset_key() const {
        AmalgamElement r = *this;
        r.toks_.back().s.base = {};
        r.toks_.back().s.fiber = 0;
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (const auto& t : toks_) {
            if (t.is_edge) {
                os << "|e" << t.edge << (t.dir > 0 ? "+" : "-") << "|";
            } else {
                os << "(" << t.s.vertex << ":" << t.s.base.str() << "," << t.s.fiber << ")";
            }
        }
        return os.str();
    }

  private:
    // merge syllable s into the trailing syllable of out
    static void absorb(std::vector<Token>& out, const Syllable& s) {
        Syllable& back = out.back().s;
        if (back.vertex != s.vertex) throw Error("AmalgamElement: vertex mismatch in product");
        back.base = back.base * s.base;
        back.fiber += s.fiber;
    }

    void canonicalize() {
        std::vector<Token> out;
        out.reserve(toks_.size());
        out.push_back(Token::syl({toks_.front().is_edge ? g_->source_of(toks_.front().edge,
                                                                        toks_.front().dir)
                                                        : toks_.front().s.vertex,
                                  {},
                                  0}));
        for (const Token& t : toks_) {
            if (!t.is_edge) {
                absorb(out, t.s);
                continue;
            }
            // factor the pending syllable over the edge subgroup <z, w>
            const FreeWord& w = g_->factor_word(t.edge, t.dir);
            Syllable cur = out.back().s;
            if (cur.vertex != g_->source_of(t.edge, t.dir)) {
                throw Error("AmalgamElement: edge token at wrong vertex");
            }
            auto [rep, j] = coset_rep(cur.base, w);
            long m = cur.fiber;
            // crossing swaps boundary exponent and fiber onto the partner word
            Syllable pushed{g_->target_of(t.edge, t.dir), g_->target_word(t.edge, t.dir).pow(m),
                            j};
            if (rep.identity() && out.size() >= 2 && out[out.size() - 2].inverse_of(t)) {
                // pinch: the two crossings cancel
                out.pop_back();
                out.pop_back();
                absorb(out, pushed);
            } else {
                out.back().s = {cur.vertex, rep, 0};
                out.push_back(Token::cross(t.edge, t.dir));
                out.push_back(Token::syl(pushed));
            }
        }
        toks_ = std::move(out);
    }

    const AdmissibleGraph* g_;
    std::vector<Token> toks_;
};

// --- presets ---------------------------------------------------------------

// two copies of F2 x Z glued along Z^2, exchanging fiber and boundary [a,b]
inline AdmissibleGraph flip_loopless() {
    AdmissibleGraph g;
    g.vertices = {{2}, {2}};
    FreeWord comm = commutator(FreeWord{1}, FreeWord{2});
    g.edges = {{0, 1, comm, comm, false}};
    g.reps = {default_schottky(), default_schottky()};
    return g;
}

// vertex 0: thrice-punctured-sphere base (boundary words a, b, (ab)^-1), with a
// loop edge flip-gluing the a- and b-boundaries; vertex 1: once-punctured torus
// glued to the third boundary of vertex 0
inline AdmissibleGraph flip_with_loop() {
    AdmissibleGraph g;
    g.vertices = {{2}, {2}};
    FreeWord a{1}, b{2};
    FreeWord w3 = (a * b).inverse();
    FreeWord comm = commutator(a, b);
    g.edges = {
        {0, 1, w3, comm, false},  // tree edge: z_0^m w3^j = comm^m z_1^j
        {0, 0, a, b, true},       // loop: t (a^j z^m) t^-1 = b^m z^j
    };
    g.reps = {default_schottky(), default_schottky()};
    return g;
}

}  // namespace ckgeo
