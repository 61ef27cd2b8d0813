#pragma once

// Finite radius-R balls of the Bass-Serre tree of an AdmissibleGraph. Vertices
// are cosets g G_v, keyed by the canonical normal form of the coset; children
// are enumerated through edge-group coset representatives of bounded length.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ckgeo/admissible.hpp"
#include "ckgeo/errors.hpp"

namespace ckgeo {

struct BSVertex {
    AmalgamElement rep;  // coset key (trailing syllable trivial), path from root
    int type = 0;        // vertex of the underlying graph
    int parent = -1;
    int depth = 0;
    std::vector<int> children;
    // how this vertex was reached from its parent
    int via_edge = -1;
    int via_dir = 0;
    FreeWord via_local;  // coset representative in the parent's vertex group
};

class BassSerreBall {
  public:
    BassSerreBall(const AdmissibleGraph& g, int radius, int rep_len_bound = 1)
        : g_(&g), radius_(radius), rep_len_bound_(rep_len_bound) {
        AmalgamElement root(g);
        verts_.push_back({root.coset_key(), g.root, -1, 0, {}, -1, 0, {}});
        index_[verts_[0].rep.str()] = 0;
        std::size_t head = 0;
        while (head < verts_.size()) {
            std::size_t i = head++;
            if (verts_[i].depth >= radius_) continue;
            expand(i);
        }
    }

    const AdmissibleGraph& graph() const { return *g_; }
    int radius() const { return radius_; }
    std::size_t size() const { return verts_.size(); }
    const BSVertex& vertex(int i) const { return verts_[i]; }
    int root() const { return 0; }

    std::optional<int> find(const AmalgamElement& coset) const {
        auto it = index_.find(coset.coset_key().str());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // V1 holds the root; classes alternate with depth
    int partition_class(int i) const { return 1 + verts_[i].depth % 2; }

    // image of vertex i under the deck transformation by x
    int act(const AmalgamElement& x, int i) const {
        AmalgamElement moved = x * verts_[i].rep;
        auto j = find(moved);
        if (!j) throw OrbitEscapedTruncation("act: image vertex outside the built ball");
        return *j;
    }

    int tree_distance(int i, int j) const {
        int a = i, b = j, d = 0;
        while (verts_[a].depth > verts_[b].depth) a = verts_[a].parent, ++d;
        while (verts_[b].depth > verts_[a].depth) b = verts_[b].parent, ++d;
        while (a != b) a = verts_[a].parent, b = verts_[b].parent, d += 2;
        return d;
    }

    // vertex sequence from i to j through the least common ancestor
    std::vector<int> path(int i, int j) const {
        std::vector<int> up, down;
        int a = i, b = j;
        while (verts_[a].depth > verts_[b].depth) up.push_back(a), a = verts_[a].parent;
        while (verts_[b].depth > verts_[a].depth) down.push_back(b), b = verts_[b].parent;
        while (a != b) {
            up.push_back(a), down.push_back(b);
            a = verts_[a].parent, b = verts_[b].parent;
        }
        up.push_back(a);
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    }

    // targeted insertion: child of i across (edge, dir) with the given local
    // representative in G_type(i); returns the (possibly existing) index
    int add_child(int i, int edge, int dir, const Syllable& local) {
        AmalgamElement child = verts_[i].rep *
                               AmalgamElement::vertex_elt(*g_, local.vertex, local.base,
                                                          local.fiber) *
                               AmalgamElement::crossing(*g_, edge, dir);
        AmalgamElement key = child.coset_key();
        auto it = index_.find(key.str());
        if (it != index_.end()) return it->second;
        int idx = (int)verts_.size();
        verts_.push_back({key, g_->target_of(edge, dir), i, verts_[i].depth + 1, {}, edge, dir,
                          local.base});
        verts_[i].children.push_back(idx);
        index_[key.str()] = idx;
        return idx;
    }

    std::vector<int> vertices_of_type(int type) const {
        std::vector<int> out;
        for (int i = 0; i < (int)verts_.size(); ++i) {
            if (verts_[i].type == type) out.push_back(i);
        }
        return out;
    }

  private:
    void expand(std::size_t i) {
        int u = verts_[i].type;
        int rank = g_->vertices[u].rank;
        for (auto [e, dir] : g_->ends_at(u)) {
            const FreeWord& w = g_->factor_word(e, dir);
            std::vector<FreeWord> reps;
            for (const auto& cand : ball(rank, rep_len_bound_)) {
                FreeWord r = coset_rep(cand, w).first;
                bool seen = false;
                for (const auto& have : reps) seen = seen || have == r;
                if (!seen) reps.push_back(r);
            }
            for (const auto& r : reps) {
                AmalgamElement child = verts_[i].rep *
                                       AmalgamElement::vertex_elt(*g_, u, r, 0) *
                                       AmalgamElement::crossing(*g_, e, dir);
                AmalgamElement key = child.coset_key();
                std::string ks = key.str();
                if (index_.count(ks)) continue;  // parent or duplicate
                int idx = (int)verts_.size();
                verts_.push_back(
                    {key, g_->target_of(e, dir), (int)i, verts_[i].depth + 1, {}, e, dir, r});
                verts_[i].children.push_back(idx);
                index_[ks] = idx;
            }
        }
    }

    const AdmissibleGraph* g_;
    int radius_;
    int rep_len_bound_;
    std::vector<BSVertex> verts_;
    std::map<std::string, int> index_;
};

}  // namespace ckgeo
