#pragma once

// Quasimorphisms: Brooks counting quasimorphisms on the free group, the fiber
// homomorphism of an F_k x Z vertex group, a projection-based transport of the
// fiber quasimorphism to the even-crossing subgroup, homogenization by
// repeated squaring, and the conjugation-averaged extension rho.

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "ckgeo/admissible.hpp"
#include "ckgeo/ck_lines.hpp"
#include "ckgeo/errors.hpp"
#include "ckgeo/freeword.hpp"

namespace ckgeo {

template <class G>
struct Quasimorphism {
    std::function<double(const G&)> eval;
    double defect = 0.0;  // measured sup of |q(gh) - q(g) - q(h)| over a sample
    bool homogeneous = false;

    double operator()(const G& g) const { return eval(g); }
};

// q(g^(2^N)) / 2^N, with the power built by N squarings
template <class G>
inline double homogenize(const Quasimorphism<G>& q, G g, int N) {
    if (N < 1) throw InvalidParams("homogenize: N >= 1 required");
    double scale = 1.0;
    for (int i = 0; i < N; ++i) {
        g = g * g;
        scale *= 2.0;
    }
    return q(g) / scale;
}

template <class G>
inline Quasimorphism<G> homogenized(Quasimorphism<G> q, int N = 10) {
    Quasimorphism<G> out;
    out.defect = q.defect;  // the limit can only have smaller defect
    out.homogeneous = true;
    out.eval = [q = std::move(q), N](const G& g) { return homogenize(q, g, N); };
    return out;
}

// all ordered pairs of the sample; records and returns the measured defect
template <class G>
inline double measure_defect(Quasimorphism<G>& q, const std::vector<G>& sample) {
    double d = 0.0;
    std::vector<double> vals(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) vals[i] = q(sample[i]);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = 0; j < sample.size(); ++j) {
            d = std::max(d, std::abs(q(sample[i] * sample[j]) - vals[i] - vals[j]));
        }
    }
    q.defect = d;
    return d;
}

// (#occurrences of w) - (#occurrences of w^-1) as subwords of the reduced word
inline Quasimorphism<FreeWord> brooks(const FreeWord& w) {
    if (w.identity()) throw EmptyWord("brooks: counting word must be nonempty");
    auto count = [](const std::vector<int>& g, const std::vector<int>& p) {
        if (p.size() > g.size()) return 0;
        int c = 0;
        for (std::size_t i = 0; i + p.size() <= g.size(); ++i) {
            bool hit = true;
            for (std::size_t j = 0; j < p.size() && hit; ++j) hit = g[i + j] == p[j];
            c += hit;
        }
        return c;
    };
    Quasimorphism<FreeWord> q;
    q.eval = [w, wi = w.inverse(), count](const FreeWord& g) {
        return (double)(count(g.letters(), w.letters()) - count(g.letters(), wi.letters()));
    };
    return q;
}

// the fiber-exponent homomorphism of the F_k x Z vertex group at v
inline Quasimorphism<AmalgamElement> fiber_qm(int v) {
    Quasimorphism<AmalgamElement> q;
    q.homogeneous = true;
    q.eval = [v](const AmalgamElement& x) {
        const Syllable& s = x.syllable();  // throws unless x is in a vertex group
        if (s.vertex != v) throw Error("fiber_qm: element lives at a different vertex");
        return (double)s.fiber;
    };
    return q;
}

// fiber quasimorphism transported through the line family: chart shift for
// root-vertex elements, projection midpoint for elements moving the root.
// Defined on the even-crossing (index-2) subgroup.
inline Quasimorphism<AmalgamElement> transported_fiber_qm(std::shared_ptr<CKLineFamily> fam) {
    Quasimorphism<AmalgamElement> q;
    int root_type = fam->ball().graph().root;
    q.eval = [fam, root_type](const AmalgamElement& x) {
        if (x.crossings() % 2 != 0) {
            throw InvalidParams("transported_fiber_qm: element outside the even subgroup");
        }
        if (x.in_vertex_group()) {
            return fam->fiber_length(root_type) * (double)x.syllable().fiber;
        }
        return fam->project_onto_root(x).midpoint();
    };
    return q;
}

template <class G>
inline double translation_number(const Quasimorphism<G>& q, const G& g, int N = 10) {
    if (!q.homogeneous) {
        throw InvalidParams("translation_number: quasimorphism must be homogeneous");
    }
    return homogenize(q, g, N);
}

// rho(x) = (q(x^2) + q(h x^2 h^-1)) / 2 on elements whose square lies in the
// even-crossing subgroup
inline double extend_rho(const Quasimorphism<AmalgamElement>& q, const AmalgamElement& h,
                         const AmalgamElement& x) {
    AmalgamElement x2 = x * x;
    if (x2.crossings() % 2 != 0) {
        throw NotInSubgroupSquare("extend_rho: square not in the even subgroup");
    }
    return (q(x2) + q(h * x2 * h.inverse())) / 2.0;
}

}  // namespace ckgeo
