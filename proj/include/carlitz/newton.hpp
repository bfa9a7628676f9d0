#ifndef CARLITZ_NEWTON_HPP
#define CARLITZ_NEWTON_HPP

#include <algorithm>
#include <map>

#include "carlitz/rational.hpp"
#include "carlitz/series.hpp"

namespace carlitz {

// Lower convex hull of the points (i, v(f_i)). Sides carry strictly
// increasing slopes; collinear points merge into one side (lengths add).
struct NewtonPolygon {
    struct Side {
        Rational slope;
        long long length;  // horizontal projection
    };
    std::vector<std::pair<long long, Rational>> vertices;
    std::vector<Side> sides;
};

inline NewtonPolygon newton_polygon(std::vector<std::pair<long long, Rational>> pts) {
    if (pts.empty()) throw EmptyInput("no points for Newton polygon");
    // one point per abscissa, lowest valuation wins
    std::map<long long, Rational> best;
    for (auto& [i, v] : pts) {
        auto it = best.find(i);
        if (it == best.end() || v < it->second) best[i] = v;
    }
    std::vector<std::pair<long long, Rational>> P(best.begin(), best.end());

    NewtonPolygon np;
    auto cross_ok = [](const std::pair<long long, Rational>& a, const std::pair<long long, Rational>& b,
                       const std::pair<long long, Rational>& c) {
        // keep b only if it lies strictly below segment a-c: slope(a,b) < slope(b,c)
        Rational s1 = (b.second - a.second) / Rational(b.first - a.first);
        Rational s2 = (c.second - b.second) / Rational(c.first - b.first);
        return s1 < s2;
    };
    for (auto& p : P) {
        np.vertices.push_back(p);
        while (np.vertices.size() >= 3 &&
               !cross_ok(np.vertices[np.vertices.size() - 3], np.vertices[np.vertices.size() - 2], np.vertices.back())) {
            np.vertices.erase(np.vertices.end() - 2);
        }
    }
    for (size_t k = 0; k + 1 < np.vertices.size(); ++k) {
        auto& a = np.vertices[k];
        auto& b = np.vertices[k + 1];
        np.sides.push_back({(b.second - a.second) / Rational(b.first - a.first), b.first - a.first});
    }
    return np;
}

// Number of zeros x with v(x) = -m, i.e. the horizontal length of the side of
// slope m; 0 when no side has that slope.
inline long long zero_count_at_valuation(const NewtonPolygon& np, Rational m) {
    for (auto& s : np.sides)
        if (s.slope == m) return s.length;
    return 0;
}

// The root H = -Σ_{i>=0} M^{q^i} of X^q - X = M, for |M| < 1. H satisfies
// v(H) = v(M); the other roots are H + λ, λ in F_q.
inline LSeries artin_schreier_solve(const LSeries& M) {
    if (M.valuation() <= 0) throw NotContracting("X^q - X = M has no small root unless v(M) > 0");
    if (M.c.empty()) return M;
    LSeries H = LSeries::zero(M.var, M.trunc, M.ram);
    LSeries term = M;
    while (term.valuation() < M.trunc) {
        H = H + term;
        term = frobenius(term);
        if (term.c.empty()) break;
    }
    return -truncated(H, M.trunc);
}

}  // namespace carlitz

#endif
