#pragma once

// Complete trees, the Sierpinski Green function and consecutive 1423-type
// pattern avoidance: functional-equation pipelines plus integer oracles that
// share no code with the series solvers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "funceq.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "series.hpp"

namespace itfe {

struct ParallelOptions {
    unsigned threads = 1;
};

namespace detail {

/// Runs body(i) for i in [0, n) on up to `threads` workers, static striping.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < k; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += k) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

// --- complete S-trees ----------------------------------------------------------

class TreeFamily {
public:
    explicit TreeFamily(std::vector<int> arities) : set_(std::move(arities)) {
        std::sort(set_.begin(), set_.end());
        set_.erase(std::unique(set_.begin(), set_.end()), set_.end());
        if (set_.empty()) throw std::invalid_argument("arity set is empty");
        if (set_.front() < 2) throw std::invalid_argument("arities must be >= 2 (arity 1 gives infinitely many trees)");
    }
    const std::vector<int>& arity_set() const { return set_; }

    /// S(t) = sum over the arity set of t^k.
    RationalFunction map() const {
        Polynomial s;
        for (int k : set_) s += Polynomial::monomial(1, static_cast<std::size_t>(k));
        return RationalFunction(s);
    }

private:
    std::vector<int> set_;
};

/// T(t) = t + T(S(t)), known through t^order.
inline Series complete_tree_series(const TreeFamily& family, int order, const Budget& budget = {}) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    return solve_fe_contractive(family.map(), Series::constant(1, order), Series::variable(order), order, budget);
}

/// Number of complete trees with n leaves: sum over heights h of [t^n] S^(h)(t),
/// computed with integer convolutions.
inline BigInt enumerate_complete_trees(const TreeFamily& family, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const auto N = static_cast<std::size_t>(n);
    using Poly = std::vector<BigInt>;
    auto mul = [N](const Poly& x, const Poly& y) {
        Poly r(N + 1, 0);
        for (std::size_t i = 0; i <= N; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; i + j <= N; ++j)
                if (y[j] != 0) r[i + j] += x[i] * y[j];
        }
        return r;
    };
    Poly h(N + 1, 0);
    h[1] = 1; // height 0: a single leaf
    BigInt total = 0;
    for (;;) {
        total += h[N];
        // next height: S applied to h
        Poly next(N + 1, 0), power = h;
        int k = 1;
        for (int arity : family.arity_set()) {
            while (k < arity) {
                power = mul(power, h);
                ++k;
            }
            for (std::size_t i = 0; i <= N; ++i) next[i] += power[i];
        }
        if (std::all_of(next.begin(), next.end(), [](const BigInt& x) { return x == 0; })) break;
        h = std::move(next);
    }
    return total;
}

// --- Sierpinski gasket --------------------------------------------------------

struct GreenSeries {
    Series G;  // return-probability generating function
    Series G4; // G(4t): closed walk counts
};

inline RationalFunction sierpinski_map() {
    return {Polynomial::monomial(1, 2), Polynomial{Rational(4), Rational(-3)}};
}

inline RationalFunction sierpinski_coefficient() {
    const Polynomial t = Polynomial::t();
    const auto c = [](long v) { return Polynomial::constant(v); };
    return {(c(2) + t) * (c(4) - c(3) * t), (c(4) + t) * (c(2) - t)};
}

/// G(R) = a G with G(0) = 1.
inline GreenSeries sierpinski_green(int order, const Budget& budget = {}) {
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    FESolution sol = solve_fe_standard(sierpinski_map(), sierpinski_coefficient(), RationalFunction(0), order,
                                       {{0, Rational(1)}}, budget);
    GreenSeries out{sol.value(), Series(order)};
    Rational scale = 1;
    for (int n = 0; n <= order; ++n) {
        out.G4[n] = out.G[n] * scale;
        scale *= 4;
    }
    return out;
}

/// Two level-`level` gasket approximants glued at a corner (the origin).
/// Vertices are triangular-lattice points (x, y), x + y steps along the two
/// lattice directions; the second copy is the point reflection of the first.
struct ApproximantGraph {
    int level = 0;
    std::vector<std::vector<std::size_t>> adjacency;
    std::size_t origin = 0;
};

inline ApproximantGraph sierpinski_approximant(int level) {
    if (level < 0 || level > 12) throw std::invalid_argument("approximant level must be in [0, 12]");
    using P = std::pair<long, long>;
    // Edges of the level-k gasket with corners (0,0), (2^k,0), (0,2^k).
    std::set<std::pair<P, P>> edges{{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}, {{1, 0}, {0, 1}}};
    for (int k = 0; k < level; ++k) {
        const long s = 1L << k;
        std::set<std::pair<P, P>> next;
        for (const auto& [u, v] : edges)
            for (const P off : {P{0, 0}, P{s, 0}, P{0, s}})
                next.insert({{u.first + off.first, u.second + off.second}, {v.first + off.first, v.second + off.second}});
        edges = std::move(next);
    }
    std::map<P, std::size_t> index;
    auto id = [&](const P& p) {
        auto [it, fresh] = index.emplace(p, index.size());
        return it->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> list;
    for (const auto& [u, v] : edges) {
        list.emplace_back(id(u), id(v));
        list.emplace_back(id({-u.first, -u.second}), id({-v.first, -v.second}));
    }
    ApproximantGraph g;
    g.level = level;
    g.origin = id({0, 0});
    g.adjacency.resize(index.size());
    for (const auto& [u, v] : list) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
    return g;
}

/// Closed walks of length 0..n_max at the origin of the level-`level`
/// approximant, one exact sparse matrix-vector product per length.
inline std::vector<BigInt> sierpinski_walk_counts(int n_max, int level, const ParallelOptions& par = {}) {
    if (n_max < 0) throw std::invalid_argument("n must be >= 0");
    // A walk of length n reaches distance n/2 at most before it must turn back;
    // the far corners sit at distance 2^level.
    if (level > 30 || (1L << level) * 2 <= n_max) throw BoundaryReachable(n_max, level);
    const ApproximantGraph g = sierpinski_approximant(level);
    std::vector<BigInt> v(g.adjacency.size(), 0), w(g.adjacency.size(), 0);
    v[g.origin] = 1;
    std::vector<BigInt> counts{1};
    for (int n = 1; n <= n_max; ++n) {
        detail::parallel_for(g.adjacency.size(), par.threads, [&](std::size_t i) {
            BigInt acc = 0;
            for (std::size_t j : g.adjacency[i]) acc += v[j];
            w[i] = acc;
        });
        std::swap(v, w);
        counts.push_back(v[g.origin]);
    }
    return counts;
}

inline BigInt sierpinski_walk_count(int n, int level, const ParallelOptions& par = {}) {
    return sierpinski_walk_counts(n, level, par).back();
}

// --- consecutive patterns --------------------------------------------------------

struct PatternSeries {
    Series S;
    Series S_hat; // Borel transform of S
    Series P_hat; // 1 / (2 - S_hat): exponential generating function of avoiders
};

inline RationalFunction pattern_map(int m) {
    return {Polynomial::t(), Polynomial::constant(1) + Polynomial::monomial(1, static_cast<std::size_t>(m - 2))};
}

/// S = t/(1+t) * S(t/(1+t^(m-2))) + 1, and the avoider series derived from it.
inline PatternSeries pattern_series(int m, int order, const Budget& budget = {}) {
    if (m < 4) throw std::invalid_argument("pattern length m must be >= 4");
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    const RationalFunction c(Polynomial::t(), Polynomial{Rational(1), Rational(1)});
    PatternSeries out;
    out.S = solve_fe_contractive(pattern_map(m), c, RationalFunction(1), order, budget);
    out.S_hat = borel_transform(out.S);
    out.P_hat = Series::constant(1, order) / (Series::constant(2, order) - out.S_hat);
    return out;
}

/// The pattern 1 m 2 3 ... (m-1) of length m (1423 for m = 4).
inline std::vector<int> chainsaw_pattern(int m) {
    std::vector<int> p{1, m};
    for (int k = 2; k < m; ++k) p.push_back(k);
    return p;
}

/// Permutations of 1..n in which no window of |pattern| consecutive entries is
/// order-isomorphic to the pattern. Enumerates all n! permutations.
inline std::uint64_t count_avoiders(const std::vector<int>& pattern, int n, const ParallelOptions& par = {}) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n > 10) throw BudgetExceeded("count_avoiders enumerates n! permutations; n <= 10");
    {
        std::vector<int> sorted = pattern;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i) + 1) throw std::invalid_argument("pattern must be a permutation of 1..k");
    }
    const auto k = pattern.size();
    if (n == 0) return 1;
    auto avoids = [&](const std::vector<int>& s) {
        for (std::size_t w = 0; w + k <= s.size(); ++w) {
            bool iso = true;
            for (std::size_t i = 0; i < k && iso; ++i)
                for (std::size_t j = i + 1; j < k && iso; ++j)
                    iso = (s[w + i] < s[w + j]) == (pattern[i] < pattern[j]);
            if (iso) return false;
        }
        return true;
    };
    // One block per first entry; each block is enumerated serially.
    std::vector<std::uint64_t> per_block(static_cast<std::size_t>(n), 0);
    detail::parallel_for(static_cast<std::size_t>(n), par.threads, [&](std::size_t first) {
        std::vector<int> rest;
        for (int v = 1; v <= n; ++v)
            if (v != static_cast<int>(first) + 1) rest.push_back(v);
        std::vector<int> s(static_cast<std::size_t>(n));
        std::uint64_t count = 0;
        do {
            s[0] = static_cast<int>(first) + 1;
            std::copy(rest.begin(), rest.end(), s.begin() + 1);
            if (avoids(s)) ++count;
        } while (std::next_permutation(rest.begin(), rest.end()));
        per_block[first] = count;
    });
    return std::accumulate(per_block.begin(), per_block.end(), std::uint64_t{0});
}

} // namespace itfe
