#pragma once

// Brute-force reference implementations written directly from the model definitions.
// They deliberately share no code with the library.

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Edges = std::vector<std::pair<int, int>>;
using HEdges = std::vector<std::vector<int>>;

inline bool bit(unsigned long m, int i) { return (m >> i) & 1UL; }

// Sum over sigma of prod_edges A[s_u][s_v] * prod_v lambda^{s_v}, with spins in `fixed` forced.
inline cplx z_2spin(double beta, double gamma, int n, const Edges& edges, cplx lambda,
                    const std::map<int, int>& fixed = {}) {
    cplx total = 0.0;
    for (unsigned long m = 0; m < (1UL << n); ++m) {
        bool ok = true;
        for (auto [v, s] : fixed) ok = ok && (bit(m, v) == (s == 1));
        if (!ok) continue;
        cplx w = 1.0;
        for (int v = 0; v < n; ++v)
            if (bit(m, v)) w *= lambda;
        for (auto [u, v] : edges) {
            const bool a = bit(m, u), b = bit(m, v);
            if (!a && !b) w *= beta;
            if (a && b) w *= gamma;
        }
        total += w;
    }
    return total;
}

// Edge factor 1 + mu prod(1 - sigma), eta per vertex at spin 0.
inline cplx z_setcover(int n, const HEdges& edges, double mu, cplx eta, const std::map<int, int>& fixed = {}) {
    cplx total = 0.0;
    for (unsigned long m = 0; m < (1UL << n); ++m) {
        bool ok = true;
        for (auto [v, s] : fixed) ok = ok && (bit(m, v) == (s == 1));
        if (!ok) continue;
        cplx w = 1.0;
        for (int v = 0; v < n; ++v)
            if (!bit(m, v)) w *= eta;
        for (auto& e : edges) {
            bool all_zero = true;
            for (int v : e) all_zero = all_zero && !bit(m, v);
            w *= all_zero ? 1.0 + mu : 1.0;
        }
        total += w;
    }
    return total;
}

// Weighted edge covers: sum over edge subsets, eta per chosen edge, factor mu per uncovered vertex.
inline cplx edge_cover(int n, const Edges& edges, double mu, cplx eta) {
    const int m = static_cast<int>(edges.size());
    cplx total = 0.0;
    for (unsigned long s = 0; s < (1UL << m); ++s) {
        cplx w = 1.0;
        std::vector<bool> covered(n, false);
        for (int i = 0; i < m; ++i)
            if (bit(s, i)) {
                w *= eta;
                covered[edges[i].first] = covered[edges[i].second] = true;
            }
        for (int v = 0; v < n; ++v)
            if (!covered[v]) w *= mu;
        total += w;
    }
    return total;
}

// Independent sets I of a bipartite graph weighted eta^{|I cap L|} mu^{|I cap R|}.
inline cplx bis(int n, const Edges& edges, const std::vector<int>& side, cplx eta, double mu) {
    cplx total = 0.0;
    for (unsigned long s = 0; s < (1UL << n); ++s) {
        bool independent = true;
        for (auto [u, v] : edges) independent = independent && !(bit(s, u) && bit(s, v));
        if (!independent) continue;
        cplx w = 1.0;
        for (int v = 0; v < n; ++v)
            if (bit(s, v)) w *= side[v] == 0 ? eta : cplx(mu);
        total += w;
    }
    return total;
}

// Hypergraph independent sets: no hyperedge fully occupied, eta per occupied vertex.
inline cplx his(int n, const HEdges& edges, cplx eta) {
    cplx total = 0.0;
    for (unsigned long s = 0; s < (1UL << n); ++s) {
        bool ok = true;
        for (auto& e : edges) {
            bool full = true;
            for (int v : e) full = full && bit(s, v);
            ok = ok && !full;
        }
        if (!ok) continue;
        cplx w = 1.0;
        for (int v = 0; v < n; ++v)
            if (bit(s, v)) w *= eta;
        total += w;
    }
    return total;
}

inline Edges random_tree(std::mt19937_64& rng, int n) {
    Edges e;
    for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    return e;
}

inline Edges random_graph(std::mt19937_64& rng, int n, int max_deg, double q) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<int> deg(n, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Edges e;
    for (auto [i, j] : pairs)
        if (deg[i] < max_deg && deg[j] < max_deg && u(rng) < q) {
            e.emplace_back(i, j);
            ++deg[i];
            ++deg[j];
        }
    return e;
}

// Hypertree: every new hyperedge shares exactly one vertex with the existing vertex set.
inline std::pair<int, HEdges> random_hypertree(std::mt19937_64& rng, int n_edges, int max_size) {
    int n = 1;
    HEdges edges;
    for (int i = 0; i < n_edges; ++i) {
        const int anchor = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int extra = std::uniform_int_distribution<int>(0, max_size - 1)(rng);
        std::vector<int> e{anchor};
        for (int j = 0; j < extra; ++j) e.push_back(n++);
        edges.push_back(e);
    }
    return {n, edges};
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
