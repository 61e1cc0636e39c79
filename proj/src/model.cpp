#include "zerofree/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>

namespace zf {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

std::vector<int> free_vertices(int n, const Pins& pins) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!pins.count(v)) out.push_back(v);
    return out;
}

void check_budget(std::size_t free_count, const EnumOptions& opts) {
    if (opts.budget < 0 || free_count > static_cast<std::size_t>(opts.budget) || free_count > 62)
        throw Error(Errc::budget_exceeded, std::to_string(free_count) + " free vertices, budget " +
                                               std::to_string(opts.budget));
}

std::vector<double> powers(double base, std::size_t count) {
    std::vector<double> p(count + 1, 1.0);
    for (std::size_t i = 1; i <= count; ++i) p[i] = p[i - 1] * base;
    return p;
}

// Calls visit(sigma) for every extension of pins.
template <typename F>
void for_each_config(int n, const Pins& pins, const EnumOptions& opts, F&& visit) {
    auto fv = free_vertices(n, pins);
    check_budget(fv.size(), opts);
    std::vector<int> sigma(n, 0);
    for (auto [v, s] : pins) sigma[v] = s;
    const std::uint64_t total = std::uint64_t{1} << fv.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < fv.size(); ++i) sigma[fv[i]] = static_cast<int>((mask >> i) & 1U);
        visit(sigma);
    }
}

}  // namespace

void SpinParams::validate() const {
    if (!(beta >= 0.0) || !(gamma >= 0.0) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw Error(Errc::domain, "beta and gamma must be finite and nonnegative");
    if (!(beta + gamma > 0.0)) throw Error(Errc::domain, "beta + gamma must be positive");
    if (delta < 2) throw Error(Errc::domain, "delta must be at least 2");
}

Graph::Graph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_), edges(std::move(edges_)) {
    validate();
}

void Graph::validate() const {
    if (n < 0) throw Error(Errc::invalid_input, "negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error(Errc::invalid_input, "edge endpoint out of range");
        if (u == v) throw Error(Errc::invalid_input, "self-loop at vertex " + std::to_string(u));
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            throw Error(Errc::invalid_input, "repeated edge " + std::to_string(u) + "-" + std::to_string(v));
    }
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(n, 0);
    for (auto [u, v] : edges) {
        ++d[u];
        ++d[v];
    }
    return d;
}

int Graph::max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool Graph::is_connected() const {
    if (n == 0) return true;
    Dsu dsu(n);
    int comps = n;
    for (auto [u, v] : edges)
        if (dsu.unite(u, v)) --comps;
    return comps == 1;
}

bool Graph::is_tree() const {
    return n >= 1 && static_cast<int>(edges.size()) == n - 1 && is_connected();
}

Hypergraph::Hypergraph(int n_, std::vector<std::vector<int>> edges_) : n(n_), edges(std::move(edges_)) {
    validate();
}

void Hypergraph::validate() const {
    if (n < 0) throw Error(Errc::invalid_input, "negative vertex count");
    for (const auto& e : edges) {
        if (e.empty()) throw Error(Errc::invalid_input, "empty hyperedge");
        std::set<int> s;
        for (int v : e) {
            if (v < 0 || v >= n) throw Error(Errc::invalid_input, "hyperedge vertex out of range");
            if (!s.insert(v).second) throw Error(Errc::invalid_input, "vertex repeated inside a hyperedge");
        }
    }
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> d(n, 0);
    for (const auto& e : edges)
        for (int v : e) ++d[v];
    return d;
}

int Hypergraph::max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<std::vector<int>> Hypergraph::incidence() const {
    std::vector<std::vector<int>> inc(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (int v : edges[i]) inc[v].push_back(static_cast<int>(i));
    return inc;
}

bool Hypergraph::is_hyperforest() const {
    Dsu dsu(n + static_cast<int>(edges.size()));
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (int v : edges[i])
            if (!dsu.unite(v, n + static_cast<int>(i))) return false;
    return true;
}

void validate_pins(const Pins& pins, int n) {
    for (auto [v, s] : pins) {
        if (v < 0 || v >= n) throw Error(Errc::invalid_input, "pinned vertex out of range");
        if (s != 0 && s != 1) throw Error(Errc::invalid_input, "pin values must be 0 or 1");
    }
}

int PartitionPolynomial::degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
        if (coeffs[j] != 0.0) return j;
    return -1;
}

cplx PartitionPolynomial::operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int PartitionPolynomial::low_order_zeros() const {
    int m = 0;
    while (m < static_cast<int>(coeffs.size()) && coeffs[m] == 0.0) ++m;
    return m;
}

// ---------------------------------------------------------------- 2-spin

bool is_feasible_2spin(const SpinParams& p, const Graph& g, const Pins& pins) {
    for (auto [u, v] : g.edges) {
        auto iu = pins.find(u), iv = pins.find(v);
        if (iu == pins.end() || iv == pins.end()) continue;
        if (p.beta == 0.0 && iu->second == 0 && iv->second == 0) return false;
        if (p.gamma == 0.0 && iu->second == 1 && iv->second == 1) return false;
    }
    return true;
}

namespace {

void precheck_2spin(const SpinParams& p, const Graph& g, const Pins& pins, const EnumOptions& opts) {
    p.validate();
    g.validate();
    validate_pins(pins, g.n);
    if (opts.require_feasible && !is_feasible_2spin(p, g, pins))
        throw Error(Errc::infeasible_pins, "pinned edge has zero weight");
}

}  // namespace

cplx exact_Z_2spin(const SpinParams& p, const Graph& g, const Pins& pins, cplx lambda, const EnumOptions& opts) {
    precheck_2spin(p, g, pins, opts);
    cplx total = 0.0;
    for_each_config(g.n, pins, opts, [&](const std::vector<int>& s) {
        cplx w = 1.0;
        for (auto [u, v] : g.edges) {
            if (s[u] == 0 && s[v] == 0) w *= p.beta;
            else if (s[u] == 1 && s[v] == 1) w *= p.gamma;
        }
        for (int x : s)
            if (x == 1) w *= lambda;
        total += w;
    });
    return total;
}

PartitionPolynomial Z_polynomial_2spin(const SpinParams& p, const Graph& g, const Pins& pins,
                                       const EnumOptions& opts) {
    precheck_2spin(p, g, pins, opts);
    const auto m = g.edges.size();
    auto pb = powers(p.beta, m), pg = powers(p.gamma, m);
    PartitionPolynomial poly;
    poly.coeffs.assign(g.n + 1, 0.0);
    for_each_config(g.n, pins, opts, [&](const std::vector<int>& s) {
        std::size_t n00 = 0, n11 = 0;
        for (auto [u, v] : g.edges) {
            n00 += (s[u] == 0 && s[v] == 0);
            n11 += (s[u] == 1 && s[v] == 1);
        }
        int ones = static_cast<int>(std::count(s.begin(), s.end(), 1));
        poly.coeffs[ones] += pb[n00] * pg[n11];
    });
    return poly;
}

Ratio marginal_ratio_2spin(const SpinParams& p, const Graph& g, const Pins& pins, int v, cplx lambda,
                           const EnumOptions& opts) {
    if (v < 0 || v >= g.n) throw Error(Errc::invalid_input, "vertex out of range");
    if (auto it = pins.find(v); it != pins.end()) return it->second == 0 ? Ratio::of(0.0) : Ratio::inf();
    EnumOptions relaxed = opts;
    relaxed.require_feasible = false;
    precheck_2spin(p, g, pins, opts);
    Pins p1 = pins, p0 = pins;
    p1[v] = 1;
    p0[v] = 0;
    cplx z1 = exact_Z_2spin(p, g, p1, lambda, relaxed);
    cplx z0 = exact_Z_2spin(p, g, p0, lambda, relaxed);
    if (z0 == cplx(0.0)) {
        if (z1 == cplx(0.0)) throw Error(Errc::undefined_ratio, "both restricted partition functions vanish");
        return Ratio::inf();
    }
    return Ratio::of(z1 / z0);
}

Ratio recursion_2spin(const SpinParams& p, cplx lambda, const std::vector<Ratio>& children) {
    cplx num = 1.0, den = 1.0;
    for (const auto& z : children) {
        if (z.infinite) {
            num *= p.gamma;
        } else {
            num *= p.gamma * z.value + 1.0;
            den *= z.value + p.beta;
        }
    }
    num *= lambda;
    if (den == cplx(0.0)) {
        if (num == cplx(0.0)) throw Error(Errc::pole, "indeterminate 0/0 in 2-spin recursion");
        return Ratio::inf();
    }
    return Ratio::of(num / den);
}

Ratio ratio_via_tree(const SpinParams& p, const Graph& tree, int root, const Pins& pins, cplx lambda) {
    p.validate();
    tree.validate();
    validate_pins(pins, tree.n);
    if (!tree.is_tree()) throw Error(Errc::not_a_tree, "input graph is not a tree");
    if (root < 0 || root >= tree.n) throw Error(Errc::invalid_input, "root out of range");
    if (!is_feasible_2spin(p, tree, pins)) throw Error(Errc::infeasible_pins, "pinned edge has zero weight");

    auto adj = tree.adjacency();
    std::vector<int> parent(tree.n, -1), order;
    order.reserve(tree.n);
    std::vector<int> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[v])
            if (parent[u] == -1) {
                parent[u] = v;
                stack.push_back(u);
            }
    }
    std::vector<Ratio> r(tree.n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (auto pin = pins.find(v); pin != pins.end()) {
            r[v] = pin->second == 0 ? Ratio::of(0.0) : Ratio::inf();
            continue;
        }
        std::vector<Ratio> kids;
        for (int u : adj[v])
            if (u != parent[v] && parent[u] == v) kids.push_back(r[u]);
        r[v] = recursion_2spin(p, lambda, kids);
    }
    return r[root];
}

// ---------------------------------------------------------------- set cover

bool is_feasible_setcover(const Hypergraph& h, const Pins& pins, double mu) {
    if (mu != -1.0) return true;
    for (const auto& e : h.edges) {
        bool all_zero = true;
        for (int v : e) {
            auto it = pins.find(v);
            if (it == pins.end() || it->second != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) return false;
    }
    return true;
}

namespace {

void precheck_setcover(const Hypergraph& h, double mu, const Pins& pins, const EnumOptions& opts) {
    h.validate();
    validate_pins(pins, h.n);
    if (!(mu >= -1.0) || !std::isfinite(mu)) throw Error(Errc::domain, "mu must be finite and >= -1");
    if (opts.require_feasible && !is_feasible_setcover(h, pins, mu))
        throw Error(Errc::infeasible_pins, "hyperedge fully pinned to 0 with mu = -1");
}

double edge_product(const Hypergraph& h, double mu, const std::vector<int>& s) {
    double w = 1.0;
    for (const auto& e : h.edges) {
        bool all_zero = std::all_of(e.begin(), e.end(), [&](int v) { return s[v] == 0; });
        if (all_zero) w *= 1.0 + mu;
    }
    return w;
}

}  // namespace

cplx exact_Z_setcover(const Hypergraph& h, double mu, cplx eta, const Pins& pins, const EnumOptions& opts) {
    precheck_setcover(h, mu, pins, opts);
    cplx total = 0.0;
    for_each_config(h.n, pins, opts, [&](const std::vector<int>& s) {
        cplx w = edge_product(h, mu, s);
        for (int x : s)
            if (x == 0) w *= eta;
        total += w;
    });
    return total;
}

PartitionPolynomial Z_polynomial_setcover(const Hypergraph& h, double mu, const Pins& pins,
                                          const EnumOptions& opts) {
    precheck_setcover(h, mu, pins, opts);
    PartitionPolynomial poly;
    poly.coeffs.assign(h.n + 1, 0.0);
    for_each_config(h.n, pins, opts, [&](const std::vector<int>& s) {
        int zeros = static_cast<int>(std::count(s.begin(), s.end(), 0));
        poly.coeffs[zeros] += edge_product(h, mu, s);
    });
    return poly;
}

Ratio marginal_ratio_setcover(const Hypergraph& h, const Pins& pins, int v, double mu, cplx eta,
                              const EnumOptions& opts) {
    if (v < 0 || v >= h.n) throw Error(Errc::invalid_input, "vertex out of range");
    if (auto it = pins.find(v); it != pins.end()) return it->second == 1 ? Ratio::of(0.0) : Ratio::inf();
    precheck_setcover(h, mu, pins, opts);
    EnumOptions relaxed = opts;
    relaxed.require_feasible = false;
    Pins p0 = pins, p1 = pins;
    p0[v] = 0;
    p1[v] = 1;
    cplx z0 = exact_Z_setcover(h, mu, eta, p0, relaxed);
    cplx z1 = exact_Z_setcover(h, mu, eta, p1, relaxed);
    if (z1 == cplx(0.0)) {
        if (z0 == cplx(0.0)) throw Error(Errc::undefined_ratio, "both restricted partition functions vanish");
        return Ratio::inf();
    }
    return Ratio::of(z0 / z1);
}

Ratio recursion_setcover(double mu, cplx eta, const std::vector<std::vector<Ratio>>& children) {
    cplx out = eta;
    for (const auto& edge : children) {
        cplx inner = 1.0;
        for (const auto& z : edge) {
            if (z.infinite) continue;
            cplx den = 1.0 + z.value;
            if (den == cplx(0.0)) throw Error(Errc::pole, "child ratio equals -1");
            inner *= z.value / den;
        }
        out *= 1.0 + mu * inner;
    }
    return Ratio::of(out);
}

namespace {

struct SetcoverTree {
    const Hypergraph& h;
    const std::vector<std::vector<int>>& inc;
    const Pins& pins;
    double mu;
    cplx eta;

    Ratio at(int v, int parent_edge) const {
        if (auto it = pins.find(v); it != pins.end()) return it->second == 1 ? Ratio::of(0.0) : Ratio::inf();
        std::vector<std::vector<Ratio>> kids;
        for (int e : inc[v]) {
            if (e == parent_edge) continue;
            std::vector<Ratio> row;
            for (int u : h.edges[e])
                if (u != v) row.push_back(at(u, e));
            kids.push_back(std::move(row));
        }
        return recursion_setcover(mu, eta, kids);
    }
};

}  // namespace

Ratio ratio_via_setcover_tree(const Hypergraph& h, int root, const Pins& pins, double mu, cplx eta) {
    precheck_setcover(h, mu, pins, EnumOptions{});
    if (root < 0 || root >= h.n) throw Error(Errc::invalid_input, "root out of range");
    if (!h.is_hyperforest()) throw Error(Errc::cyclic_structure, "incidence graph contains a cycle");
    Pins full = pin_blocked_vertices(h, pins, mu);
    auto inc = h.incidence();
    SetcoverTree t{h, inc, full, mu, eta};
    return t.at(root, -1);
}

Pins pin_blocked_vertices(const Hypergraph& h, const Pins& pins, double mu) {
    Pins out = pins;
    if (mu != -1.0) return out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : h.edges) {
            int free_count = 0, free_v = -1;
            bool others_zero = true;
            for (int v : e) {
                auto it = out.find(v);
                if (it == out.end()) {
                    ++free_count;
                    free_v = v;
                } else if (it->second != 0) {
                    others_zero = false;
                }
            }
            if (others_zero && free_count == 1) {
                out[free_v] = 1;
                changed = true;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- reductions

EdgeCoverReduction edge_cover_to_setcover(const Graph& g) {
    g.validate();
    EdgeCoverReduction r;
    r.edge_count = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> hyper(g.n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        hyper[g.edges[i].first].push_back(static_cast<int>(i));
        hyper[g.edges[i].second].push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> edges;
    for (auto& e : hyper) {
        if (e.empty()) ++r.isolated_vertices;
        else edges.push_back(std::move(e));
    }
    r.h = Hypergraph(r.edge_count, std::move(edges));
    return r;
}

cplx EdgeCoverReduction::evaluate(double mu, cplx eta, const EnumOptions& opts) const {
    if (eta == cplx(0.0)) throw Error(Errc::domain, "eta must be nonzero");
    cplx z = exact_Z_setcover(h, mu - 1.0, 1.0 / eta, {}, opts);
    return std::pow(eta, edge_count) * std::pow(mu, isolated_vertices) * z;
}

BisReduction bis_to_setcover(const Graph& g, const std::vector<int>& side) {
    g.validate();
    if (static_cast<int>(side.size()) != g.n) throw Error(Errc::invalid_input, "side vector size mismatch");
    for (int s : side)
        if (s != 0 && s != 1) throw Error(Errc::invalid_input, "side entries must be 0 (L) or 1 (R)");
    for (auto [u, v] : g.edges)
        if (side[u] == side[v]) throw Error(Errc::not_bipartite, "edge inside one side");
    BisReduction r;
    std::vector<int> index(g.n, -1);
    for (int v = 0; v < g.n; ++v)
        if (side[v] == 0) {
            index[v] = static_cast<int>(r.left_vertices.size());
            r.left_vertices.push_back(v);
        }
    auto adj = g.adjacency();
    std::vector<std::vector<int>> edges;
    for (int v = 0; v < g.n; ++v) {
        if (side[v] != 1) continue;
        std::vector<int> e;
        for (int u : adj[v]) e.push_back(index[u]);
        std::sort(e.begin(), e.end());
        if (e.empty()) ++r.isolated_right;
        else edges.push_back(std::move(e));
    }
    r.h = Hypergraph(static_cast<int>(r.left_vertices.size()), std::move(edges));
    return r;
}

cplx BisReduction::evaluate(cplx eta, double mu, const EnumOptions& opts) const {
    if (eta == cplx(0.0)) throw Error(Errc::domain, "eta must be nonzero");
    cplx z = exact_Z_setcover(h, mu, 1.0 / eta, {}, opts);
    return std::pow(eta, static_cast<int>(left_vertices.size())) * std::pow(1.0 + mu, isolated_right) * z;
}

cplx his_via_setcover(const Hypergraph& h, cplx eta, const EnumOptions& opts) {
    return exact_Z_setcover(h, -1.0, eta, {}, opts);
}

}  // namespace zf
