#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "zerofree/errors.hpp"

namespace zf {

using cplx = std::complex<double>;

struct SpinParams {
    double beta = 1.0;
    double gamma = 0.0;
    int delta = 3;

    // Throws Errc::domain on negative entries, beta+gamma == 0 or delta < 2.
    void validate() const;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    Graph(int n_, std::vector<std::pair<int, int>> edges_);

    // Rejects self-loops, repeated edges and out-of-range endpoints.
    void validate() const;
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
    int max_degree() const;
    bool is_connected() const;
    bool is_tree() const;
};

struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges;

    Hypergraph() = default;
    Hypergraph(int n_, std::vector<std::vector<int>> edges_);

    void validate() const;
    std::vector<int> degrees() const;
    int max_degree() const;
    // Incidence lists: for each vertex, indices of the hyperedges containing it.
    std::vector<std::vector<int>> incidence() const;
    // True when the vertex/hyperedge incidence graph is a forest.
    bool is_hyperforest() const;
};

// Partial assignment vertex -> {0,1}.
using Pins = std::map<int, int>;

void validate_pins(const Pins& pins, int n);

struct PartitionPolynomial {
    std::vector<double> coeffs;  // c_0 .. c_n

    int degree() const;  // index of the last nonzero coefficient, -1 for the zero polynomial
    cplx operator()(cplx x) const;
    // Number of leading zero coefficients c_0 = ... = c_{m-1} = 0.
    int low_order_zeros() const;
};

// Extended complex number: finite value or the point at infinity.
struct Ratio {
    cplx value{0.0, 0.0};
    bool infinite = false;

    static Ratio inf() { return Ratio{cplx{0.0, 0.0}, true}; }
    static Ratio of(cplx v) { return Ratio{v, false}; }
    bool is_zero() const { return !infinite && value == cplx(0.0, 0.0); }
};

struct EnumOptions {
    int budget = 24;              // maximum number of free vertices enumerated
    bool require_feasible = true;  // throw on infeasible pins instead of returning 0
};

// 2-spin system with edge matrix [[beta, 1], [1, gamma]] and activity lambda on spin 1.
bool is_feasible_2spin(const SpinParams& p, const Graph& g, const Pins& pins);
cplx exact_Z_2spin(const SpinParams& p, const Graph& g, const Pins& pins, cplx lambda,
                   const EnumOptions& opts = {});
PartitionPolynomial Z_polynomial_2spin(const SpinParams& p, const Graph& g, const Pins& pins,
                                       const EnumOptions& opts = {});
// Z_{sigma(v)=1} / Z_{sigma(v)=0}.
Ratio marginal_ratio_2spin(const SpinParams& p, const Graph& g, const Pins& pins, int v, cplx lambda,
                           const EnumOptions& opts = {});
// lambda * prod (gamma z_i + 1)/(z_i + beta), evaluated projectively.
Ratio recursion_2spin(const SpinParams& p, cplx lambda, const std::vector<Ratio>& children);
Ratio ratio_via_tree(const SpinParams& p, const Graph& tree, int root, const Pins& pins, cplx lambda);

// Generalized set cover: edge factor 1 + mu * prod_{v in e} (1 - sigma(v)),
// vertex weight eta on every vertex with sigma(v) = 0.
bool is_feasible_setcover(const Hypergraph& h, const Pins& pins, double mu);
cplx exact_Z_setcover(const Hypergraph& h, double mu, cplx eta, const Pins& pins,
                      const EnumOptions& opts = {});
// Coefficients grouped by the number of vertices at spin 0.
PartitionPolynomial Z_polynomial_setcover(const Hypergraph& h, double mu, const Pins& pins,
                                          const EnumOptions& opts = {});
// Z_{sigma(v)=0} / Z_{sigma(v)=1}.
Ratio marginal_ratio_setcover(const Hypergraph& h, const Pins& pins, int v, double mu, cplx eta,
                              const EnumOptions& opts = {});
// eta * prod_i (1 + mu * prod_j z_ij / (1 + z_ij)).
Ratio recursion_setcover(double mu, cplx eta, const std::vector<std::vector<Ratio>>& children);
Ratio ratio_via_setcover_tree(const Hypergraph& h, int root, const Pins& pins, double mu, cplx eta);
Pins pin_blocked_vertices(const Hypergraph& h, const Pins& pins, double mu);

// EC(G; mu, eta) = eta^{|E|} mu^{isolated} Z(H, mu - 1, 1/eta).
struct EdgeCoverReduction {
    Hypergraph h;
    int edge_count = 0;
    int isolated_vertices = 0;  // vertices of G without edges; each contributes a factor mu

    cplx evaluate(double mu, cplx eta, const EnumOptions& opts = {}) const;
};
EdgeCoverReduction edge_cover_to_setcover(const Graph& g);

// BIS(G; eta, mu) = eta^{|L|} (1+mu)^{isolated R} Z(H, mu, 1/eta).
struct BisReduction {
    Hypergraph h;
    std::vector<int> left_vertices;  // hypergraph vertex i is graph vertex left_vertices[i]
    int isolated_right = 0;

    cplx evaluate(cplx eta, double mu, const EnumOptions& opts = {}) const;
};
// side[v] = 0 for L, 1 for R.
BisReduction bis_to_setcover(const Graph& g, const std::vector<int>& side);

// Hypergraph independent sets: sum over sigma of eta^{#sigma=1} prod_e (1 - prod_{v in e} sigma(v)),
// computed through the set-cover partition function with mu = -1.
cplx his_via_setcover(const Hypergraph& h, cplx eta, const EnumOptions& opts = {});

}  // namespace zf
