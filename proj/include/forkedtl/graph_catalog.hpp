/** Coxeter-Dynkin and T-shaped graphs with Perron-Frobenius data. */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace forkedtl {

inline constexpr double default_tolerance = 1e-9;

enum class Parity { even, odd };

enum class GraphFamily { A, D, E, T, custom };

/// A connected simple graph with a distinguished star vertex and the
/// bipartite coloring induced by it (star is even).
struct BipartiteGraph {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<std::vector<int>> adjacency; // sorted neighbour lists
    int star = 0;
    std::vector<Parity> coloring;

    GraphFamily family = GraphFamily::custom;
    int rank = 0;     // n in A_n, D_n, E_n, T_{k,n}
    int branch = 0;   // k in T_{k,n}

    std::size_t size() const { return vertices.size(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adjacency) twice += nb.size();
        return twice / 2;
    }

    bool has_edge(int u, int v) const {
        const auto& nb = adjacency.at(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    int index_of(const std::string& id) const {
        auto it = std::find(vertices.begin(), vertices.end(), id);
        if (it == vertices.end()) throw std::invalid_argument("vertex '" + id + "' not in graph " + name);
        return static_cast<int>(it - vertices.begin());
    }

    const std::string& star_id() const { return vertices[star]; }

    Eigen::MatrixXd adjacency_matrix() const {
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t u = 0; u < size(); ++u)
            for (int v : adjacency[u]) a(static_cast<Eigen::Index>(u), v) = 1.0;
        return a;
    }
};

namespace detail {

inline void check_graph_invariants(const BipartiteGraph& g) {
    const int n = static_cast<int>(g.size());
    if (n == 0) throw std::invalid_argument("graph has no vertices");
    if (g.adjacency.size() != g.size() || g.coloring.size() != g.size())
        throw std::invalid_argument("graph arrays have inconsistent sizes");
    if (g.star < 0 || g.star >= n) throw std::invalid_argument("star is not a vertex");
    if (g.coloring[g.star] != Parity::even) throw std::invalid_argument("star must be even");
    for (int u = 0; u < n; ++u) {
        for (int v : g.adjacency[u]) {
            if (v == u) throw std::invalid_argument("adjacency has a loop at " + g.vertices[u]);
            if (v < 0 || v >= n || !g.has_edge(v, u)) throw std::invalid_argument("adjacency is not symmetric");
            if (g.coloring[u] == g.coloring[v])
                throw std::invalid_argument("graph " + g.name + " is not bipartite");
        }
    }
    std::vector<bool> seen(g.size(), false);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = true;
    int reached = 1;
    while (!todo.empty()) {
        int u = todo.front();
        todo.pop();
        for (int v : g.adjacency[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                todo.push(v);
            }
    }
    if (reached != n) throw std::invalid_argument("graph " + g.name + " is not connected");
}

} // namespace detail

/// Assembles a graph from vertex ids and an edge list and 2-colours it
/// from the star. Throws std::invalid_argument unless the result is a
/// connected simple bipartite graph.
inline BipartiteGraph make_graph(std::string name, std::vector<std::string> ids,
                                 const std::vector<std::pair<int, int>>& edges, int star) {
    BipartiteGraph g;
    g.name = std::move(name);
    g.vertices = std::move(ids);
    g.adjacency.assign(g.size(), {});
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= static_cast<int>(g.size()) || v >= static_cast<int>(g.size()))
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop at " + g.vertices[u]);
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& nb : g.adjacency) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("edge multiplicity > 1 in " + g.name);
    }
    if (star < 0 || star >= static_cast<int>(g.size())) throw std::invalid_argument("star is not a vertex");
    g.star = star;

    // BFS colouring; conflicts are caught by the invariant check.
    g.coloring.assign(g.size(), Parity::even);
    std::vector<bool> seen(g.size(), false);
    std::queue<int> todo;
    todo.push(star);
    seen[star] = true;
    while (!todo.empty()) {
        int u = todo.front();
        todo.pop();
        for (int v : g.adjacency[u])
            if (!seen[v]) {
                seen[v] = true;
                g.coloring[v] = g.coloring[u] == Parity::even ? Parity::odd : Parity::even;
                todo.push(v);
            }
    }
    detail::check_graph_invariants(g);
    return g;
}

/// Same graph with another star; coloring is recomputed.
inline BipartiteGraph with_star(const BipartiteGraph& g, int star) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < static_cast<int>(g.size()); ++u)
        for (int v : g.adjacency[u])
            if (u < v) edges.emplace_back(u, v);
    BipartiteGraph out = make_graph(g.name, g.vertices, edges, star);
    out.family = g.family;
    out.rank = g.rank;
    out.branch = g.branch;
    return out;
}

namespace detail {

// chain a1..an with b attached to a_k (k == 0: no extra vertex)
inline BipartiteGraph chain_with_branch(std::string name, const std::string& prefix, int n, int k) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) ids.push_back(prefix + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (k > 0) {
        ids.push_back("b");
        edges.emplace_back(k - 1, n);
    }
    return make_graph(std::move(name), std::move(ids), edges, 0);
}

inline BipartiteGraph dynkin_d(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n - 2; ++i) ids.push_back("c" + std::to_string(i));
    ids.push_back("f1");
    ids.push_back("f2");
    for (int i = 0; i + 1 < n - 2; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n - 3, n - 2);
    edges.emplace_back(n - 3, n - 1);
    return make_graph("D" + std::to_string(n), std::move(ids), edges, 0);
}

} // namespace detail

/// Builds a catalog graph from `A<n>`, `D<n>`, `E6|E7|E8` or `T<k>,<n>`.
///
/// Canonical layouts: A_n is a1..an; D_n is the chain c1..c(n-2) with fork
/// tips f1, f2 on c(n-2); E_n is the chain a1..a(n-1) with b on a3; T_{k,n}
/// is the chain a1..an with b on ak. The default star is the first chain
/// vertex. `star` may be empty, a vertex id, or "trivalent" (the unique
/// degree-3 vertex).
inline BipartiteGraph build_graph(const std::string& name, const std::string& star = "") {
    static const std::regex pattern_a(R"(A(\d+))");
    static const std::regex pattern_d(R"(D(\d+))");
    static const std::regex pattern_e(R"(E(\d+))");
    static const std::regex pattern_t(R"(T(\d+),(\d+))");
    std::smatch m;
    BipartiteGraph g;
    auto number = [](const std::ssub_match& s) {
        if (s.length() > 6) throw std::invalid_argument("graph size out of range");
        return std::stoi(s.str());
    };
    if (std::regex_match(name, m, pattern_a)) {
        int n = number(m[1]);
        if (n < 1) throw std::invalid_argument("A_n requires n >= 1");
        g = detail::chain_with_branch(name, "a", n, 0);
        g.family = GraphFamily::A;
        g.rank = n;
    } else if (std::regex_match(name, m, pattern_d)) {
        int n = number(m[1]);
        if (n < 4) throw std::invalid_argument("D_n requires n >= 4");
        g = detail::dynkin_d(n);
        g.family = GraphFamily::D;
        g.rank = n;
    } else if (std::regex_match(name, m, pattern_e)) {
        int n = number(m[1]);
        if (n < 6 || n > 8) throw std::invalid_argument("E_n requires n in {6, 7, 8}");
        g = detail::chain_with_branch(name, "a", n - 1, 3);
        g.family = GraphFamily::E;
        g.rank = n;
    } else if (std::regex_match(name, m, pattern_t)) {
        int k = number(m[1]);
        int n = number(m[2]);
        if (k < 2 || k > n) throw std::invalid_argument("T_{k,n} requires 2 <= k <= n");
        g = detail::chain_with_branch(name, "a", n, k);
        g.family = GraphFamily::T;
        g.rank = n;
        g.branch = k;
    } else {
        throw std::invalid_argument("unknown graph name '" + name + "'");
    }
    if (star.empty()) return g;
    if (star == "trivalent") {
        int found = -1;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.adjacency[v].size() == 3) {
                if (found >= 0) throw std::invalid_argument("graph " + name + " has several trivalent vertices");
                found = static_cast<int>(v);
            }
        if (found < 0) throw std::invalid_argument("graph " + name + " has no trivalent vertex");
        return with_star(g, found);
    }
    return with_star(g, g.index_of(star));
}

/// Is g the Dynkin diagram D_n with its star at the trivalent vertex?
inline bool is_d_at_trivalent(const BipartiteGraph& g) {
    return g.family == GraphFamily::D && g.adjacency[g.star].size() == 3;
}

/// Perron-Frobenius data: norm β, eigenvector μ with μ(star) = 1, τ = β⁻².
struct SpectralData {
    double norm = 0.0;
    std::vector<double> weights;
    double tau = 0.0;
    double residual = 0.0; // ‖Aμ − βμ‖∞
};

inline double eigen_residual(const BipartiteGraph& g, const std::vector<double>& mu, double beta) {
    double r = 0.0;
    for (std::size_t u = 0; u < g.size(); ++u) {
        double s = 0.0;
        for (int v : g.adjacency[u]) s += mu[v];
        r = std::max(r, std::abs(s - beta * mu[u]));
    }
    return r;
}

/// Shifted power iteration on A + I from the all-ones vector. The shift
/// separates β from −β, which is always in the spectrum of a bipartite graph.
/// Falls back to a dense symmetric eigensolve when convergence stalls.
inline SpectralData spectral_data(const BipartiteGraph& g, double eps = 1e-13, int max_iter = 200000) {
    const std::size_t n = g.size();
    std::vector<double> mu(n, 1.0), next(n);
    double beta = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        double scale = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            double s = mu[u];
            for (int v : g.adjacency[u]) s += mu[v];
            next[u] = s;
            scale = std::max(scale, s);
        }
        for (auto& x : next) x /= scale;
        mu.swap(next);
        if (it % 8 != 7) continue;
        double num = 0.0, den = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            double s = 0.0;
            for (int v : g.adjacency[u]) s += mu[v];
            num += mu[u] * s;
            den += mu[u] * mu[u];
        }
        beta = num / den;
        if (eigen_residual(g, mu, beta) < eps) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency_matrix());
        const auto last = static_cast<Eigen::Index>(n) - 1;
        beta = solver.eigenvalues()(last);
        Eigen::VectorXd v = solver.eigenvectors().col(last);
        if (v.sum() < 0) v = -v;
        for (std::size_t u = 0; u < n; ++u) mu[u] = v(static_cast<Eigen::Index>(u));
    }
    const double at_star = mu[g.star];
    for (auto& x : mu) x /= at_star;
    if (n == 1) beta = 0.0;
    SpectralData out;
    out.norm = beta;
    out.weights = std::move(mu);
    out.tau = beta > 0.0 ? 1.0 / (beta * beta) : std::numeric_limits<double>::infinity();
    out.residual = eigen_residual(g, out.weights, beta);
    return out;
}

/// Number of adjacency eigenvalues strictly greater than `lambda` for a tree,
/// by Sylvester inertia of λI − A eliminated from the leaves inward.
inline int tree_eigenvalues_above(const std::vector<std::vector<int>>& adj, double lambda) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    order.push_back(0);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int v : adj[order[i]])
            if (!seen[v]) {
                seen[v] = true;
                parent[v] = order[i];
                order.push_back(v);
            }
    std::vector<double> d(n, lambda);
    int negatives = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (d[v] == 0.0) d[v] = 1e-300;
        if (d[v] < 0.0) ++negatives;
        if (parent[v] >= 0) d[parent[v]] -= 1.0 / d[v];
    }
    return negatives;
}

/// Largest adjacency eigenvalue of a tree by bisection on the inertia count.
inline double tree_norm(const BipartiteGraph& g) {
    if (g.edge_count() + 1 != g.size()) throw std::invalid_argument("tree_norm: " + g.name + " is not a tree");
    double max_degree = 0.0;
    for (const auto& nb : g.adjacency) max_degree = std::max(max_degree, static_cast<double>(nb.size()));
    double lo = 0.0, hi = max_degree + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (tree_eigenvalues_above(g.adjacency, mid) > 0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Coxeter number h of an ADE graph; T_{k,n} graphs are identified with
/// their ADE isomorphism class when they have one.
inline int coxeter_number(const BipartiteGraph& g) {
    switch (g.family) {
    case GraphFamily::A: return g.rank + 1;
    case GraphFamily::D: return 2 * g.rank - 2;
    case GraphFamily::E: return g.rank == 6 ? 12 : g.rank == 7 ? 18 : 30;
    case GraphFamily::T: {
        const int n = g.rank;
        const int arm = std::min(g.branch, n + 1 - g.branch);
        if (arm == 1) return n + 2; // A_{n+1}
        if (arm == 2) return 2 * (n + 1) - 2; // D_{n+1}
        if (arm == 3 && n >= 5 && n <= 7) return n == 5 ? 12 : n == 6 ? 18 : 30;
        break;
    }
    case GraphFamily::custom: break;
    }
    throw std::invalid_argument("graph " + g.name + " is not of type A, D or E");
}

inline double t_graph_norm(int k, int n) {
    return tree_norm(detail::chain_with_branch("T", "a", n, k));
}

struct Admissible { int n; };
struct Inadmissible {};
struct Unconstrained {};
using TauClass = std::variant<Admissible, Inadmissible, Unconstrained>;

inline std::string describe(const TauClass& c) {
    if (auto a = std::get_if<Admissible>(&c)) return "admissible(n=" + std::to_string(a->n) + ")";
    if (std::holds_alternative<Inadmissible>(c)) return "inadmissible";
    return "unconstrained";
}

/// 1/‖T_{k,∞}‖². For k = 2 this is exactly 1/4 (D_∞ has norm 2); for k ≥ 3
/// the norm exceeds 2 and the limit is reached to machine precision well
/// before n = bound.
inline double t_infinity_threshold(int k, int bound = 1000) {
    if (k == 2) return 0.25;
    double norm = t_graph_norm(k, std::max(bound, k));
    return 1.0 / (norm * norm);
}

/// Admissibility of τ for a T_{k,n} extension of a Temperley-Lieb sequence:
/// above 1/‖T_{k,∞}‖², τ must equal 1/‖T_{k,n}‖² for some finite n.
inline TauClass classify_tau(double tau, int k, double tol = default_tolerance, int bound = 1000) {
    if (!(tau > 0.0)) throw std::invalid_argument("classify_tau: tau must be positive");
    if (k < 2) throw std::invalid_argument("classify_tau: k must be >= 2");
    if (tau <= t_infinity_threshold(k, bound)) return Unconstrained{};
    auto inv_sq = [k](int n) {
        double b = t_graph_norm(k, n);
        return 1.0 / (b * b);
    };
    // inv_sq is strictly decreasing in n: bracket the first n with inv_sq(n) <= tau.
    int lo = k, hi = std::max(bound, k);
    if (inv_sq(hi) > tau + tol) return Inadmissible{};
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (inv_sq(mid) <= tau) hi = mid;
        else lo = mid + 1;
    }
    for (int n : {lo - 1, lo}) {
        if (n < k) continue;
        if (std::abs(tau - inv_sq(n)) < tol) return Admissible{n};
    }
    return Inadmissible{};
}

/// Values 4cos²(π/k), k = 3, 4, ..., max_k that lie below `bound`.
inline std::vector<double> jones_admissible_indices(double bound, int max_k = 1000) {
    if (bound > 4.0) throw std::invalid_argument("jones_admissible_indices: bound must be <= 4");
    std::vector<double> out;
    for (int k = 3; k <= max_k; ++k) {
        double c = std::cos(std::numbers::pi / k);
        double value = 4.0 * c * c;
        if (value >= bound) break;
        out.push_back(value);
    }
    return out;
}

/// Undirected DOT rendering; the star carries `star=true` and a double circle.
inline std::string graph_to_dot(const BipartiteGraph& g) {
    std::ostringstream os;
    os << "graph \"" << g.name << "\" {\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        os << "  \"" << g.vertices[v] << "\" [parity=" << (g.coloring[v] == Parity::even ? "even" : "odd");
        if (static_cast<int>(v) == g.star) os << ", star=true, shape=doublecircle";
        os << "];\n";
    }
    for (std::size_t u = 0; u < g.size(); ++u)
        for (int v : g.adjacency[u])
            if (static_cast<int>(u) < v) os << "  \"" << g.vertices[u] << "\" -- \"" << g.vertices[v] << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace forkedtl
