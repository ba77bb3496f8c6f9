#include "forkedtl/graph_catalog.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

using namespace forkedtl;

namespace {

std::set<std::string> neighbour_ids(const BipartiteGraph& g, const std::string& id) {
    std::set<std::string> out;
    for (int v : g.adjacency[g.index_of(id)]) out.insert(g.vertices[v]);
    return out;
}

// brute-force isomorphism test over all vertex permutations (small graphs only)
bool isomorphic(const BipartiteGraph& a, const BipartiteGraph& b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t u = 0; u < a.size() && ok; ++u)
            for (int v : a.adjacency[u])
                if (!b.has_edge(perm[u], perm[v])) {
                    ok = false;
                    break;
                }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<std::string> ade_catalog(int max_vertices) {
    std::vector<std::string> names;
    for (int n = 1; n <= max_vertices; ++n) names.push_back("A" + std::to_string(n));
    for (int n = 4; n <= max_vertices; ++n) names.push_back("D" + std::to_string(n));
    for (int n = 6; n <= 8; ++n) names.push_back("E" + std::to_string(n));
    return names;
}

double two_cos(int h) { return 2.0 * std::cos(std::numbers::pi / h); }

} // namespace

TEST(BuildGraph, D5AtTrivalentVertex) {
    const auto g = build_graph("D5", "trivalent");
    EXPECT_EQ(g.size(), 5u);
    EXPECT_EQ(g.star_id(), "c3");
    EXPECT_EQ(neighbour_ids(g, "c3"), (std::set<std::string>{"c2", "f1", "f2"}));
    EXPECT_EQ(g.coloring[g.star], Parity::even);
    EXPECT_EQ(g.coloring[g.index_of("f1")], Parity::odd);
    EXPECT_EQ(g.coloring[g.index_of("c1")], Parity::even);
}

TEST(BuildGraph, DefaultStarIsChainEndpoint) {
    EXPECT_EQ(build_graph("D5").star_id(), "c1");
    EXPECT_EQ(build_graph("A4").star_id(), "a1");
    EXPECT_EQ(build_graph("E7").star_id(), "a1");
    EXPECT_EQ(build_graph("A4", "a3").star_id(), "a3");
}

TEST(BuildGraph, T24IsD5) {
    const auto t = build_graph("T2,4");
    EXPECT_EQ(t.size(), 5u);
    EXPECT_TRUE(isomorphic(t, build_graph("D5")));
    EXPECT_TRUE(isomorphic(build_graph("T3,5"), build_graph("E6")));
    EXPECT_FALSE(isomorphic(build_graph("T2,4"), build_graph("A5")));
}

TEST(BuildGraph, A3IsPath) {
    const auto g = build_graph("A3");
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(neighbour_ids(g, "a2"), (std::set<std::string>{"a1", "a3"}));
}

TEST(BuildGraph, Errors) {
    EXPECT_THROW(build_graph("F4"), std::invalid_argument);
    EXPECT_THROW(build_graph("A0"), std::invalid_argument);
    EXPECT_THROW(build_graph("D3"), std::invalid_argument);
    EXPECT_THROW(build_graph("E9"), std::invalid_argument);
    EXPECT_THROW(build_graph("T1,4"), std::invalid_argument);
    EXPECT_THROW(build_graph("T5,4"), std::invalid_argument);
    EXPECT_THROW(build_graph("D5", "x9"), std::invalid_argument);
    EXPECT_THROW(build_graph("A5", "trivalent"), std::invalid_argument);
}

TEST(MakeGraph, RejectsInvalidGraphs) {
    EXPECT_THROW(make_graph("tri", {"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}, 0), std::invalid_argument);
    EXPECT_THROW(make_graph("split", {"a", "b", "c"}, {{0, 1}}, 0), std::invalid_argument);
    EXPECT_THROW(make_graph("double", {"a", "b"}, {{0, 1}, {1, 0}}, 0), std::invalid_argument);
    EXPECT_THROW(make_graph("loop", {"a", "b"}, {{0, 1}, {1, 1}}, 0), std::invalid_argument);
    EXPECT_NO_THROW(make_graph("square", {"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 2));
}

TEST(SpectralData, A2) {
    const auto sd = spectral_data(build_graph("A2"));
    EXPECT_NEAR(sd.norm, 1.0, 1e-12);
    EXPECT_NEAR(sd.weights[0], 1.0, 1e-12);
    EXPECT_NEAR(sd.weights[1], 1.0, 1e-12);
    EXPECT_NEAR(sd.tau, 1.0, 1e-12);
}

TEST(SpectralData, D5Norm) {
    const auto sd = spectral_data(build_graph("D5", "trivalent"));
    EXPECT_NEAR(sd.norm, 2.0 * std::cos(std::numbers::pi / 8), 1e-12);
    EXPECT_NEAR(sd.norm, 1.8477590650, 1e-10);
    EXPECT_DOUBLE_EQ(sd.tau, 1.0 / (sd.norm * sd.norm));
    const auto g = build_graph("D5", "trivalent");
    EXPECT_DOUBLE_EQ(sd.weights[g.star], 1.0);
    // fork tips carry weight 1/β, so the level-1 fork projections have trace τ
    EXPECT_NEAR(sd.weights[g.index_of("f1")], 1.0 / sd.norm, 1e-12);
}

TEST(SpectralData, E6AgainstDenseEigensolve) {
    const auto g = build_graph("E6");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(g.adjacency_matrix());
    const double expected = oracle.eigenvalues()(5);
    EXPECT_NEAR(expected, 1.9318516526, 1e-10);
    EXPECT_NEAR(spectral_data(g).norm, expected, 1e-12);
    EXPECT_NEAR(expected, two_cos(12), 1e-12);
}

TEST(SpectralData, ResidualAndPositivityOnCatalog) {
    std::vector<std::string> names = ade_catalog(20);
    for (int n = 2; n <= 19; ++n)
        for (int k = 2; k <= n; ++k) names.push_back("T" + std::to_string(k) + "," + std::to_string(n));
    for (const auto& name : names) {
        const auto g = build_graph(name);
        const auto sd = spectral_data(g);
        EXPECT_LT(eigen_residual(g, sd.weights, sd.norm), 1e-9) << name;
        for (double w : sd.weights) EXPECT_GT(w, 0.0) << name;
        EXPECT_DOUBLE_EQ(sd.weights[g.star], 1.0);
    }
}

TEST(SpectralData, StarChangesNormalisationOnly) {
    const auto a = spectral_data(build_graph("D6"));
    const auto b = spectral_data(build_graph("D6", "trivalent"));
    EXPECT_NEAR(a.norm, b.norm, 1e-12);
    const int tri = build_graph("D6").index_of("c4");
    for (std::size_t v = 0; v < a.weights.size(); ++v)
        EXPECT_NEAR(a.weights[v] / a.weights[tri], b.weights[v], 1e-10);
}

TEST(TreeNorm, AgreesWithPowerIteration) {
    for (const auto& name : {"A1", "A7", "D4", "D9", "E6", "E7", "E8", "T3,9", "T4,12"}) {
        const auto g = build_graph(name);
        EXPECT_NEAR(tree_norm(g), spectral_data(g).norm, 1e-12) << name;
    }
    EXPECT_THROW(tree_norm(make_graph("square", {"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 0)),
                 std::invalid_argument);
}

TEST(TreeNorm, LongDChainsApproachTwo) {
    for (int n : {50, 400, 1000}) EXPECT_NEAR(t_graph_norm(2, n), two_cos(2 * n), 1e-12) << n;
}

TEST(CoxeterNumber, Examples) {
    EXPECT_EQ(coxeter_number(build_graph("A4")), 5);
    EXPECT_EQ(coxeter_number(build_graph("D5")), 8);
    EXPECT_EQ(coxeter_number(build_graph("E6")), 12);
    EXPECT_EQ(coxeter_number(build_graph("E7")), 18);
    EXPECT_EQ(coxeter_number(build_graph("E8")), 30);
    EXPECT_EQ(coxeter_number(build_graph("T2,4")), 8);
    EXPECT_EQ(coxeter_number(build_graph("T4,4")), 6);  // A5
    EXPECT_EQ(coxeter_number(build_graph("T3,6")), 18); // E7
    EXPECT_THROW(coxeter_number(build_graph("T3,8")), std::invalid_argument);
    EXPECT_THROW(coxeter_number(build_graph("T4,8")), std::invalid_argument);
}

TEST(CoxeterNumber, NormIsTwoCosPiOverH) {
    for (const auto& name : ade_catalog(20)) {
        const auto g = build_graph(name);
        EXPECT_NEAR(spectral_data(g).norm, two_cos(coxeter_number(g)), 1e-9) << name;
    }
}

TEST(ClassifyTau, Examples) {
    const double c8 = std::cos(std::numbers::pi / 8);
    const auto d5 = classify_tau(1.0 / (4 * c8 * c8), 2, 1e-9);
    ASSERT_TRUE(std::holds_alternative<Admissible>(d5));
    EXPECT_EQ(std::get<Admissible>(d5).n, 4);
    EXPECT_NEAR(1.0 / (4 * c8 * c8), 0.29289, 1e-5);

    const double c7 = std::cos(std::numbers::pi / 7);
    EXPECT_TRUE(std::holds_alternative<Inadmissible>(classify_tau(1.0 / (4 * c7 * c7), 2, 1e-9)));
    EXPECT_TRUE(std::holds_alternative<Unconstrained>(classify_tau(0.2, 2, 1e-9)));
    EXPECT_THROW(classify_tau(0.0, 2), std::invalid_argument);
    EXPECT_THROW(classify_tau(-1.0, 2), std::invalid_argument);
    EXPECT_THROW(classify_tau(0.3, 1), std::invalid_argument);
    EXPECT_EQ(describe(d5), "admissible(n=4)");
}

TEST(ClassifyTau, EvenCoxeterDichotomy) {
    for (int m = 3; m <= 16; ++m) {
        const double c = std::cos(std::numbers::pi / m);
        const auto r = classify_tau(1.0 / (4 * c * c), 2, 1e-9);
        if (m % 2 == 0) {
            ASSERT_TRUE(std::holds_alternative<Admissible>(r)) << m;
            EXPECT_EQ(2 * std::get<Admissible>(r).n, m);
        } else {
            EXPECT_TRUE(std::holds_alternative<Inadmissible>(r)) << m;
        }
    }
}

TEST(ClassifyTau, LargeNAndOtherBranches) {
    const double c = std::cos(std::numbers::pi / 1200);
    const auto r = classify_tau(1.0 / (4 * c * c), 2, 1e-12);
    ASSERT_TRUE(std::holds_alternative<Admissible>(r));
    EXPECT_EQ(std::get<Admissible>(r).n, 600);

    // k = 3: T_{3,5} = E6 with β = 2cos(π/12)
    const double e6 = two_cos(12);
    const auto e = classify_tau(1.0 / (e6 * e6), 3, 1e-9);
    ASSERT_TRUE(std::holds_alternative<Admissible>(e));
    EXPECT_EQ(std::get<Admissible>(e).n, 5);
    EXPECT_GT(1.0 / t_infinity_threshold(3), 4.0);
}

TEST(JonesIndices, Values) {
    const auto below = jones_admissible_indices(3.5);
    // direct evaluation of 4cos²(π/k), k = 3..8
    const std::vector<double> expected{1.0, 2.0, 2.6180339887498949, 3.0, 3.2469796037174667, 3.4142135623730949};
    ASSERT_EQ(below.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(below[i], expected[i], 1e-12);

    const auto one = jones_admissible_indices(1.5);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0], 1.0, 1e-15);

    const auto all = jones_admissible_indices(4.0, 200);
    EXPECT_EQ(all.size(), 198u);
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GT(all[i], all[i - 1]);
    EXPECT_LT(all.back(), 4.0);
    EXPECT_THROW(jones_admissible_indices(4.5), std::invalid_argument);
}

TEST(GraphDot, MarksStar) {
    const auto dot = graph_to_dot(build_graph("D5", "trivalent"));
    EXPECT_NE(dot.find("graph \"D5\""), std::string::npos);
    EXPECT_NE(dot.find("\"c3\" [parity=even, star=true"), std::string::npos);
    EXPECT_NE(dot.find("\"c3\" -- \"f1\""), std::string::npos);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '-') / 2, 4); // four edges
}
