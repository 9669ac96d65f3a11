#include <gtest/gtest.h>

#include <random>

#include "e8chi/catalog.hpp"
#include "e8chi/mis_exact.hpp"

using namespace e8chi;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

Graph random_graph(int n, double density, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(density);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

Graph cycle(int n)
{
    Graph g(n);
    for (int v = 0; v < n; ++v)
        g.add_edge(v, (v + 1) % n);
    return g;
}

// Independent witness check straight from the adjacency predicate.
bool independent(const Graph& g, const std::vector<int>& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || g.adjacent(s[i], s[j]))
                return false;
    return true;
}

} // namespace

TEST(MisExact, SmallCatalogGraphs)
{
    const auto g240 = cat().build("G240");
    const auto r = max_independent_set(g240.graph());
    EXPECT_EQ(r.size, 16);
    EXPECT_TRUE(r.exact);
    EXPECT_FALSE(r.budget_hit);
    EXPECT_TRUE(independent(g240.graph(), r.witness));
    EXPECT_EQ(static_cast<int>(r.witness.size()), r.size);
}

TEST(MisExact, Trivial)
{
    EXPECT_EQ(max_independent_set(Graph(10)).size, 10);
    EXPECT_EQ(max_independent_set(Graph::complete(7)).size, 1);
    EXPECT_EQ(max_independent_set(cycle(5)).size, 2);
    EXPECT_EQ(max_independent_set(Graph(0)).size, 0);
}

TEST(MisExact, BruteForce)
{
    EXPECT_EQ(brute_force_mis(cycle(5)).size, 2);
    EXPECT_EQ(brute_force_mis(Graph(12)).size, 12);
    EXPECT_THROW(brute_force_mis(Graph(31)), InvalidInput);
}

TEST(MisExact, OracleEquivalence)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(rng() % 25);
        const double density = 0.1 * (1 + i % 9);
        const auto g = random_graph(n, density, rng);
        const auto want = brute_force_mis(g);
        ASSERT_TRUE(independent(g, want.witness));
        for (const auto order : {InitialOrder::degree, InitialOrder::min_width}) {
            for (const bool filter : {false, true}) {
                ExactOptions opt;
                opt.order = order;
                opt.filter = filter;
                opt.recolor = i % 2 == 0;
                const auto got = max_independent_set(g, {}, std::nullopt, opt);
                ASSERT_EQ(got.size, want.size) << "graph " << i;
                ASSERT_TRUE(independent(g, got.witness));
                ASSERT_TRUE(got.exact);
            }
        }
    }
}

TEST(MisExact, AlphaAtMost)
{
    const auto k5 = Graph::complete(5);
    EXPECT_EQ(alpha_at_most(k5, 1).verdict, Verdict::yes);
    const auto g = cat().build("G240").graph();
    EXPECT_EQ(alpha_at_most(g, 16).verdict, Verdict::yes);
    const auto no = alpha_at_most(g, 15);
    EXPECT_EQ(no.verdict, Verdict::no);
    EXPECT_EQ(no.witness.size(), 16u);
    EXPECT_TRUE(independent(g, no.witness));
    EXPECT_EQ(alpha_at_most(Graph(3), 0).verdict, Verdict::no);
    EXPECT_EQ(alpha_at_most(Graph(0), 0).verdict, Verdict::yes);
}

TEST(MisExact, AlphaAtMostRandom)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const auto g = random_graph(20, 0.1 * (1 + i % 9), rng);
        const int a = brute_force_mis(g).size;
        EXPECT_EQ(alpha_at_most(g, a).verdict, Verdict::yes);
        const auto no = alpha_at_most(g, a - 1);
        EXPECT_EQ(no.verdict, Verdict::no);
        EXPECT_TRUE(independent(g, no.witness));
        EXPECT_EQ(static_cast<int>(no.witness.size()), a);
    }
}

TEST(MisExact, BudgetExhaustion)
{
    const auto g = cat().build("G720").graph();
    const auto r = max_independent_set(g, SearchBudget::nodes(50));
    EXPECT_FALSE(r.exact);
    EXPECT_TRUE(r.budget_hit);
    EXPECT_TRUE(independent(g, r.witness));
    EXPECT_EQ(alpha_at_most(g, 33, SearchBudget::nodes(50)).verdict, Verdict::unknown);
}

TEST(MisExact, SeedSolution)
{
    const auto g = cycle(6);
    const auto r = max_independent_set(g, {}, std::vector<int>{0, 2, 4});
    EXPECT_EQ(r.size, 3);
    EXPECT_THROW(max_independent_set(g, {}, std::vector<int>{0, 1}), InvalidInput);
}

TEST(MisExact, Determinism)
{
    const auto g = cat().build("G240").graph();
    const auto a = max_independent_set(g);
    const auto b = max_independent_set(g);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.nodes_explored, b.nodes_explored);
    EXPECT_EQ(a.size, 16);
}

TEST(MisExact, SymmetryGivesSameAnswer)
{
    for (const char* name : {"G240", "G327"}) {
        const auto dg = cat().build(name);
        ExactOptions sym;
        sym.symmetry = isometry_generators(dg);
        const auto plain = max_independent_set(dg.graph());
        const auto fast = max_independent_set(dg.graph(), {}, std::nullopt, sym);
        EXPECT_EQ(plain.size, fast.size) << name;
        EXPECT_TRUE(fast.exact);
        EXPECT_TRUE(independent(dg.graph(), fast.witness));
        EXPECT_EQ(alpha_at_most(dg.graph(), fast.size - 1, {}, sym).verdict, Verdict::no);
        EXPECT_EQ(alpha_at_most(dg.graph(), fast.size, {}, sym).verdict, Verdict::yes);
    }
}

TEST(MisExact, SymmetryOnRandomCirculants)
{
    // Circulant graphs: the rotation is an automorphism.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const int n = 6 + static_cast<int>(rng() % 18);
        Graph g(n);
        for (int d = 1; d <= n / 2; ++d)
            if (rng() % 2)
                for (int v = 0; v < n; ++v)
                    g.add_edge(v, (v + d) % n);
        Permutation rot(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            rot[static_cast<std::size_t>(v)] = (v + 1) % n;
        ExactOptions opt;
        opt.symmetry = {rot};
        const auto got = max_independent_set(g, {}, std::nullopt, opt);
        EXPECT_EQ(got.size, brute_force_mis(g).size) << "n=" << n;
        EXPECT_TRUE(independent(g, got.witness));
    }
}

TEST(MisExact, RejectsNonAutomorphism)
{
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    ExactOptions opt;
    opt.symmetry = {Permutation{1, 0, 2}};
    EXPECT_THROW(max_independent_set(path, {}, std::nullopt, opt), InvalidInput);
}

TEST(MisExact, GreedyIsIndependent)
{
    const auto g = cat().build("G843").graph();
    const auto s = detail::greedy_independent(g);
    EXPECT_TRUE(independent(g, s));
    EXPECT_TRUE(is_independent(g, s));
    EXPECT_FALSE(is_independent(Graph::complete(2), std::vector<int>{0, 1}));
    EXPECT_THROW(is_independent(Graph(2), std::vector<int>{0, 5}), InvalidInput);
}
