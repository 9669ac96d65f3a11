#include <gtest/gtest.h>

#include <random>

#include "e8chi/catalog.hpp"
#include "e8chi/mis_exact.hpp"
#include "e8chi/mis_heuristic.hpp"

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

} // namespace

TEST(MisHeuristic, VerifyWitness)
{
    const auto k2 = Graph::complete(2);
    EXPECT_FALSE(verify_witness(k2, std::vector<int>{0, 1}));
    EXPECT_TRUE(verify_witness(k2, std::vector<int>{}));
    EXPECT_TRUE(verify_witness(k2, std::vector<int>{1}));
}

TEST(MisHeuristic, CompleteGraph)
{
    const auto r = heuristic_mis(Graph::complete(9));
    EXPECT_EQ(r.size, 1);
    EXPECT_FALSE(r.exact);
}

TEST(MisHeuristic, NeverExceedsExact)
{
    std::mt19937_64 rng(5);
    HeuristicConfig cfg;
    cfg.iterations = 300;
    cfg.restarts = 2;
    for (int i = 0; i < 40; ++i) {
        const auto g = random_graph(10 + static_cast<int>(rng() % 60), 0.05 + 0.1 * (i % 9), rng);
        cfg.rng_seed = static_cast<std::uint64_t>(i);
        const auto h = heuristic_mis(g, cfg);
        const auto e = max_independent_set(g);
        EXPECT_TRUE(verify_witness(g, h.witness));
        EXPECT_LE(h.size, e.size);
    }
}

TEST(MisHeuristic, FindsGossetOptimum)
{
    const auto g = cat().build("G240").graph();
    HeuristicConfig cfg;
    cfg.iterations = 20000;
    cfg.target = 16;
    const auto r = heuristic_mis(g, cfg);
    EXPECT_EQ(r.size, 16);
    EXPECT_TRUE(verify_witness(g, r.witness));
}

TEST(MisHeuristic, SeedDeterminism)
{
    const auto g = cat().build("G327").graph();
    HeuristicConfig cfg;
    cfg.iterations = 2000;
    cfg.rng_seed = 42;
    const auto a = heuristic_mis(g, cfg);
    const auto b = heuristic_mis(g, cfg);
    EXPECT_EQ(a.witness, b.witness);
    cfg.threads = 4;
    const auto c = heuristic_mis(g, cfg);
    EXPECT_EQ(a.witness, c.witness);
}

TEST(MisHeuristic, AnytimeImprovement)
{
    const auto g = cat().build("G720").graph();
    HeuristicConfig cfg;
    cfg.iterations = 3000;
    cfg.restarts = 1;
    int last = 0;
    bool monotone = true;
    cfg.on_improve = [&](std::uint64_t, int size) {
        monotone &= size > last;
        last = size;
    };
    const auto r = heuristic_mis(g, cfg);
    EXPECT_TRUE(monotone);
    EXPECT_EQ(last, r.size);
}

TEST(MisHeuristic, RejectsZeroIterations)
{
    HeuristicConfig cfg;
    cfg.iterations = 0;
    EXPECT_THROW(heuristic_mis(Graph(3), cfg), InvalidInput);
}
