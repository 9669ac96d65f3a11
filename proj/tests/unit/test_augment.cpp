#include <gtest/gtest.h>

#include <set>

#include "e8chi/augment.hpp"
#include "e8chi/catalog.hpp"

using namespace e8chi;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

// Naive reference: test every candidate on its own, no symmetry.
std::vector<Decision> sequential_decisions(const DistGraph& base, const std::vector<Point>& pool, int cap)
{
    std::vector<Point> pts = base.points();
    std::vector<Decision> out;
    for (const auto& c : pool) {
        pts.push_back(c);
        const int a = brute_force_mis(build_graph(pts).graph()).size;
        if (a <= cap) {
            out.push_back(Decision::accept);
        } else {
            out.push_back(Decision::reject);
            pts.pop_back();
        }
    }
    return out;
}

} // namespace

TEST(Augment, CandidatePool)
{
    EXPECT_EQ(candidate_pool({parse("±4^1 ±2^1 0^6")}, {}).size(), 224u);
    EXPECT_TRUE(candidate_pool({parse("o1^8")}, expand(parse("o1^8"))).empty());
    EXPECT_EQ(candidate_pool({parse("+3_1 o1^7")}, {}).size(), 64u);
    const auto g720 = cat().build("G720");
    EXPECT_EQ(candidate_pool({parse("+3_1 o1^7"), parse("e1^8")}, {}, &g720).size(), 64u);
}

TEST(Augment, Score)
{
    const auto s = score(843, 34);
    EXPECT_EQ(s.num, 843);
    EXPECT_EQ(s.den, 34);
    EXPECT_NEAR(s.ratio, 24.794, 5e-4);
    EXPECT_EQ(s.chi_lower, 25);
    const auto t = score(784, 34);
    EXPECT_EQ(t.num, 392);
    EXPECT_EQ(t.den, 17);
    EXPECT_NEAR(t.ratio, 23.059, 5e-4);
    EXPECT_EQ(t.chi_lower, 24);
    const auto u = score(16, 16);
    EXPECT_EQ(u.num, 1);
    EXPECT_EQ(u.ratio, 1.0);
    EXPECT_EQ(u.chi_lower, 1);
}

TEST(Augment, EmptyPool)
{
    const auto g = cat().build("G240");
    AugmentPolicy p;
    p.alpha_cap = 16;
    const auto r = augment(g, {}, p);
    EXPECT_EQ(r.graph.points(), g.points());
    EXPECT_TRUE(r.audit.empty());
    EXPECT_TRUE(r.exhaustive);
}

TEST(Augment, Triangle)
{
    const auto k2 = build_graph({Point{0, 0, 0, 0, 0, 0, 0, 0}, Point{4, 0, 0, 0, 0, 0, 0, 0}});
    ASSERT_EQ(k2.graph().edge_count(), 1);
    for (const bool batch : {false, true}) {
        AugmentPolicy p;
        p.alpha_cap = 1;
        p.order = CandidateOrder::as_given;
        p.batch = batch;
        p.verify_base = true;
        const auto r = augment(k2, {Point{2, 2, 2, 2, 0, 0, 0, 0}, Point{2, 0, 0, 0, 0, 0, 0, 0}}, p);
        ASSERT_EQ(r.audit.size(), 2u);
        EXPECT_EQ(r.audit[0].decision, Decision::accept);
        EXPECT_EQ(r.audit[1].decision, Decision::reject);
        EXPECT_EQ(r.graph.size(), 3);
        EXPECT_EQ(r.graph.graph().edge_count(), 3);
        // The rejecting witness is two non-adjacent working vertices including the candidate.
        EXPECT_EQ(r.audit[1].witness.size(), 2u);
    }
}

TEST(Augment, Errors)
{
    const auto g = build_graph({Point{0, 0}, Point{4, 0}});
    AugmentPolicy p;
    p.alpha_cap = 0;
    EXPECT_THROW(augment(g, {}, p), InvalidInput);
    p.alpha_cap = 1;
    EXPECT_THROW(augment(g, {Point{0, 0}}, p), InvalidInput);
    EXPECT_THROW(augment(g, {Point{1, 1}, Point{1, 1}}, p), InvalidInput);
    const auto e = build_graph({Point{0, 0}, Point{1, 0}});
    p.verify_base = true;
    EXPECT_THROW(augment(e, {}, p), InvalidInput);
}

TEST(Augment, MatchesNaiveLoop)
{
    // Small planar point sets: batch and symmetry must not change decisions.
    const auto base = build_graph({Point{0, 0}, Point{4, 0}, Point{0, 4}});
    std::vector<Point> pool;
    for (int x = -4; x <= 8; x += 2)
        for (int y = -4; y <= 8; y += 2)
            if (base.index_of(Point{x, y}) < 0)
                pool.push_back(Point{x, y});
    for (int cap = 2; cap <= 4; ++cap) {
        const auto want = sequential_decisions(base, pool, cap);
        for (const bool batch : {false, true})
            for (const bool sym : {false, true})
                for (const auto recheck : {Recheck::exact, Recheck::heuristic_then_exact}) {
                    AugmentPolicy p;
                    p.alpha_cap = cap;
                    p.order = CandidateOrder::as_given;
                    p.batch = batch;
                    p.use_symmetry = sym;
                    p.recheck = recheck;
                    const auto r = augment(base, pool, p);
                    ASSERT_EQ(r.audit.size(), pool.size());
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        EXPECT_EQ(r.audit[i].decision, want[i]) << "cap " << cap << " step " << i;
                    EXPECT_LE(brute_force_mis(r.graph.graph()).size, cap);
                    for (const auto& rec : r.audit)
                        if (rec.decision == Decision::reject) {
                            EXPECT_EQ(static_cast<int>(rec.witness.size()), cap + 1);
                        }
                }
    }
}

TEST(Augment, RejectWitnessIsIndependent)
{
    const auto base = build_graph({Point{0, 0}, Point{4, 0}});
    AugmentPolicy p;
    p.alpha_cap = 2;
    p.order = CandidateOrder::as_given;
    const std::vector<Point> pool{Point{0, 4}, Point{2, 0}, Point{4, 4}, Point{8, 0}};
    const auto r = augment(base, pool, p);
    std::vector<Point> working = base.points();
    for (const auto& rec : r.audit) {
        if (rec.decision == Decision::accept) {
            working.push_back(rec.point);
            continue;
        }
        auto with = working;
        with.push_back(rec.point);
        const auto g = build_graph(with);
        std::vector<int> idx;
        for (int w : rec.witness)
            idx.push_back(g.index_of(with[static_cast<std::size_t>(w)]));
        EXPECT_TRUE(is_independent(g.graph(), idx));
        EXPECT_NE(std::ranges::find(rec.witness, static_cast<int>(working.size())), rec.witness.end());
    }
}

TEST(Augment, OrdersAreDeterministic)
{
    const auto base = cat().build("G240");
    auto pool = candidate_pool({parse("+1_1 e1_368 0^4"), parse("+1_1 e1_458 0^4")}, {}, &base);
    for (const auto order : {CandidateOrder::lexicographic, CandidateOrder::random, CandidateOrder::by_degree_to_current}) {
        AugmentPolicy p;
        p.alpha_cap = 16;
        p.order = order;
        p.seed = 5;
        const auto a = augment(base, pool, p);
        const auto b = augment(base, pool, p);
        EXPECT_EQ(a.working_points, b.working_points) << to_string(order);
        EXPECT_EQ(a.audit.size(), pool.size());
        EXPECT_LE(max_independent_set(a.graph.graph()).size, 16);
    }
}

TEST(Augment, AuditRoundTrip)
{
    AuditRecord r;
    r.step = 3;
    r.point = Point{3, 1, -1, 1, 1, 1, 1, 1};
    r.decision = Decision::reject;
    r.witness = {1, 5, 9};
    r.nodes = 1234;
    r.elapsed_ms = 1.5;
    r.batch = false;
    AuditRecord a = r;
    a.step = 4;
    a.decision = Decision::accept;
    a.witness.clear();
    a.batch = true;
    const auto text = format_audit({r, a}, "header line");
    EXPECT_EQ(text.rfind("# header line\n", 0), 0u);
    const auto back = parse_audit(text);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].step, 3);
    EXPECT_EQ(back[0].point, r.point);
    EXPECT_EQ(back[0].decision, Decision::reject);
    EXPECT_EQ(back[0].witness, r.witness);
    EXPECT_EQ(back[0].nodes, 1234u);
    EXPECT_FALSE(back[0].batch);
    EXPECT_TRUE(back[1].witness.empty());
    EXPECT_TRUE(back[1].batch);
    EXPECT_EQ(format_audit(back, "header line"), text);
}

TEST(Augment, AuditParseErrors)
{
    EXPECT_THROW(parse_audit("step=1 point=1,2 decision=maybe\n"), ParseError);
    EXPECT_THROW(parse_audit("garbage\n"), ParseError);
    EXPECT_THROW(parse_audit("step=1 decision=accept\n"), ParseError);
    try {
        parse_audit("# ok\nstep=0 point=1,2 decision=accept\nstep=x point=1 decision=accept\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Augment, ReplayDetectsTampering)
{
    const auto base = build_graph({Point{0, 0}, Point{4, 0}});
    AugmentPolicy p;
    p.alpha_cap = 2;
    const auto r = augment(base, {Point{0, 4}, Point{2, 0}, Point{4, 4}}, p);
    auto log = parse_audit(format_audit(r.audit));
    EXPECT_TRUE(replay_audit(base, log, p).identical);
    log[1].decision = log[1].decision == Decision::accept ? Decision::reject : Decision::accept;
    const auto bad = replay_audit(base, log, p);
    EXPECT_FALSE(bad.identical);
    EXPECT_EQ(bad.first_mismatch, 1);
}

TEST(Augment, G240GrowsWithoutRaisingAlpha)
{
    const auto base = cat().build("G240");
    const auto pool = candidate_pool({parse("-1_1 o1^7")}, {}, &base);
    AugmentPolicy p;
    p.alpha_cap = 17;
    const auto r = augment(base, pool, p);
    EXPECT_TRUE(r.exhaustive);
    const auto a = max_independent_set(r.graph.graph());
    EXPECT_LE(a.size, 17);
    EXPECT_GE(a.size, 16);
    EXPECT_GT(r.graph.size(), 240);
}
