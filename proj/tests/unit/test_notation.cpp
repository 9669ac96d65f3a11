#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "e8chi/notation.hpp"

using namespace e8chi;

namespace {

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

int minus_signs(const Point& p)
{
    return static_cast<int>(std::ranges::count_if(p.coords(), [](int c) { return c < 0; }));
}

// Random valid expression: distinct magnitudes per term so floating terms
// never overlap; some terms pinned to positions.
VertexSetExpr random_expr(std::mt19937_64& rng)
{
    static constexpr SignMode modes[] = {SignMode::plus, SignMode::minus, SignMode::plus_minus,
                                         SignMode::parity_even, SignMode::parity_odd};
    VertexSetExpr e;
    e.dimension = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<int> order(static_cast<std::size_t>(e.dimension));
    std::iota(order.begin(), order.end(), 1);
    std::ranges::shuffle(order, rng);
    auto next = order.begin();
    int left = e.dimension;
    int value = static_cast<int>(rng() % 2);
    while (left > 0) {
        Term t;
        t.repeat = std::uniform_int_distribution<int>(1, left)(rng);
        t.value = value;
        t.sign = value == 0 ? SignMode::none : modes[rng() % 5];
        value += 1 + static_cast<int>(rng() % 2);
        if (rng() % 3 == 0) {
            t.positions.assign(next, next + t.repeat);
            std::ranges::sort(t.positions);
        }
        next += t.repeat;
        left -= t.repeat;
        e.terms.push_back(std::move(t));
    }
    e.negate_union = rng() % 4 == 0;
    return e;
}

} // namespace

TEST(Notation, ParsePlusMinusPair)
{
    const auto e = parse("±2^2 0^6");
    ASSERT_EQ(e.terms.size(), 2u);
    EXPECT_EQ(e.terms[0], (Term{2, 2, SignMode::plus_minus, {}}));
    EXPECT_EQ(e.terms[1], (Term{0, 6, SignMode::none, {}}));
}

TEST(Notation, ParseOrigin)
{
    const auto e = parse("0^8");
    ASSERT_EQ(e.terms.size(), 1u);
    EXPECT_EQ(e.terms[0].value, 0);
    EXPECT_EQ(e.terms[0].repeat, 8);
}

TEST(Notation, ParseFixedParityTerm)
{
    const auto e = parse("+1_1 e1_368 0^4");
    ASSERT_EQ(e.terms.size(), 3u);
    EXPECT_EQ(e.terms[0], (Term{1, 1, SignMode::plus, {1}}));
    EXPECT_EQ(e.terms[1], (Term{1, 3, SignMode::parity_even, {3, 6, 8}}));
    EXPECT_EQ(e.terms[2], (Term{0, 4, SignMode::none, {}}));
    EXPECT_EQ(count(e), 4u);
}

TEST(Notation, AsciiAndOmittedSuperscript)
{
    EXPECT_EQ(parse("+-2^2 0"), parse("±2^2 0^6"));
    EXPECT_EQ(parse("±2 0^7"), parse("±2^1 0^7"));
    EXPECT_EQ(parse("+2_468 0"), parse("+2_468 0^5"));
}

TEST(Notation, ParseErrors)
{
    EXPECT_THROW(parse("2^3 0^4"), ParseError);
    EXPECT_THROW(parse("+1_1 +1_1 0^6"), ParseError);
    EXPECT_THROW(parse("e0^8"), ParseError);
    EXPECT_THROW(parse("bad"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("±2 0"), ParseError); // two omitted superscripts
    EXPECT_THROW(parse("e1^4 o1^4"), ParseError);
}

TEST(Notation, ExpandPaperSets)
{
    EXPECT_EQ(expand(parse("±2^2 0^6")).size(), 112u);
    const auto e18 = expand(parse("e1^8"));
    EXPECT_EQ(e18.size(), 128u);
    for (const auto& p : e18)
        EXPECT_EQ(minus_signs(p) % 2, 0);
    EXPECT_EQ(expand(parse("+2_468 0^5")), (std::vector<Point>{{0, 0, 0, 2, 0, 2, 0, 2}}));
    const auto o = expand(parse("+3_1 o1^7"));
    EXPECT_EQ(o.size(), 64u);
    for (const auto& p : o) {
        EXPECT_EQ(p[0], 3);
        EXPECT_EQ(minus_signs(p) % 2, 1);
    }
}

TEST(Notation, CountPaperSets)
{
    EXPECT_EQ(count(parse("±2^3 0^5")), 448u);
    EXPECT_EQ(count(parse("o1^8")), 128u);
    EXPECT_EQ(count(parse("0^8")), 1u);
    EXPECT_EQ(count(parse("±4^1 ±2^1 0^6")), 224u);
}

TEST(Notation, FormatExamples)
{
    EXPECT_EQ(format(VertexSetExpr{{{2, 1, SignMode::plus_minus, {}}, {0, 7, SignMode::none, {}}}, 8, false}),
              "±2^1 0^7");
    EXPECT_EQ(format(VertexSetExpr{{{3, 1, SignMode::plus, {1}}, {1, 7, SignMode::parity_odd, {}}}, 8, false}),
              "+3_1 o1^7");
    EXPECT_EQ(format(VertexSetExpr{{{0, 8, SignMode::none, {}}}, 8, false}), "0^8");
}

TEST(Notation, NegateUnionWrapper)
{
    const auto e = parse("±(+1_1 e1^3 0^4)");
    EXPECT_TRUE(e.negate_union);
    const auto pts = as_set(expand(e));
    EXPECT_EQ(pts.size(), count(e));
    for (const auto& p : pts)
        EXPECT_TRUE(pts.contains(p.negated()));
    EXPECT_EQ(parse(format(e)), e);
}

TEST(Notation, ParityPartition)
{
    const char* rest[] = {" 0^4", " +2^1 0^3", " 0_1 ±3^3"};
    for (const char* r : rest) {
        const auto ev = as_set(expand(parse(std::string("e1^4") + r)));
        const auto od = as_set(expand(parse(std::string("o1^4") + r)));
        const auto pm = as_set(expand(parse(std::string("±1^4") + r)));
        std::set<Point> both;
        std::ranges::set_intersection(ev, od, std::inserter(both, both.end()));
        EXPECT_TRUE(both.empty()) << r;
        std::set<Point> uni = ev;
        uni.insert(od.begin(), od.end());
        EXPECT_EQ(uni, pm) << r;
    }
}

TEST(Notation, NegationClosure)
{
    for (const char* text : {"±2^2 0^6", "±4^1 ±2^1 0^6", "±(o1^4 0^4)"}) {
        const auto pts = as_set(expand(parse(text)));
        for (const auto& p : pts)
            EXPECT_TRUE(pts.contains(p.negated())) << text;
    }
    // One uniform sign is not closed.
    const auto plus = as_set(expand(parse("+2^2 0^6")));
    EXPECT_FALSE(plus.contains(plus.begin()->negated()));
}

TEST(Notation, RandomExpressionsCountAndRoundTrip)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const auto e = random_expr(rng);
        ASSERT_NO_THROW(validate(e)) << format(e);
        const auto pts = expand(e);
        EXPECT_EQ(as_set(pts).size(), pts.size()) << format(e);
        EXPECT_EQ(count(e), pts.size()) << format(e);
        EXPECT_EQ(parse(format(e), e.dimension), e) << format(e);
        for (const auto& p : pts) {
            ASSERT_EQ(p.dimension(), e.dimension);
            EXPECT_TRUE(contains(e, p));
        }
    }
}

TEST(Notation, DimensionParameter)
{
    EXPECT_EQ(count(parse("±1^3", 3)), 8u);
    EXPECT_EQ(expand(parse("+2_2 0^1", 2)), (std::vector<Point>{{0, 2}}));
    EXPECT_THROW(parse("±1^3", 4), ParseError);
}
