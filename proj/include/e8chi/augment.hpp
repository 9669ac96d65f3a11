#pragma once

// Greedy vertex augmentation under an independence-number cap.
//
// Candidates are tried one at a time; a candidate c joins the working graph G
// when alpha(G + c) <= cap still holds. Because alpha(G) <= cap is an
// invariant of the loop, only independent sets through c can break the cap,
// so the check is alpha(G - N[c]) <= cap - 1 on the non-neighbourhood of c.

#include <algorithm>
#include <chrono>
#include <map>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "e8chi/coloring.hpp"
#include "e8chi/error.hpp"
#include "e8chi/geometry.hpp"
#include "e8chi/mis_exact.hpp"
#include "e8chi/mis_heuristic.hpp"
#include "e8chi/notation.hpp"

namespace e8chi {

enum class CandidateOrder { as_given, lexicographic, by_degree_to_current, random };
enum class Recheck { exact, heuristic_then_exact };
enum class Decision { accept, reject, unknown };

inline std::string to_string(CandidateOrder o)
{
    switch (o) {
    case CandidateOrder::as_given: return "as_given";
    case CandidateOrder::lexicographic: return "lexicographic";
    case CandidateOrder::by_degree_to_current: return "by_degree_to_current";
    default: return "random";
    }
}

inline std::string to_string(Decision d)
{
    switch (d) {
    case Decision::accept: return "accept";
    case Decision::reject: return "reject";
    default: return "unknown";
    }
}

struct AugmentPolicy {
    int alpha_cap = 1;
    CandidateOrder order = CandidateOrder::lexicographic;
    std::uint64_t seed = 1; // for CandidateOrder::random and the heuristic
    Recheck recheck = Recheck::exact;
    SearchBudget budget_per_step;
    bool verify_base = false;  // otherwise alpha(base) <= cap is trusted
    bool batch = true;         // try to accept the remaining pool in one go
    bool use_symmetry = true;  // reduce checks by isometries of the point set
    ExactOptions exact;
};

struct AuditRecord {
    int step = 0;
    Point point;
    Decision decision = Decision::unknown;
    std::vector<int> witness; // working-graph indices; size cap+1 on reject
    std::uint64_t nodes = 0;
    double elapsed_ms = 0;
    bool batch = false; // accepted as part of a batch check (cost on its first record)
};

struct AugmentResult {
    DistGraph graph;
    std::vector<Point> working_points; // base (sorted) then accepted candidates in order
    std::vector<AuditRecord> audit;
    bool exhaustive = true; // false when a step ran out of budget
};

/// Union of expansions minus exclusions and base points, sorted and deduplicated.
inline std::vector<Point> candidate_pool(const std::vector<VertexSetExpr>& exprs, const std::vector<Point>& exclude,
                                         const DistGraph* base = nullptr)
{
    std::set<Point> pool;
    for (const auto& e : exprs)
        for (auto& p : expand(e))
            pool.insert(std::move(p));
    for (const auto& p : exclude)
        pool.erase(p);
    if (base)
        for (const auto& p : base->points())
            pool.erase(p);
    return {pool.begin(), pool.end()};
}

struct Score {
    std::int64_t num = 0; // v / alpha in lowest terms
    std::int64_t den = 1;
    double ratio = 0;
    std::int64_t chi_lower = 0;
};

inline Score score(int v, int alpha)
{
    if (alpha < 1)
        throw InvalidInput("alpha must be positive");
    const std::int64_t g = std::gcd(std::int64_t{v}, std::int64_t{alpha});
    return {v / g, alpha / g, static_cast<double>(v) / alpha, chi_lower(v, alpha)};
}

inline Score score(const DistGraph& g, int alpha) { return score(g.size(), alpha); }

namespace detail {

inline std::vector<Point> order_candidates(std::vector<Point> pool, const AugmentPolicy& policy)
{
    switch (policy.order) {
    case CandidateOrder::lexicographic: std::ranges::sort(pool); break;
    case CandidateOrder::random: {
        std::ranges::sort(pool);
        std::mt19937_64 rng(policy.seed);
        std::ranges::shuffle(pool, rng);
        break;
    }
    default: break; // as_given; by_degree_to_current is chosen step by step
    }
    return pool;
}

} // namespace detail

namespace detail {

// G - N[c] with c kept as an isolated vertex, so alpha(H) <= cap says that
// no independent set through c exceeds the cap.
inline DistGraph closed_non_neighbourhood(const std::vector<Point>& pts, const Point& c, std::int64_t fsq)
{
    std::vector<Point> keep{c};
    for (const auto& p : pts)
        if (p != c && squared_distance(p, c) != fsq)
            keep.push_back(p);
    return build_graph(std::move(keep), fsq);
}

inline ExactOptions with_stabilizer(ExactOptions opt, const DistGraph& h, const Point& c, bool on)
{
    if (on) {
        const int idx[] = {h.index_of(c)};
        opt.symmetry = isometry_generators(h, idx);
    }
    return opt;
}

} // namespace detail

/// Greedy augmentation. Accepted candidates are appended to the working
/// point list. Whenever the remaining pool might fit as a whole it is tried
/// as one batch first: if alpha(G + rest) <= cap, sequential testing would
/// accept every remaining candidate anyway. With symmetry enabled the batch
/// needs one check per orbit of the remaining candidates.
inline AugmentResult augment(const DistGraph& base, std::vector<Point> pool, const AugmentPolicy& policy)
{
    if (policy.alpha_cap < 1)
        throw InvalidInput("alpha cap must be at least 1");
    if (policy.verify_base) {
        ExactOptions opt = policy.exact;
        if (policy.use_symmetry)
            opt.symmetry = isometry_generators(base);
        const auto check = alpha_at_most(base.graph(), policy.alpha_cap, policy.budget_per_step, opt);
        if (check.verdict == Verdict::no)
            throw InvalidInput("base graph already exceeds the alpha cap");
        if (check.verdict == Verdict::unknown)
            throw InvalidInput("could not verify the base graph within budget");
    }

    AugmentResult res;
    res.working_points = base.points();
    const std::int64_t fsq = base.forbidden_sq();
    std::vector<Point> todo = detail::order_candidates(std::move(pool), policy);
    {
        std::set<Point> seen(res.working_points.begin(), res.working_points.end());
        for (const auto& c : todo)
            if (!seen.insert(c).second)
                throw InvalidInput("candidate (" + c.to_string() + ") is already a vertex or repeated");
    }
    std::vector<bool> used(todo.size(), false);
    bool try_batch = policy.batch;

    auto remaining = [&] {
        std::vector<Point> rest;
        for (std::size_t i = 0; i < todo.size(); ++i)
            if (!used[i])
                rest.push_back(todo[i]);
        return rest;
    };

    for (std::size_t step = 0; step < todo.size(); ++step) {
        if (try_batch && policy.order != CandidateOrder::by_degree_to_current) {
            try_batch = false;
            const auto t0 = Clock::now();
            auto rest = remaining();
            std::vector<Point> all = res.working_points;
            all.insert(all.end(), rest.begin(), rest.end());
            const DistGraph f = build_graph(std::move(all), fsq);
            std::vector<Permutation> gens;
            if (policy.use_symmetry)
                gens = isometry_generators(f);
            const auto label = orbits(f.size(), gens);
            std::set<int> done;
            bool fits = true;
            std::uint64_t nodes = 0;
            for (const auto& r : rest) {
                if (!done.insert(label[static_cast<std::size_t>(f.index_of(r))]).second)
                    continue;
                const auto h = detail::closed_non_neighbourhood(f.points(), r, fsq);
                const auto check = alpha_at_most(h.graph(), policy.alpha_cap, policy.budget_per_step,
                                                 detail::with_stabilizer(policy.exact, h, r, policy.use_symmetry));
                nodes += check.nodes_explored;
                if (check.verdict != Verdict::yes) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
                for (std::size_t i = step; i < todo.size(); ++i) {
                    AuditRecord rec;
                    rec.step = static_cast<int>(i);
                    rec.point = rest[i - step];
                    rec.decision = Decision::accept;
                    rec.batch = true;
                    if (i == step) {
                        rec.nodes = nodes;
                        rec.elapsed_ms = ms;
                    }
                    res.audit.push_back(std::move(rec));
                    res.working_points.push_back(rest[i - step]);
                }
                break;
            }
        }

        std::size_t pick = step;
        if (policy.order == CandidateOrder::by_degree_to_current) {
            // Most neighbours in the current graph first; ties lexicographic.
            int best_deg = -1;
            for (std::size_t i = 0; i < todo.size(); ++i) {
                if (used[i])
                    continue;
                int d = 0;
                for (const auto& p : res.working_points)
                    d += squared_distance(p, todo[i]) == fsq;
                if (d > best_deg || (d == best_deg && todo[i] < todo[pick])) {
                    best_deg = d;
                    pick = i;
                }
            }
        } else {
            // Batch acceptance preserves the order, so the next unused is `step`.
            pick = step;
        }
        used[pick] = true;
        const Point& cand = todo[pick];

        const auto t0 = Clock::now();
        const auto h = detail::closed_non_neighbourhood(res.working_points, cand, fsq);
        AuditRecord rec;
        rec.step = static_cast<int>(step);
        rec.point = cand;
        std::vector<int> h_witness;
        bool decided = false;
        if (policy.recheck == Recheck::heuristic_then_exact) {
            HeuristicConfig hc;
            hc.rng_seed = policy.seed + step;
            hc.iterations = 2000;
            hc.restarts = 2;
            hc.target = policy.alpha_cap + 1;
            const auto found = heuristic_mis(h.graph(), hc);
            rec.nodes += found.nodes_explored;
            if (found.size > policy.alpha_cap) {
                h_witness = found.witness;
                rec.decision = Decision::reject;
                decided = true;
            }
        }
        if (!decided) {
            const auto check = alpha_at_most(h.graph(), policy.alpha_cap, policy.budget_per_step,
                                             detail::with_stabilizer(policy.exact, h, cand, policy.use_symmetry));
            rec.nodes += check.nodes_explored;
            rec.decision = check.verdict == Verdict::yes  ? Decision::accept
                         : check.verdict == Verdict::no   ? Decision::reject
                                                          : Decision::unknown;
            h_witness = check.witness;
        }
        if (rec.decision == Decision::reject) {
            // c is isolated in h, so it can always replace another member.
            const int hc_index = h.index_of(cand);
            std::erase(h_witness, hc_index);
            h_witness.resize(static_cast<std::size_t>(policy.alpha_cap));
            h_witness.push_back(hc_index);
            const int cand_index = static_cast<int>(res.working_points.size());
            std::map<Point, int> where;
            for (int i = 0; i < cand_index; ++i)
                where.emplace(res.working_points[static_cast<std::size_t>(i)], i);
            where.emplace(cand, cand_index);
            for (int v : h_witness)
                rec.witness.push_back(where.at(h.point(v)));
            std::ranges::sort(rec.witness);
        }
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        const Decision d = rec.decision;
        res.audit.push_back(std::move(rec));
        if (d == Decision::accept) {
            res.working_points.push_back(cand);
        } else if (d == Decision::reject) {
            try_batch = policy.batch;
        } else {
            res.exhaustive = false;
            break;
        }
    }
    res.graph = build_graph(res.working_points, fsq);
    return res;
}

// Audit log: one line per candidate,
//   step=<i> point=<x1,...,xn> decision=<accept|reject|unknown> witness_size=<s>
//   witness=<i1,i2,...|-> nodes=<n> elapsed_ms=<t> via=<single|batch>
// where witness indices refer to the working point list (base vertices in
// lexicographic order, then accepted candidates in acceptance order).

inline std::string format_audit_record(const AuditRecord& r)
{
    std::ostringstream out;
    out << "step=" << r.step << " point=";
    for (int i = 0; i < r.point.dimension(); ++i)
        out << (i ? "," : "") << r.point[i];
    out << " decision=" << to_string(r.decision) << " witness_size=" << r.witness.size() << " witness=";
    if (r.witness.empty())
        out << '-';
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        out << (i ? "," : "") << r.witness[i];
    out << " nodes=" << r.nodes << " elapsed_ms=" << static_cast<std::int64_t>(r.elapsed_ms)
        << " via=" << (r.batch ? "batch" : "single");
    return out.str();
}

inline std::string format_audit(const std::vector<AuditRecord>& audit, std::string_view header = {})
{
    std::string out;
    if (!header.empty())
        out += "# " + std::string(header) + "\n";
    for (const auto& r : audit)
        out += format_audit_record(r) + "\n";
    return out;
}

inline std::vector<AuditRecord> parse_audit(std::string_view text)
{
    std::vector<AuditRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto ints = [](const std::string& csv) {
        std::vector<int> v;
        if (csv == "-")
            return v;
        std::istringstream s(csv);
        std::string tok;
        while (std::getline(s, tok, ','))
            v.push_back(std::stoi(tok));
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        AuditRecord r;
        std::istringstream ls(line);
        std::string kv;
        int seen = 0;
        try {
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ParseError("");
                const auto key = kv.substr(0, eq);
                const auto val = kv.substr(eq + 1);
                if (key == "step") {
                    r.step = std::stoi(val);
                } else if (key == "point") {
                    r.point = Point(ints(val));
                } else if (key == "decision") {
                    r.decision = val == "accept" ? Decision::accept
                               : val == "reject" ? Decision::reject
                               : val == "unknown" ? Decision::unknown
                                                  : throw ParseError("");
                } else if (key == "witness") {
                    r.witness = ints(val);
                } else if (key == "nodes") {
                    r.nodes = std::stoull(val);
                } else if (key == "elapsed_ms") {
                    r.elapsed_ms = std::stod(val);
                } else if (key == "via") {
                    r.batch = val == "batch" ? true : val == "single" ? false : throw ParseError("");
                } else if (key != "witness_size") {
                    throw ParseError("");
                }
                ++seen;
            }
        } catch (const std::exception&) {
            throw ParseError("malformed audit record at line " + std::to_string(line_no));
        }
        if (seen == 0 || r.point.dimension() == 0)
            throw ParseError("malformed audit record at line " + std::to_string(line_no));
        out.push_back(std::move(r));
    }
    return out;
}

struct ReplayResult {
    bool identical = true;
    int first_mismatch = -1; // step index
    AugmentResult rerun;
};

/// Re-runs the logged candidates in logged order and compares decisions.
inline ReplayResult replay_audit(const DistGraph& base, const std::vector<AuditRecord>& log, AugmentPolicy policy)
{
    std::vector<Point> pool;
    for (const auto& r : log)
        pool.push_back(r.point);
    policy.order = CandidateOrder::as_given;
    ReplayResult out;
    out.rerun = augment(base, std::move(pool), policy);
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (i >= out.rerun.audit.size() || out.rerun.audit[i].decision != log[i].decision) {
            out.identical = false;
            out.first_mismatch = static_cast<int>(i);
            break;
        }
    }
    if (out.identical && out.rerun.audit.size() != log.size()) {
        out.identical = false;
        out.first_mismatch = static_cast<int>(log.size());
    }
    return out;
}

} // namespace e8chi
