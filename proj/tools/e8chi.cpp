// e8chi: command-line front end.
//
// Output is one "key=value" pair per line, then a single run record line
//   record command=<name> inputs=fnv1a64:<hex> elapsed_ms=<t> exit=<code>
// Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
// 3 budget exhausted.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "e8chi/augment.hpp"
#include "e8chi/catalog.hpp"
#include "e8chi/coloring.hpp"
#include "e8chi/geometry.hpp"
#include "e8chi/mis_exact.hpp"
#include "e8chi/mis_heuristic.hpp"
#include "e8chi/notation.hpp"

namespace {

using namespace e8chi;

enum Exit { ok = 0, mismatch = 1, usage = 2, budget = 3 };

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Usage("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Usage("cannot write " + path);
    out << text;
}

std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string join(const std::vector<int>& v)
{
    if (v.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

std::vector<Point> parse_points(std::string_view text)
{
    std::vector<Point> pts;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::vector<int> c;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                c.push_back(std::stoi(tok, &used));
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": bad coordinate '" + tok + "'");
            }
        }
        if (!c.empty())
            pts.emplace_back(std::move(c));
    }
    return pts;
}

std::string format_points(const std::vector<Point>& pts)
{
    std::string out;
    for (const auto& p : pts)
        out += p.to_string() + "\n";
    return out;
}

struct Context {
    std::string catalog_dir;
    int threads = 1;
    std::uint64_t digest = fnv1a64("");

    const Catalog& catalog()
    {
        if (!loaded) {
            if (catalog_dir.empty())
                cat = Catalog::builtin();
            else
                cat = Catalog::from_directory(catalog_dir);
            loaded = true;
        }
        return cat;
    }

    void absorb(std::string_view data) { digest = fnv1a64(data, digest); }

private:
    Catalog cat;
    bool loaded = false;
};

/// A graph named on the command line: a catalog entry, K<n> (complete),
/// E<n> (edgeless), a DIMACS file, or a file of coordinate rows.
struct Source {
    std::string label;
    Graph graph;
    std::optional<DistGraph> dist;
    const Recipe* recipe = nullptr;
};

Source load_source(Context& ctx, const std::string& spec)
{
    Source s;
    s.label = spec;
    ctx.absorb(spec);
    if (ctx.catalog().has(spec)) {
        s.recipe = &ctx.catalog().recipe(spec);
        s.dist = ctx.catalog().build(spec);
        s.graph = s.dist->graph();
        return s;
    }
    if (spec.size() > 1 && (spec[0] == 'K' || spec[0] == 'E') &&
        spec.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int n = std::stoi(spec.substr(1));
        s.graph = spec[0] == 'K' ? Graph::complete(n) : Graph(n);
        return s;
    }
    if (!std::filesystem::exists(spec))
        throw InvalidInput("unknown graph '" + spec + "' (not in the catalog and no such file)");
    const std::string text = read_file(spec);
    ctx.absorb(text);
    std::istringstream in(text);
    std::string first;
    while (std::getline(in, first)) {
        const auto pos = first.find_first_not_of(" \t\r");
        if (pos == std::string::npos || first[pos] == '#')
            continue;
        first = first.substr(pos);
        break;
    }
    if (first.starts_with("p ") || first.starts_with("c ") || first == "c" || first.starts_with("e ")) {
        s.graph = import_dimacs(text);
    } else {
        s.dist = build_graph(parse_points(text));
        s.graph = s.dist->graph();
    }
    return s;
}

SearchBudget make_budget(std::optional<std::int64_t> ms, std::optional<std::uint64_t> nodes)
{
    SearchBudget b;
    if (ms)
        b.max_time = std::chrono::milliseconds(*ms);
    if (nodes)
        b.max_nodes = *nodes;
    return b;
}

ExactOptions exact_options(const Source& s, bool symmetry, const std::string& order)
{
    ExactOptions o;
    o.order = order == "min_width" ? InitialOrder::min_width : InitialOrder::degree;
    if (symmetry && s.dist)
        o.symmetry = isometry_generators(*s.dist);
    return o;
}

void print_stats(const GraphStats& st)
{
    std::cout << "v=" << st.v << "\ne=" << st.e << "\ndeg_min=" << st.deg_min << "\ndeg_max=" << st.deg_max << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Forbidden-distance graphs in R^8: catalog, independence number, colouring bounds"};
    app.require_subcommand(1);
    Context ctx;
    app.add_option("--catalog-dir", ctx.catalog_dir, "Read *.recipe files from this directory instead of the built-in set");
    app.add_option("--threads", ctx.threads, "Worker cap for parallel heuristic restarts")->check(CLI::PositiveNumber);

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "Expand a shorthand expression");
    std::string expr_text;
    int dim = 8;
    bool list = false;
    bool count_only = false;
    expand_cmd->add_option("expr", expr_text, "Shorthand, e.g. \"+3_1 o1^7\"")->required();
    expand_cmd->add_option("--dim", dim, "Dimension")->check(CLI::Range(1, 30));
    auto* list_flag = expand_cmd->add_flag("--list", list, "Print the points");
    expand_cmd->add_flag("--count", count_only, "Print the count (default)")->excludes(list_flag);

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "Named record graphs");
    std::string catalog_action;
    std::string catalog_name = "all";
    std::string export_format = "dimacs";
    std::string out_path;
    catalog_cmd->add_option("action", catalog_action, "list | verify | build | export")
        ->required()
        ->check(CLI::IsMember({"list", "verify", "build", "export"}));
    catalog_cmd->add_option("name", catalog_name, "Graph name (verify also accepts 'all')");
    catalog_cmd->add_option("--format", export_format, "Export format")->check(CLI::IsMember({"dimacs", "points"}));
    catalog_cmd->add_option("-o,--output", out_path, "Write the export here instead of stdout");

    // alpha
    auto* alpha_cmd = app.add_subcommand("alpha", "Independence number");
    std::string graph_spec;
    bool use_exact = false;
    bool use_heuristic = false;
    std::optional<std::int64_t> budget_ms;
    std::optional<std::uint64_t> budget_nodes;
    std::uint64_t seed = 1;
    std::uint64_t iterations = 200000;
    int restarts = 4;
    bool no_symmetry = false;
    std::string order = "degree";
    std::optional<int> at_most;
    alpha_cmd->add_option("graph", graph_spec, "Catalog name, K<n>, E<n>, DIMACS file or points file")->required();
    auto* exact_flag = alpha_cmd->add_flag("--exact", use_exact, "Exact branch and bound (default)");
    alpha_cmd->add_flag("--heuristic", use_heuristic, "Iterated local search")->excludes(exact_flag);
    alpha_cmd->add_option("--budget", budget_ms, "Time budget in milliseconds");
    alpha_cmd->add_option("--budget-nodes", budget_nodes, "Search-node budget (exact)");
    alpha_cmd->add_option("--seed", seed, "Heuristic seed");
    alpha_cmd->add_option("--iterations", iterations, "Heuristic rounds per restart")->check(CLI::PositiveNumber);
    alpha_cmd->add_option("--restarts", restarts, "Heuristic restarts")->check(CLI::PositiveNumber);
    alpha_cmd->add_flag("--no-symmetry", no_symmetry, "Do not use isometries of the point set");
    alpha_cmd->add_option("--order", order, "Initial vertex order")->check(CLI::IsMember({"degree", "min_width"}));
    alpha_cmd->add_option("--at-most", at_most, "Decide alpha <= K instead of computing alpha")->check(CLI::NonNegativeNumber);

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "Pigeonhole bound chi >= ceil(v/alpha)");
    std::string alpha_arg = "auto";
    std::optional<int> chi_upper_k;
    bound_cmd->add_option("graph", graph_spec, "Graph")->required();
    bound_cmd->add_option("--alpha", alpha_arg, "Known alpha, or 'auto' to compute it");
    bound_cmd->add_option("--budget", budget_ms, "Time budget for alpha=auto, milliseconds");
    bound_cmd->add_flag("--no-symmetry", no_symmetry, "Do not use isometries of the point set");
    bound_cmd->add_option("--upper", chi_upper_k, "Also search for a colouring with this many colours");
    bound_cmd->add_option("--seed", seed, "Seed for the colouring search");

    // color
    auto* color_cmd = app.add_subcommand("color", "Colourings and CNF export");
    std::optional<int> k_colors;
    std::string cnf_path;
    bool search = false;
    bool run_dsatur = false;
    std::string model_path;
    std::string coloring_out;
    color_cmd->add_option("graph", graph_spec, "Graph")->required();
    color_cmd->add_option("--k", k_colors, "Number of colours")->check(CLI::PositiveNumber);
    color_cmd->add_option("--encode-cnf", cnf_path, "Write the k-colouring CNF (DIMACS) here");
    color_cmd->add_flag("--search", search, "Local search for a proper k-colouring");
    color_cmd->add_flag("--dsatur", run_dsatur, "Print the DSATUR colour count");
    color_cmd->add_option("--decode", model_path, "Decode a SAT model for the k-colouring CNF");
    color_cmd->add_option("--budget", budget_ms, "Search time budget, milliseconds");
    color_cmd->add_option("--budget-nodes", budget_nodes, "Search iteration budget");
    color_cmd->add_option("--seed", seed, "Search seed");
    color_cmd->add_option("--write-coloring", coloring_out, "Write 'vertex colour' lines here");

    // augment
    auto* augment_cmd = app.add_subcommand("augment", "Grow a graph under an independence-number cap");
    std::vector<std::string> pool_exprs;
    std::string pool_file;
    std::string exclude_file;
    int cap = 0;
    std::string policy_name = "lexicographic";
    std::string recheck_name = "exact";
    std::string audit_path;
    std::string replay_path;
    std::string points_out;
    bool verify_base = false;
    bool no_batch = false;
    augment_cmd->add_option("base", graph_spec, "Base graph with coordinates (catalog name or points file)")->required();
    augment_cmd->add_option("--pool-expr", pool_exprs, "Candidate expression (repeatable)");
    augment_cmd->add_option("--pool-file", pool_file, "Candidate points file");
    augment_cmd->add_option("--exclude-file", exclude_file, "Points never to add");
    augment_cmd->add_option("--cap", cap, "Independence-number cap")->required()->check(CLI::PositiveNumber);
    augment_cmd->add_option("--policy", policy_name, "Candidate order")
        ->check(CLI::IsMember({"lexicographic", "random", "by_degree_to_current", "as_given"}));
    augment_cmd->add_option("--recheck", recheck_name, "Decision procedure")
        ->check(CLI::IsMember({"exact", "heuristic_then_exact"}));
    augment_cmd->add_option("--seed", seed, "Seed for random order and the heuristic");
    augment_cmd->add_option("--budget", budget_ms, "Per-step time budget, milliseconds");
    augment_cmd->add_option("--budget-nodes", budget_nodes, "Per-step node budget");
    augment_cmd->add_option("--audit", audit_path, "Write the audit log here");
    augment_cmd->add_option("--replay", replay_path, "Re-run an audit log and compare decisions");
    augment_cmd->add_option("--output", points_out, "Write the grown point set here");
    augment_cmd->add_flag("--verify-base", verify_base, "Prove alpha(base) <= cap first");
    augment_cmd->add_flag("--no-symmetry", no_symmetry, "Do not use isometries of the point set");
    augment_cmd->add_flag("--no-batch", no_batch, "Test every candidate on its own");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force independence number (at most 30 vertices)");
    oracle_cmd->add_option("graph", graph_spec, "Graph")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : Exit::usage;
    }

    const auto t0 = Clock::now();
    std::string command;
    int code = Exit::ok;
    for (int i = 1; i < argc; ++i)
        ctx.absorb(argv[i]);

    try {
        if (*expand_cmd) {
            command = "expand";
            const auto expr = parse(expr_text, dim);
            if (list) {
                for (const auto& p : expand(expr))
                    std::cout << p.to_string() << '\n';
            } else {
                std::cout << "expr=" << format(expr) << "\ncount=" << count(expr) << '\n';
            }
        } else if (*catalog_cmd) {
            command = "catalog " + catalog_action;
            const auto& cat = ctx.catalog();
            if (catalog_action == "list") {
                for (const auto& n : cat.names()) {
                    const auto& r = cat.recipe(n);
                    std::cout << "graph=" << n << " v=" << r.expected.v
                              << " status=" << (r.reconstructible ? "reconstructible" : "withheld") << '\n';
                }
            } else if (catalog_action == "verify") {
                std::vector<std::string> names;
                if (catalog_name == "all") {
                    for (const auto& n : cat.names())
                        if (cat.recipe(n).reconstructible)
                            names.push_back(n);
                } else {
                    names.push_back(catalog_name);
                }
                for (const auto& n : names) {
                    const auto rep = cat.verify(n);
                    for (const auto& f : rep.fields)
                        std::cout << "graph=" << n << " field=\"" << f.name << "\" expected=" << f.expected
                                  << " actual=" << f.actual << " status=" << (f.match() ? "match" : "mismatch")
                                  << '\n';
                    std::cout << "graph=" << n << " verdict=" << (rep.all_match() ? "match" : "mismatch") << '\n';
                    if (!rep.all_match())
                        code = Exit::mismatch;
                }
            } else if (catalog_action == "build") {
                const auto g = cat.build(catalog_name);
                std::cout << "graph=" << catalog_name << '\n';
                print_stats(stats(g));
                for (const auto& [label, n] : census(g.points()))
                    if (n > 0)
                        std::cout << "class \"" << label << "\"=" << n << '\n';
            } else {
                const auto g = cat.build(catalog_name);
                const std::string text = export_format == "dimacs"
                                             ? export_dimacs(g.graph(), catalog_name + ", vertices in lexicographic order")
                                             : format_points(g.points());
                if (out_path.empty()) {
                    std::cout << text;
                } else {
                    write_file(out_path, text);
                    std::cout << "graph=" << catalog_name << "\nformat=" << export_format << "\nwritten=" << out_path << '\n';
                }
            }
        } else if (*alpha_cmd) {
            command = "alpha";
            const auto src = load_source(ctx, graph_spec);
            std::cout << "graph=" << src.label << "\nv=" << src.graph.size() << '\n';
            const auto budget = make_budget(budget_ms, budget_nodes);
            if (at_most) {
                const auto check = alpha_at_most(src.graph, *at_most, budget, exact_options(src, !no_symmetry, order));
                std::cout << "k=" << *at_most << "\nverdict=" << to_string(check.verdict)
                          << "\nwitness=" << join(check.witness) << "\nnodes=" << check.nodes_explored
                          << "\nsolver_ms=" << static_cast<std::int64_t>(check.elapsed.count() * 1000) << '\n';
                if (check.verdict == Verdict::unknown)
                    code = Exit::budget;
            } else {
                MisResult r;
                if (use_heuristic) {
                    HeuristicConfig hc;
                    hc.rng_seed = seed;
                    hc.iterations = iterations;
                    hc.restarts = restarts;
                    hc.threads = ctx.threads;
                    if (budget_ms)
                        hc.max_time = std::chrono::milliseconds(*budget_ms);
                    r = heuristic_mis(src.graph, hc);
                } else {
                    r = max_independent_set(src.graph, budget, std::nullopt, exact_options(src, !no_symmetry, order));
                }
                if (!verify_witness(src.graph, r.witness))
                    throw Error("internal error: witness is not independent");
                std::cout << "solver=" << (use_heuristic ? "heuristic" : "exact") << "\nalpha=" << r.size
                          << "\nexact=" << (r.exact ? "true" : "false") << "\nwitness=" << join(r.witness)
                          << "\nnodes=" << r.nodes_explored
                          << "\nsolver_ms=" << static_cast<std::int64_t>(r.elapsed.count() * 1000) << '\n';
                if (!use_heuristic && r.budget_hit)
                    code = Exit::budget;
            }
        } else if (*bound_cmd) {
            command = "bound";
            const auto src = load_source(ctx, graph_spec);
            if (src.graph.size() == 0)
                throw InvalidInput("graph has no vertices");
            int alpha = 0;
            bool exact = true;
            if (alpha_arg == "auto") {
                const auto r = max_independent_set(src.graph, make_budget(budget_ms, std::nullopt), std::nullopt,
                                                   exact_options(src, !no_symmetry, "degree"));
                alpha = r.size;
                exact = r.exact;
            } else {
                try {
                    std::size_t used = 0;
                    alpha = std::stoi(alpha_arg, &used);
                    if (used != alpha_arg.size())
                        throw std::invalid_argument(alpha_arg);
                } catch (const std::exception&) {
                    throw Usage("--alpha expects an integer or 'auto'");
                }
            }
            std::optional<int> upper;
            if (chi_upper_k) {
                if (auto c = improve_coloring(src.graph, *chi_upper_k, SearchBudget::time(std::chrono::milliseconds(
                                                                           budget_ms.value_or(60000))),
                                              seed);
                    c && is_proper(src.graph, *c))
                    upper = c->colors_used;
            } else {
                upper = dsatur(src.graph).colors_used;
            }
            const auto rep = make_bound_report(src.graph.size(), alpha, exact, upper);
            std::cout << "graph=" << src.label << "\nv=" << rep.v << "\nalpha=" << rep.alpha
                      << "\nalpha_source=" << (alpha_arg == "auto" ? (exact ? "exact" : "lower_bound") : "given")
                      << "\nratio=" << std::to_string(static_cast<double>(rep.v) / rep.alpha)
                      << "\nchi_lower=" << rep.chi_lower;
            if (alpha_arg == "auto" && !exact)
                std::cout << "\nchi_lower_proven=false";
            std::cout << "\nchi_upper=" << (rep.chi_upper ? std::to_string(*rep.chi_upper) : "-") << '\n';
            if (alpha_arg == "auto" && !exact)
                code = Exit::budget;
        } else if (*color_cmd) {
            command = "color";
            const auto src = load_source(ctx, graph_spec);
            std::cout << "graph=" << src.label << "\nv=" << src.graph.size() << '\n';
            bool did = false;
            if (!cnf_path.empty()) {
                if (!k_colors)
                    throw Usage("--encode-cnf needs --k");
                const auto cnf = encode_kcoloring(src.graph, *k_colors);
                write_file(cnf_path, cnf.to_dimacs(src.label + " " + std::to_string(*k_colors) +
                                                   "-colouring, x(v,c) = v*k + c + 1"));
                std::cout << "cnf=" << cnf_path << "\nvariables=" << cnf.variables << "\nclauses=" << cnf.clauses.size()
                          << '\n';
                did = true;
            }
            std::optional<Coloring> found;
            if (!model_path.empty()) {
                if (!k_colors)
                    throw Usage("--decode needs --k");
                const auto model = parse_sat_model(read_file(model_path), src.graph.size() * *k_colors);
                found = decode_assignment(src.graph, *k_colors, model);
                did = true;
            }
            if (search) {
                if (!k_colors)
                    throw Usage("--search needs --k");
                SearchBudget b = make_budget(budget_ms, budget_nodes);
                if (b.is_unlimited())
                    b = SearchBudget::time(std::chrono::milliseconds(60000));
                found = improve_coloring(src.graph, *k_colors, b, seed);
                std::cout << "search=" << (found ? "found" : "not_found") << '\n';
                if (!found)
                    code = Exit::budget;
                did = true;
            }
            if (run_dsatur || !did) {
                found = dsatur(src.graph);
                std::cout << "method=dsatur\n";
            }
            if (found) {
                if (!is_proper(src.graph, *found))
                    throw Error("internal error: colouring is not proper");
                std::cout << "colors_used=" << found->colors_used << "\nvalid=true\n";
                if (!coloring_out.empty()) {
                    std::string text;
                    for (std::size_t v = 0; v < found->assignment.size(); ++v)
                        text += std::to_string(v) + " " + std::to_string(found->assignment[v]) + "\n";
                    write_file(coloring_out, text);
                }
            }
        } else if (*augment_cmd) {
            command = replay_path.empty() ? "augment" : "augment replay";
            const auto src = load_source(ctx, graph_spec);
            if (!src.dist)
                throw InvalidInput("augment needs a graph with coordinates");
            AugmentPolicy policy;
            policy.alpha_cap = cap;
            policy.order = policy_name == "random"                 ? CandidateOrder::random
                         : policy_name == "by_degree_to_current"   ? CandidateOrder::by_degree_to_current
                         : policy_name == "as_given"               ? CandidateOrder::as_given
                                                                   : CandidateOrder::lexicographic;
            policy.seed = seed;
            policy.recheck = recheck_name == "exact" ? Recheck::exact : Recheck::heuristic_then_exact;
            policy.budget_per_step = make_budget(budget_ms, budget_nodes);
            policy.verify_base = verify_base;
            policy.use_symmetry = !no_symmetry;
            policy.batch = !no_batch;

            auto report = [&](const AugmentResult& res) {
                int accepted = 0;
                int rejected = 0;
                for (const auto& r : res.audit)
                    (r.decision == Decision::accept ? accepted : rejected) += r.decision != Decision::unknown;
                std::cout << "base_v=" << src.dist->size() << "\ncandidates_tested=" << res.audit.size()
                          << "\naccepted=" << accepted << "\nrejected=" << rejected << "\nv=" << res.graph.size()
                          << "\ne=" << res.graph.graph().edge_count()
                          << "\nexhaustive=" << (res.exhaustive ? "true" : "false") << '\n';
                if (!points_out.empty())
                    write_file(points_out, format_points(res.graph.points()));
                if (!res.exhaustive)
                    code = Exit::budget;
            };

            if (!replay_path.empty()) {
                const std::string log_text = read_file(replay_path);
                ctx.absorb(log_text);
                const auto rep = replay_audit(*src.dist, parse_audit(log_text), policy);
                report(rep.rerun);
                std::cout << "replay=" << (rep.identical ? "identical" : "different") << '\n';
                if (!rep.identical) {
                    std::cout << "first_mismatch=" << rep.first_mismatch << '\n';
                    code = Exit::mismatch;
                }
            } else {
                std::vector<VertexSetExpr> exprs;
                for (const auto& e : pool_exprs)
                    exprs.push_back(parse(e));
                std::vector<Point> exclude;
                if (!exclude_file.empty()) {
                    const std::string text = read_file(exclude_file);
                    ctx.absorb(text);
                    exclude = parse_points(text);
                }
                auto pool = candidate_pool(exprs, exclude, &*src.dist);
                if (!pool_file.empty()) {
                    const std::string text = read_file(pool_file);
                    ctx.absorb(text);
                    std::set<Point> drop(exclude.begin(), exclude.end());
                    for (auto& p : parse_points(text))
                        if (!drop.contains(p) && src.dist->index_of(p) < 0 && std::ranges::find(pool, p) == pool.end())
                            pool.push_back(std::move(p));
                }
                const auto res = augment(*src.dist, std::move(pool), policy);
                report(res);
                if (!audit_path.empty()) {
                    std::ostringstream hdr;
                    hdr << "augment base=" << src.label << " cap=" << cap << " policy=" << policy_name
                        << " recheck=" << recheck_name << " seed=" << seed;
                    write_file(audit_path, format_audit(res.audit, hdr.str()));
                    std::cout << "audit=" << audit_path << '\n';
                }
            }
        } else if (*oracle_cmd) {
            command = "oracle";
            const auto src = load_source(ctx, graph_spec);
            const auto r = brute_force_mis(src.graph);
            std::cout << "graph=" << src.label << "\nv=" << src.graph.size() << "\nalpha=" << r.size
                      << "\nwitness=" << join(r.witness) << '\n';
        }
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = Exit::usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        code = Exit::usage;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = Exit::usage;
    }

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    std::cout << "record command=\"" << command << "\" inputs=fnv1a64:" << hex64(ctx.digest) << " elapsed_ms=" << ms
              << " exit=" << code << '\n';
    return code;
}
