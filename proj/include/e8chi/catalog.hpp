#pragma once

// Named record graphs as recipes.
//
// Recipe files are line oriented; '#' starts a comment.
//
//   name: G818
//   base: G784                     start from another recipe's point set
//   status: withheld               parameters only, cannot be assembled
//   expr: +1_1 e1_368 0^4          add the expansion of a shorthand expression
//   points:                        add the rows that follow
//   points: ±                      add the rows that follow and their negations
//   exclude:                       remove the rows that follow
//   expect: v=818 e=102019 deg_min=160 deg_max=441 alpha=34 ...
//   class: o1^4 0^4 = 22           expected size of a vertex class
//   checksum: fnv1a64:<hex>        over every row, formatted "x1 x2 ... xn\n"
//
// A wrong checksum, a duplicate or a missing excluded point is an error at
// load or assembly time, so transcription mistakes cannot go unnoticed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "e8chi/error.hpp"
#include "e8chi/geometry.hpp"
#include "e8chi/notation.hpp"

#if __has_include("e8chi/catalog_data.hpp")
#include "e8chi/catalog_data.hpp"
#define E8CHI_HAS_BUILTIN_CATALOG 1
#endif

namespace e8chi {

enum class AlphaExactness { published_exact, unspecified };

struct ExpectedStats {
    int v = 0;
    std::int64_t e = 0;
    int deg_min = 0;
    int deg_max = 0;
    std::optional<int> alpha;
    std::optional<int> chi_lower;
    std::optional<int> chi_upper;
    AlphaExactness alpha_exactness = AlphaExactness::unspecified;
};

struct Recipe {
    std::string name;
    std::optional<std::string> base;
    bool reconstructible = true;
    std::vector<VertexSetExpr> include_exprs;
    std::vector<Point> include_points;
    std::vector<Point> negated_points; // added together with their negations
    std::vector<Point> exclude_points;
    ExpectedStats expected;
    std::vector<std::pair<std::string, int>> census; // nonzero expected class sizes
};

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull)
{
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t rows_checksum(const std::vector<Point>& rows)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& p : rows)
        h = fnv1a64(p.to_string() + "\n", h);
    return h;
}

// Vertex classes in the order they are reported.
inline const std::vector<std::string>& class_labels()
{
    static const std::vector<std::string> labels = {
        "±2^1 0^7", "±2^3 0^5",  "±4^1 ±2^1 0^6", "e1^8",     "o1^8",
        "+3_1 o1^7", "+3_1 e1^7", "+5_1 e1^7",     "e1^4 0^4", "o1^4 0^4",
    };
    return labels;
}

inline std::string classify(const Point& p)
{
    static const std::vector<VertexSetExpr> exprs = [] {
        std::vector<VertexSetExpr> out;
        for (const auto& l : class_labels())
            out.push_back(parse(l));
        return out;
    }();
    for (std::size_t i = 0; i < exprs.size(); ++i)
        if (contains(exprs[i], p))
            return class_labels()[i];
    throw InvalidInput("unclassifiable point (" + p.to_string() + ")");
}

inline std::map<std::string, int> census(const std::vector<Point>& points)
{
    std::map<std::string, int> out;
    for (const auto& l : class_labels())
        out[l] = 0;
    for (const auto& p : points)
        ++out[classify(p)];
    return out;
}

namespace detail {

inline std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

inline ExpectedStats parse_expect(const std::string& body, const std::string& where)
{
    ExpectedStats e;
    std::istringstream in(body);
    std::string kv;
    bool have_v = false;
    while (in >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError("malformed expect entry '" + kv + "' at " + where);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "alpha_exactness") {
            if (val == "published_exact")
                e.alpha_exactness = AlphaExactness::published_exact;
            else if (val == "unspecified")
                e.alpha_exactness = AlphaExactness::unspecified;
            else
                throw ParseError("unknown alpha_exactness '" + val + "' at " + where);
            continue;
        }
        long long x = 0;
        try {
            std::size_t used = 0;
            x = std::stoll(val, &used);
            if (used != val.size())
                throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw ParseError("malformed number in '" + kv + "' at " + where);
        }
        if (key == "v") {
            e.v = static_cast<int>(x);
            have_v = true;
        } else if (key == "e") {
            e.e = x;
        } else if (key == "deg_min") {
            e.deg_min = static_cast<int>(x);
        } else if (key == "deg_max") {
            e.deg_max = static_cast<int>(x);
        } else if (key == "alpha") {
            e.alpha = static_cast<int>(x);
        } else if (key == "chi_lower") {
            e.chi_lower = static_cast<int>(x);
        } else if (key == "chi_upper") {
            e.chi_upper = static_cast<int>(x);
        } else {
            throw ParseError("unknown expect key '" + key + "' at " + where);
        }
    }
    if (!have_v)
        throw ParseError("expect line without v= at " + where);
    if (e.alpha && e.chi_lower && *e.chi_lower != (e.v + *e.alpha - 1) / *e.alpha)
        throw ParseError("chi_lower inconsistent with v and alpha at " + where);
    return e;
}

} // namespace detail

inline Recipe parse_recipe(std::string_view text, int dimension = 8)
{
    Recipe r;
    enum class Rows { none, points, negated, exclude } rows = Rows::none;
    std::vector<Point> all_rows;
    std::optional<std::uint64_t> checksum;
    bool have_expect = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        std::string line = detail::trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            if (rows == Rows::none)
                throw ParseError("point row outside a points/exclude section at " + where);
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
                    throw ParseError("malformed coordinate '" + tok + "' at " + where);
                }
            }
            if (static_cast<int>(c.size()) != dimension)
                throw ParseError("point row with " + std::to_string(c.size()) + " coordinates at " + where);
            Point p(std::move(c));
            all_rows.push_back(p);
            (rows == Rows::points ? r.include_points : rows == Rows::negated ? r.negated_points : r.exclude_points)
                .push_back(std::move(p));
            continue;
        }
        const std::string key = detail::trim(line.substr(0, colon));
        const std::string body = detail::trim(line.substr(colon + 1));
        rows = Rows::none;
        if (key == "name") {
            r.name = body;
        } else if (key == "base") {
            r.base = body;
        } else if (key == "status") {
            if (body != "withheld" && body != "reconstructible")
                throw ParseError("unknown status '" + body + "' at " + where);
            r.reconstructible = body == "reconstructible";
        } else if (key == "expr") {
            r.include_exprs.push_back(parse(body, dimension));
        } else if (key == "points") {
            if (body.empty())
                rows = Rows::points;
            else if (body == "±" || body == "+-")
                rows = Rows::negated;
            else
                throw ParseError("unknown points modifier '" + body + "' at " + where);
        } else if (key == "exclude") {
            rows = Rows::exclude;
        } else if (key == "expect") {
            r.expected = detail::parse_expect(body, where);
            have_expect = true;
        } else if (key == "class") {
            const auto eq = body.rfind('=');
            if (eq == std::string::npos)
                throw ParseError("malformed class line at " + where);
            const std::string label = detail::trim(body.substr(0, eq));
            if (std::ranges::find(class_labels(), label) == class_labels().end())
                throw ParseError("unknown vertex class '" + label + "' at " + where);
            try {
                r.census.emplace_back(label, std::stoi(body.substr(eq + 1)));
            } catch (const std::exception&) {
                throw ParseError("malformed class count at " + where);
            }
        } else if (key == "checksum") {
            if (!body.starts_with("fnv1a64:") || body.size() != 8 + 16)
                throw ParseError("malformed checksum at " + where);
            checksum = std::stoull(body.substr(8), nullptr, 16);
        } else {
            throw ParseError("unknown recipe key '" + key + "' at " + where);
        }
    }
    if (r.name.empty())
        throw ParseError("recipe without a name");
    if (!have_expect)
        throw ParseError("recipe " + r.name + " has no expect line");
    if (!all_rows.empty() && !checksum)
        throw ParseError("recipe " + r.name + " lists points but has no checksum");
    if (checksum && *checksum != rows_checksum(all_rows)) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rows_checksum(all_rows)));
        throw ParseError("checksum mismatch in recipe " + r.name + " (rows hash to " + buf + ")");
    }
    return r;
}

struct VerifyField {
    std::string name;
    std::int64_t expected = 0;
    std::int64_t actual = 0;
    bool match() const { return expected == actual; }
};

struct VerifyReport {
    std::string name;
    std::vector<VerifyField> fields;
    bool all_match() const
    {
        return std::ranges::all_of(fields, [](const VerifyField& f) { return f.match(); });
    }
};

class Catalog {
public:
    Catalog() = default;

    void add(Recipe r)
    {
        const std::string name = r.name;
        recipes_[name] = std::move(r);
    }

    void add_text(std::string_view text) { add(parse_recipe(text)); }

    static Catalog from_directory(const std::filesystem::path& dir)
    {
        Catalog c;
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.path().extension() == ".recipe")
                files.push_back(entry.path());
        std::ranges::sort(files);
        for (const auto& f : files) {
            std::ifstream in(f);
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                c.add_text(ss.str());
            } catch (const ParseError& e) {
                throw ParseError(f.filename().string() + ": " + e.what());
            }
        }
        return c;
    }

#ifdef E8CHI_HAS_BUILTIN_CATALOG
    static const Catalog& builtin()
    {
        static const Catalog c = [] {
            Catalog out;
            for (auto text : builtin_recipes)
                out.add_text(text);
            return out;
        }();
        return c;
    }
#endif

    bool has(const std::string& name) const { return recipes_.contains(name); }

    const Recipe& recipe(const std::string& name) const
    {
        auto it = recipes_.find(name);
        if (it == recipes_.end())
            throw InvalidInput("unknown graph '" + name + "'");
        return it->second;
    }

    std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto& [k, _] : recipes_)
            out.push_back(k);
        std::ranges::sort(out, [](const std::string& a, const std::string& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

    /// Sorted point set of a recipe; checks the vertex count when asked.
    std::vector<Point> points(const Recipe& r, bool check_count = true) const
    {
        if (!r.reconstructible)
            throw InvalidInput("graph " + r.name + " cannot be reconstructed (its added vertices are unknown)");
        std::set<Point> pts;
        auto insert = [&](const Point& p, const char* source) {
            if (!pts.insert(p).second)
                throw InvalidInput("recipe " + r.name + ": duplicate point (" + p.to_string() + ") from " + source);
        };
        if (r.base) {
            if (*r.base == r.name)
                throw InvalidInput("recipe " + r.name + " is its own base");
            for (const auto& p : points(recipe(*r.base), true))
                insert(p, "base");
        }
        for (const auto& e : r.include_exprs)
            for (const auto& p : expand(e))
                insert(p, "expr");
        for (const auto& p : r.include_points)
            insert(p, "points");
        for (const auto& p : r.negated_points) {
            insert(p, "points");
            insert(p.negated(), "points");
        }
        for (const auto& p : r.exclude_points)
            if (pts.erase(p) == 0)
                throw InvalidInput("recipe " + r.name + ": excluded point (" + p.to_string() + ") is not present");
        std::vector<Point> out(pts.begin(), pts.end());
        if (check_count && static_cast<int>(out.size()) != r.expected.v)
            throw InvalidInput("recipe " + r.name + " assembles " + std::to_string(out.size()) +
                               " points, expected " + std::to_string(r.expected.v));
        return out;
    }

    std::vector<Point> points(const std::string& name) const { return points(recipe(name)); }

    DistGraph build(const std::string& name) const { return build_graph(points(name)); }

    VerifyReport verify(const Recipe& r) const
    {
        const auto pts = points(r, false);
        const auto g = build_graph(pts);
        const auto s = stats(g);
        VerifyReport rep;
        rep.name = r.name;
        rep.fields.push_back({"v", r.expected.v, s.v});
        rep.fields.push_back({"e", r.expected.e, s.e});
        rep.fields.push_back({"deg_min", r.expected.deg_min, s.deg_min});
        rep.fields.push_back({"deg_max", r.expected.deg_max, s.deg_max});
        const auto got = census(pts);
        for (const auto& label : class_labels()) {
            int want = 0;
            for (const auto& [l, n] : r.census)
                if (l == label)
                    want = n;
            rep.fields.push_back({"class " + label, want, got.at(label)});
        }
        return rep;
    }

    VerifyReport verify(const std::string& name) const { return verify(recipe(name)); }

private:
    std::map<std::string, Recipe> recipes_;
};

} // namespace e8chi
