#pragma once

// Coordinate shorthand for finite point sets.
//
//   expr := term (SPACE term)*          optionally wrapped as "±( expr )"
//   term := [sign|parity] INT ["^" INT] ["_" DIGITS]
//   sign := "+" | "-" | "±" | "+-"      parity := "e" | "o"
//
// "^k" repeats the value over k coordinates, "_368" pins it to positions 3, 6
// and 8 (1-indexed). Unpinned terms are distributed over the remaining
// positions in every possible way. "±" varies each sign independently, "e"/"o"
// keep an even/odd number of minus signs within the term. The "±( )" wrapper
// adds the global negation of every point.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "e8chi/error.hpp"
#include "e8chi/point.hpp"

namespace e8chi {

enum class SignMode { plus, minus, plus_minus, parity_even, parity_odd, none };

struct Term {
    int value = 0;
    int repeat = 1;
    SignMode sign = SignMode::none;
    std::vector<int> positions; // 1-indexed; empty when the term floats

    bool fixed() const { return !positions.empty(); }
    bool operator==(const Term&) const = default;
};

struct VertexSetExpr {
    std::vector<Term> terms;
    int dimension = 8;
    bool negate_union = false;

    bool operator==(const VertexSetExpr&) const = default;
};

namespace detail {

inline constexpr std::string_view kPlusMinus = "\xC2\xB1"; // U+00B1

inline bool is_parity(SignMode m) { return m == SignMode::parity_even || m == SignMode::parity_odd; }

/// Signed values a single coordinate of the term may take.
inline std::vector<int> value_set(const Term& t)
{
    switch (t.sign) {
    case SignMode::plus: return {t.value};
    case SignMode::minus: return {-t.value};
    case SignMode::none: return {t.value};
    default: return {t.value, -t.value};
    }
}

inline bool sets_overlap(const Term& a, const Term& b)
{
    for (int x : value_set(a))
        for (int y : value_set(b))
            if (x == y)
                return true;
    return false;
}

inline std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// Sign patterns accepted by a term of k coordinates, as coordinate values.
inline std::vector<std::vector<int>> sign_patterns(const Term& t)
{
    const int k = t.repeat;
    std::vector<std::vector<int>> out;
    if (t.sign == SignMode::none || t.sign == SignMode::plus || t.sign == SignMode::minus) {
        out.emplace_back(static_cast<std::size_t>(k), value_set(t).front());
        return out;
    }
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        const int minus = std::popcount(mask);
        if (t.sign == SignMode::parity_even && minus % 2)
            continue;
        if (t.sign == SignMode::parity_odd && minus % 2 == 0)
            continue;
        std::vector<int> v(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            v[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -t.value : t.value;
        out.push_back(std::move(v));
    }
    return out;
}

inline std::uint64_t sign_count(const Term& t)
{
    switch (t.sign) {
    case SignMode::plus_minus: return std::uint64_t{1} << t.repeat;
    case SignMode::parity_even:
    case SignMode::parity_odd: return std::uint64_t{1} << (t.repeat - 1);
    default: return 1;
    }
}

/// Sign patterns p of the term such that the negated pattern is accepted too.
inline std::uint64_t symmetric_sign_count(const Term& t)
{
    switch (t.sign) {
    case SignMode::none: return 1;
    case SignMode::plus:
    case SignMode::minus: return 0;
    case SignMode::plus_minus: return std::uint64_t{1} << t.repeat;
    default: return t.repeat % 2 ? 0 : std::uint64_t{1} << (t.repeat - 1);
    }
}

inline int parse_uint(std::string_view s, std::string_view token)
{
    if (s.empty() || s.size() > 6)
        throw ParseError("malformed term '" + std::string(token) + "'");
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError("malformed term '" + std::string(token) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

inline std::string_view take_digits(std::string_view& s)
{
    std::size_t i = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9')
        ++i;
    auto d = s.substr(0, i);
    s.remove_prefix(i);
    return d;
}

struct RawTerm {
    Term term;
    bool has_repeat = false;
};

inline RawTerm parse_term(std::string_view tok, int dimension)
{
    RawTerm raw;
    std::string_view s = tok;
    std::optional<SignMode> mode;
    if (s.starts_with(kPlusMinus)) {
        mode = SignMode::plus_minus;
        s.remove_prefix(kPlusMinus.size());
    } else if (s.starts_with("+-")) {
        mode = SignMode::plus_minus;
        s.remove_prefix(2);
    } else if (!s.empty() && (s[0] == '+' || s[0] == '-' || s[0] == 'e' || s[0] == 'o')) {
        mode = s[0] == '+' ? SignMode::plus
             : s[0] == '-' ? SignMode::minus
             : s[0] == 'e' ? SignMode::parity_even
                           : SignMode::parity_odd;
        s.remove_prefix(1);
    }
    raw.term.value = parse_uint(take_digits(s), tok);

    bool seen_sub = false;
    while (!s.empty()) {
        const char marker = s[0];
        s.remove_prefix(1);
        const auto digits = take_digits(s);
        if (marker == '^' && !raw.has_repeat) {
            raw.term.repeat = parse_uint(digits, tok);
            raw.has_repeat = true;
        } else if (marker == '_' && !seen_sub) {
            if (digits.empty())
                throw ParseError("malformed term '" + std::string(tok) + "'");
            for (char c : digits) {
                const int p = c - '0';
                if (p < 1 || p > dimension)
                    throw ParseError("position out of range in '" + std::string(tok) + "'");
                if (std::ranges::find(raw.term.positions, p) != raw.term.positions.end())
                    throw ParseError("duplicate fixed position in '" + std::string(tok) + "'");
                raw.term.positions.push_back(p);
            }
            seen_sub = true;
        } else {
            throw ParseError("malformed term '" + std::string(tok) + "'");
        }
    }

    if (raw.term.value == 0) {
        if (mode && is_parity(*mode))
            throw ParseError("parity prefix on zero value in '" + std::string(tok) + "'");
        if (mode)
            throw ParseError("sign on zero value in '" + std::string(tok) + "'");
        raw.term.sign = SignMode::none;
    } else {
        raw.term.sign = mode.value_or(SignMode::plus);
    }

    if (raw.term.fixed()) {
        const int k = static_cast<int>(raw.term.positions.size());
        if (raw.has_repeat && raw.term.repeat != k)
            throw ParseError("repeat does not match fixed positions in '" + std::string(tok) + "'");
        raw.term.repeat = k;
        raw.has_repeat = true;
    } else if (raw.has_repeat && raw.term.repeat < 1) {
        throw ParseError("repeat must be positive in '" + std::string(tok) + "'");
    }
    return raw;
}

} // namespace detail

/// Structural checks shared by parse and programmatic construction.
inline void validate(const VertexSetExpr& expr)
{
    if (expr.dimension < 1 || expr.dimension > 30)
        throw InvalidInput("dimension must be in 1..30");
    int total = 0;
    std::vector<bool> used(static_cast<std::size_t>(expr.dimension) + 1, false);
    for (const auto& t : expr.terms) {
        if (t.repeat < 1)
            throw InvalidInput("repeat must be positive");
        if (t.value < 0)
            throw InvalidInput("term value must be a nonnegative magnitude");
        if (t.value == 0 && t.sign != SignMode::none)
            throw InvalidInput("zero value carries no sign");
        if (t.value != 0 && t.sign == SignMode::none)
            throw InvalidInput("nonzero value needs a sign mode");
        if (t.fixed() && static_cast<int>(t.positions.size()) != t.repeat)
            throw InvalidInput("fixed positions must match the repeat count");
        for (int p : t.positions) {
            if (p < 1 || p > expr.dimension)
                throw InvalidInput("fixed position out of range");
            if (used[static_cast<std::size_t>(p)])
                throw InvalidInput("duplicate fixed position " + std::to_string(p));
            used[static_cast<std::size_t>(p)] = true;
        }
        total += t.repeat;
    }
    if (total != expr.dimension)
        throw InvalidInput("repeats sum to " + std::to_string(total) + ", expected " +
                           std::to_string(expr.dimension));
    // Floating terms that can produce the same coordinate value would make the
    // expansion ambiguous (and its size not a plain product), so reject them.
    for (std::size_t i = 0; i < expr.terms.size(); ++i)
        for (std::size_t j = i + 1; j < expr.terms.size(); ++j)
            if (!expr.terms[i].fixed() && !expr.terms[j].fixed() &&
                detail::sets_overlap(expr.terms[i], expr.terms[j]))
                throw InvalidInput("floating terms with overlapping values; pin positions instead");
}

inline VertexSetExpr parse(std::string_view text, int dimension = 8)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    VertexSetExpr expr;
    expr.dimension = dimension;
    std::string_view body = trim(text);
    for (std::string_view open : {std::string_view("\xC2\xB1("), std::string_view("+-(")}) {
        if (body.starts_with(open)) {
            if (!body.ends_with(')'))
                throw ParseError("unterminated '(' in '" + std::string(text) + "'");
            body = trim(body.substr(open.size(), body.size() - open.size() - 1));
            expr.negate_union = true;
            break;
        }
    }
    if (body.empty())
        throw ParseError("empty expression");

    std::vector<detail::RawTerm> raw;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i])))
            ++i;
        std::size_t j = i;
        while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])))
            ++j;
        if (j > i)
            raw.push_back(detail::parse_term(body.substr(i, j - i), dimension));
        i = j;
    }

    int accounted = 0;
    int missing = 0;
    for (const auto& r : raw) {
        if (r.has_repeat)
            accounted += r.term.repeat;
        else
            ++missing;
    }
    if (missing > 1)
        throw ParseError("more than one term without a repeat count in '" + std::string(text) + "'");
    for (auto& r : raw) {
        if (!r.has_repeat) {
            r.term.repeat = dimension - accounted;
            if (r.term.repeat < 1)
                throw ParseError("cannot infer repeat count in '" + std::string(text) + "'");
        }
        expr.terms.push_back(r.term);
    }

    try {
        validate(expr);
    } catch (const InvalidInput& e) {
        throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
    }
    return expr;
}

inline std::string format(const VertexSetExpr& expr)
{
    std::string out;
    for (const auto& t : expr.terms) {
        if (!out.empty())
            out += ' ';
        switch (t.sign) {
        case SignMode::plus: out += '+'; break;
        case SignMode::minus: out += '-'; break;
        case SignMode::plus_minus: out += detail::kPlusMinus; break;
        case SignMode::parity_even: out += 'e'; break;
        case SignMode::parity_odd: out += 'o'; break;
        case SignMode::none: break;
        }
        out += std::to_string(t.value);
        if (t.fixed()) {
            out += '_';
            for (int p : t.positions) {
                if (p > 9)
                    throw InvalidInput("positions above 9 have no shorthand form");
                out += static_cast<char>('0' + p);
            }
        } else {
            out += '^' + std::to_string(t.repeat);
        }
    }
    if (expr.negate_union)
        out = std::string(detail::kPlusMinus) + "(" + out + ")";
    return out;
}

/// Every point denoted by the expression, sorted and duplicate-free.
inline std::vector<Point> expand(const VertexSetExpr& expr)
{
    validate(expr);
    const int dim = expr.dimension;
    const auto n_terms = expr.terms.size();

    std::vector<int> free_positions;
    {
        std::vector<bool> taken(static_cast<std::size_t>(dim) + 1, false);
        for (const auto& t : expr.terms)
            for (int p : t.positions)
                taken[static_cast<std::size_t>(p)] = true;
        for (int p = 1; p <= dim; ++p)
            if (!taken[static_cast<std::size_t>(p)])
                free_positions.push_back(p);
    }

    std::vector<std::vector<std::vector<int>>> patterns;
    for (const auto& t : expr.terms)
        patterns.push_back(detail::sign_patterns(t));

    std::vector<Point> out;
    std::vector<std::vector<int>> placed(n_terms);
    std::vector<bool> used(static_cast<std::size_t>(dim) + 1, false);
    std::vector<int> coords(static_cast<std::size_t>(dim), 0);

    auto emit_signs = [&](auto&& self, std::size_t ti) -> void {
        if (ti == n_terms) {
            out.emplace_back(coords);
            return;
        }
        for (const auto& pat : patterns[ti]) {
            for (std::size_t k = 0; k < pat.size(); ++k)
                coords[static_cast<std::size_t>(placed[ti][k] - 1)] = pat[k];
            self(self, ti + 1);
        }
    };

    // Choose positions for floating terms one term at a time, in increasing
    // position order within a term.
    auto place = [&](auto&& self, std::size_t ti) -> void {
        if (ti == n_terms) {
            emit_signs(emit_signs, 0);
            return;
        }
        const Term& t = expr.terms[ti];
        if (t.fixed()) {
            placed[ti] = t.positions;
            self(self, ti + 1);
            return;
        }
        auto choose = [&](auto&& pick, std::size_t from) -> void {
            if (static_cast<int>(placed[ti].size()) == t.repeat) {
                self(self, ti + 1);
                return;
            }
            for (std::size_t i = from; i < free_positions.size(); ++i) {
                const int p = free_positions[i];
                if (used[static_cast<std::size_t>(p)])
                    continue;
                used[static_cast<std::size_t>(p)] = true;
                placed[ti].push_back(p);
                pick(pick, i + 1);
                placed[ti].pop_back();
                used[static_cast<std::size_t>(p)] = false;
            }
        };
        placed[ti].clear();
        choose(choose, 0);
    };
    place(place, 0);

    if (expr.negate_union) {
        const auto n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(out[i].negated());
    }
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Size of the expansion, from position multinomials and sign counts.
inline std::uint64_t count(const VertexSetExpr& expr)
{
    validate(expr);
    int free_left = expr.dimension;
    for (const auto& t : expr.terms)
        if (t.fixed())
            free_left -= t.repeat;

    std::uint64_t arrangements = 1;
    std::uint64_t signs = 1;
    for (const auto& t : expr.terms) {
        if (!t.fixed()) {
            arrangements *= detail::binomial(free_left, t.repeat);
            free_left -= t.repeat;
        }
        signs *= detail::sign_count(t);
    }
    const std::uint64_t plain = arrangements * signs;
    if (!expr.negate_union)
        return plain;

    // |S u -S| = 2|S| - |S n -S|. A floating "+v" term only meets its negation
    // through a floating "-v" partner of equal repeat; the arrangement factor is
    // unchanged because each coordinate value still identifies its term.
    auto floating_signed = [](const Term& t) {
        return !t.fixed() && (t.sign == SignMode::plus || t.sign == SignMode::minus);
    };
    std::uint64_t symmetric = 1;
    for (const auto& t : expr.terms) {
        if (floating_signed(t)) {
            const auto partner = std::ranges::find_if(expr.terms, [&](const Term& u) {
                return floating_signed(u) && u.value == t.value && u.sign != t.sign;
            });
            if (partner == expr.terms.end() || partner->repeat != t.repeat)
                symmetric = 0;
        } else {
            symmetric *= detail::symmetric_sign_count(t);
        }
    }
    return 2 * plain - arrangements * symmetric;
}

/// Membership test without expanding.
inline bool contains(const VertexSetExpr& expr, const Point& p)
{
    if (p.dimension() != expr.dimension)
        return false;
    auto direct = [&](const Point& q) {
        std::vector<bool> taken(static_cast<std::size_t>(expr.dimension), false);
        std::vector<int> hits(expr.terms.size(), 0);
        std::vector<int> minus(expr.terms.size(), 0);
        for (std::size_t ti = 0; ti < expr.terms.size(); ++ti) {
            const Term& t = expr.terms[ti];
            if (!t.fixed())
                continue;
            const auto vals = detail::value_set(t);
            for (int pos : t.positions) {
                const int c = q[pos - 1];
                taken[static_cast<std::size_t>(pos - 1)] = true;
                if (std::ranges::find(vals, c) == vals.end())
                    return false;
                minus[ti] += c < 0;
            }
            hits[ti] = t.repeat;
        }
        for (int i = 0; i < expr.dimension; ++i) {
            if (taken[static_cast<std::size_t>(i)])
                continue;
            const int c = q[i];
            bool placed = false;
            for (std::size_t ti = 0; ti < expr.terms.size() && !placed; ++ti) {
                const Term& t = expr.terms[ti];
                if (t.fixed())
                    continue;
                const auto vals = detail::value_set(t);
                if (std::ranges::find(vals, c) != vals.end()) {
                    ++hits[ti];
                    minus[ti] += c < 0;
                    placed = true;
                }
            }
            if (!placed)
                return false;
        }
        for (std::size_t ti = 0; ti < expr.terms.size(); ++ti) {
            const Term& t = expr.terms[ti];
            if (hits[ti] != t.repeat)
                return false;
            if (t.sign == SignMode::parity_even && minus[ti] % 2)
                return false;
            if (t.sign == SignMode::parity_odd && minus[ti] % 2 == 0)
                return false;
        }
        return true;
    };
    return direct(p) || (expr.negate_union && direct(p.negated()));
}

} // namespace e8chi
