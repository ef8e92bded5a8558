#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "satin/types.hpp"

namespace satin {

namespace detail {

inline bool clause_is_tautology(const Clause& sorted_clause) {
    for (std::size_t i = 1; i < sorted_clause.size(); ++i) {
        if (sorted_clause[i].var() == sorted_clause[i - 1].var() &&
            sorted_clause[i] != sorted_clause[i - 1])
            return true;
    }
    return false;
}

}  // namespace detail

// Parse DIMACS CNF. Tautologies are dropped and duplicate literals within a
// clause removed: a clause unit stores each variable in at most one slot, so
// neither can be represented downstream. Extensions (p inccnf, weights) are
// rejected.
inline Formula parse_dimacs(std::istream& in) {
    Formula f;
    bool header_seen = false;
    std::size_t declared_clauses = 0;
    Clause current;
    std::string tok;

    auto finish_clause = [&]() {
        if (current.empty()) throw ParseError("dimacs: empty clause");
        std::sort(current.begin(), current.end());
        current.erase(std::unique(current.begin(), current.end()), current.end());
        f.raw_clause_count++;
        if (!detail::clause_is_tautology(current)) f.clauses.push_back(current);
        current.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!header_seen) {
            std::string p, kind;
            if (!(ls >> p)) continue;
            if (p != "p") throw ParseError("dimacs: clause data before `p cnf` header");
            long long v = -1, c = -1;
            if (!(ls >> kind >> v >> c) || kind != "cnf" || v < 0 || c < 0)
                throw ParseError("dimacs: malformed header: " + line);
            if (static_cast<std::uint64_t>(v) > kMaxVars)
                throw CapacityError("dimacs: " + std::to_string(v) +
                                    " variables exceed the 20-bit variable field");
            f.num_vars = static_cast<std::uint32_t>(v);
            declared_clauses = static_cast<std::size_t>(c);
            header_seen = true;
            continue;
        }
        long long raw;
        while (ls >> raw) {
            if (raw == 0) {
                finish_clause();
                continue;
            }
            std::uint64_t mag = static_cast<std::uint64_t>(raw < 0 ? -raw : raw);
            if (mag > f.num_vars)
                throw ParseError("dimacs: literal " + std::to_string(raw) +
                                 " exceeds declared variable count " +
                                 std::to_string(f.num_vars));
            current.push_back(Lit(static_cast<Var>(mag - 1), raw > 0));
        }
        if (!ls.eof()) throw ParseError("dimacs: unexpected token in: " + line);
    }
    if (!header_seen) throw ParseError("dimacs: missing `p cnf` header");
    if (!current.empty()) throw ParseError("dimacs: unterminated final clause");
    if (f.raw_clause_count != declared_clauses)
        throw ParseError("dimacs: header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(f.raw_clause_count));
    return f;
}

inline Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const Formula& f) {
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        for (Lit l : c) {
            long long d = static_cast<long long>(l.var()) + 1;
            out << (l.positive() ? d : -d) << ' ';
        }
        out << "0\n";
    }
}

inline std::string write_dimacs(const Formula& f) {
    std::ostringstream out;
    write_dimacs(out, f);
    return out.str();
}

}  // namespace satin
