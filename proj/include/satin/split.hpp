#pragma once

#include <cstddef>
#include <vector>

#include "satin/types.hpp"

namespace satin {

// A formula rewritten so every clause fits a fixed clause-unit width.
// Long clauses become linear chains linked by connector variables: the
// positive connector is the last literal of one chunk and its negation the
// first literal of the next. Connector variables are appended after the
// original index space so original indices stay stable.
struct SplitFormula {
    Formula base;
    std::uint32_t width = 8;
    Var first_connector = 0;                 // connectors are [first_connector, base.num_vars)
    std::vector<std::size_t> origin;         // split clause index -> original clause index
    std::vector<int> chain_next;             // split clause index -> next chunk in chain, or -1

    bool is_connector(Var v) const { return v >= first_connector; }
    std::size_t connector_count() const { return base.num_vars - first_connector; }
    bool has_prev_link(std::size_t i) const {
        // chunks other than the head of a chain start with a connector slot
        return i > 0 && chain_next[i - 1] == static_cast<int>(i);
    }
    bool has_next_link(std::size_t i) const { return chain_next[i] >= 0; }
};

namespace detail {

// Appends the chunks of one long clause. Head and tail chunks carry width-1
// payload literals, middle chunks width-2; chunk count is
// ceil((L-2)/(width-2)).
inline void split_one(const Clause& c, std::uint32_t width, Var& next_var,
                      std::size_t origin_idx, SplitFormula& out) {
    const std::size_t L = c.size();
    const std::size_t per_mid = width - 2;
    const std::size_t chunks = (L - 2 + per_mid - 1) / per_mid;
    std::size_t consumed = 0;
    int prev_idx = -1;
    for (std::size_t k = 0; k < chunks; ++k) {
        Clause chunk;
        if (k > 0) chunk.push_back(Lit(next_var - 1, false));  // inherited ~c
        std::size_t payload = width - (k == 0 || k + 1 == chunks ? 1 : 2);
        if (k + 1 == chunks) payload = L - consumed;  // tail takes the rest
        for (std::size_t j = 0; j < payload; ++j) chunk.push_back(c[consumed++]);
        if (k + 1 < chunks) chunk.push_back(Lit(next_var++, true));  // trailing c
        const int idx = static_cast<int>(out.base.clauses.size());
        out.base.clauses.push_back(std::move(chunk));
        out.origin.push_back(origin_idx);
        out.chain_next.push_back(-1);
        if (prev_idx >= 0) out.chain_next[prev_idx] = idx;
        prev_idx = idx;
    }
}

}  // namespace detail

inline SplitFormula split_clauses(const Formula& f, std::uint32_t width = 8) {
    if (width < 3)
        throw std::invalid_argument("split_clauses: width must be at least 3");
    SplitFormula out;
    out.width = width;
    out.first_connector = f.num_vars;
    out.base.num_vars = f.num_vars;
    out.base.raw_clause_count = f.raw_clause_count;
    Var next_var = f.num_vars;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const Clause& c = f.clauses[i];
        if (c.size() <= width) {
            out.base.clauses.push_back(c);
            out.origin.push_back(i);
            out.chain_next.push_back(-1);
        } else {
            detail::split_one(c, width, next_var, i, out);
        }
    }
    if (next_var > kMaxVars)
        throw CapacityError("split_clauses: connector variables exceed the 20-bit field");
    out.base.num_vars = next_var;
    return out;
}

}  // namespace satin
