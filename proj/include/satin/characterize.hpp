#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "satin/types.hpp"

namespace satin {

// Percentile statistics of clause lengths and variable popularity
// (occurrence counts), the measurements that motivate fixed-width
// associative clause storage.
struct CharStats {
    std::vector<double> percentiles;              // requested fractions, ascending
    std::vector<std::size_t> clause_length;       // clause length at each percentile
    std::vector<std::size_t> var_popularity;      // occurrence count at each percentile
};

namespace detail {

inline std::size_t at_percentile(const std::vector<std::size_t>& sorted, double p) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

}  // namespace detail

inline CharStats characterize(const Formula& f, std::vector<double> percentiles) {
    if (f.clauses.empty())
        throw std::invalid_argument("characterize: empty formula");
    std::sort(percentiles.begin(), percentiles.end());

    std::vector<std::size_t> lengths;
    lengths.reserve(f.clauses.size());
    std::vector<std::size_t> occurrences(f.num_vars, 0);
    for (const Clause& c : f.clauses) {
        lengths.push_back(c.size());
        for (Lit l : c) occurrences[l.var()]++;
    }
    std::sort(lengths.begin(), lengths.end());
    std::sort(occurrences.begin(), occurrences.end());

    CharStats s;
    s.percentiles = percentiles;
    for (double p : percentiles) {
        s.clause_length.push_back(detail::at_percentile(lengths, p));
        s.var_popularity.push_back(detail::at_percentile(occurrences, p));
    }
    return s;
}

inline void write_csv(std::ostream& out, const CharStats& s) {
    out << "percentile,clause_length,var_popularity\n";
    for (std::size_t i = 0; i < s.percentiles.size(); ++i)
        out << s.percentiles[i] << ',' << s.clause_length[i] << ','
            << s.var_popularity[i] << '\n';
}

inline void write_table(std::ostream& out, const CharStats& s) {
    out << "percentile  clause_length  var_popularity\n";
    for (std::size_t i = 0; i < s.percentiles.size(); ++i) {
        out << "  " << s.percentiles[i];
        out << "\t      " << s.clause_length[i];
        out << "\t     " << s.var_popularity[i] << '\n';
    }
}

}  // namespace satin
