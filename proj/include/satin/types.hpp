#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace satin {

// Field widths used on the wire. Variables are 20 bits, so a formula may
// not declare more than kMaxVars variables; the top few indices are
// reserved for control sentinels carried in variable fields.
inline constexpr std::uint32_t kVarBits = 20;
inline constexpr std::uint32_t kVarSentinelCancelCurrent = (1u << kVarBits) - 1;
inline constexpr std::uint32_t kVarSentinelChkres = (1u << kVarBits) - 2;
inline constexpr std::uint32_t kMaxVars = (1u << kVarBits) - 8;

using Var = std::uint32_t;

// A literal is a variable plus a polarity. Encoded as 2*var+1 for the
// positive literal and 2*var for the negated one, so that a literal's
// negation is code^1 and literals order naturally by variable.
class Lit {
public:
    Lit() = default;
    constexpr Lit(Var v, bool positive) : code_(2 * v + (positive ? 1u : 0u)) {}

    static constexpr Lit from_code(std::uint32_t code) {
        Lit l;
        l.code_ = code;
        return l;
    }

    constexpr Var var() const { return code_ >> 1; }
    constexpr bool positive() const { return (code_ & 1u) != 0; }
    constexpr Lit negated() const { return from_code(code_ ^ 1u); }
    constexpr std::uint32_t code() const { return code_; }

    friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend constexpr bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
    friend constexpr bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
    std::uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

// Parsed CNF. Clauses are kept tautology-free with deduplicated literals;
// raw_clause_count preserves the header count for reporting.
struct Formula {
    std::uint32_t num_vars = 0;
    std::vector<Clause> clauses;
    std::size_t raw_clause_count = 0;

    bool empty() const { return clauses.empty(); }
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(Lit l) {
    std::string s = l.positive() ? "x" : "~x";
    return s + std::to_string(l.var());
}

inline std::string to_string(const Clause& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " | ";
        s += to_string(c[i]);
    }
    return s + ")";
}

}  // namespace satin
