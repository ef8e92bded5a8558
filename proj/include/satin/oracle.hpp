#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "satin/types.hpp"

namespace satin::oracle {

// Reference engines used to validate the simulator. Everything here is
// written for transparency, not speed: assignments are plain arrays,
// propagation scans whole clauses, and search is a textbook DPLL.

enum class Verdict { Sat, Unsat };

struct OracleResult {
    Verdict verdict = Verdict::Unsat;
    std::vector<bool> model;  // indexed by var, valid when Sat
};

namespace detail {

// -1 false, 0 unassigned, +1 true
using Values = std::vector<int8_t>;

inline int lit_value(const Values& v, Lit l) {
    int8_t x = v[l.var()];
    if (x == 0) return 0;
    return (x > 0) == l.positive() ? 1 : -1;
}

inline void assign(Values& v, Lit l) { v[l.var()] = l.positive() ? 1 : -1; }

// Scan-to-fixpoint unit propagation with plain counters.
// Returns false on a falsified clause (conflict). Newly assigned literals
// (beyond the seed) are appended to `out` when non-null, with their reason
// clause index in `reasons` when non-null.
inline bool propagate(const std::vector<Clause>& db, Values& values,
                      std::vector<Lit>* out = nullptr,
                      std::vector<int>* reason_out = nullptr,
                      int* conflict_clause = nullptr) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ci = 0; ci < db.size(); ++ci) {
            const Clause& c = db[ci];
            int unassigned = 0;
            Lit last_free;
            bool satisfied = false;
            for (Lit l : c) {
                int v = lit_value(values, l);
                if (v > 0) {
                    satisfied = true;
                    break;
                }
                if (v == 0) {
                    ++unassigned;
                    last_free = l;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) {
                if (conflict_clause) *conflict_clause = static_cast<int>(ci);
                return false;
            }
            if (unassigned == 1) {
                assign(values, last_free);
                if (out) out->push_back(last_free);
                if (reason_out) reason_out->push_back(static_cast<int>(ci));
                changed = true;
            }
        }
    }
    return true;
}

// DPLL over variables in index order, false branch first. With unit
// propagation pruning this still visits models in lexicographic order, so
// the first model found is the lexicographically smallest.
inline bool dpll(const std::vector<Clause>& db, Values& values, Var from) {
    Values saved = values;
    if (!propagate(db, values)) {
        values = saved;
        return false;
    }
    Var v = from;
    while (v < values.size() && values[v] != 0) ++v;
    if (v == values.size()) return true;
    for (int phase = 0; phase < 2; ++phase) {
        Values snapshot = values;
        assign(values, Lit(v, phase == 1));
        if (dpll(db, values, v + 1)) return true;
        values = snapshot;
    }
    values = saved;
    return false;
}

}  // namespace detail

inline constexpr std::uint32_t kBruteForceVarLimit = 25;
inline constexpr std::uint32_t kImpliesVarLimit = 48;

// Exhaustive verdict; lexicographically-first model when satisfiable.
inline OracleResult brute_force(const Formula& f) {
    if (f.num_vars > kBruteForceVarLimit)
        throw CapacityError("brute_force: more than 25 variables");
    detail::Values values(f.num_vars, 0);
    OracleResult r;
    if (detail::dpll(f.clauses, values, 0)) {
        r.verdict = Verdict::Sat;
        r.model.resize(f.num_vars);
        for (Var v = 0; v < f.num_vars; ++v) r.model[v] = values[v] > 0;
    } else {
        r.verdict = Verdict::Unsat;
    }
    return r;
}

struct BcpResult {
    bool conflict = false;
    int conflict_clause = -1;          // db index when conflict
    std::vector<Lit> assigned;         // assumptions followed by derived literals
};

// Least fixed point of the unit-clause rule over the given assumptions.
// The result set is order-independent; the recorded order is scan order.
inline BcpResult bcp_fixpoint(const std::vector<Clause>& db, std::uint32_t num_vars,
                              const std::vector<Lit>& assumptions) {
    detail::Values values(num_vars, 0);
    BcpResult r;
    for (Lit a : assumptions) {
        detail::assign(values, a);
        r.assigned.push_back(a);
    }
    if (!detail::propagate(db, values, &r.assigned, nullptr, &r.conflict_clause))
        r.conflict = true;
    return r;
}

inline BcpResult bcp_fixpoint(const Formula& f, const std::vector<Lit>& assumptions) {
    return bcp_fixpoint(f.clauses, f.num_vars, assumptions);
}

// True iff f entails c, decided by refuting f && ~c.
inline bool implies(const std::vector<Clause>& db, std::uint32_t num_vars, const Clause& c) {
    if (num_vars > kImpliesVarLimit)
        throw CapacityError("implies: variable count beyond refutation limit");
    std::vector<Clause> work = db;
    for (Lit l : c) work.push_back({l.negated()});
    detail::Values values(num_vars, 0);
    return !detail::dpll(work, values, 0);
}

inline bool implies(const Formula& f, const Clause& c) {
    return implies(f.clauses, f.num_vars, c);
}

// ---------------------------------------------------------------------------
// Sequential CDCL replay: the ground truth for distributed clause learning.

struct TrailItem {
    Lit lit;
    std::uint32_t level = 0;
    int reason = -1;  // db clause index, -1 for decisions/assumptions
};

struct Analysis {
    Clause learned;          // asserting literal first
    Lit uip;
    std::uint32_t backtrack_level = 0;
    std::uint32_t lbd = 0;
};

// First-UIP conflict analysis over an explicit trail. The seed is either a
// falsified clause or the resolvent of a conflicting implication pair; both
// are handled by seeding from literal lists. Level-0 literals never enter
// the learned clause.
class ConflictAnalyzer {
public:
    ConflictAnalyzer(const std::vector<Clause>& db, const std::vector<TrailItem>& trail)
        : db_(db), trail_(trail) {
        for (std::size_t i = 0; i < trail.size(); ++i) {
            Var v = trail[i].lit.var();
            if (v >= pos_.size()) pos_.resize(v + 1, -1);
            pos_[v] = static_cast<int>(i);
        }
    }

    // seed literal lists; for a pair, pass both reason clauses and the
    // conflict variable so the resolvent is formed.
    Analysis analyze_falsified(const Clause& conflict_clause) const {
        return run(conflict_clause, std::nullopt);
    }

    Analysis analyze_pair(int reason_a, int reason_b, Var conflict_var) const {
        Clause seed;
        for (Lit l : db_[reason_a])
            if (l.var() != conflict_var) seed.push_back(l);
        for (Lit l : db_[reason_b])
            if (l.var() != conflict_var) seed.push_back(l);
        return run(seed, conflict_var);
    }

private:
    const TrailItem& item(Var v) const {
        assert(v < pos_.size() && pos_[v] >= 0);
        return trail_[pos_[v]];
    }

    Analysis run(const Clause& seed, std::optional<Var> resolved_away) const {
        const std::uint32_t current = trail_.empty() ? 0 : trail_.back().level;
        std::vector<bool> seen(pos_.size(), false);
        if (resolved_away) seen[*resolved_away] = true;  // resolved on, never re-added
        Clause learned;
        std::size_t counter = 0;

        auto consider = [&](Lit l) {
            Var v = l.var();
            const TrailItem& t = item(v);
            assert(t.lit == l.negated() && "seed literals must be falsified");
            if (t.level == 0 || seen[v]) return;
            seen[v] = true;
            if (t.level == current)
                ++counter;
            else
                learned.push_back(l);
        };

        for (Lit l : seed) consider(l);
        assert(counter > 0 && "conflict must involve the current decision level");

        int idx = static_cast<int>(trail_.size()) - 1;
        Lit uip;
        while (true) {
            while (!seen[trail_[idx].lit.var()]) --idx;
            const TrailItem& t = trail_[idx];
            assert(t.level == current);
            if (counter == 1) {
                uip = t.lit;
                break;
            }
            seen[t.lit.var()] = false;
            --counter;
            assert(t.reason >= 0 && "only the UIP may lack a reason");
            for (Lit l : db_[t.reason])
                if (l.var() != t.lit.var()) consider(l);
            --idx;
        }

        Analysis a;
        a.uip = uip;
        a.learned.push_back(uip.negated());
        a.learned.insert(a.learned.end(), learned.begin(), learned.end());
        std::uint32_t bt = 0;
        std::vector<std::uint32_t> levels{current};
        for (Lit l : learned) {
            std::uint32_t lv = item(l.var()).level;
            bt = std::max(bt, lv);
            levels.push_back(lv);
        }
        a.backtrack_level = bt;
        std::sort(levels.begin(), levels.end());
        a.lbd = static_cast<std::uint32_t>(
            std::unique(levels.begin(), levels.end()) - levels.begin());
        return a;
    }

    const std::vector<Clause>& db_;
    const std::vector<TrailItem>& trail_;
    std::vector<int> pos_;
};

struct StepRecord {
    std::vector<Lit> implications;   // propagation results of this step
    bool conflict = false;           // any conflict while absorbing this step
    std::vector<Clause> learned;     // 1-UIP clauses, in learning order
    std::uint32_t backtrack_level = 0;  // of the first conflict
    bool unsat = false;              // conflict at level 0
};

// Free-running sequential CDCL that replays a supplied decision trace,
// learning 1-UIP clauses from the conflicts its own propagation finds.
class SequentialCdcl {
public:
    explicit SequentialCdcl(const Formula& f)
        : num_vars_(f.num_vars), db_(f.clauses), values_(f.num_vars, 0) {}

    const std::vector<Clause>& db() const { return db_; }
    const std::vector<TrailItem>& trail() const { return trail_; }
    std::uint32_t level() const { return level_; }

    // Level-0 propagation; call once before the first decision.
    StepRecord propagate_initial() { return propagate_step(); }

    StepRecord decide(Lit d) {
        ++level_;
        push(d, -1);
        StepRecord r = propagate_step();
        bool pending = r.conflict;
        while (pending) {
            if (level_ == 0) {
                r.unsat = true;
                return r;
            }
            ConflictAnalyzer az(db_, trail_);
            Analysis a = az.analyze_falsified(db_[conflict_clause_]);
            if (r.learned.empty()) r.backtrack_level = a.backtrack_level;
            r.learned.push_back(a.learned);
            backtrack(a.backtrack_level);
            db_.push_back(a.learned);
            push(a.learned.front(), static_cast<int>(db_.size()) - 1);
            StepRecord follow = propagate_step();
            r.implications.insert(r.implications.end(), follow.implications.begin(),
                                  follow.implications.end());
            pending = follow.conflict;
        }
        return r;
    }

private:
    void push(Lit l, int reason) {
        detail::assign(values_, l);
        trail_.push_back({l, level_, reason});
    }

    StepRecord propagate_step() {
        StepRecord r;
        std::vector<Lit> lits;
        std::vector<int> reasons;
        bool ok = detail::propagate(db_, values_, &lits, &reasons, &conflict_clause_);
        for (std::size_t i = 0; i < lits.size(); ++i)
            trail_.push_back({lits[i], level_, reasons[i]});
        r.implications = lits;
        if (!ok) {
            r.conflict = true;
            if (level_ == 0) r.unsat = true;
        }
        return r;
    }

    void backtrack(std::uint32_t to_level) {
        while (!trail_.empty() && trail_.back().level > to_level) {
            values_[trail_.back().lit.var()] = 0;
            trail_.pop_back();
        }
        level_ = to_level;
    }

    std::uint32_t num_vars_;
    std::vector<Clause> db_;
    detail::Values values_;
    std::vector<TrailItem> trail_;
    std::uint32_t level_ = 0;
    int conflict_clause_ = -1;
};

}  // namespace satin::oracle
