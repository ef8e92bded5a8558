#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "satin/types.hpp"

namespace satin {

inline constexpr std::uint8_t kMaxContexts = 2;

// The clause command set. Commands are derived by a bank controller from
// network messages and broadcast to every unit in the bank.
enum class CmdKind : std::uint8_t {
    Setvar,
    Validate,
    Chkres,
    Provar,
    Getpro,
    Getvar,
    Clearvar,
    Completedl,
    Copystr,
    Strprovar,
    Strgetpro,
    Clearreason,
    Getreason,
    Getlvlbits,
    Nop,
};

struct Command {
    CmdKind kind = CmdKind::Nop;
    std::uint8_t context = 0;
    std::uint32_t slot = 0;        // setvar / getvar
    Lit lit{0, true};              // setvar / provar / clearvar / strprovar / getreason
    bool all_current = false;      // clearvar variant: cancel every current-marked slot
    bool conn_prev = false;        // validate: slot 0 holds an inherited connector
    bool conn_next = false;        // validate: last present slot holds a trailing connector

    static Command provar(std::uint8_t ctx, Lit l) { return {CmdKind::Provar, ctx, 0, l}; }
    static Command getpro(std::uint8_t ctx) { return {CmdKind::Getpro, ctx}; }
    static Command clearvar(std::uint8_t ctx, Var v) {
        return {CmdKind::Clearvar, ctx, 0, Lit(v, true)};
    }
    static Command clear_current(std::uint8_t ctx) {
        Command c{CmdKind::Clearvar, ctx};
        c.all_current = true;
        return c;
    }
};

struct SlotRead {
    bool present = false;
    Var var = 0;
    bool polarity = false;
};

struct CommandOutput {
    bool prop_flag = false;        // propagation pending after this command
    bool conflict_flag = false;
    bool reason_match = false;     // getreason hit
    bool strengthen_flag = false;
    std::optional<Lit> lit;        // getpro: implied literal; strgetpro: literal to drop
    std::optional<SlotRead> slot;  // getvar
    std::vector<bool> lvlbits;     // getlvlbits
};

// One fixed-width hardware clause: an associative row of literal slots with
// per-context status bits. Slot contents are shared across contexts; only
// status bits are duplicated.
class ClauseUnit {
public:
    struct Slot {
        bool present = false;
        Var var = 0;
        bool polarity = false;
        struct PerCtx {
            bool assigned = false;
            bool agrees = false;       // meaningful only when assigned
            bool current = false;      // assigned during the latest decision level
            bool str_present = false;  // strengthening working copy
            bool learned_mark = false; // literal named by a strprovar
        };
        std::array<PerCtx, kMaxContexts> ctx{};
    };

    explicit ClauseUnit(std::uint32_t width = 8, std::uint8_t contexts = 2)
        : width_(width), contexts_(contexts), slots_(width) {
        if (contexts == 0 || contexts > kMaxContexts)
            throw std::invalid_argument("clause unit: unsupported context count");
    }

    std::uint32_t width() const { return width_; }
    const Slot& slot(std::uint32_t i) const { return slots_.at(i); }

    bool valid(std::uint8_t ctx) const { return st(ctx).valid; }
    bool valid_any() const {
        for (std::uint8_t c = 0; c < contexts_; ++c)
            if (st(c).valid) return true;
        return false;
    }
    bool prop_pending(std::uint8_t ctx) const { return st(ctx).prop_pending; }
    bool conflict(std::uint8_t ctx) const { return st(ctx).conflict; }
    bool reason(std::uint8_t ctx) const { return st(ctx).reason; }
    bool strengthen_ready(std::uint8_t ctx) const { return st(ctx).strengthen; }
    std::optional<std::uint32_t> implied_slot(std::uint8_t ctx) const { return st(ctx).implied_slot; }
    std::optional<std::uint32_t> conflict_slot(std::uint8_t ctx) const { return st(ctx).conflict_slot; }
    std::optional<std::uint32_t> connector_prev() const { return connector_prev_; }
    std::optional<std::uint32_t> connector_next() const { return connector_next_; }

    Lit slot_lit(std::uint32_t i) const {
        const Slot& s = slots_.at(i);
        assert(s.present);
        return Lit(s.var, s.polarity);
    }

    // Hardware reset line: clears everything, making the unit free for reuse.
    void reset() {
        for (auto& s : slots_) s = Slot{};
        for (auto& c : ctx_) c = CtxState{};
        connector_prev_.reset();
        connector_next_.reset();
    }

    CommandOutput execute(const Command& cmd) {
        if (cmd.context >= contexts_)
            throw std::out_of_range("clause unit: bad context id");
        CommandOutput out;
        const std::uint8_t ctx = cmd.context;
        touched_to_false_.reset();
        const bool setup = cmd.kind == CmdKind::Setvar || cmd.kind == CmdKind::Validate ||
                           cmd.kind == CmdKind::Chkres;
        if (!setup && !st(ctx).valid) return out;  // invalid units ignore the rest

        switch (cmd.kind) {
            case CmdKind::Setvar: {
                if (cmd.slot >= width_)
                    throw std::out_of_range("clause unit: setvar slot out of range");
                Slot& s = slots_[cmd.slot];
                s.present = true;
                s.var = cmd.lit.var();
                s.polarity = cmd.lit.positive();
                for (auto& c : s.ctx) c = Slot::PerCtx{};
                break;
            }
            case CmdKind::Validate: {
                st(ctx).valid = true;
                connector_prev_.reset();
                connector_next_.reset();
                if (cmd.conn_prev) connector_prev_ = 0;
                if (cmd.conn_next) connector_next_ = last_present_slot();
                for (auto& s : slots_) {
                    s.ctx[ctx].str_present = s.present;
                    s.ctx[ctx].learned_mark = false;
                }
                st(ctx).str_reason_slot.reset();
                break;
            }
            case CmdKind::Chkres:
                if (valid_any()) st(ctx).valid = true;
                break;
            case CmdKind::Provar: {
                for (std::uint32_t i = 0; i < width_; ++i) {
                    Slot& s = slots_[i];
                    if (!s.present || s.var != cmd.lit.var()) continue;
                    auto& b = s.ctx[ctx];
                    bool was_assigned = b.assigned;
                    bool now_agrees = s.polarity == cmd.lit.positive();
                    if (!was_assigned) {
                        b.assigned = true;
                        b.agrees = now_agrees;
                        b.current = true;
                    } else if (b.agrees != now_agrees) {
                        // opposite polarity over a locally decided slot
                        b.agrees = now_agrees;
                        touched_to_false_ = i;
                    }
                    if (!now_agrees) touched_to_false_ = i;
                }
                recompute(ctx);
                break;
            }
            case CmdKind::Getpro: {
                if (!st(ctx).prop_pending)
                    throw std::logic_error("clause unit: getpro with no pending propagation");
                std::uint32_t i = sole_unassigned_slot(ctx);
                Slot& s = slots_[i];
                s.ctx[ctx].assigned = true;
                s.ctx[ctx].agrees = true;
                s.ctx[ctx].current = true;
                st(ctx).reason = true;
                st(ctx).implied_slot = i;
                out.lit = slot_lit(i);
                recompute(ctx);
                break;
            }
            case CmdKind::Getvar: {
                if (cmd.slot >= width_)
                    throw std::out_of_range("clause unit: getvar slot out of range");
                const Slot& s = slots_[cmd.slot];
                out.slot = SlotRead{s.present, s.var, s.polarity};
                break;
            }
            case CmdKind::Clearvar: {
                for (std::uint32_t i = 0; i < width_; ++i) {
                    Slot& s = slots_[i];
                    if (!s.present) continue;
                    auto& b = s.ctx[ctx];
                    bool hit = cmd.all_current ? b.current : s.var == cmd.lit.var();
                    if (!hit) continue;
                    b.assigned = false;
                    b.agrees = false;
                    b.current = false;
                    if (st(ctx).implied_slot == i) {
                        st(ctx).reason = false;
                        st(ctx).implied_slot.reset();
                    }
                }
                recompute(ctx);
                break;
            }
            case CmdKind::Completedl:
                for (auto& s : slots_) s.ctx[ctx].current = false;
                break;
            case CmdKind::Copystr:
                for (auto& s : slots_) {
                    s.ctx[ctx].str_present = s.present;
                    s.ctx[ctx].learned_mark = false;
                }
                st(ctx).str_reason_slot = st(ctx).implied_slot;
                st(ctx).strengthen = false;
                st(ctx).str_fired = false;
                break;
            case CmdKind::Strprovar: {
                for (std::uint32_t i = 0; i < width_; ++i) {
                    Slot& s = slots_[i];
                    if (!s.present || s.var != cmd.lit.var() ||
                        s.polarity != cmd.lit.positive())
                        continue;
                    s.ctx[ctx].learned_mark = true;
                    if (st(ctx).str_reason_slot != i) s.ctx[ctx].str_present = false;
                }
                update_strengthen(ctx);
                break;
            }
            case CmdKind::Strgetpro: {
                if (!st(ctx).strengthen)
                    throw std::logic_error("clause unit: strgetpro with no strengthen pending");
                // the implied literal is provably redundant: drop its negation
                // (the form the learned clause carries) from the learned clause
                out.lit = slot_lit(*st(ctx).str_reason_slot).negated();
                st(ctx).strengthen = false;
                st(ctx).str_fired = true;
                break;
            }
            case CmdKind::Clearreason:
                st(ctx).reason = false;
                st(ctx).implied_slot.reset();
                break;
            case CmdKind::Getreason:
                out.reason_match = st(ctx).reason && st(ctx).implied_slot &&
                                   slot_lit(*st(ctx).implied_slot) == cmd.lit;
                break;
            case CmdKind::Getlvlbits:
                for (const auto& s : slots_) out.lvlbits.push_back(s.ctx[ctx].current);
                break;
            case CmdKind::Nop:
                break;
        }
        out.prop_flag = st(ctx).prop_pending;
        out.conflict_flag = st(ctx).conflict;
        out.strengthen_flag = st(ctx).strengthen;
        return out;
    }

    // Direct falsification of a connector slot by the neighboring unit's
    // chained-propagation wire (no message involved).
    void falsify_connector(std::uint32_t slot_idx, std::uint8_t ctx) {
        Slot& s = slots_.at(slot_idx);
        assert(s.present);
        auto& b = s.ctx[ctx];
        b.assigned = true;
        b.agrees = false;
        b.current = true;
        touched_to_false_ = slot_idx;
        recompute(ctx);
    }

    // Flags recomputed from slot state alone; kept equal to the stored flags
    // after every command.
    bool compute_prop_pending(std::uint8_t ctx) const {
        if (!st(ctx).valid) return false;
        int unassigned = 0, present = 0;
        for (const auto& s : slots_) {
            if (!s.present) continue;
            ++present;
            if (!s.ctx[ctx].assigned)
                ++unassigned;
            else if (s.ctx[ctx].agrees)
                return false;
        }
        return present > 0 && unassigned == 1;
    }

    bool compute_conflict(std::uint8_t ctx) const {
        if (!st(ctx).valid) return false;
        int present = 0;
        for (const auto& s : slots_) {
            if (!s.present) continue;
            ++present;
            if (!s.ctx[ctx].assigned || s.ctx[ctx].agrees) return false;
        }
        return present > 0;
    }

private:
    struct CtxState {
        bool valid = false;
        bool reason = false;
        bool prop_pending = false;
        bool conflict = false;
        bool strengthen = false;
        bool str_fired = false;  // strengthen already reported for this copystr session
        std::optional<std::uint32_t> implied_slot;
        std::optional<std::uint32_t> str_reason_slot;
        std::optional<std::uint32_t> conflict_slot;  // slot whose falsification completed a conflict
    };

    CtxState& st(std::uint8_t c) { return ctx_[c]; }
    const CtxState& st(std::uint8_t c) const { return ctx_[c]; }

    std::uint32_t last_present_slot() const {
        for (std::uint32_t i = width_; i-- > 0;)
            if (slots_[i].present) return i;
        throw std::logic_error("clause unit: validate on empty clause");
    }

    std::uint32_t sole_unassigned_slot(std::uint8_t ctx) const {
        for (std::uint32_t i = 0; i < width_; ++i)
            if (slots_[i].present && !slots_[i].ctx[ctx].assigned) return i;
        throw std::logic_error("clause unit: no unassigned slot");
    }

    void recompute(std::uint8_t ctx) {
        bool was_conflict = st(ctx).conflict;
        st(ctx).prop_pending = compute_prop_pending(ctx);
        st(ctx).conflict = compute_conflict(ctx);
        if (st(ctx).conflict && !was_conflict)
            st(ctx).conflict_slot = touched_to_false_;
        if (!st(ctx).conflict) st(ctx).conflict_slot.reset();
    }

    void update_strengthen(std::uint8_t ctx) {
        auto& s = st(ctx);
        if (!s.str_reason_slot) return;
        int live = 0;
        bool reason_live = false;
        for (std::uint32_t i = 0; i < width_; ++i) {
            if (!slots_[i].ctx[ctx].str_present) continue;
            ++live;
            if (s.str_reason_slot == i) reason_live = true;
        }
        if (live == 1 && reason_live) s.strengthen = true;
    }

    std::uint32_t width_;
    std::uint8_t contexts_;
    std::vector<Slot> slots_;
    std::array<CtxState, kMaxContexts> ctx_{};
    std::optional<std::uint32_t> touched_to_false_;
};

// Connector-signal exchange between two adjacent chained units. `left_fired`
// and `right_fired` say whether each side asserted its connector literal via
// getpro in the previous cycle; the cross wires falsify the partner slot. A
// simultaneous double assert leaves both sides fully falsified, so both raise
// conflict flags. Returns whether any signal crossed (the bank's idle guard).
inline bool exchange_connectors(ClauseUnit& left, ClauseUnit& right, std::uint8_t ctx,
                                bool left_fired, bool right_fired) {
    assert(left.connector_next() && right.connector_prev());
    const std::uint32_t ls = *left.connector_next();
    const std::uint32_t rs = *right.connector_prev();
    assert(left.slot(ls).var == right.slot(rs).var);
    assert(left.slot(ls).polarity != right.slot(rs).polarity);
    if (left_fired) right.falsify_connector(rs, ctx);
    if (right_fired) left.falsify_connector(ls, ctx);
    return left_fired || right_fired;
}

}  // namespace satin
