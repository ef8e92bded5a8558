#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "satin/types.hpp"

namespace satin {

// Wire field widths, in bits.
inline constexpr unsigned kHeaderBits = 6;   // 3 kind bits + 3 routing option bits
inline constexpr unsigned kNetAddrBits = 10;
inline constexpr unsigned kClauseAddrBits = 10;
inline constexpr unsigned kPolarityBits = 1;
inline constexpr unsigned kLevelBits = 14;
inline constexpr unsigned kExtraBits = 1;
inline constexpr unsigned kFlitPayloadBits = 64;
inline constexpr std::uint16_t kMaxLevel = (1u << kLevelBits) - 1;

enum class MsgKind : std::uint8_t {
    AddClause = 0,
    PropLit = 1,
    CancelVar = 2,
    CompleteDL = 3,
    Conflict = 4,
    NotReason = 5,
    Reason = 6,
    Strengthen = 7,
};

inline const char* kind_name(MsgKind k) {
    static constexpr std::array<const char*, 8> names = {
        "AddClause", "PropLit",   "CancelVar", "CompleteDL",
        "Conflict",  "NotReason", "Reason",    "Strengthen"};
    return names[static_cast<std::size_t>(k)];
}

// The three routing option bits; a network address is used in addition when
// the message is bound for one specific clause bank.
struct Routing {
    bool to_source = false;
    bool broadcast = false;
    bool to_central = false;

    friend bool operator==(const Routing&, const Routing&) = default;
};

// Simulator-side clause-install details. The paper's validate command "loads
// the connector bits" without giving them wire bits inside the <=194-bit
// AddClause budget, so they ride as metadata next to the message.
struct AddClauseMeta {
    std::uint8_t validate_mask = 1;  // bit per context to validate in
    bool has_prev = false;           // slot 0 is an inherited connector
    bool has_next = false;           // last slot is a trailing connector

    friend bool operator==(const AddClauseMeta&, const AddClauseMeta&) = default;
};

struct Message {
    MsgKind kind = MsgKind::PropLit;
    Routing routing;
    std::uint8_t context = 0;        // on the wire only where the kind has an E bit
    std::uint16_t net_addr = 0;      // N
    std::uint16_t clause_addr = 0;   // C
    Lit lit{0, true};                // V (+P where the kind has one)
    Lit lit2{0, true};               // Reason: second V/P pair (query session tag)
    std::uint16_t level = 0;         // I
    std::vector<Lit> clause;         // AddClause payload; empty = invalidate target unit
    AddClauseMeta add_meta;

    friend bool operator==(const Message&, const Message&) = default;
};

// Serialized size by field composition. The paper's table lists CancelVar,
// CompleteDL and NotReason as 25 bits, but their field compositions
// (H+V and H+N+C) total 26; the widths table is treated as normative.
inline unsigned message_bits(MsgKind kind, std::size_t clause_lits = 0) {
    const unsigned var_bits = kVarBits;
    switch (kind) {
        case MsgKind::AddClause:
            return kHeaderBits + kNetAddrBits + kClauseAddrBits +
                   static_cast<unsigned>(clause_lits) * (var_bits + kPolarityBits);
        case MsgKind::PropLit:
            return kHeaderBits + kNetAddrBits + kClauseAddrBits + var_bits +
                   kPolarityBits + kLevelBits + kExtraBits;  // 62
        case MsgKind::CancelVar:
        case MsgKind::CompleteDL:
            return kHeaderBits + var_bits;  // 26
        case MsgKind::Conflict:
            return kHeaderBits + kLevelBits + kExtraBits;  // 21
        case MsgKind::NotReason:
            return kHeaderBits + kNetAddrBits + kClauseAddrBits;  // 26
        case MsgKind::Reason:
            return kHeaderBits + 2 * var_bits + 2 * kPolarityBits;  // 48
        case MsgKind::Strengthen:
            return kHeaderBits + var_bits + kPolarityBits;  // 27
    }
    return 0;
}

inline unsigned message_bits(const Message& m) {
    return message_bits(m.kind, m.clause.size());
}

inline unsigned message_flits(const Message& m) {
    unsigned bits = message_bits(m);
    return (bits + kFlitPayloadBits - 1) / kFlitPayloadBits;
}

namespace detail {

class BitWriter {
public:
    void put(std::uint64_t value, unsigned bits) {
        for (unsigned i = bits; i-- > 0;) push_bit((value >> i) & 1u);
    }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    unsigned bit_count() const { return count_; }

private:
    void push_bit(std::uint64_t b) {
        if (count_ % 8 == 0) bytes_.push_back(0);
        if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (count_ % 8));
        ++count_;
    }
    std::vector<std::uint8_t> bytes_;
    unsigned count_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<std::uint8_t>& bytes, unsigned bit_count)
        : bytes_(bytes), bit_count_(bit_count) {}

    std::uint64_t get(unsigned bits) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < bits; ++i) {
            if (pos_ >= bit_count_) throw std::runtime_error("message decode: truncated");
            std::uint64_t b = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
            v = (v << 1) | b;
            ++pos_;
        }
        return v;
    }
    void skip(unsigned bits) { pos_ += bits; }
    unsigned remaining() const { return bit_count_ - pos_; }

private:
    const std::vector<std::uint8_t>& bytes_;
    unsigned bit_count_;
    unsigned pos_ = 0;
};

}  // namespace detail

struct EncodedMessage {
    std::vector<std::uint8_t> bytes;
    unsigned bit_count = 0;
};

// Bit-exact serialization in field-table order: header, then N, C, V(s),
// P(s), I, E as present for the kind. Context rides in the E bit for the
// kinds that have one and is simulator metadata elsewhere.
inline EncodedMessage encode(const Message& m) {
    auto check = [](std::uint64_t v, unsigned bits, const char* what) {
        if (v >= (1ull << bits))
            throw CapacityError(std::string("message encode: ") + what + " overflows field");
    };
    detail::BitWriter w;
    w.put(static_cast<std::uint64_t>(m.kind), 3);
    w.put(m.routing.to_source ? 1 : 0, 1);
    w.put(m.routing.broadcast ? 1 : 0, 1);
    w.put(m.routing.to_central ? 1 : 0, 1);
    switch (m.kind) {
        case MsgKind::AddClause:
            check(m.net_addr, kNetAddrBits, "network address");
            check(m.clause_addr, kClauseAddrBits, "clause address");
            if (m.clause.size() > 8)
                throw CapacityError("message encode: AddClause beyond 8 literals");
            w.put(m.net_addr, kNetAddrBits);
            w.put(m.clause_addr, kClauseAddrBits);
            for (Lit l : m.clause) {
                check(l.var(), kVarBits, "variable");
                w.put(l.var(), kVarBits);
            }
            for (Lit l : m.clause) w.put(l.positive() ? 1 : 0, 1);
            break;
        case MsgKind::PropLit:
            check(m.net_addr, kNetAddrBits, "network address");
            check(m.clause_addr, kClauseAddrBits, "clause address");
            check(m.lit.var(), kVarBits, "variable");
            check(m.level, kLevelBits, "implication level");
            w.put(m.net_addr, kNetAddrBits);
            w.put(m.clause_addr, kClauseAddrBits);
            w.put(m.lit.var(), kVarBits);
            w.put(m.lit.positive() ? 1 : 0, 1);
            w.put(m.level, kLevelBits);
            w.put(m.context & 1u, 1);
            break;
        case MsgKind::CancelVar:
        case MsgKind::CompleteDL:
            w.put(m.lit.var(), kVarBits);
            break;
        case MsgKind::Conflict:
            check(m.level, kLevelBits, "implication level");
            w.put(m.level, kLevelBits);
            w.put(m.context & 1u, 1);
            break;
        case MsgKind::NotReason:
            check(m.net_addr, kNetAddrBits, "network address");
            check(m.clause_addr, kClauseAddrBits, "clause address");
            w.put(m.net_addr, kNetAddrBits);
            w.put(m.clause_addr, kClauseAddrBits);
            break;
        case MsgKind::Reason:
            check(m.lit.var(), kVarBits, "variable");
            check(m.lit2.var(), kVarBits, "variable");
            w.put(m.lit.var(), kVarBits);
            w.put(m.lit2.var(), kVarBits);
            w.put(m.lit.positive() ? 1 : 0, 1);
            w.put(m.lit2.positive() ? 1 : 0, 1);
            break;
        case MsgKind::Strengthen:
            check(m.lit.var(), kVarBits, "variable");
            w.put(m.lit.var(), kVarBits);
            w.put(m.lit.positive() ? 1 : 0, 1);
            break;
    }
    return {w.bytes(), w.bit_count()};
}

inline Message decode(const EncodedMessage& e) {
    detail::BitReader r(e.bytes, e.bit_count);
    Message m;
    m.kind = static_cast<MsgKind>(r.get(3));
    m.routing.to_source = r.get(1) != 0;
    m.routing.broadcast = r.get(1) != 0;
    m.routing.to_central = r.get(1) != 0;
    switch (m.kind) {
        case MsgKind::AddClause: {
            m.net_addr = static_cast<std::uint16_t>(r.get(kNetAddrBits));
            m.clause_addr = static_cast<std::uint16_t>(r.get(kClauseAddrBits));
            unsigned lits = r.remaining() / (kVarBits + kPolarityBits);
            std::vector<Var> vars(lits);
            for (auto& v : vars) v = static_cast<Var>(r.get(kVarBits));
            for (unsigned i = 0; i < lits; ++i)
                m.clause.push_back(Lit(vars[i], r.get(1) != 0));
            break;
        }
        case MsgKind::PropLit: {
            m.net_addr = static_cast<std::uint16_t>(r.get(kNetAddrBits));
            m.clause_addr = static_cast<std::uint16_t>(r.get(kClauseAddrBits));
            Var v = static_cast<Var>(r.get(kVarBits));
            m.lit = Lit(v, r.get(1) != 0);
            m.level = static_cast<std::uint16_t>(r.get(kLevelBits));
            m.context = static_cast<std::uint8_t>(r.get(1));
            break;
        }
        case MsgKind::CancelVar:
        case MsgKind::CompleteDL:
            m.lit = Lit(static_cast<Var>(r.get(kVarBits)), true);
            break;
        case MsgKind::Conflict:
            m.level = static_cast<std::uint16_t>(r.get(kLevelBits));
            m.context = static_cast<std::uint8_t>(r.get(1));
            break;
        case MsgKind::NotReason:
            m.net_addr = static_cast<std::uint16_t>(r.get(kNetAddrBits));
            m.clause_addr = static_cast<std::uint16_t>(r.get(kClauseAddrBits));
            break;
        case MsgKind::Reason: {
            Var v1 = static_cast<Var>(r.get(kVarBits));
            Var v2 = static_cast<Var>(r.get(kVarBits));
            bool p1 = r.get(1) != 0;
            bool p2 = r.get(1) != 0;
            m.lit = Lit(v1, p1);
            m.lit2 = Lit(v2, p2);
            break;
        }
        case MsgKind::Strengthen: {
            Var v = static_cast<Var>(r.get(kVarBits));
            m.lit = Lit(v, r.get(1) != 0);
            break;
        }
    }
    if (r.remaining() != 0) throw std::runtime_error("message decode: trailing bits");
    return m;
}

// One network transfer unit. Only AddClause spans multiple flits.
struct Flit {
    std::uint64_t payload = 0;
    std::uint8_t bits = 0;
    bool last = true;
};

inline std::vector<Flit> to_flits(const Message& m) {
    EncodedMessage e = encode(m);
    std::vector<Flit> flits;
    detail::BitReader r(e.bytes, e.bit_count);
    unsigned done = 0;
    while (done < e.bit_count) {
        unsigned take = std::min(kFlitPayloadBits, e.bit_count - done);
        Flit f;
        f.payload = r.get(take);
        f.bits = static_cast<std::uint8_t>(take);
        done += take;
        f.last = done == e.bit_count;
        flits.push_back(f);
    }
    return flits;
}

}  // namespace satin
