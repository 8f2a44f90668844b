#pragma once

// The Boolean algebra generated by n named events A_1..A_n, worked with
// through its atoms: for J a subset of [n], the atom with bitmask J is the
// piece of the sample space where exactly the events in J occur. Bit j-1 of
// the mask corresponds to A_j, and serialized masks are plain unsigned
// integers. A small expression language (!, &, |, N=m, N>=m) compiles to
// atom sets for the atom-space linear programs and the CLI.

#include "exactlyone/rational.hpp"
#include "exactlyone/symmetric.hpp"

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace exactlyone {

// Atom-space computations are capped at n = 12 (4096 atoms).
inline constexpr int kMaxAtomEvents = 12;

inline void check_atom_arity(int n) {
    if (n < 1 || n > kMaxAtomEvents)
        throw std::domain_error("event count must lie in [1, 12]");
}

using Atom = std::uint32_t;

struct EventExpr {
    enum class Kind { Named, Not, And, Or, CountEq, CountGe };
    Kind kind;
    int value = 0;  // Named: 1-based event index; CountEq/CountGe: the count m
    std::shared_ptr<const EventExpr> lhs, rhs;  // Not uses lhs only
};

using EventPtr = std::shared_ptr<const EventExpr>;

inline EventPtr event_named(int k) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::Named, k, nullptr, nullptr});
}
inline EventPtr event_not(EventPtr e) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::Not, 0, std::move(e), nullptr});
}
inline EventPtr event_and(EventPtr a, EventPtr b) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::And, 0, std::move(a), std::move(b)});
}
inline EventPtr event_or(EventPtr a, EventPtr b) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::Or, 0, std::move(a), std::move(b)});
}
inline EventPtr event_count_eq(int m) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::CountEq, m, nullptr, nullptr});
}
inline EventPtr event_count_ge(int m) {
    return std::make_shared<EventExpr>(EventExpr{EventExpr::Kind::CountGe, m, nullptr, nullptr});
}

class EventParseError : public std::runtime_error {
  public:
    EventParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}
    size_t position() const { return position_; }

  private:
    size_t position_;
};

namespace detail {

// Recursive-descent parser for
//   expr   := term ("|" term)*
//   term   := factor ("&" factor)*
//   factor := "!" factor | "A" digits | "N" ("=" | ">=") digits | "(" expr ")"
// with conventional precedence ! > & > |.
class EventParser {
  public:
    EventParser(std::string_view text, int n) : text_(text), n_(n) {}

    EventPtr parse() {
        EventPtr e = expr();
        skip_space();
        if (pos_ != text_.size()) throw EventParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string_view text_;
    int n_;
    size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int digits() {
        skip_space();
        size_t start = pos_;
        long v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw EventParseError("number too large", start);
            ++pos_;
        }
        if (pos_ == start) throw EventParseError("expected digits", pos_);
        return static_cast<int>(v);
    }

    EventPtr expr() {
        EventPtr e = term();
        while (consume('|')) e = event_or(std::move(e), term());
        return e;
    }

    EventPtr term() {
        EventPtr e = factor();
        while (consume('&')) e = event_and(std::move(e), factor());
        return e;
    }

    EventPtr factor() {
        skip_space();
        if (pos_ >= text_.size()) throw EventParseError("unexpected end of input", pos_);
        if (consume('!')) return event_not(factor());
        if (consume('(')) {
            EventPtr e = expr();
            if (!consume(')')) throw EventParseError("expected ')'", pos_);
            return e;
        }
        const size_t start = pos_;
        char c = text_[pos_];
        if (c == 'A') {
            ++pos_;
            int k = digits();
            if (k < 1 || k > n_)
                throw EventParseError("event index out of range [1," + std::to_string(n_) + "]",
                                      start);
            return event_named(k);
        }
        if (c == 'N') {
            ++pos_;
            skip_space();
            bool ge = false;
            if (pos_ + 1 < text_.size() && text_[pos_] == '>' && text_[pos_ + 1] == '=') {
                ge = true;
                pos_ += 2;
            } else if (pos_ < text_.size() && text_[pos_] == '=') {
                ++pos_;
            } else {
                throw EventParseError("expected '=' or '>=' after N", pos_);
            }
            int m = digits();
            if (m < 0 || m > n_)
                throw EventParseError("count out of range [0," + std::to_string(n_) + "]", start);
            return ge ? event_count_ge(m) : event_count_eq(m);
        }
        throw EventParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace detail

inline EventPtr parse_event(std::string_view text, int n) {
    check_atom_arity(n);
    return detail::EventParser(text, n).parse();
}

// Renders an expression back to the grammar, parenthesizing only where
// precedence requires it.
inline std::string to_string(const EventExpr& e) {
    using Kind = EventExpr::Kind;
    const auto wrap = [](const EventExpr& child, bool need) {
        std::string s = to_string(child);
        return need ? "(" + s + ")" : s;
    };
    switch (e.kind) {
        case Kind::Named:
            return "A" + std::to_string(e.value);
        case Kind::CountEq:
            return "N=" + std::to_string(e.value);
        case Kind::CountGe:
            return "N>=" + std::to_string(e.value);
        case Kind::Not:
            return "!" + wrap(*e.lhs, e.lhs->kind == Kind::And || e.lhs->kind == Kind::Or);
        case Kind::And:
            return wrap(*e.lhs, e.lhs->kind == Kind::Or) + " & " +
                   wrap(*e.rhs, e.rhs->kind == Kind::Or);
        case Kind::Or:
            return to_string(*e.lhs) + " | " + to_string(*e.rhs);
    }
    throw std::logic_error("unreachable event kind");
}

// Membership set over the 2^n atoms.
struct AtomSet {
    int n = 0;
    std::vector<bool> member;  // indexed by atom bitmask

    size_t count() const {
        size_t total = 0;
        for (bool b : member) total += b;
        return total;
    }
    bool contains(Atom a) const { return member[a]; }
    std::vector<Atom> masks() const {
        std::vector<Atom> out;
        for (Atom a = 0; a < member.size(); ++a)
            if (member[a]) out.push_back(a);
        return out;
    }
};

inline AtomSet compile_to_atoms(const EventExpr& e, int n) {
    check_atom_arity(n);
    using Kind = EventExpr::Kind;
    const size_t atom_count = size_t{1} << n;
    AtomSet out{n, std::vector<bool>(atom_count, false)};
    switch (e.kind) {
        case Kind::Named:
            if (e.value < 1 || e.value > n) throw std::domain_error("event index out of range");
            for (Atom a = 0; a < atom_count; ++a) out.member[a] = (a >> (e.value - 1)) & 1u;
            break;
        case Kind::CountEq:
        case Kind::CountGe: {
            if (e.value < 0 || e.value > n) throw std::domain_error("count out of range");
            for (Atom a = 0; a < atom_count; ++a) {
                int pc = std::popcount(a);
                out.member[a] = e.kind == Kind::CountEq ? pc == e.value : pc >= e.value;
            }
            break;
        }
        case Kind::Not: {
            AtomSet inner = compile_to_atoms(*e.lhs, n);
            for (Atom a = 0; a < atom_count; ++a) out.member[a] = !inner.member[a];
            break;
        }
        case Kind::And:
        case Kind::Or: {
            AtomSet l = compile_to_atoms(*e.lhs, n);
            AtomSet r = compile_to_atoms(*e.rhs, n);
            for (Atom a = 0; a < atom_count; ++a)
                out.member[a] = e.kind == Kind::And ? (l.member[a] && r.member[a])
                                                    : (l.member[a] || r.member[a]);
            break;
        }
    }
    return out;
}

inline AtomSet compile_to_atoms(const EventPtr& e, int n) { return compile_to_atoms(*e, n); }

// Explicit probability per atom, indexed by bitmask.
struct AtomDistribution {
    int n = 0;
    std::vector<Rational> probabilities;  // 2^n entries
};

inline void validate(const AtomDistribution& d) {
    check_atom_arity(d.n);
    if (d.probabilities.size() != size_t{1} << d.n)
        throw std::domain_error("atom distribution needs 2^n entries");
    Rational total = 0;
    for (const Rational& q : d.probabilities) {
        if (q < 0) throw std::domain_error("negative atom probability");
        total += q;
    }
    if (total != 1) throw std::domain_error("atom probabilities must sum to 1");
}

inline Rational event_probability(const AtomDistribution& d, const EventExpr& e) {
    AtomSet atoms = compile_to_atoms(e, d.n);
    if (d.probabilities.size() != atoms.member.size())
        throw std::domain_error("atom distribution size mismatch");
    Rational total = 0;
    for (Atom a = 0; a < atoms.member.size(); ++a)
        if (atoms.member[a]) total += d.probabilities[a];
    return total;
}

inline Rational event_probability(const AtomDistribution& d, const EventPtr& e) {
    return event_probability(d, *e);
}

// Spreads level weights over atoms: every atom with popcount m gets x_m.
inline AtomDistribution expand_levels(const SymmetricDistribution& d) {
    check_atom_arity(d.n);
    const size_t atom_count = size_t{1} << d.n;
    AtomDistribution out{d.n, std::vector<Rational>(atom_count)};
    for (Atom a = 0; a < atom_count; ++a) out.probabilities[a] = d.levels[std::popcount(a)];
    return out;
}

}  // namespace exactlyone
