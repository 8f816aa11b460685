#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forq/buchi.hh"

namespace forq {

/// Subset of the states of a fixed automaton.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(int n_states) : bits_(static_cast<std::size_t>(n_states)) {}

    int universe_size() const { return static_cast<int>(bits_.size()); }
    void insert(int q) { bits_.set(static_cast<std::size_t>(q)); }
    bool contains(int q) const { return bits_.test(static_cast<std::size_t>(q)); }
    bool empty() const { return !bits_.any(); }
    std::size_t count() const { return bits_.count(); }

    bool subset_of(const StateSet& other) const { return bits_.subset_of(other.bits_); }

    friend bool operator==(const StateSet&, const StateSet&) = default;
    std::size_t hash() const { return bits_.hash(); }

    template <typename Fn>
    void for_each(Fn fn) const {
        bits_.for_each_set([&](std::size_t i) { fn(static_cast<int>(i)); });
    }

    const Bitset& bits() const { return bits_; }
    Bitset& bits() { return bits_; }

private:
    Bitset bits_;
};

/// Set of context triples (q, q', k) over the states of a fixed automaton,
/// where k records whether an accepting state is known to be visited on the
/// way from q to q'. Every (q, q', ⊤) member has its (q, q', ⊥) twin.
///
/// Storage is two planes (⊥ then ⊤) of per-source rows padded to whole
/// 64-bit words, so subset tests and row unions are plain word loops.
class ContextSet {
public:
    ContextSet() = default;
    explicit ContextSet(int n_states)
        : n_(n_states),
          row_words_(static_cast<std::size_t>((n_states + 63) / 64)),
          words_(2 * static_cast<std::size_t>(n_states) * row_words_, 0) {}

    int universe_size() const { return n_; }

    void insert(int q, int q2, bool top) {
        set_bit(false, q, q2);
        if (top) set_bit(true, q, q2);
    }

    bool contains(int q, int q2, bool top) const {
        return (words_[row_base(top, q) + static_cast<std::size_t>(q2 >> 6)] >>
                (static_cast<std::size_t>(q2) & 63)) &
               1;
    }

    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool subset_of(const ContextSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    friend bool operator==(const ContextSet&, const ContextSet&) = default;

    std::size_t hash() const {
        std::uint64_t h = 14695981039346656037ull ^ static_cast<std::uint64_t>(n_);
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

    template <typename Fn>
    void for_each(Fn fn) const { // fn(q, q2, top)
        for (int top = 0; top < 2; ++top)
            for (int q = 0; q < n_; ++q)
                row_for_each(top != 0, q, [&](int q2) { fn(q, q2, top != 0); });
    }

    template <typename Fn>
    void row_for_each(bool top, int q, Fn fn) const { // fn(q2)
        const std::size_t base = row_base(top, q);
        for (std::size_t wi = 0; wi < row_words_; ++wi) {
            std::uint64_t w = words_[base + wi];
            while (w) {
                fn(static_cast<int>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    /// Unions an n-state bit set into the (top, q) row.
    void or_row(bool top, int q, const Bitset& src) {
        const std::size_t base = row_base(top, q);
        const auto& sw = src.words();
        for (std::size_t wi = 0; wi < row_words_; ++wi) words_[base + wi] |= sw[wi];
    }

private:
    std::size_t row_base(bool top, int q) const {
        return ((top ? static_cast<std::size_t>(n_) : 0) + static_cast<std::size_t>(q)) * row_words_;
    }
    void set_bit(bool top, int q, int q2) {
        words_[row_base(top, q) + static_cast<std::size_t>(q2 >> 6)] |=
            std::uint64_t{1} << (static_cast<std::size_t>(q2) & 63);
    }

    int n_ = 0;
    std::size_t row_words_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Tgt(ε): the singleton holding the initial state.
StateSet tgt_initial(const Buchi& b);

/// One-letter extension: states reachable from X under `sym`.
StateSet tgt_extend(const Buchi& b, const StateSet& x, int sym);

/// Tgt(u): fold of tgt_extend over the letters of u from tgt_initial.
StateSet tgt_of_word(const Buchi& b, const Word& u);

/// Single-letter context block from the sources in X. The ⊤ bit is present
/// exactly when an endpoint of the transition is accepting.
ContextSet cxt_unit(const Buchi& b, const StateSet& x, int sym);

/// One-letter extension of a context block.
ContextSet cxt_extend(const Buchi& b, const ContextSet& c, int sym);

/// Cxt(X, v) for non-empty v: fold of cxt_unit then cxt_extend.
ContextSet cxt_of_word(const Buchi& b, const StateSet& x, const Word& v);

/// All states of b.
StateSet full_state_set(const Buchi& b);

std::string to_string(const StateSet& s);
std::string to_string(const ContextSet& c);

} // namespace forq
