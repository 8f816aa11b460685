#pragma once

#include <compare>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "forq/bitset.hh"

namespace forq {

using Word = std::vector<int>; // sequence of symbol ids; empty allowed for stems

/// Ordered set of distinct symbol names; ids are contiguous in insertion order.
class Alphabet {
public:
    /// Returns the id of `name`, interning it if new. Empty names are rejected.
    int intern(const std::string& name);

    /// Id of `name`, or -1 when absent.
    int index_of(const std::string& name) const;

    const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

    friend bool operator==(const Alphabet& x, const Alphabet& y) { return x.names_ == y.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

struct Transition {
    int src;
    int sym;
    int dst;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Immutable nondeterministic Büchi automaton with a single initial state.
///
/// Transition lookups used by the inclusion engine are precomputed at
/// construction time: per (symbol, source) successor bit sets, their
/// restriction to accepting successors, and per-state outgoing edge lists.
class Buchi {
public:
    Buchi(int n_states,
          int initial,
          std::vector<Transition> transitions,
          std::vector<int> accepting,
          std::shared_ptr<const Alphabet> alphabet,
          std::vector<std::string> state_names = {});

    int num_states() const { return n_states_; }
    int initial() const { return initial_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<int>& accepting() const { return accepting_; }
    bool is_accepting(int q) const { return accepting_bits_.test(static_cast<std::size_t>(q)); }
    const Bitset& accepting_bits() const { return accepting_bits_; }

    const Alphabet& alphabet() const { return *alphabet_; }
    std::shared_ptr<const Alphabet> alphabet_ptr() const { return alphabet_; }

    const std::string& state_name(int q) const { return state_names_[static_cast<std::size_t>(q)]; }
    const std::vector<std::string>& state_names() const { return state_names_; }

    /// Successors of `src` under `sym` as a bit set over states.
    const Bitset& successors(int sym, int src) const {
        return succ_[static_cast<std::size_t>(sym)][static_cast<std::size_t>(src)];
    }
    /// Accepting successors of `src` under `sym`.
    const Bitset& accepting_successors(int sym, int src) const {
        return succ_acc_[static_cast<std::size_t>(sym)][static_cast<std::size_t>(src)];
    }
    /// Outgoing edges of `src` as (symbol, destination), sorted.
    const std::vector<std::pair<int, int>>& out_edges(int src) const {
        return out_edges_[static_cast<std::size_t>(src)];
    }

private:
    int n_states_;
    int initial_;
    std::vector<Transition> transitions_;
    std::vector<int> accepting_;
    Bitset accepting_bits_;
    std::shared_ptr<const Alphabet> alphabet_;
    std::vector<std::string> state_names_;
    std::vector<std::vector<Bitset>> succ_;     // [sym][src] -> dst set
    std::vector<std::vector<Bitset>> succ_acc_; // [sym][src] -> dst set ∩ accepting
    std::vector<std::vector<std::pair<int, int>>> out_edges_;
};

/// Builds an automaton with exactly one initial state. A singleton initial
/// set is used as-is; otherwise a fresh non-accepting state inheriting the
/// union of the initial states' outgoing transitions becomes the initial.
/// The recognized language is unchanged.
Buchi normalize_initials(int n_states,
                         const std::vector<int>& initials,
                         std::vector<Transition> transitions,
                         std::vector<int> accepting,
                         std::shared_ptr<const Alphabet> alphabet,
                         std::vector<std::string> state_names = {});

/// Union automaton: L(result) = L(a) ∪ L(b). Both inputs must share the
/// same alphabet.
Buchi buchi_union(const Buchi& a, const Buchi& b);

/// Drops accepting states that cannot be visited infinitely often (no cycle
/// through them reachable from the initial state). Language-preserving.
Buchi reduce_final_states(const Buchi& a);

/// Strongly connected components of the subgraph reachable from `roots`.
/// `component[v]` is -1 for unreachable vertices; components are numbered in
/// a deterministic order. `nontrivial[c]` holds when component c has an
/// internal edge (self-loops included).
struct SccPartition {
    std::vector<int> component;
    int count = 0;
    std::vector<bool> nontrivial;
};

SccPartition strongly_connected_components(int n,
                                           const std::vector<std::vector<int>>& adj,
                                           const std::vector<int>& roots);

/// SCCs of the automaton's transition graph (labels ignored), restricted to
/// states reachable from the initial state.
SccPartition sccs(const Buchi& b);

} // namespace forq
