#pragma once

#include "forq/buchi.hh"

namespace forq {

/// Classical level-ranking complement: states pair a ranking of the
/// currently reachable states (ranks bounded by 2·n, accepting states even)
/// with the obligation set of the breakpoint construction. Exponential;
/// guarded to n ≤ 5 states.
Buchi complement_rank_based(const Buchi& b);

/// Emptiness of L(x) ∩ L(y) via the flagged product and an SCC check.
bool buchi_intersection_nonempty(const Buchi& x, const Buchi& y);

/// Ground-truth inclusion for desk-scale automata: emptiness of
/// L(a) ∩ L(complement(b)). Shares no machinery with the inclusion engine.
bool oracle_inclusion(const Buchi& a, const Buchi& b);

/// All words of length ≤ n that reach state p from the initial state.
/// Guarded: |Σ|^n must stay small.
std::vector<Word> enumerate_stems(const Buchi& a, int p, int n);

} // namespace forq
