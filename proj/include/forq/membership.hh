#pragma once

#include "forq/buchi.hh"

namespace forq {

/// Decides u v^ω ∈ L(b).
///
/// The period is collapsed into a one-step block graph: nodes are states,
/// an edge (q, q', k) means q reaches q' by reading v once, with k = ⊤ when
/// some such path visits an accepting state. The word is accepted exactly
/// when, among the block-graph nodes reachable from Tgt(u), some SCC
/// contains a ⊤ edge with both endpoints inside it: pumping that cycle of
/// v-blocks yields a run visiting accepting states infinitely often, and
/// conversely any accepting run repeats a block boundary state by
/// pigeonhole.
bool member(const Buchi& b, const Word& u, const Word& v);

/// Independent oracle for member(): explicit search over the runs of
/// u v^{unroll_bound} tracking (state, accepting-seen) pairs per block.
/// Agrees with member() whenever unroll_bound ≥ n·(n+1); intended for
/// desk-scale cross-checks only.
bool member_bruteforce(const Buchi& b, const Word& u, const Word& v, int unroll_bound);

} // namespace forq
