#pragma once

#include <cstdint>

#include "forq/buchi.hh"

namespace forq {

/// Random-automaton parameters: `transition_density` is the expected number
/// of transitions per state and symbol, `acceptance_density` the fraction of
/// accepting states. Generation is a function of the seed.
struct GenParams {
    int n_states = 1;
    int alphabet_size = 2;
    double transition_density = 1.0; // in [0, 2]
    double acceptance_density = 0.5; // in (0, 1]
    std::uint64_t seed = 0;
};

Buchi generate(const GenParams& params);

} // namespace forq
