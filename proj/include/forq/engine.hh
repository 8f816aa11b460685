#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "forq/forq.hh"

namespace forq {

struct EngineOptions {
    bool prune = true;       // keep only unsubsumed words in every vector
    bool picky = false;      // drop periods v at stem w with wv ≰I w
    bool acc_reduce = true;  // shrink the left automaton's accepting set first
    bool collect_stats = true;
    std::optional<std::chrono::milliseconds> timeout;
};

struct EngineStats {
    std::uint64_t stem_rounds = 0;
    std::uint64_t period_rounds = 0;
    std::uint64_t period_bases_computed = 0;
    std::uint64_t membership_queries = 0;
    std::size_t max_stem_basis = 0;
    std::size_t max_period_basis = 0;
    double time_ms = 0.0;
};

struct Lasso {
    Word stem;
    Word period;
    friend bool operator==(const Lasso&, const Lasso&) = default;
};

struct InclusionResult {
    bool included = true;
    std::optional<Lasso> witness; // present exactly when not included
    EngineStats stats;
};

using TestSet = std::vector<Lasso>;

class TimeoutError : public std::runtime_error {
public:
    TimeoutError() : std::runtime_error("inclusion check timed out") {}
};

/// Inserts `cand` into an antichain unless an existing element's key is ≤
/// its key (equivalent elements included: the first insertion wins), then
/// evicts the elements the candidate strictly subsumes. Returns whether
/// the candidate was added. With prune off every word is kept, deduplicated
/// by the word itself.
template <typename Entry, typename Leq>
bool antichain_insert(std::vector<Entry>& chain, Entry cand, const Leq& leq, bool prune = true) {
    if (!prune) {
        for (const auto& e : chain)
            if (e.word == cand.word) return false;
        chain.push_back(std::move(cand));
        return true;
    }
    for (const auto& e : chain)
        if (leq(e.key, cand.key)) return false;
    std::erase_if(chain, [&](const Entry& e) { return leq(cand.key, e.key); });
    chain.push_back(std::move(cand));
    return true;
}

using StemVector = std::vector<std::vector<AnnotatedStem>>;
using PeriodVector = std::vector<std::vector<AnnotatedPeriod>>;

/// The vector U_0: {ε} at the initial state of `a`, annotated against `b`.
StemVector initial_stem_vector(const Buchi& a, const Buchi& b);

/// One right-concatenation step: extends every stored word along every
/// transition of `a`, annotating new words incrementally from their parent
/// keys. Words already present are kept once.
void rcat_step(const Buchi& a, const Buchi& b, StemVector& vec);

struct StemBases {
    StemVector u; // ≤I basis of Stem_p per state p
    StemVector w; // ≤I⁻¹ basis of Stem_p per state p
    std::uint64_t rounds_u = 0;
    std::uint64_t rounds_w = 0;
};

/// Fixpoints for the two stem vectors.
StemBases compute_stem_bases(const Buchi& a, const Buchi& b, const EngineOptions& opts = {});

struct PeriodBasis {
    PeriodVector v;
    std::uint64_t rounds = 0;
};

/// Fixpoint for the period vector of accepting state `s`, with all context
/// keys taken relative to `anchor`.
PeriodBasis compute_period_basis(const Buchi& a, const Buchi& b, int s, const StateSet& anchor,
                                 const EngineOptions& opts = {});

/// Decides L(a) ⊆ L(b). Both automata must share an alphabet. A NotIncluded
/// verdict carries a lasso witness (u, v) with u v^ω ∈ L(a) \ L(b); the
/// witness is re-checked against both automata before it is returned.
InclusionResult decide_inclusion(const Buchi& a, const Buchi& b, const EngineOptions& opts = {});

/// The finite set of lassos decide_inclusion would query, in visit order,
/// without performing any membership query.
TestSet enumerate_test_set(const Buchi& a, const Buchi& b, const EngineOptions& opts = {});

/// Deliberately broken variant that anchors period bases at the ≤I-basis
/// stems instead of the ≤I⁻¹-basis ones. Querying this set does not decide
/// inclusion; it exists to demonstrate that in tests.
TestSet enumerate_wrong_test_set(const Buchi& a, const Buchi& b);

} // namespace forq
