#pragma once

#include <concepts>
#include <cstddef>

#include "forq/runsets.hh"

namespace forq {

/// Stem comparison key: the set of states the stem targets in the
/// right-hand automaton. Stems compare by set inclusion of their keys.
struct StemKey {
    StateSet targets;
    friend bool operator==(const StemKey&, const StemKey&) = default;
    std::size_t hash() const { return targets.hash(); }
};

/// Period comparison key: the context block of the period relative to an
/// anchor state set (the targets of the stem the order is indexed by).
/// Keys with different anchors are incomparable by contract.
struct PeriodKey {
    StateSet anchor;
    ContextSet contexts;
    friend bool operator==(const PeriodKey&, const PeriodKey&) = default;
};

template <typename K>
struct Annotated {
    Word word;
    K key;
};

using AnnotatedStem = Annotated<StemKey>;
using AnnotatedPeriod = Annotated<PeriodKey>;

bool stem_leq(const StemKey& x, const StemKey& y);
bool stem_geq(const StemKey& x, const StemKey& y);

/// Subset test on context blocks. Throws std::invalid_argument when the
/// anchors differ: such keys live in different period orders.
bool period_leq(const PeriodKey& x, const PeriodKey& y);

/// The family of right quasiorders induced by the structure of a fixed
/// automaton: stems keyed by target sets, periods keyed by context blocks
/// relative to the anchoring stem's target set. Keys extend incrementally
/// one letter at a time, so comparisons never re-read the words.
class StructuralForq {
public:
    using StemKeyType = StemKey;
    using PeriodKeyType = PeriodKey;
    using Anchor = StateSet;

    explicit StructuralForq(const Buchi& b) : b_(&b) {}

    const Buchi& automaton() const { return *b_; }

    StemKey initial_stem_key() const { return {tgt_initial(*b_)}; }
    StemKey extend_stem(const StemKey& k, int sym) const {
        return {tgt_extend(*b_, k.targets, sym)};
    }
    bool stem_leq(const StemKey& x, const StemKey& y) const { return forq::stem_leq(x, y); }

    Anchor anchor_of(const StemKey& k) const { return k.targets; }
    bool anchor_equal(const Anchor& x, const Anchor& y) const { return x == y; }
    std::size_t anchor_hash(const Anchor& a) const { return a.hash(); }

    PeriodKey period_unit(const Anchor& anchor, int sym) const {
        return {anchor, cxt_unit(*b_, anchor, sym)};
    }
    PeriodKey extend_period(const PeriodKey& k, int sym) const {
        return {k.anchor, cxt_extend(*b_, k.contexts, sym)};
    }
    bool period_leq(const PeriodKey& x, const PeriodKey& y) const {
        return forq::period_leq(x, y);
    }

    AnnotatedStem annotate_stem(const Word& u) const { return {u, {tgt_of_word(*b_, u)}}; }
    AnnotatedPeriod annotate_period(const Anchor& anchor, const Word& v) const {
        return {v, {anchor, cxt_of_word(*b_, anchor, v)}};
    }

private:
    const Buchi* b_;
};

/// Shape the inclusion engine is written against; the structural family is
/// the only shipped model.
template <typename F>
concept ForqFamily = requires(const F f,
                              const typename F::StemKeyType& sk,
                              const typename F::PeriodKeyType& pk,
                              const typename F::Anchor& an,
                              int sym) {
    { f.initial_stem_key() } -> std::same_as<typename F::StemKeyType>;
    { f.extend_stem(sk, sym) } -> std::same_as<typename F::StemKeyType>;
    { f.stem_leq(sk, sk) } -> std::same_as<bool>;
    { f.anchor_of(sk) } -> std::same_as<typename F::Anchor>;
    { f.anchor_equal(an, an) } -> std::same_as<bool>;
    { f.anchor_hash(an) } -> std::same_as<std::size_t>;
    { f.period_unit(an, sym) } -> std::same_as<typename F::PeriodKeyType>;
    { f.extend_period(pk, sym) } -> std::same_as<typename F::PeriodKeyType>;
    { f.period_leq(pk, pk) } -> std::same_as<bool>;
};

static_assert(ForqFamily<StructuralForq>);

/// Evaluates one instance of the family constraint
/// u ≤I u' ⇒ (v ≤F_{u'} v' ⇒ v ≤F_u v'); always true for structural
/// families. Periods must be non-empty.
bool check_forq_constraint(const Buchi& b, const Word& u, const Word& u2, const Word& v,
                           const Word& v2);

/// Evaluates one instance of v ≤F_u v' ⇒ uv ≤I uv'; always true for
/// structural families. Periods must be non-empty.
bool check_picky(const Buchi& b, const Word& u, const Word& v, const Word& v2);

} // namespace forq
