#include "forq/engine.hh"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "forq/membership.hh"

namespace forq {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;
    void check() const {
        if (at && Clock::now() > *at) throw TimeoutError();
    }
};

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Worklist fixpoint shared by the stem and period vectors. Extends one
/// frontier generation per round; with prune off the loop instead stops on
/// the first round whose candidates all land inside the current upward
/// closure, which keeps the stored contents equal to the plain iterated
/// one-step extension.
template <typename Key, typename ExtendFn, typename LeqFn>
std::uint64_t run_fixpoint(const Buchi& a,
                           std::vector<std::vector<Annotated<Key>>>& chains,
                           std::vector<std::pair<int, Annotated<Key>>> seeds,
                           const ExtendFn& extend,
                           const LeqFn& leq,
                           bool prune,
                           bool descending,
                           const Deadline& dl) {
    struct Item {
        int state;
        Word word;
        Key key;
    };

    std::vector<Item> frontier;
    for (auto& [p, ann] : seeds) {
        Word word = ann.word;
        Key key = ann.key;
        if (antichain_insert(chains[static_cast<std::size_t>(p)], std::move(ann), leq, prune))
            frontier.push_back({p, std::move(word), std::move(key)});
    }

    std::uint64_t rounds = 0;
    while (!frontier.empty()) {
        std::vector<Item> cands;
        for (const auto& it : frontier) {
            dl.check();
            const auto& edges = a.out_edges(it.state);
            auto emit = [&](const std::pair<int, int>& e) {
                Word w2 = it.word;
                w2.push_back(e.first);
                cands.push_back({e.second, std::move(w2), extend(it.key, e.first)});
            };
            if (descending)
                for (auto rit = edges.rbegin(); rit != edges.rend(); ++rit) emit(*rit);
            else
                for (const auto& e : edges) emit(e);
        }
        if (cands.empty()) break;

        if (!prune) {
            bool extends_closure = false;
            for (const auto& c : cands) {
                bool subsumed = false;
                for (const auto& e : chains[static_cast<std::size_t>(c.state)])
                    if (leq(e.key, c.key)) {
                        subsumed = true;
                        break;
                    }
                if (!subsumed) {
                    extends_closure = true;
                    break;
                }
            }
            if (!extends_closure) break;
        }

        std::vector<Item> next;
        for (auto& c : cands) {
            dl.check(); // inserts dominate the runtime on wide chains
            Annotated<Key> ann{c.word, c.key};
            if (antichain_insert(chains[static_cast<std::size_t>(c.state)], std::move(ann), leq,
                                 prune))
                next.push_back(std::move(c));
        }
        ++rounds;
        frontier = std::move(next);
    }
    return rounds;
}

template <ForqFamily F>
std::uint64_t stem_fixpoint(const Buchi& a,
                            const F& f,
                            bool reversed_order, // true: ≤I⁻¹ (the W vector)
                            std::vector<std::vector<Annotated<typename F::StemKeyType>>>& chains,
                            const EngineOptions& opts,
                            const Deadline& dl) {
    using Key = typename F::StemKeyType;
    std::vector<std::pair<int, Annotated<Key>>> seeds;
    seeds.emplace_back(a.initial(), Annotated<Key>{Word{}, f.initial_stem_key()});
    auto extend = [&f](const Key& k, int sym) { return f.extend_stem(k, sym); };
    if (reversed_order) {
        auto geq = [&f](const Key& x, const Key& y) { return f.stem_leq(y, x); };
        return run_fixpoint(a, chains, std::move(seeds), extend, geq, opts.prune, false, dl);
    }
    auto leq = [&f](const Key& x, const Key& y) { return f.stem_leq(x, y); };
    return run_fixpoint(a, chains, std::move(seeds), extend, leq, opts.prune, false, dl);
}

template <ForqFamily F>
std::uint64_t period_fixpoint(const Buchi& a,
                              const F& f,
                              int s,
                              const typename F::Anchor& anchor,
                              std::vector<std::vector<Annotated<typename F::PeriodKeyType>>>& chains,
                              const EngineOptions& opts,
                              const Deadline& dl,
                              bool descending) {
    using Key = typename F::PeriodKeyType;
    std::vector<std::pair<int, Annotated<Key>>> seeds;
    const auto& edges = a.out_edges(s);
    auto seed = [&](const std::pair<int, int>& e) {
        seeds.emplace_back(e.second, Annotated<Key>{Word{e.first}, f.period_unit(anchor, e.first)});
    };
    if (descending)
        for (auto rit = edges.rbegin(); rit != edges.rend(); ++rit) seed(*rit);
    else
        for (const auto& e : edges) seed(e);

    auto extend = [&f](const Key& k, int sym) { return f.extend_period(k, sym); };
    auto leq = [&f](const Key& x, const Key& y) { return f.period_leq(x, y); };
    return run_fixpoint(a, chains, std::move(seeds), extend, leq, opts.prune, descending, dl);
}

void require_same_alphabet(const Buchi& a, const Buchi& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw std::invalid_argument("inclusion check requires a common alphabet");
}

/// Per-accepting-state cache of period bases, keyed by anchor. Sound
/// because the period order depends on the stem only through its key's
/// anchor.
template <ForqFamily F>
class AnchorCache {
public:
    using Chains = std::vector<std::vector<Annotated<typename F::PeriodKeyType>>>;

    AnchorCache(const Buchi& a, const F& f, int s, const EngineOptions& opts, const Deadline& dl,
                bool descending, EngineStats* stats)
        : a_(a), f_(f), s_(s), opts_(opts), dl_(dl), descending_(descending), stats_(stats),
          map_(8, Hash{&f}, Eq{&f}) {}

    const Chains& for_anchor(const typename F::Anchor& anchor) {
        auto it = map_.find(anchor);
        if (it != map_.end()) return it->second;
        Chains chains(static_cast<std::size_t>(a_.num_states()));
        std::uint64_t rounds = period_fixpoint(a_, f_, s_, anchor, chains, opts_, dl_, descending_);
        if (stats_) {
            stats_->period_rounds += rounds;
            stats_->period_bases_computed += 1;
            for (const auto& c : chains)
                stats_->max_period_basis = std::max(stats_->max_period_basis, c.size());
        }
        return map_.emplace(anchor, std::move(chains)).first->second;
    }

private:
    struct Hash {
        const F* f;
        std::size_t operator()(const typename F::Anchor& a) const { return f->anchor_hash(a); }
    };
    struct Eq {
        const F* f;
        bool operator()(const typename F::Anchor& x, const typename F::Anchor& y) const {
            return f->anchor_equal(x, y);
        }
    };

    const Buchi& a_;
    const F& f_;
    int s_;
    const EngineOptions& opts_;
    const Deadline& dl_;
    bool descending_;
    EngineStats* stats_;
    std::unordered_map<typename F::Anchor, Chains, Hash, Eq> map_;
};

template <ForqFamily F>
bool picky_keeps(const F& f, const Annotated<typename F::StemKeyType>& w_ent, const Word& period) {
    auto wv = w_ent.key;
    for (int sym : period) wv = f.extend_stem(wv, sym);
    return f.stem_leq(wv, w_ent.key);
}

template <ForqFamily F>
InclusionResult decide_impl(const Buchi& a_orig, const Buchi& b, const F& f,
                            const EngineOptions& opts) {
    const auto t0 = Clock::now();
    Deadline dl;
    if (opts.timeout) dl.at = t0 + *opts.timeout;

    const Buchi a = opts.acc_reduce ? reduce_final_states(a_orig) : a_orig;

    InclusionResult res;
    EngineStats& st = res.stats;

    using StemChains = std::vector<std::vector<Annotated<typename F::StemKeyType>>>;
    StemChains u_vec(static_cast<std::size_t>(a.num_states()));
    StemChains w_vec(static_cast<std::size_t>(a.num_states()));
    st.stem_rounds += stem_fixpoint(a, f, true, w_vec, opts, dl);
    st.stem_rounds += stem_fixpoint(a, f, false, u_vec, opts, dl);
    for (int p = 0; p < a.num_states(); ++p) {
        st.max_stem_basis = std::max({st.max_stem_basis, u_vec[static_cast<std::size_t>(p)].size(),
                                      w_vec[static_cast<std::size_t>(p)].size()});
    }

    for (int s : a.accepting()) {
        AnchorCache<F> cache(a, f, s, opts, dl, false, &st);
        for (const auto& w_ent : w_vec[static_cast<std::size_t>(s)]) {
            const auto& basis = cache.for_anchor(f.anchor_of(w_ent.key));
            for (const auto& v_ent : basis[static_cast<std::size_t>(s)]) {
                if (opts.picky && !picky_keeps(f, w_ent, v_ent.word)) continue;
                for (const auto& u_ent : u_vec[static_cast<std::size_t>(s)]) {
                    if (!f.stem_leq(u_ent.key, w_ent.key)) continue;
                    dl.check();
                    ++st.membership_queries;
                    if (!member(b, u_ent.word, v_ent.word)) {
                        if (!member(a_orig, u_ent.word, v_ent.word))
                            throw std::logic_error("witness fails certification against the left automaton");
                        res.included = false;
                        res.witness = Lasso{u_ent.word, v_ent.word};
                        st.time_ms = elapsed_ms(t0);
                        return res;
                    }
                }
            }
        }
    }

    res.included = true;
    st.time_ms = elapsed_ms(t0);
    return res;
}

template <ForqFamily F>
TestSet enumerate_impl(const Buchi& a_orig, const F& f, const EngineOptions& opts) {
    Deadline dl;
    if (opts.timeout) dl.at = Clock::now() + *opts.timeout;
    const Buchi a = opts.acc_reduce ? reduce_final_states(a_orig) : a_orig;

    using StemChains = std::vector<std::vector<Annotated<typename F::StemKeyType>>>;
    StemChains u_vec(static_cast<std::size_t>(a.num_states()));
    StemChains w_vec(static_cast<std::size_t>(a.num_states()));
    stem_fixpoint(a, f, true, w_vec, opts, dl);
    stem_fixpoint(a, f, false, u_vec, opts, dl);

    TestSet out;
    std::set<std::pair<Word, Word>> seen;
    for (int s : a.accepting()) {
        AnchorCache<F> cache(a, f, s, opts, dl, false, nullptr);
        for (const auto& w_ent : w_vec[static_cast<std::size_t>(s)]) {
            const auto& basis = cache.for_anchor(f.anchor_of(w_ent.key));
            for (const auto& v_ent : basis[static_cast<std::size_t>(s)]) {
                if (opts.picky && !picky_keeps(f, w_ent, v_ent.word)) continue;
                for (const auto& u_ent : u_vec[static_cast<std::size_t>(s)]) {
                    if (!f.stem_leq(u_ent.key, w_ent.key)) continue;
                    if (seen.emplace(u_ent.word, v_ent.word).second)
                        out.push_back({u_ent.word, v_ent.word});
                }
            }
        }
    }
    return out;
}

template <ForqFamily F>
TestSet enumerate_wrong_impl(const Buchi& a_orig, const F& f) {
    EngineOptions opts;
    Deadline dl;
    const Buchi a = opts.acc_reduce ? reduce_final_states(a_orig) : a_orig;

    using StemChains = std::vector<std::vector<Annotated<typename F::StemKeyType>>>;
    StemChains u_vec(static_cast<std::size_t>(a.num_states()));
    stem_fixpoint(a, f, false, u_vec, opts, dl);

    TestSet out;
    std::set<std::pair<Word, Word>> seen;
    for (int s : a.accepting()) {
        // Descending seed order picks the other representative of
        // equivalent single-letter periods, which is what makes this
        // variant's defect observable on small examples.
        AnchorCache<F> cache(a, f, s, opts, dl, true, nullptr);
        for (const auto& u_ent : u_vec[static_cast<std::size_t>(s)]) {
            const auto& basis = cache.for_anchor(f.anchor_of(u_ent.key));
            for (const auto& v_ent : basis[static_cast<std::size_t>(s)]) {
                if (seen.emplace(u_ent.word, v_ent.word).second)
                    out.push_back({u_ent.word, v_ent.word});
            }
        }
    }
    return out;
}

} // namespace

StemVector initial_stem_vector(const Buchi& a, const Buchi& b) {
    StructuralForq f(b);
    StemVector vec(static_cast<std::size_t>(a.num_states()));
    vec[static_cast<std::size_t>(a.initial())].push_back({Word{}, f.initial_stem_key()});
    return vec;
}

void rcat_step(const Buchi& a, const Buchi& b, StemVector& vec) {
    StructuralForq f(b);
    struct Cand {
        int state;
        AnnotatedStem ann;
    };
    std::vector<Cand> cands;
    for (int p = 0; p < a.num_states(); ++p) {
        for (const auto& ent : vec[static_cast<std::size_t>(p)]) {
            for (const auto& [sym, dst] : a.out_edges(p)) {
                Word w2 = ent.word;
                w2.push_back(sym);
                cands.push_back({dst, {std::move(w2), f.extend_stem(ent.key, sym)}});
            }
        }
    }
    for (auto& c : cands) {
        auto& chain = vec[static_cast<std::size_t>(c.state)];
        bool present = std::any_of(chain.begin(), chain.end(),
                                   [&](const AnnotatedStem& e) { return e.word == c.ann.word; });
        if (!present) chain.push_back(std::move(c.ann));
    }
}

StemBases compute_stem_bases(const Buchi& a, const Buchi& b, const EngineOptions& opts) {
    require_same_alphabet(a, b);
    StructuralForq f(b);
    Deadline dl;
    if (opts.timeout) dl.at = Clock::now() + *opts.timeout;
    StemBases out;
    out.u.resize(static_cast<std::size_t>(a.num_states()));
    out.w.resize(static_cast<std::size_t>(a.num_states()));
    out.rounds_w = stem_fixpoint(a, f, true, out.w, opts, dl);
    out.rounds_u = stem_fixpoint(a, f, false, out.u, opts, dl);
    return out;
}

PeriodBasis compute_period_basis(const Buchi& a, const Buchi& b, int s, const StateSet& anchor,
                                 const EngineOptions& opts) {
    require_same_alphabet(a, b);
    if (!a.is_accepting(s)) throw std::invalid_argument("period basis needs an accepting state");
    StructuralForq f(b);
    Deadline dl;
    if (opts.timeout) dl.at = Clock::now() + *opts.timeout;
    PeriodBasis out;
    out.v.resize(static_cast<std::size_t>(a.num_states()));
    out.rounds = period_fixpoint(a, f, s, anchor, out.v, opts, dl, false);
    return out;
}

InclusionResult decide_inclusion(const Buchi& a, const Buchi& b, const EngineOptions& opts) {
    require_same_alphabet(a, b);
    StructuralForq f(b);
    return decide_impl(a, b, f, opts);
}

TestSet enumerate_test_set(const Buchi& a, const Buchi& b, const EngineOptions& opts) {
    require_same_alphabet(a, b);
    StructuralForq f(b);
    return enumerate_impl(a, f, opts);
}

TestSet enumerate_wrong_test_set(const Buchi& a, const Buchi& b) {
    require_same_alphabet(a, b);
    StructuralForq f(b);
    return enumerate_wrong_impl(a, f);
}

} // namespace forq
