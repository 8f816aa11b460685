#include "forq/oracle.hh"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace forq {

namespace {

constexpr int kMaxComplementStates = 5;

// A level ranking: rank[q] in 0..2n, or -1 when q is not reachable at this
// level; plus the breakpoint obligation set as a bit mask.
struct RankState {
    std::vector<int> rank;
    std::uint32_t obligations;
    friend auto operator<=>(const RankState&, const RankState&) = default;
};

struct ComplementBuilder {
    const Buchi& b;
    int max_rank;
    std::map<RankState, int> ids;
    std::vector<RankState> states;
    std::vector<Transition> transitions;

    // Ranks up to 2(n - |F|) suffice: odd ranks are only ever assigned to
    // non-accepting states.
    explicit ComplementBuilder(const Buchi& input)
        : b(input),
          max_rank(2 * (input.num_states() - static_cast<int>(input.accepting().size()))) {}

    int id_of(const RankState& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(s, id);
        states.push_back(s);
        return id;
    }

    // Successor domain and per-state rank caps under `sym`.
    void successor_caps(const RankState& cur, int sym, std::vector<int>& caps) const {
        caps.assign(static_cast<std::size_t>(b.num_states()), -1);
        for (int q = 0; q < b.num_states(); ++q) {
            int rq = cur.rank[static_cast<std::size_t>(q)];
            if (rq < 0) continue;
            for (const auto& t : b.transitions()) {
                if (t.src != q || t.sym != sym) continue;
                int& cap = caps[static_cast<std::size_t>(t.dst)];
                cap = (cap < 0) ? rq : std::min(cap, rq);
            }
        }
    }

    // Enumerates every ranking g with g(q) ≤ caps[q] on the domain, accepting
    // states restricted to even ranks, and emits the successor state for each.
    void enumerate_successors(const RankState& cur, int sym, std::vector<RankState>& out) const {
        std::vector<int> caps;
        successor_caps(cur, sym, caps);

        std::vector<int> domain;
        for (int q = 0; q < b.num_states(); ++q)
            if (caps[static_cast<std::size_t>(q)] >= 0) domain.push_back(q);

        std::uint32_t moved_obligations = 0;
        for (int q = 0; q < b.num_states(); ++q) {
            if (!(cur.obligations >> q & 1)) continue;
            for (const auto& t : b.transitions())
                if (t.src == q && t.sym == sym) moved_obligations |= std::uint32_t{1} << t.dst;
        }

        RankState next;
        next.rank.assign(static_cast<std::size_t>(b.num_states()), -1);
        out.clear();

        auto assign = [&](auto&& self, std::size_t idx) -> void {
            if (idx == domain.size()) {
                std::uint32_t evens = 0;
                for (int q : domain)
                    if (next.rank[static_cast<std::size_t>(q)] % 2 == 0)
                        evens |= std::uint32_t{1} << q;
                next.obligations = cur.obligations ? (moved_obligations & evens) : evens;
                out.push_back(next);
                return;
            }
            int q = domain[idx];
            for (int r = 0; r <= caps[static_cast<std::size_t>(q)]; ++r) {
                if (b.is_accepting(q) && r % 2 == 1) continue;
                next.rank[static_cast<std::size_t>(q)] = r;
                self(self, idx + 1);
            }
            next.rank[static_cast<std::size_t>(q)] = -1;
        };
        assign(assign, 0);
    }

    Buchi build() {
        RankState init;
        init.rank.assign(static_cast<std::size_t>(b.num_states()), -1);
        init.rank[static_cast<std::size_t>(b.initial())] = max_rank;
        init.obligations = 0;

        int init_id = id_of(init);
        std::vector<int> worklist{init_id};
        std::vector<RankState> succs;
        while (!worklist.empty()) {
            int id = worklist.back();
            worklist.pop_back();
            RankState cur = states[static_cast<std::size_t>(id)];
            for (int sym = 0; sym < b.alphabet().size(); ++sym) {
                enumerate_successors(cur, sym, succs);
                for (const auto& s : succs) {
                    bool fresh = !ids.count(s);
                    int sid = id_of(s);
                    transitions.push_back({id, sym, sid});
                    if (fresh) worklist.push_back(sid);
                }
            }
        }

        std::vector<int> accepting;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (states[i].obligations == 0) accepting.push_back(static_cast<int>(i));
            names.push_back("c" + std::to_string(i));
        }
        return Buchi(static_cast<int>(states.size()), init_id, std::move(transitions),
                     std::move(accepting), b.alphabet_ptr(), std::move(names));
    }
};

} // namespace

Buchi complement_rank_based(const Buchi& b) {
    if (b.num_states() > kMaxComplementStates)
        throw std::invalid_argument("rank-based complement is guarded to 5 states");
    return ComplementBuilder(b).build();
}

bool buchi_intersection_nonempty(const Buchi& x, const Buchi& y) {
    if (!(x.alphabet() == y.alphabet()))
        throw std::invalid_argument("intersection requires a common alphabet");

    // Product states (p, q, flag); flag 0 awaits an accepting x-state,
    // flag 1 awaits an accepting y-state. Visiting (·, q ∈ F_y, 1)
    // infinitely often means both automata accept.
    const int ny = y.num_states();
    auto encode = [&](int p, int q, int flag) { return (p * ny + q) * 2 + flag; };
    const int n = x.num_states() * ny * 2;

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<bool> discovered(static_cast<std::size_t>(n), false);
    std::vector<int> worklist;

    const int root = encode(x.initial(), y.initial(), 0);
    discovered[static_cast<std::size_t>(root)] = true;
    worklist.push_back(root);
    while (!worklist.empty()) {
        int v = worklist.back();
        worklist.pop_back();
        int flag = v % 2;
        int q = (v / 2) % ny;
        int p = v / 2 / ny;
        int next_flag = flag == 0 ? (x.is_accepting(p) ? 1 : 0) : (y.is_accepting(q) ? 0 : 1);
        for (const auto& tx : x.transitions()) {
            if (tx.src != p) continue;
            y.successors(tx.sym, q).for_each_set([&](std::size_t q2) {
                int w = encode(tx.dst, static_cast<int>(q2), next_flag);
                adj[static_cast<std::size_t>(v)].push_back(w);
                if (!discovered[static_cast<std::size_t>(w)]) {
                    discovered[static_cast<std::size_t>(w)] = true;
                    worklist.push_back(w);
                }
            });
        }
    }

    SccPartition sccs = strongly_connected_components(n, adj, {root});
    for (int p = 0; p < x.num_states(); ++p) {
        for (int q : y.accepting()) {
            int v = encode(p, q, 1);
            int c = sccs.component[static_cast<std::size_t>(v)];
            if (c >= 0 && sccs.nontrivial[static_cast<std::size_t>(c)]) return true;
        }
    }
    return false;
}

bool oracle_inclusion(const Buchi& a, const Buchi& b) {
    return !buchi_intersection_nonempty(a, complement_rank_based(b));
}

std::vector<Word> enumerate_stems(const Buchi& a, int p, int n) {
    double budget = 1.0;
    for (int i = 0; i < n; ++i) {
        budget *= a.alphabet().size();
        if (budget > 1 << 20) throw std::invalid_argument("stem enumeration budget exceeded");
    }

    std::vector<Word> out;
    struct Layer {
        Word word;
        std::vector<int> reached;
    };
    std::vector<Layer> frontier{{Word{}, {a.initial()}}};
    for (int len = 0; len <= n; ++len) {
        std::vector<Layer> next;
        for (const auto& layer : frontier) {
            if (std::find(layer.reached.begin(), layer.reached.end(), p) != layer.reached.end())
                out.push_back(layer.word);
            if (len == n) continue;
            for (int sym = 0; sym < a.alphabet().size(); ++sym) {
                std::vector<int> reached;
                for (int q : layer.reached) {
                    a.successors(sym, q).for_each_set(
                        [&](std::size_t d) { reached.push_back(static_cast<int>(d)); });
                }
                std::sort(reached.begin(), reached.end());
                reached.erase(std::unique(reached.begin(), reached.end()), reached.end());
                if (reached.empty()) continue;
                Word w = layer.word;
                w.push_back(sym);
                next.push_back({std::move(w), std::move(reached)});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace forq
