#include "forq/membership.hh"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "forq/runsets.hh"

namespace forq {

bool member(const Buchi& b, const Word& u, const Word& v) {
    if (v.empty()) throw std::invalid_argument("membership needs a non-empty period");

    const int n = b.num_states();
    ContextSet block = cxt_of_word(b, full_state_set(b), v);

    // Reachability and cycles live in the ⊥ projection; every ⊤ edge has a
    // ⊥ twin, so nothing is lost.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
        block.row_for_each(false, q, [&](int q2) { adj[static_cast<std::size_t>(q)].push_back(q2); });

    std::vector<int> roots;
    tgt_of_word(b, u).for_each([&](int q) { roots.push_back(q); });

    SccPartition p = strongly_connected_components(n, adj, roots);
    bool found = false;
    for (int q = 0; q < n && !found; ++q) {
        int c = p.component[static_cast<std::size_t>(q)];
        if (c < 0) continue;
        block.row_for_each(true, q, [&](int q2) {
            if (p.component[static_cast<std::size_t>(q2)] == c) found = true;
        });
    }
    return found;
}

namespace {

using SeenState = std::pair<int, bool>;

std::set<SeenState> step_once(const Buchi& b, const std::set<SeenState>& cur, int sym) {
    std::set<SeenState> next;
    for (const auto& [s, seen] : cur) {
        for (const auto& t : b.transitions()) {
            if (t.src != s || t.sym != sym) continue;
            next.emplace(t.dst, seen || b.is_accepting(t.dst));
        }
    }
    return next;
}

} // namespace

bool member_bruteforce(const Buchi& b, const Word& u, const Word& v, int unroll_bound) {
    if (v.empty()) throw std::invalid_argument("membership needs a non-empty period");

    const int n = b.num_states();

    // One v-block as a relation {(x, y, accepting seen on the way)}.
    std::set<std::tuple<int, int, bool>> block;
    for (int x = 0; x < n; ++x) {
        std::set<SeenState> cur{{x, b.is_accepting(x)}};
        for (int sym : v) cur = step_once(b, cur, sym);
        for (const auto& [y, seen] : cur) block.emplace(x, y, seen);
    }

    // States reachable after reading u, then after each extra block.
    std::set<int> after_u{b.initial()};
    for (int sym : u) {
        std::set<int> next;
        for (int s : after_u)
            for (const auto& t : b.transitions())
                if (t.src == s && t.sym == sym) next.insert(t.dst);
        after_u = std::move(next);
    }

    std::vector<std::set<int>> boundary{after_u};
    for (int i = 0; i < unroll_bound; ++i) {
        std::set<int> next;
        for (int s : boundary.back())
            for (const auto& [x, y, seen] : block)
                if (x == s) next.insert(y);
        boundary.push_back(std::move(next));
    }

    // States with an accepting block cycle of some length up to the bound.
    std::set<std::tuple<int, int, bool>> power = block;
    std::set<int> accepting_cycle_states;
    for (int t = 1; t <= unroll_bound; ++t) {
        for (const auto& [x, y, seen] : power)
            if (x == y && seen) accepting_cycle_states.insert(x);
        if (t == unroll_bound) break;
        std::set<std::tuple<int, int, bool>> next;
        for (const auto& [x, y, s1] : power)
            for (const auto& [y2, z, s2] : block)
                if (y == y2) next.emplace(x, z, s1 || s2);
        power = std::move(next);
    }

    for (const auto& states : boundary)
        for (int q : states)
            if (accepting_cycle_states.count(q)) return true;
    return false;
}

} // namespace forq
