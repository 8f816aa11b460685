#include "forq/buchi.hh"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace forq {

int Alphabet::intern(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

int Alphabet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

Buchi::Buchi(int n_states,
             int initial,
             std::vector<Transition> transitions,
             std::vector<int> accepting,
             std::shared_ptr<const Alphabet> alphabet,
             std::vector<std::string> state_names)
    : n_states_(n_states),
      initial_(initial),
      transitions_(std::move(transitions)),
      accepting_(std::move(accepting)),
      alphabet_(std::move(alphabet)) {
    if (n_states_ <= 0) throw std::invalid_argument("automaton needs at least one state");
    if (!alphabet_) throw std::invalid_argument("automaton needs an alphabet");
    if (initial_ < 0 || initial_ >= n_states_) throw std::invalid_argument("initial state out of range");

    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    for (const auto& t : transitions_) {
        if (t.src < 0 || t.src >= n_states_ || t.dst < 0 || t.dst >= n_states_)
            throw std::invalid_argument("transition endpoint out of range");
        if (t.sym < 0 || t.sym >= alphabet_->size())
            throw std::invalid_argument("transition symbol out of range");
    }

    std::sort(accepting_.begin(), accepting_.end());
    accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
    accepting_bits_ = Bitset(static_cast<std::size_t>(n_states_));
    for (int q : accepting_) {
        if (q < 0 || q >= n_states_) throw std::invalid_argument("accepting state out of range");
        accepting_bits_.set(static_cast<std::size_t>(q));
    }

    if (state_names.empty()) {
        state_names_.reserve(static_cast<std::size_t>(n_states_));
        for (int q = 0; q < n_states_; ++q) state_names_.push_back("q" + std::to_string(q));
    } else {
        if (static_cast<int>(state_names.size()) != n_states_)
            throw std::invalid_argument("state name table size mismatch");
        state_names_ = std::move(state_names);
    }

    const auto k = static_cast<std::size_t>(alphabet_->size());
    succ_.assign(k, std::vector<Bitset>(static_cast<std::size_t>(n_states_),
                                        Bitset(static_cast<std::size_t>(n_states_))));
    succ_acc_ = succ_;
    out_edges_.assign(static_cast<std::size_t>(n_states_), {});
    for (const auto& t : transitions_) {
        succ_[static_cast<std::size_t>(t.sym)][static_cast<std::size_t>(t.src)].set(
            static_cast<std::size_t>(t.dst));
        if (accepting_bits_.test(static_cast<std::size_t>(t.dst)))
            succ_acc_[static_cast<std::size_t>(t.sym)][static_cast<std::size_t>(t.src)].set(
                static_cast<std::size_t>(t.dst));
        out_edges_[static_cast<std::size_t>(t.src)].emplace_back(t.sym, t.dst);
    }
}

Buchi normalize_initials(int n_states,
                         const std::vector<int>& initials,
                         std::vector<Transition> transitions,
                         std::vector<int> accepting,
                         std::shared_ptr<const Alphabet> alphabet,
                         std::vector<std::string> state_names) {
    if (initials.empty()) throw std::invalid_argument("malformed automaton: no initial state");

    std::set<int> distinct(initials.begin(), initials.end());
    if (distinct.size() == 1) {
        return Buchi(n_states, *distinct.begin(), std::move(transitions), std::move(accepting),
                     std::move(alphabet), std::move(state_names));
    }

    const int fresh = n_states;
    std::vector<Transition> merged = transitions;
    for (const auto& t : transitions) {
        if (distinct.count(t.src)) merged.push_back({fresh, t.sym, t.dst});
    }
    if (state_names.empty()) {
        for (int q = 0; q < n_states; ++q) state_names.push_back("q" + std::to_string(q));
    }
    std::string fresh_name = "init";
    auto taken = [&](const std::string& s) {
        return std::find(state_names.begin(), state_names.end(), s) != state_names.end();
    };
    for (int i = 0; taken(fresh_name); ++i) fresh_name = "init" + std::to_string(i);
    state_names.push_back(fresh_name);

    return Buchi(n_states + 1, fresh, std::move(merged), std::move(accepting), std::move(alphabet),
                 std::move(state_names));
}

Buchi buchi_union(const Buchi& a, const Buchi& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw std::invalid_argument("union requires a common alphabet");

    const int offset = a.num_states();
    std::vector<Transition> transitions = a.transitions();
    for (const auto& t : b.transitions())
        transitions.push_back({t.src + offset, t.sym, t.dst + offset});

    std::vector<int> accepting = a.accepting();
    for (int q : b.accepting()) accepting.push_back(q + offset);

    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(a.num_states() + b.num_states()));
    for (const auto& s : a.state_names()) names.push_back("l_" + s);
    for (const auto& s : b.state_names()) names.push_back("r_" + s);

    return normalize_initials(a.num_states() + b.num_states(),
                              {a.initial(), b.initial() + offset}, std::move(transitions),
                              std::move(accepting), a.alphabet_ptr(), std::move(names));
}

SccPartition strongly_connected_components(int n,
                                           const std::vector<std::vector<int>>& adj,
                                           const std::vector<int>& roots) {
    SccPartition out;
    out.component.assign(static_cast<std::size_t>(n), -1);

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int next_index = 0;

    // Iterative Tarjan; frames carry the next child offset to resume at.
    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> frames;

    auto visit = [&](int root) {
        if (index[static_cast<std::size_t>(root)] != -1) return;
        frames.push_back({root, 0});
        index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;

        while (!frames.empty()) {
            auto& fr = frames.back();
            const auto& edges = adj[static_cast<std::size_t>(fr.v)];
            if (fr.child < edges.size()) {
                int w = edges[fr.child++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = lowlink[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    lowlink[static_cast<std::size_t>(fr.v)] = std::min(
                        lowlink[static_cast<std::size_t>(fr.v)], index[static_cast<std::size_t>(w)]);
                }
                continue;
            }
            int v = fr.v;
            frames.pop_back();
            if (!frames.empty()) {
                int parent = frames.back().v;
                lowlink[static_cast<std::size_t>(parent)] =
                    std::min(lowlink[static_cast<std::size_t>(parent)],
                             lowlink[static_cast<std::size_t>(v)]);
            }
            if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                int comp = out.count++;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    out.component[static_cast<std::size_t>(w)] = comp;
                } while (w != v);
            }
        }
    };

    for (int r : roots) visit(r);

    out.nontrivial.assign(static_cast<std::size_t>(out.count), false);
    for (int v = 0; v < n; ++v) {
        int cv = out.component[static_cast<std::size_t>(v)];
        if (cv < 0) continue;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (out.component[static_cast<std::size_t>(w)] == cv)
                out.nontrivial[static_cast<std::size_t>(cv)] = true;
        }
    }
    return out;
}

SccPartition sccs(const Buchi& b) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(b.num_states()));
    for (const auto& t : b.transitions()) {
        auto& row = adj[static_cast<std::size_t>(t.src)];
        if (row.empty() || row.back() != t.dst) row.push_back(t.dst);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return strongly_connected_components(b.num_states(), adj, {b.initial()});
}

Buchi reduce_final_states(const Buchi& a) {
    SccPartition p = sccs(a);
    std::vector<int> kept;
    for (int q : a.accepting()) {
        int c = p.component[static_cast<std::size_t>(q)];
        if (c >= 0 && p.nontrivial[static_cast<std::size_t>(c)]) kept.push_back(q);
    }
    return Buchi(a.num_states(), a.initial(), a.transitions(), std::move(kept), a.alphabet_ptr(),
                 a.state_names());
}

} // namespace forq
