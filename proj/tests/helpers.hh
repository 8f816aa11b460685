#pragma once

#include <memory>
#include <random>
#include <string>

#include "forq/buchi.hh"
#include "forq/runsets.hh"

namespace forq::test {

inline std::shared_ptr<Alphabet> ab_alphabet() {
    auto alphabet = std::make_shared<Alphabet>();
    alphabet->intern("a");
    alphabet->intern("b");
    return alphabet;
}

// One state with a/b self-loops, accepting: recognizes every infinite word.
inline Buchi demo_left(std::shared_ptr<Alphabet> alphabet = ab_alphabet()) {
    return Buchi(1, 0, {{0, 0, 0}, {0, 1, 0}}, {0}, alphabet, {"p0"});
}

// Three states: q0 -a,b-> q1; q1 self-loops a,b and steps to q2; q2 loops on
// b only and is the accepting state. Recognizes the words with finitely many a's.
inline Buchi demo_right(std::shared_ptr<Alphabet> alphabet = ab_alphabet()) {
    return Buchi(3, 0,
                 {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {1, 0, 2}, {1, 1, 2}, {2, 1, 2}},
                 {2}, alphabet, {"q0", "q1", "q2"});
}

inline Word make_word(const std::string& letters) {
    Word w;
    for (char c : letters) w.push_back(c - 'a');
    return w;
}

inline StateSet make_states(const Buchi& b, std::initializer_list<int> qs) {
    StateSet s(b.num_states());
    for (int q : qs) s.insert(q);
    return s;
}

inline Word random_word(std::mt19937_64& rng, int n_symbols, int min_len, int max_len) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::uniform_int_distribution<int> sym_dist(0, n_symbols - 1);
    Word w(static_cast<std::size_t>(len_dist(rng)));
    for (auto& sym : w) sym = sym_dist(rng);
    return w;
}

} // namespace forq::test
