#include "forq/generator.hh"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace forq {

namespace {

std::shared_ptr<const Alphabet> make_alphabet(int size) {
    auto alphabet = std::make_shared<Alphabet>();
    for (int i = 0; i < size; ++i) {
        if (size <= 26)
            alphabet->intern(std::string(1, static_cast<char>('a' + i)));
        else
            alphabet->intern("s" + std::to_string(i));
    }
    return alphabet;
}

// Partial Fisher-Yates: the first k entries of a shuffled 0..n-1.
std::vector<int> sample_without_replacement(int n, int k, std::mt19937_64& rng) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> dist(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(dist(rng))]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

} // namespace

Buchi generate(const GenParams& params) {
    if (params.n_states < 1) throw std::invalid_argument("generator needs at least one state");
    if (params.alphabet_size < 1) throw std::invalid_argument("generator needs a symbol");
    if (params.transition_density < 0.0 || params.transition_density > 2.0)
        throw std::invalid_argument("transition density out of [0, 2]");
    if (params.acceptance_density <= 0.0 || params.acceptance_density > 1.0)
        throw std::invalid_argument("acceptance density out of (0, 1]");

    std::mt19937_64 rng(params.seed);
    const int n = params.n_states;

    std::vector<Transition> transitions;
    const int per_symbol = std::min(
        n * n, static_cast<int>(std::llround(params.transition_density * n)));
    for (int sym = 0; sym < params.alphabet_size; ++sym) {
        for (int pair : sample_without_replacement(n * n, per_symbol, rng))
            transitions.push_back({pair / n, sym, pair % n});
    }

    const int n_accepting = std::max(
        1, std::min(n, static_cast<int>(std::llround(params.acceptance_density * n))));
    std::vector<int> accepting = sample_without_replacement(n, n_accepting, rng);

    return Buchi(n, 0, std::move(transitions), std::move(accepting),
                 make_alphabet(params.alphabet_size));
}

} // namespace forq
