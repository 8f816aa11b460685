#include "forq/forq.hh"

#include <stdexcept>

namespace forq {

bool stem_leq(const StemKey& x, const StemKey& y) {
    return x.targets.subset_of(y.targets);
}

bool stem_geq(const StemKey& x, const StemKey& y) {
    return stem_leq(y, x);
}

bool period_leq(const PeriodKey& x, const PeriodKey& y) {
    if (!(x.anchor == y.anchor))
        throw std::invalid_argument("period keys with different anchors are incomparable");
    return x.contexts.subset_of(y.contexts);
}

bool check_forq_constraint(const Buchi& b, const Word& u, const Word& u2, const Word& v,
                           const Word& v2) {
    if (v.empty() || v2.empty()) throw std::invalid_argument("periods must be non-empty");
    StateSet tu = tgt_of_word(b, u);
    StateSet tu2 = tgt_of_word(b, u2);
    if (!tu.subset_of(tu2)) return true; // premise u ≤I u' fails
    if (!cxt_of_word(b, tu2, v).subset_of(cxt_of_word(b, tu2, v2))) return true;
    return cxt_of_word(b, tu, v).subset_of(cxt_of_word(b, tu, v2));
}

bool check_picky(const Buchi& b, const Word& u, const Word& v, const Word& v2) {
    if (v.empty() || v2.empty()) throw std::invalid_argument("periods must be non-empty");
    StateSet tu = tgt_of_word(b, u);
    if (!cxt_of_word(b, tu, v).subset_of(cxt_of_word(b, tu, v2))) return true;
    StateSet tuv = tu;
    for (int a : v) tuv = tgt_extend(b, tuv, a);
    StateSet tuv2 = tu;
    for (int a : v2) tuv2 = tgt_extend(b, tuv2, a);
    return tuv.subset_of(tuv2);
}

} // namespace forq
