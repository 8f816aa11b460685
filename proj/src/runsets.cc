#include "forq/runsets.hh"

#include <stdexcept>

namespace forq {

StateSet tgt_initial(const Buchi& b) {
    StateSet s(b.num_states());
    s.insert(b.initial());
    return s;
}

StateSet tgt_extend(const Buchi& b, const StateSet& x, int sym) {
    StateSet out(b.num_states());
    x.for_each([&](int q) { out.bits() |= b.successors(sym, q); });
    return out;
}

StateSet tgt_of_word(const Buchi& b, const Word& u) {
    StateSet s = tgt_initial(b);
    for (int a : u) s = tgt_extend(b, s, a);
    return s;
}

ContextSet cxt_unit(const Buchi& b, const StateSet& x, int sym) {
    ContextSet out(b.num_states());
    x.for_each([&](int q) {
        out.or_row(false, q, b.successors(sym, q));
        if (b.is_accepting(q))
            out.or_row(true, q, b.successors(sym, q));
        else
            out.or_row(true, q, b.accepting_successors(sym, q));
    });
    return out;
}

ContextSet cxt_extend(const Buchi& b, const ContextSet& c, int sym) {
    ContextSet out(b.num_states());
    const int n = c.universe_size();
    for (int q = 0; q < n; ++q) {
        c.row_for_each(false, q, [&](int mid) {
            out.or_row(false, q, b.successors(sym, mid));
            if (b.is_accepting(mid))
                out.or_row(true, q, b.successors(sym, mid));
            else
                out.or_row(true, q, b.accepting_successors(sym, mid));
        });
        c.row_for_each(true, q, [&](int mid) { out.or_row(true, q, b.successors(sym, mid)); });
    }
    return out;
}

ContextSet cxt_of_word(const Buchi& b, const StateSet& x, const Word& v) {
    if (v.empty()) throw std::invalid_argument("context of an empty period");
    ContextSet c = cxt_unit(b, x, v.front());
    for (std::size_t i = 1; i < v.size(); ++i) c = cxt_extend(b, c, v[i]);
    return c;
}

StateSet full_state_set(const Buchi& b) {
    StateSet s(b.num_states());
    for (int q = 0; q < b.num_states(); ++q) s.insert(q);
    return s;
}

std::string to_string(const StateSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int q) {
        if (!first) out += ",";
        out += std::to_string(q);
        first = false;
    });
    return out + "}";
}

std::string to_string(const ContextSet& c) {
    std::string out = "{";
    bool first = true;
    c.for_each([&](int q, int q2, bool top) {
        if (!first) out += ",";
        out += "(" + std::to_string(q) + "," + std::to_string(q2) + "," + (top ? "T" : "F") + ")";
        first = false;
    });
    return out + "}";
}

} // namespace forq
