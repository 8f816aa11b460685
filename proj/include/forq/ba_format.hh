#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forq/buchi.hh"

namespace forq {

/// Parse failure with the 1-based input line it was detected on.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Raw contents of a .ba file. State and symbol ids are local to the file,
/// numbered by first mention.
struct ParsedAutomaton {
    std::vector<std::string> state_names;
    std::vector<std::string> symbol_names;
    std::vector<int> initials;
    std::vector<Transition> transitions; // symbol ids index symbol_names
    std::vector<int> accepting;
    bool had_initial_section = false;
    bool had_accepting_section = false;
};

/// Parses the .ba interchange format: optional initial-state lines (a bare
/// state token each), then one or more `label,src->dst` transition lines,
/// then optional accepting-state lines. Without an initial line the first
/// mentioned state is initial; without an accepting section every state is
/// accepting. `strict` rejects files that rely on either default.
ParsedAutomaton parse_ba(const std::string& text, bool strict = false);

/// Renders an automaton in the same format: one initial line, transitions
/// sorted by (src, sym, dst), accepting lines sorted. Rejects automata the
/// grammar cannot express (no transitions, or an empty accepting set).
std::string print_ba(const Buchi& b);

/// Maps a parsed automaton onto `alphabet` (interning its symbols) and
/// normalizes it to a single initial state.
Buchi to_buchi(const ParsedAutomaton& parsed, std::shared_ptr<Alphabet> alphabet);

/// Parses two files against their union alphabet, left symbols first.
std::pair<Buchi, Buchi> load_pair(const std::string& a_text, const std::string& b_text,
                                  bool strict = false);

} // namespace forq
