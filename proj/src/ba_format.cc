#include "forq/ba_format.hh"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace forq {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool valid_token(const std::string& t) {
    if (t.empty()) return false;
    if (t.find(',') != std::string::npos) return false;
    if (t.find("->") != std::string::npos) return false;
    for (char c : t)
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
    return true;
}

} // namespace

ParsedAutomaton parse_ba(const std::string& text, bool strict) {
    ParsedAutomaton out;
    std::unordered_map<std::string, int> state_ids;
    std::unordered_map<std::string, int> symbol_ids;

    auto state_id = [&](const std::string& name) {
        auto it = state_ids.find(name);
        if (it != state_ids.end()) return it->second;
        int id = static_cast<int>(out.state_names.size());
        out.state_names.push_back(name);
        state_ids.emplace(name, id);
        return id;
    };
    auto symbol_id = [&](const std::string& name) {
        auto it = symbol_ids.find(name);
        if (it != symbol_ids.end()) return it->second;
        int id = static_cast<int>(out.symbol_names.size());
        out.symbol_names.push_back(name);
        symbol_ids.emplace(name, id);
        return id;
    };

    enum class Section { Initials, Transitions, Accepting };
    Section section = Section::Initials;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;

        std::size_t comma = line.find(',');
        if (comma != std::string::npos) {
            if (section == Section::Accepting)
                throw ParseError(line_no, "transition after the accepting section");
            section = Section::Transitions;

            std::string label = line.substr(0, comma);
            std::string rest = line.substr(comma + 1);
            std::size_t arrow = rest.find("->");
            if (arrow == std::string::npos)
                throw ParseError(line_no, "transition needs `label,src->dst`");
            std::string src = trim(rest.substr(0, arrow));
            std::string dst = trim(rest.substr(arrow + 2));
            label = trim(label);
            if (!valid_token(label) || !valid_token(src) || !valid_token(dst))
                throw ParseError(line_no, "malformed transition token");
            out.transitions.push_back({state_id(src), symbol_id(label), state_id(dst)});
            continue;
        }

        if (!valid_token(line)) throw ParseError(line_no, "malformed state token");
        if (section == Section::Initials) {
            out.initials.push_back(state_id(line));
            out.had_initial_section = true;
        } else {
            section = Section::Accepting;
            auto it = state_ids.find(line);
            if (it == state_ids.end())
                throw ParseError(line_no, "unknown accepting state `" + line + "`");
            out.accepting.push_back(it->second);
            out.had_accepting_section = true;
        }
    }

    if (out.transitions.empty()) throw ParseError(line_no, "no transitions");
    if (strict && !out.had_initial_section)
        throw ParseError(1, "strict mode: no explicit initial state");
    if (strict && !out.had_accepting_section)
        throw ParseError(line_no, "strict mode: no explicit accepting section");

    if (!out.had_initial_section) out.initials.push_back(0); // first-mentioned state
    if (!out.had_accepting_section) {
        for (int q = 0; q < static_cast<int>(out.state_names.size()); ++q)
            out.accepting.push_back(q);
    }
    return out;
}

std::string print_ba(const Buchi& b) {
    if (b.transitions().empty())
        throw std::invalid_argument("the format cannot express an automaton without transitions");
    if (b.accepting().empty())
        throw std::invalid_argument("the format cannot express an empty accepting set");

    // States occur in the output only through the initial line and the
    // transitions, so accepting states mentioned by neither are dropped;
    // they are unreachable and cannot affect the language.
    std::vector<bool> mentioned(static_cast<std::size_t>(b.num_states()), false);
    mentioned[static_cast<std::size_t>(b.initial())] = true;
    for (const auto& t : b.transitions()) {
        mentioned[static_cast<std::size_t>(t.src)] = true;
        mentioned[static_cast<std::size_t>(t.dst)] = true;
    }
    std::vector<int> printable;
    for (int q : b.accepting())
        if (mentioned[static_cast<std::size_t>(q)]) printable.push_back(q);
    if (printable.empty())
        throw std::invalid_argument("the format cannot express an empty accepting set");

    std::ostringstream out;
    out << b.state_name(b.initial()) << "\n";
    for (const auto& t : b.transitions())
        out << b.alphabet().name(t.sym) << "," << b.state_name(t.src) << "->"
            << b.state_name(t.dst) << "\n";
    for (int q : printable) out << b.state_name(q) << "\n";
    return out.str();
}

Buchi to_buchi(const ParsedAutomaton& parsed, std::shared_ptr<Alphabet> alphabet) {
    std::vector<int> symbol_map;
    symbol_map.reserve(parsed.symbol_names.size());
    for (const auto& name : parsed.symbol_names) symbol_map.push_back(alphabet->intern(name));

    std::vector<Transition> transitions;
    transitions.reserve(parsed.transitions.size());
    for (const auto& t : parsed.transitions)
        transitions.push_back({t.src, symbol_map[static_cast<std::size_t>(t.sym)], t.dst});

    return normalize_initials(static_cast<int>(parsed.state_names.size()), parsed.initials,
                              std::move(transitions), parsed.accepting,
                              std::shared_ptr<const Alphabet>(alphabet), parsed.state_names);
}

std::pair<Buchi, Buchi> load_pair(const std::string& a_text, const std::string& b_text,
                                  bool strict) {
    ParsedAutomaton pa = parse_ba(a_text, strict);
    ParsedAutomaton pb = parse_ba(b_text, strict);
    auto alphabet = std::make_shared<Alphabet>();
    for (const auto& s : pa.symbol_names) alphabet->intern(s);
    for (const auto& s : pb.symbol_names) alphabet->intern(s);
    Buchi a = to_buchi(pa, alphabet);
    Buchi b = to_buchi(pb, alphabet);
    return {std::move(a), std::move(b)};
}

} // namespace forq
