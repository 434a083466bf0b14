#include "pursuit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pursuit {

namespace {

std::string strip_comment(const std::string& line)
{
    auto text = line.substr(0, line.find('#'));
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_words(const std::string& text)
{
    std::istringstream is{ text };
    std::vector<std::string> words;
    for (std::string w; is >> w;)
        words.push_back(w);
    return words;
}

std::optional<std::uint32_t> parse_uint(const std::string& word)
{
    if (word.empty() || word.size() > 9 || !std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    return static_cast<std::uint32_t>(std::stoul(word));
}

std::string dot_escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

InputGraph parse_graph(std::istream& in, const std::string& source)
{
    InputGraph g;
    bool have_header = false;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto line = strip_comment(raw);
        if (line.empty())
            continue;
        const auto words = split_words(line);
        if (!have_header) {
            if (words.size() != 4 || words[0] != "graph")
                throw ParseError(source, line_no, "expected `graph <n> <directed|undirected> <reflexive|plain>`");
            const auto n = parse_uint(words[1]);
            if (!n)
                throw ParseError(source, line_no, "vertex count must be a nonnegative integer");
            if (words[2] != "directed" && words[2] != "undirected")
                throw ParseError(source, line_no, "expected `directed` or `undirected`, got `" + words[2] + "`");
            if (words[3] != "reflexive" && words[3] != "plain")
                throw ParseError(source, line_no, "expected `reflexive` or `plain`, got `" + words[3] + "`");
            g.n = *n;
            g.directed = words[2] == "directed";
            g.reflexive = words[3] == "reflexive";
            have_header = true;
            continue;
        }
        if (words.size() != 3 || words[0] != "e")
            throw ParseError(source, line_no, "expected `e <u> <v>`");
        const auto u = parse_uint(words[1]);
        const auto v = parse_uint(words[2]);
        if (!u || !v)
            throw ParseError(source, line_no, "vertex ids must be nonnegative integers");
        if (*u >= g.n || *v >= g.n)
            throw ParseError(source, line_no,
                             "vertex id out of range: graph has vertices 0.." + std::to_string(g.n) + "-1");
        if (*u == *v && g.reflexive)
            throw ParseError(source, line_no, "loop is already implied by `reflexive`");
        const std::pair key = g.directed ? std::pair{ *u, *v } : std::pair{ std::min(*u, *v), std::max(*u, *v) };
        if (!seen.insert(key).second)
            throw ParseError(source, line_no, "duplicate edge");
        g.edges.emplace_back(*u, *v);
    }
    if (!have_header)
        throw ParseError(source, line_no, "missing `graph` header");
    return g;
}

InputGraph parse_graph_file(const std::filesystem::path& path)
{
    std::ifstream in{ path };
    if (!in)
        throw std::runtime_error("cannot open graph file " + path.string());
    return parse_graph(in, path.string());
}

std::string format_graph(const InputGraph& g)
{
    std::ostringstream os;
    os << "graph " << g.n << ' ' << (g.directed ? "directed" : "undirected") << ' '
       << (g.reflexive ? "reflexive" : "plain") << '\n';
    for (auto [u, v] : g.edges)
        os << "e " << u << ' ' << v << '\n';
    return os.str();
}

std::string to_string(SolverChoice s)
{
    switch (s) {
    case SolverChoice::Labels: return "labels";
    case SolverChoice::Relations: return "relations";
    case SolverChoice::Matrix: return "matrix";
    case SolverChoice::Auto: return "auto";
    }
    return "auto";
}

bool Manifest::wants(const std::string& output) const
{
    return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir, const std::string& source)
{
    // Parameters each family accepts besides game, graph, timing, solver and
    // outputs.
    static const std::map<std::string, std::set<std::string>> accepted{
        { "classic", { "k" } },
        { "distance_k", { "k", "d" } },
        { "traps", { "k", "traps" } },
        { "tandem", { "pairs" } },
        { "eternal_domination", { "guards", "guard_moves" } },
        { "seepage", { "greens", "source", "sinks" } },
    };
    static const std::set<std::string> common{ "game", "graph", "timing", "solver", "outputs" };
    static const std::set<std::string> known_outputs{ "winner", "length", "strategy", "ordering", "trace", "dot" };

    Manifest m;
    std::map<std::string, std::pair<std::string, std::size_t>> fields;
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto line = strip_comment(raw);
        if (line.empty())
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(source, line_no, "expected `key: value`");
        auto key = strip_comment(line.substr(0, colon));
        auto value = strip_comment(line.substr(colon + 1));
        if (!fields.emplace(key, std::pair{ value, line_no }).second)
            throw ParseError(source, line_no, "duplicate key `" + key + "`");
    }

    auto require = [&](const std::string& key) -> std::pair<std::string, std::size_t>& {
        auto it = fields.find(key);
        if (it == fields.end())
            throw ParseError(source, line_no, "missing required key `" + key + "`");
        return it->second;
    };
    auto number = [&](const std::string& key, std::uint32_t& target) {
        if (auto it = fields.find(key); it != fields.end()) {
            const auto v = parse_uint(it->second.first);
            if (!v)
                throw ParseError(source, it->second.second, "`" + key + "` must be a nonnegative integer");
            target = *v;
        }
    };
    auto numbers = [&](const std::string& key, std::vector<std::uint32_t>& target) {
        if (auto it = fields.find(key); it != fields.end())
            for (const auto& w : split_words(it->second.first)) {
                const auto v = parse_uint(w);
                if (!v)
                    throw ParseError(source, it->second.second, "`" + key + "` must list nonnegative integers");
                target.push_back(*v);
            }
    };

    const auto& [family, family_line] = require("game");
    const auto family_it = accepted.find(family);
    if (family_it == accepted.end())
        throw ParseError(source, family_line, "unknown game family `" + family + "`");
    m.family = family;
    for (const auto& [key, entry] : fields)
        if (!common.count(key) && !family_it->second.count(key))
            throw ParseError(source, entry.second, "key `" + key + "` does not apply to game `" + family + "`");

    m.graph = require("graph").first;
    if (m.graph.is_relative())
        m.graph = base_dir / m.graph;

    number("k", m.k);
    number("d", m.d);
    number("pairs", m.pairs);
    number("guards", m.guards);
    number("greens", m.greens);
    number("source", m.source);
    numbers("traps", m.traps);
    numbers("sinks", m.sinks);
    if (auto it = fields.find("guard_moves"); it != fields.end()) {
        if (it->second.first == "all")
            m.guard_moves = GuardMoves::AllGuards;
        else if (it->second.first == "one")
            m.guard_moves = GuardMoves::OneGuard;
        else
            throw ParseError(source, it->second.second, "`guard_moves` must be `all` or `one`");
    }
    if (auto it = fields.find("timing"); it != fields.end()) {
        m.timing = parse_timing(it->second.first);
        if (!m.timing)
            throw ParseError(source, it->second.second,
                             "`timing` must be every_step, after_evader_move or after_pursuer_move");
    }
    if (auto it = fields.find("solver"); it != fields.end()) {
        const auto& s = it->second.first;
        if (s == "labels")
            m.solver = SolverChoice::Labels;
        else if (s == "relations")
            m.solver = SolverChoice::Relations;
        else if (s == "matrix")
            m.solver = SolverChoice::Matrix;
        else if (s == "auto")
            m.solver = SolverChoice::Auto;
        else
            throw ParseError(source, it->second.second, "`solver` must be labels, relations, matrix or auto");
    }
    if (auto it = fields.find("outputs"); it != fields.end()) {
        m.outputs = split_words(it->second.first);
        for (const auto& o : m.outputs)
            if (!known_outputs.count(o))
                throw ParseError(source, it->second.second, "unknown output `" + o + "`");
    }
    if ((m.family == "classic" || m.family == "distance_k" || m.family == "traps") && m.k == 0)
        throw ParseError(source, line_no, "`k` must be at least 1");
    return m;
}

Manifest parse_manifest_file(const std::filesystem::path& path)
{
    std::ifstream in{ path };
    if (!in)
        throw std::runtime_error("cannot open manifest " + path.string());
    return parse_manifest(in, path.parent_path(), path.string());
}

GameSpec build_game(const Manifest& m, const InputGraph& graph)
{
    auto spec = [&] {
        if (m.family == "classic")
            return classic_cops(graph, m.k);
        if (m.family == "distance_k")
            return distance_k_cops(graph, m.k, m.d);
        if (m.family == "traps")
            return traps_cops(graph, m.k, m.traps);
        if (m.family == "tandem")
            return tandem_cops(graph, m.pairs);
        if (m.family == "eternal_domination")
            return eternal_domination(graph, m.guards, m.guard_moves);
        if (m.family == "seepage")
            return seepage(graph, m.source, m.sinks, m.greens);
        throw std::invalid_argument("unknown game family " + m.family);
    }();
    if (m.timing)
        return spec.with_timing(*m.timing);
    return spec;
}

GameSpec load_game(const Manifest& manifest)
{
    return build_game(manifest, parse_graph_file(manifest.graph));
}

std::string state_digraph_dot(const GameSpec& spec, const StateDigraph& d, const LabelTable& labels)
{
    std::ostringstream os;
    os << "digraph state_digraph {\n";
    os << "  label=\"" << dot_escape(spec.name()) << "\";\n";
    for (StateIndex s = 0; s < d.size(); ++s) {
        const auto& st = d.state(s);
        os << "  s" << s << " [label=\"(" << dot_escape(spec.pursuer_name(st.position.pursuer)) << ", "
           << dot_escape(spec.evader_name(st.position.evader)) << ") " << to_string(st.turn) << "\\n"
           << labels[s] << "\", shape=" << (st.turn == Turn::PursuerToMove ? "box" : "ellipse")
           << (d.is_terminal(s) ? ", style=filled, fillcolor=lightgrey" : "") << "];\n";
    }
    for (StateIndex s = 0; s < d.size(); ++s)
        for (auto t : d.successors(s))
            os << "  s" << s << " -> s" << t << ";\n";
    os << "}\n";
    return os.str();
}

std::string round_summary_dot(const GameSpec& spec, const PositionDigraphs& digraphs)
{
    const auto product = categorical_product(digraphs.pursuer, digraphs.evader);
    const auto ne = static_cast<std::uint32_t>(digraphs.evader.vertex_count());
    std::ostringstream os;
    os << "digraph round_summary {\n";
    os << "  label=\"" << dot_escape(spec.name()) << "\";\n";
    for (std::uint32_t v = 0; v < product.vertex_count(); ++v) {
        const JointPosition pos{ { v / ne }, { v % ne } };
        os << "  v" << v << " [label=\"(" << dot_escape(spec.pursuer_name(pos.pursuer)) << ", "
           << dot_escape(spec.evader_name(pos.evader)) << ")\""
           << (spec.is_final(pos) ? ", style=filled, fillcolor=lightgrey" : "") << "];\n";
    }
    for (std::uint32_t v = 0; v < product.vertex_count(); ++v)
        for (auto w : product.out_neighbours(v))
            os << "  v" << v << " -> v" << w << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace pursuit
