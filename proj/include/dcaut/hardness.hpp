#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcaut/automaton.hpp"
#include "dcaut/errors.hpp"
#include "dcaut/state_set.hpp"
#include "dcaut/transition_system.hpp"
#include "dcaut/upword.hpp"

namespace dcaut {

/// Undirected graph with named vertices; edges are stored as index pairs
/// (u < v), sorted and deduplicated. No self-loops.
struct Graph {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;

    int num_vertices() const { return static_cast<int>(vertices.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (vertices[i] == name) return i;
        return -1;
    }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }

    void add_vertex(const std::string& name) {
        if (vertex_index(name) >= 0) throw InvalidArgumentError("duplicate vertex " + name);
        vertices.push_back(name);
    }

    void add_edge(int u, int v) {
        if (u == v) throw InvalidArgumentError("self-loop on vertex " + vertices[u]);
        if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
            throw InvalidArgumentError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
        if (it == edges.end() || *it != std::make_pair(u, v)) edges.insert(it, {u, v});
    }
};

/// Plain-text graph input: one "v <name>" line per vertex, then "e <name>
/// <name>" per edge; '#' starts a comment. Vertex order is file order.
inline Graph parse_graph(std::istream& in) {
    Graph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string kind;
        if (!(row >> kind)) continue;
        if (kind == "v") {
            std::string name;
            if (!(row >> name)) throw ParseError(lineno, "vertex line needs a name");
            if (g.vertex_index(name) >= 0) throw ParseError(lineno, "duplicate vertex " + name);
            g.vertices.push_back(name);
        } else if (kind == "e") {
            std::string a, b;
            if (!(row >> a >> b)) throw ParseError(lineno, "edge line needs two vertex names");
            int u = g.vertex_index(a), v = g.vertex_index(b);
            if (u < 0) throw ParseError(lineno, "unknown vertex " + a);
            if (v < 0) throw ParseError(lineno, "unknown vertex " + b);
            if (u == v) throw ParseError(lineno, "self-loop on vertex " + a);
            g.add_edge(u, v);
        } else {
            throw ParseError(lineno, "unknown directive '" + kind + "'");
        }
        std::string extra;
        if (row >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
    }
    return g;
}

/// Vertex colors, one entry per vertex. build_colored_dpa expects values in
/// 1..k; extract_coloring produces state indices (any positive ints).
using Coloring = std::vector<int>;

inline bool is_proper(const Graph& g, const Coloring& col) {
    if (static_cast<int>(col.size()) != g.num_vertices())
        throw InvalidArgumentError("coloring size does not match the vertex count");
    for (auto [u, v] : g.edges)
        if (col[u] == col[v]) return false;
    return true;
}

namespace detail {

/// Shared alphabet of the reduction: vertex letters first (letter i =
/// vertex i), then one marker letter "x_<name>" per vertex (letter n+i).
inline Alphabet reduction_alphabet(const Graph& g) {
    std::vector<std::string> letters = g.vertices;
    for (const std::string& v : g.vertices) letters.push_back("x_" + v);
    return Alphabet(std::move(letters));
}

inline std::pair<int, int> violated_edge(const Graph& g, const Coloring& col) {
    for (auto [u, v] : g.edges)
        if (col[u] == col[v]) return {u, v};
    throw InternalInvariantError("no violated edge in an improper coloring");
}

}  // namespace detail

struct Reduction {
    OmegaAutomaton a_g;
    OmegaAutomaton d_g;
};

/// The coloring-hardness instance for G: the automaton A_G accepting the
/// words with exactly one vertex letter seen infinitely often (markers x_v
/// only acceptable while sitting on v), and the don't-care automaton D_G
/// accepting the words that eventually keep moving along non-edges only, or
/// contain infinitely many markers.
inline Reduction build_reduction(const Graph& g) {
    if (g.edges.empty()) throw InvalidArgumentError("reduction needs a graph with at least one edge");
    Alphabet sigma = detail::reduction_alphabet(g);
    int n = g.num_vertices();
    int m = sigma.size();

    // A_G: state 0 = q_G (priority 1); state 1+v = vertex v (priority 0).
    std::vector<StateId> ag_delta(static_cast<std::size_t>(n + 1) * m);
    auto ag = [&](int state, int letter) -> StateId& {
        return ag_delta[static_cast<std::size_t>(state) * m + letter];
    };
    for (int v = 0; v < n; ++v) {
        ag(0, v) = 1 + v;
        ag(0, n + v) = 0;
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            ag(1 + u, v) = (u == v) ? 1 + u : 0;
            ag(1 + u, n + v) = (u == v) ? 1 + u : 0;
        }
    std::vector<std::string> ag_names{"q_G"};
    for (const std::string& v : g.vertices) ag_names.push_back(v);
    std::vector<int> ag_prio(n + 1, 0);
    ag_prio[0] = 1;
    OmegaAutomaton a_g = OmegaAutomaton::parity(
        DeterministicTransitionSystem(sigma, n + 1, 0, std::move(ag_delta), std::move(ag_names)),
        std::move(ag_prio));

    // D_G: state 0 = q_x (priority 4); state 1+3v+(i-1) = (v, i) with
    // priority i, where i records how v was entered (1: repeat, 2: non-edge
    // move or from q_x, 3: edge move).
    std::vector<StateId> dg_delta(static_cast<std::size_t>(1 + 3 * n) * m);
    auto dg = [&](int state, int letter) -> StateId& {
        return dg_delta[static_cast<std::size_t>(state) * m + letter];
    };
    auto vstate = [&](int v, int i) { return 1 + 3 * v + (i - 1); };
    for (int v = 0; v < n; ++v) {
        dg(0, v) = vstate(v, 2);
        dg(0, n + v) = 0;
    }
    for (int u = 0; u < n; ++u)
        for (int i = 1; i <= 3; ++i) {
            for (int v = 0; v < n; ++v) {
                int entry = (u == v) ? 1 : (g.has_edge(u, v) ? 3 : 2);
                dg(vstate(u, i), v) = vstate(v, entry);
                dg(vstate(u, i), n + v) = 0;
            }
        }
    std::vector<std::string> dg_names{"q_x"};
    std::vector<int> dg_prio{4};
    for (int v = 0; v < n; ++v)
        for (int i = 1; i <= 3; ++i) {
            dg_names.push_back("(" + g.vertices[v] + "," + std::to_string(i) + ")");
            dg_prio.push_back(i);
        }
    OmegaAutomaton d_g = OmegaAutomaton::parity(
        DeterministicTransitionSystem(sigma, 1 + 3 * n, 0, std::move(dg_delta), std::move(dg_names)),
        std::move(dg_prio));
    return {std::move(a_g), std::move(d_g)};
}

/// The (k+1)-state automaton of a proper coloring: one priority-0 state per
/// color class, reached from and falling back to the priority-1 state q_0 on
/// any color change.
inline OmegaAutomaton build_colored_dpa(const Graph& g, const Coloring& col) {
    if (g.edges.empty()) throw InvalidArgumentError("reduction needs a graph with at least one edge");
    if (static_cast<int>(col.size()) != g.num_vertices())
        throw InvalidArgumentError("coloring size does not match the vertex count");
    int k = 0;
    for (int c : col) {
        if (c < 1) throw InvalidArgumentError("colors must be positive");
        k = std::max(k, c);
    }
    if (!is_proper(g, col)) {
        auto [u, v] = detail::violated_edge(g, col);
        throw PreconditionError("coloring is improper on edge (" + g.vertices[u] + ", " +
                                g.vertices[v] + ")");
    }
    Alphabet sigma = detail::reduction_alphabet(g);
    int n = g.num_vertices();
    int m = sigma.size();
    std::vector<StateId> delta(static_cast<std::size_t>(k + 1) * m);
    auto at = [&](int state, int letter) -> StateId& {
        return delta[static_cast<std::size_t>(state) * m + letter];
    };
    for (int v = 0; v < n; ++v) {
        at(0, v) = col[v];
        at(0, n + v) = 0;
    }
    for (int i = 1; i <= k; ++i)
        for (int v = 0; v < n; ++v) {
            at(i, v) = (i == col[v]) ? i : 0;
            at(i, n + v) = (i == col[v]) ? i : 0;
        }
    std::vector<std::string> names;
    std::vector<int> prio(k + 1, 0);
    prio[0] = 1;
    for (int i = 0; i <= k; ++i) names.push_back("q" + std::to_string(i));
    return OmegaAutomaton::parity(
        DeterministicTransitionSystem(sigma, k + 1, 0, std::move(delta), std::move(names)),
        std::move(prio));
}

/// Reads a coloring off a small automaton assumed equivalent to A_G modulo
/// the reduction's don't-care set: after renaming so that state 0 has odd
/// priority, col(v) is the least even-priority state recurring on v^ω.
/// Absence means some v^ω has no recurring even state (so the assumption
/// failed); an improper extracted map raises an error naming the edge.
inline std::optional<Coloring> extract_coloring(const OmegaAutomaton& c, const Graph& g) {
    std::vector<int> prio = c.parity_view();
    int odd = -1;
    for (int q = 0; q < c.num_states() && odd < 0; ++q)
        if (prio[q] % 2 != 0) odd = q;
    if (odd < 0)
        throw PreconditionError(
            "automaton has no odd-priority state, so it accepts every word ending in a vertex "
            "cycle and cannot match the reduction instance");
    // Swap state `odd` to index 0; the identity everywhere else.
    auto renamed = [&](StateId q) { return q == odd ? 0 : (q == 0 ? odd : q); };

    Coloring col(g.num_vertices(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::optional<int> letter = c.alphabet().find(g.vertices[v]);
        if (!letter)
            throw InvalidArgumentError("automaton alphabet lacks vertex letter " + g.vertices[v]);
        StateSet inf = inf_set(c.ts(), UltimatelyPeriodicWord(Word{}, Word{*letter}));
        int best = -1;
        for (int q : inf.elements())
            if (prio[q] % 2 == 0) best = (best < 0) ? renamed(q) : std::min(best, renamed(q));
        if (best < 0) return std::nullopt;
        col[v] = best;
    }
    if (!is_proper(g, col)) {
        auto [u, v] = detail::violated_edge(g, col);
        throw PreconditionError("extracted coloring is improper on edge (" + g.vertices[u] + ", " +
                                g.vertices[v] + ")");
    }
    return col;
}

struct ChromaticResult {
    int k = 0;
    Coloring witness;
};

/// Smallest k ≤ kmax admitting a proper k-coloring, with the
/// lexicographically least witness, by exhaustive search.
inline std::optional<ChromaticResult> chromatic_number_bruteforce(const Graph& g, int kmax) {
    int n = g.num_vertices();
    for (int k = 1; k <= kmax; ++k) {
        double count = 1;
        for (int i = 0; i < n; ++i) count *= k;
        if (count > 1e7)
            throw ResourceLimitError("coloring search space " + std::to_string(k) + "^" +
                                     std::to_string(n) + " exceeds the 10^7 guard");
        Coloring col(n, 1);
        for (;;) {
            if (is_proper(g, col)) return ChromaticResult{k, col};
            int i = n - 1;
            while (i >= 0 && ++col[i] > k) col[i--] = 1;
            if (i < 0) break;
        }
    }
    return std::nullopt;
}

/// All complete Büchi automata with num_states states (initial fixed at 0)
/// over the alphabet, in lexicographic (transition table, accepting mask)
/// order, filtered by the predicate.
template <typename Predicate>
std::vector<OmegaAutomaton> enumerate_dbas(int num_states, const Alphabet& alphabet,
                                           Predicate keep) {
    if (num_states < 1) throw InvalidArgumentError("need at least one state");
    int m = alphabet.size();
    double total = 1;
    for (int i = 0; i < num_states * m; ++i) total *= num_states;
    for (int i = 0; i < num_states; ++i) total *= 2;
    if (total > 1e7)
        throw ResourceLimitError("DBA enumeration space exceeds the 10^7 guard");

    std::vector<std::string> names;
    for (int i = 0; i < num_states; ++i) names.push_back("q" + std::to_string(i));
    std::vector<OmegaAutomaton> out;
    std::vector<StateId> delta(static_cast<std::size_t>(num_states) * m, 0);
    for (;;) {
        for (std::uint32_t mask = 0; mask < (1u << num_states); ++mask) {
            StateSet acc(num_states);
            for (int q = 0; q < num_states; ++q)
                if (mask & (1u << q)) acc.insert(q);
            OmegaAutomaton a = OmegaAutomaton::buchi(
                DeterministicTransitionSystem(alphabet, num_states, 0, delta, names), acc);
            if (keep(a)) out.push_back(std::move(a));
        }
        int i = static_cast<int>(delta.size()) - 1;
        while (i >= 0 && ++delta[i] == num_states) delta[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace dcaut
