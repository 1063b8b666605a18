#pragma once

// The preimage state machine.
//
// After choosing a prefix of j digits with walk D and value v_j, a suffix
// t in [0,1] completes a preimage of y exactly when
//
//     T(t) + D t = R,        R = (y - v_j) 2^j.
//
// Appending a digit maps (D, R) to (D + 1, 2R) or (D - 1, 2R - D - 1), and
// (D, R) admits a suffix iff min(0, D) <= R <= g(D) with g the exact envelope
// max(0, D) + (2/3) 2^-|D|. The future of a state depends on (D, R) only, so
// the reachable feasible states form a graph whose infinite paths are exactly
// the binary expansions of the points of L(y).
//
// Three families of states are terminal or special:
//   zero ray  D >= 1, R = 0   only the all-zeros suffix (a dyadic preimage)
//   ones ray  D <= -1, R = D  only the all-ones suffix (duplicate expansion)
//   max ray   R = g(D)        suffixes maximising T(t) + D t (a Cantor set)

#include "takagi.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace takagi {

struct PreimageState {
    std::size_t depth = 0;
    long slope = 0;
    Rational remainder = 0;

    friend bool operator==(const PreimageState&, const PreimageState&) = default;
};

inline PreimageState step(const PreimageState& s, std::uint8_t eps)
{
    PreimageState out;
    out.depth = s.depth + 1;
    out.slope = eps ? s.slope - 1 : s.slope + 1;
    out.remainder = detail::scale2(s.remainder, 1);
    if (eps) {
        out.remainder -= s.slope + 1;
    }
    return out;
}

inline bool feasible(long slope, const Rational& r) { return envelope_min(slope) <= r && r <= envelope_max(slope); }

inline bool feasible(const PreimageState& s) { return feasible(s.slope, s.remainder); }

enum class Terminal { none, zero_ray, ones_ray, max_ray };

inline const char* to_string(Terminal t)
{
    switch (t) {
    case Terminal::zero_ray:
        return "zero_ray";
    case Terminal::ones_ray:
        return "ones_ray";
    case Terminal::max_ray:
        return "max_ray";
    case Terminal::none:
        break;
    }
    return "none";
}

inline Terminal classify_state(long slope, const Rational& r)
{
    if (slope >= 1 && r == 0) {
        return Terminal::zero_ray;
    }
    if (slope <= -1 && r == slope) {
        return Terminal::ones_ray;
    }
    if (r == envelope_max(slope)) {
        return Terminal::max_ray;
    }
    return Terminal::none;
}

struct Budget {
    std::size_t max_states = 100000;
    long max_abs_slope = 64;
};

class StateGraph {
public:
    static constexpr int none = -1;

    struct Node {
        PreimageState state;
        Terminal terminal = Terminal::none;
        int succ[2] = {none, none};

        // Zero and ones rays are not expanded; their single continuation is implied.
        bool expanded() const { return terminal != Terminal::zero_ray && terminal != Terminal::ones_ray; }
    };

    const Rational& ordinate() const noexcept { return y_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    bool closed() const noexcept { return closed_; }
    bool empty() const noexcept { return nodes_.empty(); }
    std::size_t states_explored() const noexcept { return nodes_.size(); }
    long max_abs_slope() const noexcept { return max_abs_slope_; }

    // Digit path from the root to node i along the exploration tree.
    Bits path_to(int i) const
    {
        Bits out;
        while (i != 0) {
            out.push_back(parent_digit_[static_cast<std::size_t>(i)]);
            i = parent_[static_cast<std::size_t>(i)];
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    friend StateGraph close_graph(const Rational& y, const Budget& budget);

private:
    Rational y_;
    std::vector<Node> nodes_;
    std::vector<int> parent_;
    std::vector<std::uint8_t> parent_digit_;
    bool closed_ = false;
    long max_abs_slope_ = 0;
};

// Worklist expansion from (j=0, D=0, R=y), digit 0 before digit 1. Returns an
// open graph (closed() == false) when the budget runs out.
inline StateGraph close_graph(const Rational& y, const Budget& budget = {})
{
    StateGraph g;
    g.y_ = y;
    g.y_.canonicalize();
    PreimageState root{0, 0, g.y_};
    if (!feasible(root)) {
        g.closed_ = true;
        return g;
    }
    std::map<std::pair<long, Rational>, int> index;
    auto add = [&](const PreimageState& s, int parent, std::uint8_t digit) {
        const int id = static_cast<int>(g.nodes_.size());
        StateGraph::Node n;
        n.state = s;
        n.terminal = classify_state(s.slope, s.remainder);
        g.nodes_.push_back(std::move(n));
        g.parent_.push_back(parent);
        g.parent_digit_.push_back(digit);
        index.emplace(std::make_pair(s.slope, s.remainder), id);
        g.max_abs_slope_ = std::max(g.max_abs_slope_, std::labs(s.slope));
        return id;
    };
    add(root, StateGraph::none, 0);
    for (std::size_t head = 0; head < g.nodes_.size(); ++head) {
        if (!g.nodes_[head].expanded()) {
            continue;
        }
        for (std::uint8_t eps : {0, 1}) {
            PreimageState next = step(g.nodes_[head].state, eps);
            if (!feasible(next)) {
                continue;
            }
            auto it = index.find(std::make_pair(next.slope, next.remainder));
            int id;
            if (it != index.end()) {
                id = it->second;
            } else {
                if (g.nodes_.size() >= budget.max_states || std::labs(next.slope) > budget.max_abs_slope) {
                    g.max_abs_slope_ = std::max(g.max_abs_slope_, std::labs(next.slope));
                    return g;
                }
                id = add(next, static_cast<int>(head), eps);
            }
            g.nodes_[head].succ[eps] = id;
        }
    }
    g.closed_ = true;
    return g;
}

inline StateGraph close_graph(const ExactRational& y, const Budget& budget = {})
{
    return close_graph(y.value(), budget);
}

enum class Verdict { finite, countably_infinite, uncountable, indeterminate };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::finite:
        return "Finite";
    case Verdict::countably_infinite:
        return "CountablyInfinite";
    case Verdict::uncountable:
        return "Uncountable";
    case Verdict::indeterminate:
        break;
    }
    return "Indeterminate";
}

// One point of L(y) as an eventually periodic digit string.
struct Lasso {
    BinaryExpansion digits;

    Rational value() const { return digits.value(); }
};

struct GraphAnalysis {
    Verdict verdict = Verdict::indeterminate;
    std::size_t count = 0;
    std::string witness;
};

namespace detail {

// Strongly connected components and liveness of a closed state graph.
struct Structure {
    std::vector<int> component;               // node -> component id
    std::vector<std::vector<int>> members;    // component id -> nodes, in reverse topological order
    std::vector<bool> cyclic;                 // component has a cycle
    std::vector<bool> branching;              // component has more edges than a simple cycle
    std::vector<bool> live;                   // node has a continuation not ending in all ones
};

inline Structure analyze_structure(const StateGraph& g)
{
    const auto& nodes = g.nodes();
    const int n = static_cast<int>(nodes.size());
    Structure st;
    st.component.assign(static_cast<std::size_t>(n), -1);
    st.live.assign(static_cast<std::size_t>(n), false);

    // Iterative Tarjan; components come out successors-first.
    std::vector<int> low(static_cast<std::size_t>(n), 0), order(static_cast<std::size_t>(n), -1);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int counter = 0;
    struct Frame {
        int node;
        int next_edge;
    };
    for (int start = 0; start < n; ++start) {
        if (order[static_cast<std::size_t>(start)] != -1) {
            continue;
        }
        std::vector<Frame> call{{start, 0}};
        order[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = counter++;
        stack.push_back(start);
        on_stack[static_cast<std::size_t>(start)] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto v = static_cast<std::size_t>(f.node);
            if (f.next_edge < 2) {
                const int w = nodes[v].succ[f.next_edge++];
                if (w == StateGraph::none) {
                    continue;
                }
                const auto wi = static_cast<std::size_t>(w);
                if (order[wi] == -1) {
                    order[wi] = low[wi] = counter++;
                    stack.push_back(w);
                    on_stack[wi] = true;
                    call.push_back({w, 0});
                } else if (on_stack[wi]) {
                    low[v] = std::min(low[v], order[wi]);
                }
                continue;
            }
            if (low[v] == order[v]) {
                const int id = static_cast<int>(st.members.size());
                st.members.emplace_back();
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    st.component[static_cast<std::size_t>(w)] = id;
                    st.members.back().push_back(w);
                } while (w != f.node);
            }
            const int done = f.node;
            call.pop_back();
            if (!call.empty()) {
                const auto p = static_cast<std::size_t>(call.back().node);
                low[p] = std::min(low[p], low[static_cast<std::size_t>(done)]);
            }
        }
    }

    const std::size_t ncomp = st.members.size();
    st.cyclic.assign(ncomp, false);
    st.branching.assign(ncomp, false);
    for (std::size_t c = 0; c < ncomp; ++c) {
        std::size_t internal = 0;
        for (int v : st.members[c]) {
            for (int w : nodes[static_cast<std::size_t>(v)].succ) {
                if (w != StateGraph::none && st.component[static_cast<std::size_t>(w)] == static_cast<int>(c)) {
                    ++internal;
                }
            }
        }
        st.cyclic[c] = internal > 0;
        st.branching[c] = internal > st.members[c].size();
    }
    // Successors-first order lets liveness propagate in one sweep.
    for (std::size_t c = 0; c < ncomp; ++c) {
        bool live = st.cyclic[c];
        for (int v : st.members[c]) {
            const auto& node = nodes[static_cast<std::size_t>(v)];
            if (node.terminal == Terminal::zero_ray) {
                live = true;
            }
            for (int w : node.succ) {
                if (w != StateGraph::none && st.live[static_cast<std::size_t>(w)]) {
                    live = true;
                }
            }
        }
        for (int v : st.members[c]) {
            st.live[static_cast<std::size_t>(v)] = live;
        }
    }
    return st;
}

inline std::string describe(const PreimageState& s)
{
    return "(D=" + std::to_string(s.slope) + ", R=" + to_string(s.remainder) + ")";
}

} // namespace detail

// Verdict on a closed graph:
//   uncountable  a max-ray state, or a live component that is more than one simple cycle;
//   countable    otherwise, a dyadic preimage in (0,1) or a live cycle with an exit to live states;
//   finite       otherwise, one point per root-to-cycle lasso (plus x = 1 when y = 0).
inline GraphAnalysis analyze(const StateGraph& g)
{
    if (!g.closed()) {
        throw not_closed("state graph for y = " + to_string(g.ordinate()) + " is not closed");
    }
    GraphAnalysis out;
    if (g.empty()) {
        out.verdict = Verdict::finite;
        return out;
    }
    const auto& nodes = g.nodes();
    const auto st = detail::analyze_structure(g);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].terminal == Terminal::max_ray) {
            out.verdict = Verdict::uncountable;
            out.witness = "max-ray state " + detail::describe(nodes[i].state);
            return out;
        }
    }
    for (std::size_t c = 0; c < st.members.size(); ++c) {
        if (st.branching[c] && st.live[static_cast<std::size_t>(st.members[c].front())]) {
            out.verdict = Verdict::uncountable;
            out.witness = "branching component through "
                          + detail::describe(nodes[static_cast<std::size_t>(st.members[c].front())].state);
            return out;
        }
    }
    if (g.ordinate() != 0) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].terminal == Terminal::zero_ray) {
                out.verdict = Verdict::countably_infinite;
                out.witness = "dyadic preimage " + to_string(detail::from_bits(g.path_to(static_cast<int>(i))));
                return out;
            }
        }
    }
    for (std::size_t c = 0; c < st.members.size(); ++c) {
        if (!st.cyclic[c]) {
            continue;
        }
        for (int v : st.members[c]) {
            for (int w : nodes[static_cast<std::size_t>(v)].succ) {
                if (w != StateGraph::none && st.component[static_cast<std::size_t>(w)] != static_cast<int>(c)
                    && st.live[static_cast<std::size_t>(w)]) {
                    out.verdict = Verdict::countably_infinite;
                    out.witness = "cycle through " + detail::describe(nodes[static_cast<std::size_t>(v)].state)
                                  + " with an exit to " + detail::describe(nodes[static_cast<std::size_t>(w)].state);
                    return out;
                }
            }
        }
    }

    // Finite: count lassos through the acyclic part.
    std::vector<std::size_t> paths(nodes.size(), 0);
    for (std::size_t c = 0; c < st.members.size(); ++c) {
        for (int v : st.members[c]) {
            const auto vi = static_cast<std::size_t>(v);
            if (!st.live[vi]) {
                continue;
            }
            if (st.cyclic[c] || nodes[vi].terminal == Terminal::zero_ray) {
                paths[vi] = 1;
                continue;
            }
            for (int w : nodes[vi].succ) {
                if (w != StateGraph::none) {
                    paths[vi] += paths[static_cast<std::size_t>(w)];
                }
            }
        }
    }
    out.verdict = Verdict::finite;
    out.count = paths[0] + (g.ordinate() == 0 ? 1 : 0);
    return out;
}

// Every point of a finite level set as a lasso, in increasing order of x.
inline std::vector<Lasso> reconstruct_lassos(const StateGraph& g)
{
    const GraphAnalysis a = analyze(g);
    if (a.verdict != Verdict::finite) {
        throw not_finite("level set of y = " + to_string(g.ordinate()) + " is " + to_string(a.verdict));
    }
    std::vector<Lasso> out;
    if (g.empty()) {
        return out;
    }
    const auto& nodes = g.nodes();
    const auto st = detail::analyze_structure(g);
    Bits prefix;
    auto rec = [&](auto&& self, int v) -> void {
        const auto vi = static_cast<std::size_t>(v);
        if (!st.live[vi]) {
            return;
        }
        const int c = st.component[vi];
        if (nodes[vi].terminal == Terminal::zero_ray) {
            out.push_back({BinaryExpansion{prefix, {}}});
            return;
        }
        if (st.cyclic[static_cast<std::size_t>(c)]) {
            Bits period;
            int cur = v;
            do {
                const auto& node = nodes[static_cast<std::size_t>(cur)];
                int next = StateGraph::none;
                for (std::uint8_t eps : {0, 1}) {
                    const int w = node.succ[eps];
                    if (w != StateGraph::none && st.component[static_cast<std::size_t>(w)] == c) {
                        next = w;
                        period.push_back(eps);
                        break;
                    }
                }
                cur = next;
            } while (cur != v);
            out.push_back({BinaryExpansion{prefix, period}});
            return;
        }
        for (std::uint8_t eps : {0, 1}) {
            const int w = nodes[vi].succ[eps];
            if (w != StateGraph::none) {
                prefix.push_back(eps);
                self(self, w);
                prefix.pop_back();
            }
        }
    };
    rec(rec, 0);
    if (g.ordinate() == 0) {
        out.push_back({BinaryExpansion{{}, {1}}});
    }
    // The DFS visits digit 0 first, so lassos already come out in increasing x.
    return out;
}

inline std::vector<Rational> reconstruct_preimages(const StateGraph& g)
{
    std::vector<Rational> out;
    for (const auto& l : reconstruct_lassos(g)) {
        out.push_back(l.value());
    }
    return out;
}

// Smallest point of L(y): the lexicographically least infinite path through
// live states.
inline Rational leftmost_preimage(const Rational& y, const Budget& budget = {})
{
    const StateGraph g = close_graph(y, budget);
    if (!g.closed()) {
        throw budget_exceeded("state graph for y = " + to_string(y) + " did not close within "
                              + std::to_string(budget.max_states) + " states");
    }
    if (g.empty()) {
        throw out_of_range("y = " + to_string(y) + " is not attained by T");
    }
    const auto& nodes = g.nodes();
    const auto st = detail::analyze_structure(g);
    std::map<int, std::size_t> seen;
    Bits digits;
    int cur = 0;
    while (true) {
        const auto ci = static_cast<std::size_t>(cur);
        if (nodes[ci].terminal == Terminal::zero_ray) {
            return BinaryExpansion{digits, {}}.value();
        }
        auto [it, inserted] = seen.emplace(cur, digits.size());
        if (!inserted) {
            Bits pre(digits.begin(), digits.begin() + static_cast<long>(it->second));
            Bits per(digits.begin() + static_cast<long>(it->second), digits.end());
            return BinaryExpansion{pre, per}.value();
        }
        int next = StateGraph::none;
        for (std::uint8_t eps : {0, 1}) {
            const int w = nodes[ci].succ[eps];
            if (w != StateGraph::none && st.live[static_cast<std::size_t>(w)]) {
                next = w;
                digits.push_back(eps);
                break;
            }
        }
        if (next == StateGraph::none) {
            // Only the all-ones continuation is left; that is x = 1 (y = 0).
            return 1;
        }
        cur = next;
    }
}

} // namespace takagi
