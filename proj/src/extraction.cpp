#include "qe/extraction.h"

#include <algorithm>
#include <set>
#include <tuple>

namespace qe {

bool repr_fn::is_total(egraph const& g) const {
    for (node_id n = 0; n < g.num_nodes(); ++n)
        if (!defined(n))
            return false;
    return true;
}

std::vector<std::pair<node_id, node_id>> repr_graph_edges(egraph const& g, repr_fn const& r) {
    std::vector<std::pair<node_id, node_id>> es;
    for (node_id n = 0; n < g.num_nodes(); ++n)
        for (node_id c : g.children(n))
            if (r.defined(c))
                es.push_back({n, r(c)});
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
}

namespace {

std::vector<std::vector<node_id>> adjacency(egraph const& g, repr_fn const& r) {
    std::vector<std::vector<node_id>> adj(g.num_nodes());
    for (auto [a, b] : repr_graph_edges(g, r))
        adj[a].push_back(b);
    return adj;
}

// Topological order of the graph, or nullopt if it has a cycle.
std::optional<std::vector<node_id>> topo_order(std::vector<std::vector<node_id>> const& adj) {
    enum { white, grey, black };
    std::vector<int> color(adj.size(), white);
    std::vector<node_id> order;
    for (node_id s = 0; s < adj.size(); ++s) {
        if (color[s] != white)
            continue;
        std::vector<std::pair<node_id, std::size_t>> stack{{s, 0}};
        color[s] = grey;
        while (!stack.empty()) {
            auto& [n, i] = stack.back();
            if (i < adj[n].size()) {
                node_id m = adj[n][i++];
                if (color[m] == grey)
                    return std::nullopt;
                if (color[m] == white) {
                    color[m] = grey;
                    stack.push_back({m, 0});
                }
            } else {
                color[n] = black;
                order.push_back(n);
                stack.pop_back();
            }
        }
    }
    return order;
}

}

admissibility check_admissible(egraph const& g, repr_fn const& r, bool allow_partial) {
    auto fail = [](std::string msg) { return admissibility{false, std::move(msg)}; };
    std::set<node_id> used;
    for (node_id root : g.roots()) {
        auto const& cls = g.class_of(root);
        node_id rep = r(cls.front());
        for (node_id n : cls)
            if (r(n) != rep)
                return fail("class of node " + std::to_string(root) + " has more than one representative");
        if (rep == undef_node) {
            if (!allow_partial)
                return fail("node " + std::to_string(root) + " has no representative");
            continue;
        }
        if (rep >= g.num_nodes() || !g.same_class(rep, root))
            return fail("representative " + std::to_string(rep) + " lies outside the class of node " +
                        std::to_string(root));
        if (!used.insert(rep).second)
            return fail("node " + std::to_string(rep) + " represents two classes");
        for (node_id c : g.children(rep))
            if (!r.defined(c))
                return fail("representative " + std::to_string(rep) + " has a child without representative");
    }
    if (!topo_order(adjacency(g, r)))
        return fail("the representative graph has a cycle");
    return {};
}

std::optional<unsigned> longest_repr_path(egraph const& g, repr_fn const& r) {
    auto adj = adjacency(g, r);
    auto order = topo_order(adj);
    if (!order)
        return std::nullopt;
    // order is a post-order: successors come first.
    std::vector<unsigned> len(adj.size(), 0);
    unsigned best = 0;
    for (node_id n : *order) {
        for (node_id m : adj[n])
            len[n] = std::max(len[n], len[m] + 1);
        best = std::max(best, len[n]);
    }
    return best;
}

extractor::extractor(egraph const& g, repr_fn const& r)
    : m_g(g), m_r(r), m_budget(g.num_classes()), m_memo(g.num_nodes(), none) {}

term_id extractor::go(node_id n, unsigned depth) {
    if (depth > m_budget)
        throw extraction_budget_error("extraction exceeded the depth budget of " + std::to_string(m_budget) +
                                      "; the representative function is not admissible");
    if (m_memo[n] != none)
        return m_memo[n];
    std::vector<term_id> args;
    for (node_id c : m_g.children(n)) {
        if (!m_r.defined(c))
            throw extraction_budget_error("node " + std::to_string(c) + " has no representative");
        args.push_back(go(m_r(c), depth + 1));
    }
    term_id t = args.empty() ? m_g.term(n) : m_g.manager().mk_app(m_g.label(n), args);
    m_memo[n] = t;
    return t;
}

term_id to_expr(egraph const& g, node_id n, repr_fn const& r) {
    extractor x(g, r);
    return x.to_expr(n);
}

literal normalize_literal(term_manager& m, literal l) {
    if (l.kind != lit_kind::eq)
        return l;
    auto is_const = [&](term_id t) { return m.is_true(t) || m.is_false(t); };
    if (is_const(l.lhs) && !is_const(l.rhs))
        std::swap(l.lhs, l.rhs);
    if (m.is_true(l.rhs) && m.args(l.lhs).size() == 2) {
        auto const& as = m.args(l.lhs);
        if (m.kind(l.lhs) == op_kind::distinct)
            return {lit_kind::diseq, as[0], as[1]};
        if (m.kind(l.lhs) == op_kind::ueq)
            return {lit_kind::explicit_eq, as[0], as[1]};
    }
    return l;
}

formula to_formula(egraph const& g, repr_fn const& r, std::vector<bool> const& excluded) {
    term_manager& m = g.manager();
    auto skip = [&](node_id n) { return n < excluded.size() && excluded[n]; };
    extractor x(g, r);
    formula f;
    std::set<std::tuple<lit_kind, term_id, term_id>> seen;
    for (node_id root : g.roots()) {
        auto const& cls = g.class_of(root);
        node_id anchor = r(root);
        if (anchor == undef_node)
            throw extraction_budget_error("node " + std::to_string(root) + " has no representative");
        if (skip(anchor)) {
            auto it = std::find_if(cls.begin(), cls.end(), [&](node_id n) { return !skip(n); });
            if (it == cls.end())
                continue;
            anchor = *it;
        }
        term_id ta = x.to_expr(anchor);
        for (node_id n : cls) {
            if (n == anchor || skip(n))
                continue;
            term_id tn = x.to_expr(n);
            if (tn == ta)
                continue;
            literal l = normalize_literal(m, {lit_kind::eq, ta, tn});
            auto k = std::make_tuple(l.kind, std::min(l.lhs, l.rhs), std::max(l.lhs, l.rhs));
            if (seen.insert(k).second)
                f.lits.push_back(l);
        }
    }
    f.free_vars = occurring_vars(m, f.lits, m.sig().vars());
    return f;
}

}
