#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qe/egraph.h"

namespace qe {

constexpr node_id undef_node = std::numeric_limits<node_id>::max();

// Assignment of a representative node to nodes; undef_node marks a node whose
// class has no representative yet.
class repr_fn {
    std::vector<node_id> m_rep;
public:
    repr_fn() = default;
    explicit repr_fn(unsigned n) : m_rep(n, undef_node) {}

    unsigned size() const { return m_rep.size(); }
    void resize(unsigned n) { m_rep.resize(n, undef_node); }
    bool defined(node_id n) const { return n < m_rep.size() && m_rep[n] != undef_node; }
    node_id operator()(node_id n) const { return n < m_rep.size() ? m_rep[n] : undef_node; }
    void set(node_id n, node_id r) {
        if (n >= m_rep.size())
            resize(n + 1);
        m_rep[n] = r;
    }
    // Point every member of n's class at r.
    void set_class(egraph const& g, node_id n, node_id r) {
        for (node_id m : g.class_of(n))
            set(m, r);
    }
    bool is_total(egraph const& g) const;
    bool operator==(repr_fn const& o) const { return m_rep == o.m_rep; }
};

// Edges (n, repr(c)) for every child c of n with repr(c) defined, sorted and
// without duplicates.
std::vector<std::pair<node_id, node_id>> repr_graph_edges(egraph const& g, repr_fn const& r);

struct admissibility {
    bool        ok = true;
    std::string reason;   // empty when ok
    explicit operator bool() const { return ok; }
};

// Unique representative per class, same partition as the egraph, and an
// acyclic representative graph. Partial functions are accepted when
// `allow_partial` is set: undefined nodes are skipped, but a defined node
// must have defined representatives for all its children.
admissibility check_admissible(egraph const& g, repr_fn const& r, bool allow_partial = false);
inline bool is_admissible(egraph const& g, repr_fn const& r) { return check_admissible(g, r).ok; }

// Longest path (in edges) of the representative graph; nullopt if cyclic.
std::optional<unsigned> longest_repr_path(egraph const& g, repr_fn const& r);

// Term extraction under a representative function. Recursion depth is capped
// by the number of classes, which no admissible function can exceed.
class extractor {
    egraph const&        m_g;
    repr_fn const&       m_r;
    unsigned             m_budget;
    std::vector<term_id> m_memo;
    static constexpr term_id none = std::numeric_limits<term_id>::max();
    term_id go(node_id n, unsigned depth);
public:
    extractor(egraph const& g, repr_fn const& r);
    term_id to_expr(node_id n) { return go(n, 0); }
};

term_id to_expr(egraph const& g, node_id n, repr_fn const& r);

// One literal rep ≈ member per non-excluded member of every class. When a
// class representative is itself excluded, the first retained member takes
// its place. excluded may be empty (nothing excluded).
formula to_formula(egraph const& g, repr_fn const& r, std::vector<bool> const& excluded);

// Normal form used for output: ⊤ ≈ distinct(a,b) becomes a ≉ b,
// ⊤ ≈ ueq(a,b) becomes ueq(a,b), ⊤/⊥ move to the right-hand side.
literal normalize_literal(term_manager& m, literal l);

}
