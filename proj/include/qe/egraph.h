#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qe/terms.h"

namespace qe {

class repr_fn;

using node_id = unsigned;

struct enode {
    term_id              term;
    decl_id              label;
    std::vector<node_id> children;
    std::vector<node_id> parents;
};

// Labeled DAG of terms plus a congruence-closed partition of its nodes.
// Nodes are numbered in creation order and every scan is in id order.
class egraph {
    term_manager&                          m;
    std::vector<enode>                     m_nodes;
    mutable std::vector<node_id>           m_find;      // union-find forest
    std::vector<std::vector<node_id>>      m_members;   // sorted, valid for roots
    std::unordered_map<term_id, node_id>   m_term2node;
    struct key_hash {
        std::size_t operator()(std::pair<decl_id, std::vector<node_id>> const& k) const;
    };
    std::unordered_map<std::pair<decl_id, std::vector<node_id>>, node_id, key_hash> m_table;
    std::vector<std::pair<node_id, node_id>> m_diseqs;
    std::vector<std::pair<node_id, node_id>> m_eq_atoms;
    std::vector<std::pair<node_id, node_id>> m_pending;
    node_id  m_true;
    unsigned m_version = 0;

    std::pair<decl_id, std::vector<node_id>> key(node_id n) const;
    void merge(node_id a, node_id b);
    void propagate();
    void check_consistent() const;
public:
    explicit egraph(term_manager& tm);
    // Nodes for every subterm of every literal, merged per the literal kinds.
    static egraph from_formula(term_manager& tm, formula const& f);

    term_manager& manager() const { return m; }

    node_id add_term(term_id t);
    void add_literal(literal const& l);
    void assert_eq(term_id a, term_id b);
    void assert_diseq(term_id a, term_id b);
    void assert_explicit_eq(term_id a, term_id b);
    // Merge without recording an equality atom (used for Bool facts).
    void assert_true(term_id p);

    unsigned num_nodes() const { return m_nodes.size(); }
    enode const& node(node_id n) const { return m_nodes[n]; }
    term_id term(node_id n) const { return m_nodes[n].term; }
    decl_id label(node_id n) const { return m_nodes[n].label; }
    std::vector<node_id> const& children(node_id n) const { return m_nodes[n].children; }
    std::vector<node_id> const& parents(node_id n) const { return m_nodes[n].parents; }
    bool is_leaf(node_id n) const { return m_nodes[n].children.empty(); }
    bool is_var(node_id n) const { return m.sig().is_var(label(n)); }
    bool has_node(term_id t) const { return m_term2node.count(t) != 0; }
    node_id node_of(term_id t) const { return m_term2node.at(t); }

    node_id root(node_id n) const;
    bool same_class(node_id a, node_id b) const { return root(a) == root(b); }
    // Members of n's class in id order.
    std::vector<node_id> const& class_of(node_id n) const { return m_members[root(n)]; }
    // Class roots in id order.
    std::vector<node_id> roots() const;
    unsigned num_classes() const;
    bool congruent(node_id a, node_id b) const;

    node_id true_node() const { return m_true; }
    std::vector<std::pair<node_id, node_id>> const& diseqs() const { return m_diseqs; }
    // Pairs of nodes asserted equal by an Eq or ExplicitEq literal.
    std::vector<std::pair<node_id, node_id>> const& eq_atoms() const { return m_eq_atoms; }
    // Bumped by every change to nodes or classes.
    unsigned version() const { return m_version; }

    // Graphviz rendering; G_repr edges are drawn when r is given.
    std::string dump_dot(repr_fn const* r = nullptr) const;
};

}
