#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "qe/extraction.h"

namespace qe {

struct cground_info {
    std::vector<bool> cground;        // per node
    std::vector<bool> ground_class;   // per node, meaningful at roots
    bool is_cground(node_id n) const { return cground[n]; }
    bool class_ground(egraph const& g, node_id n) const { return ground_class[g.root(n)]; }
};

// Least fixpoint: a node is c-ground if its term is ground, or it has
// children and all their classes contain a c-ground node.
cground_info compute_cground(egraph const& g);

// Assigns representatives starting from the leaves in `todo`. Leaves are
// taken in order; a parent becomes ready once all its children have
// representatives, and ready parents are taken most recent first once the
// leaves are exhausted. Extends r in place.
void process(egraph const& g, repr_fn& r, std::deque<node_id> todo);

// Two passes of `process`: first from ⊤, ⊥ and the ground leaves, then from
// all leaves. The result is total, admissible and maximally ground.
repr_fn find_defs(egraph const& g);

// Candidate filter for refine_defs: returns false to keep the variable.
using refine_filter = std::function<bool(node_id candidate, repr_fn const& tentative)>;

// Replaces a variable representative by a non-variable member of its class
// whenever that does not close a cycle in the representative graph. Classes
// are visited in root id order, members in id order.
repr_fn refine_defs(egraph const& g, repr_fn r, refine_filter const& accept = nullptr);

// True iff retargeting made `n` reachable from itself in G_repr.
bool repr_cycle_through(egraph const& g, repr_fn const& r, node_id n);

// Representatives, plus every non-variable member not congruent to a node
// already kept. Returned as a per-node flag.
std::vector<bool> find_core(egraph const& g, repr_fn const& r);

// Every node with a ground class has a c-ground representative whose
// extraction is ground.
bool is_maximally_ground(egraph const& g, repr_fn const& r, cground_info const& cg);

struct qel_result {
    formula           out;
    repr_fn           defs;       // find_defs
    repr_fn           refined;    // refine_defs
    std::vector<bool> core;
    std::vector<decl_id> eliminated;
    std::vector<decl_id> remaining;
};

// Quantifier reduction of the conjunction g was built from.
qel_result qel_run(egraph const& g, std::vector<decl_id> const& vars);
// Quantifier reduction of a conjunction; eliminates f.free_vars.
formula qel(term_manager& m, formula const& f);

// Variables that occur in `out` although their node is not reachable in the
// representative graph from any class with two or more core nodes. Such
// variables should have been dropped, so a correct run returns nothing.
std::vector<decl_id> unreachable_remaining_vars(egraph const& g, repr_fn const& r,
                                                std::vector<bool> const& core, formula const& out);

}
