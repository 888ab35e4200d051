#include "qe/qel.h"

#include <algorithm>
#include <map>
#include <set>

namespace qe {

cground_info compute_cground(egraph const& g) {
    term_manager const& m = g.manager();
    unsigned n = g.num_nodes();
    cground_info cg{std::vector<bool>(n, false), std::vector<bool>(n, false)};
    std::vector<node_id> todo;
    for (node_id i = 0; i < n; ++i)
        if (m.is_ground(g.term(i)))
            todo.push_back(i);
    while (!todo.empty()) {
        node_id i = todo.back();
        todo.pop_back();
        if (cg.cground[i])
            continue;
        bool ok = m.is_ground(g.term(i));
        if (!ok && !g.is_leaf(i)) {
            ok = true;
            for (node_id c : g.children(i))
                ok = ok && cg.ground_class[g.root(c)];
        }
        if (!ok)
            continue;
        cg.cground[i] = true;
        node_id r = g.root(i);
        if (cg.ground_class[r])
            continue;
        cg.ground_class[r] = true;
        for (node_id x : g.class_of(r))
            for (node_id p : g.parents(x))
                if (!cg.cground[p])
                    todo.push_back(p);
    }
    for (node_id i = 0; i < n; ++i)
        cg.ground_class[i] = cg.ground_class[g.root(i)];
    return cg;
}

void process(egraph const& g, repr_fn& r, std::deque<node_id> todo) {
    r.resize(g.num_nodes());
    std::vector<node_id> ready;
    while (true) {
        node_id n;
        if (!todo.empty()) {
            n = todo.front();
            todo.pop_front();
        } else if (!ready.empty()) {
            n = ready.back();
            ready.pop_back();
        } else {
            break;
        }
        if (r.defined(n))
            continue;
        r.set_class(g, n, n);
        for (node_id x : g.class_of(n))
            for (node_id p : g.parents(x)) {
                if (r.defined(p))
                    continue;
                bool all = std::all_of(g.children(p).begin(), g.children(p).end(),
                                       [&](node_id c) { return r.defined(c); });
                if (all)
                    ready.push_back(p);
            }
    }
}

repr_fn find_defs(egraph const& g) {
    term_manager& m = g.manager();
    repr_fn r(g.num_nodes());
    std::deque<node_id> todo{g.true_node()};
    if (g.has_node(m.mk_false()))
        todo.push_back(g.node_of(m.mk_false()));
    for (node_id n = 0; n < g.num_nodes(); ++n)
        if (g.is_leaf(n) && m.is_ground(g.term(n)))
            todo.push_back(n);
    process(g, r, todo);
    todo.clear();
    for (node_id n = 0; n < g.num_nodes(); ++n)
        if (g.is_leaf(n))
            todo.push_back(n);
    process(g, r, todo);
    return r;
}

bool repr_cycle_through(egraph const& g, repr_fn const& r, node_id n) {
    std::vector<bool> seen(g.num_nodes(), false);
    std::vector<node_id> stack{n};
    while (!stack.empty()) {
        node_id u = stack.back();
        stack.pop_back();
        for (node_id c : g.children(u)) {
            if (!r.defined(c))
                continue;
            node_id v = r(c);
            if (v == n)
                return true;
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return false;
}

repr_fn refine_defs(egraph const& g, repr_fn r, refine_filter const& accept) {
    for (node_id root : g.roots()) {
        node_id rep = r(root);
        if (!g.is_var(rep))
            continue;
        for (node_id n : g.class_of(root)) {
            if (g.is_var(n))
                continue;
            repr_fn tentative = r;
            tentative.set_class(g, root, n);
            if (repr_cycle_through(g, tentative, n))
                continue;
            if (accept && !accept(n, tentative))
                continue;
            r = std::move(tentative);
            break;
        }
    }
    return r;
}

std::vector<bool> find_core(egraph const& g, repr_fn const& r) {
    std::vector<bool> core(g.num_nodes(), false);
    for (node_id root : g.roots()) {
        std::set<std::pair<decl_id, std::vector<node_id>>> keys;
        auto key = [&](node_id n) {
            std::vector<node_id> cs;
            for (node_id c : g.children(n))
                cs.push_back(g.root(c));
            return std::make_pair(g.label(n), cs);
        };
        node_id rep = r(root);
        core[rep] = true;
        keys.insert(key(rep));
        for (node_id n : g.class_of(root)) {
            if (n == rep || g.is_var(n))
                continue;
            if (!keys.insert(key(n)).second)
                continue;
            core[n] = true;
        }
    }
    return core;
}

bool is_maximally_ground(egraph const& g, repr_fn const& r, cground_info const& cg) {
    extractor x(g, r);
    for (node_id n = 0; n < g.num_nodes(); ++n) {
        if (!cg.class_ground(g, n))
            continue;
        if (!r.defined(n) || !cg.is_cground(r(n)))
            return false;
        if (!g.manager().is_ground(x.to_expr(r(n))))
            return false;
    }
    return true;
}

qel_result qel_run(egraph const& g, std::vector<decl_id> const& vars) {
    qel_result res;
    res.defs = find_defs(g);
    res.refined = refine_defs(g, res.defs);
    res.core = find_core(g, res.refined);
    std::vector<bool> excluded(g.num_nodes());
    for (node_id n = 0; n < g.num_nodes(); ++n)
        excluded[n] = !res.core[n];
    res.out = to_formula(g, res.refined, excluded);
    res.out.free_vars = occurring_vars(g.manager(), res.out.lits, vars);
    res.remaining = res.out.free_vars;
    for (decl_id v : vars)
        if (std::find(res.remaining.begin(), res.remaining.end(), v) == res.remaining.end())
            res.eliminated.push_back(v);
    return res;
}

formula qel(term_manager& m, formula const& f) {
    egraph g = egraph::from_formula(m, f);
    return qel_run(g, f.free_vars).out;
}

std::vector<decl_id> unreachable_remaining_vars(egraph const& g, repr_fn const& r,
                                                std::vector<bool> const& core, formula const& out) {
    std::map<node_id, unsigned> core_count;
    for (node_id n = 0; n < g.num_nodes(); ++n)
        if (core[n])
            ++core_count[g.root(n)];
    std::vector<bool> reached(g.num_nodes(), false);
    std::vector<node_id> stack;
    for (node_id n = 0; n < g.num_nodes(); ++n)
        if (core[n] && core_count[g.root(n)] >= 2) {
            reached[n] = true;
            stack.push_back(n);
        }
    while (!stack.empty()) {
        node_id u = stack.back();
        stack.pop_back();
        for (node_id c : g.children(u)) {
            node_id v = r(c);
            if (v != undef_node && !reached[v]) {
                reached[v] = true;
                stack.push_back(v);
            }
        }
    }
    term_manager& m = g.manager();
    std::vector<decl_id> bad;
    for (decl_id v : out.free_vars) {
        term_id t = m.mk_const(v);
        if (!g.has_node(t) || !reached[g.node_of(t)])
            bad.push_back(v);
    }
    return bad;
}

}
