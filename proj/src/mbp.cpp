#include "qe/mbp.h"

#include <algorithm>
#include <set>

namespace qe {

namespace {

bool is_array_or_adt(signature const& sig, sort_id s) { return sig.is_array(s) || sig.is_datatype(s); }

}

mbp_engine::mbp_engine(term_manager& tm, formula const& f, std::vector<decl_id> const& vars, model const& M,
                       mbp_options const& opts)
    : m(tm), m_g(tm), m_model(M), m_opts(opts), m_vars(vars) {
    for (literal const& l : f.lits)
        if (!m_model.holds(l))
            throw model_error("the model does not satisfy " + to_string(m, l));
    for (literal const& l : f.lits)
        m_g.add_literal(l);
    m_project.assign(m.sig().num_decls(), false);
    for (decl_id v : vars)
        if (m.sig().is_var(v) && is_array_or_adt(m.sig(), m.sig().decl(v).range))
            m_project[v] = true;
    m_defined.assign(m.sig().num_decls(), false);
    m_stats.nodes_initial = m_g.num_nodes();
}

cground_info const& mbp_engine::cground() {
    if (m_cg_version != m_g.version()) {
        m_cg = compute_cground(m_g);
        m_cg_version = m_g.version();
    }
    return m_cg;
}

bool mbp_engine::has_projected(term_id t) const {
    if (m.kind(t) == op_kind::var)
        return projected(m.decl(t));
    if (m.is_ground(t))
        return false;
    for (term_id a : m.args(t))
        if (has_projected(a))
            return true;
    return false;
}

void mbp_engine::fire(char const* rule) {
    if (m_stats.applications >= m_opts.budget)
        throw saturation_budget_error("saturation exceeded " + std::to_string(m_opts.budget) +
                                      " rule applications");
    ++m_stats.applications;
    ++m_stats.fired[rule];
}

// Fresh symbol with the given model value. Array and datatype symbols are
// variables to eliminate, all others are constants to keep.
term_id mbp_engine::fresh(sort_id s, value const& v) {
    bool var = is_array_or_adt(m.sig(), s);
    decl_id d = m.sig().mk_fresh("d", s, var);
    m_fresh.push_back(d);
    if (m_project.size() <= d) {
        m_project.resize(d + 1, false);
        m_defined.resize(d + 1, false);
    }
    m_project[d] = var;
    m_model.set_const(d, v);
    return m.mk_const(d);
}

// read(x, j) where x's class holds write(s, i, v) and s has a variable to
// project: M ⊨ i ≈ j gives i ≈ j and t ≈ v, otherwise i ≉ j and t ≈ read(s, j).
bool mbp_engine::elim_wr_rd(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::read)
        return false;
    node_id arr = g().children(n)[0];
    term_id j = m.args(t)[1];
    std::vector<term_id> writes;
    for (node_id w : g().class_of(arr)) {
        term_id wt = g().term(w);
        if (m.kind(wt) == op_kind::write && has_projected(m.args(wt)[0]))
            writes.push_back(wt);
    }
    bool any = false;
    for (term_id wt : writes) {
        term_id s = m.args(wt)[0], i = m.args(wt)[1], v = m.args(wt)[2];
        fire("ElimWrRd");
        if (model_eq(i, j)) {
            m_g.assert_eq(i, j);
            m_g.assert_eq(t, v);
        } else {
            m_g.assert_diseq(i, j);
            m_g.assert_eq(t, m.mk_read(s, j));
        }
        any = true;
    }
    return any;
}

// peq(s, write(u, i, v), I) with a variable to project on the write side.
bool mbp_engine::elim_wr(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::peq)
        return false;
    auto const& as = m.args(t);
    std::vector<term_id> idx(as.begin() + 2, as.end());
    for (int side = 0; side < 2; ++side) {
        term_id s = as[side], w = as[1 - side];
        if (m.kind(w) != op_kind::write || !has_projected(w))
            continue;
        term_id u = m.args(w)[0], i = m.args(w)[1], v = m.args(w)[2];
        fire("ElimWr");
        auto same = std::find_if(idx.begin(), idx.end(), [&](term_id k) { return model_eq(i, k); });
        sort_id arr = m.sort(s);
        if (same != idx.end()) {
            m_g.assert_eq(i, *same);
        } else {
            for (term_id k : idx)
                m_g.assert_diseq(i, k);
            m_g.assert_eq(m.mk_read(s, i), v);
            idx.push_back(i);
        }
        std::vector<term_id> args{s, u};
        args.insert(args.end(), idx.begin(), idx.end());
        m_g.assert_true(m.mk_app(m.sig().peq_decl(arr, idx.size()), args));
        return true;
    }
    return false;
}

// peq(v, e, I) with v a variable to project and e free of v: v ≈ write(e, I, d⃗)
// for fresh d⃗ holding M's values of v at I. Indices equal under M are kept once.
bool mbp_engine::elim_eq(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::peq)
        return false;
    if (m_peq_done.size() > n && m_peq_done[n])
        return false;
    auto const& as = m.args(t);
    for (int side = 0; side < 2; ++side) {
        term_id v = as[side], e = as[1 - side];
        if (m.kind(v) != op_kind::var || !projected(m.decl(v)) || m_defined[m.decl(v)])
            continue;
        if (m.free_vars(e).count(m.decl(v)))
            continue;
        fire("ElimEq");
        m_defined[m.decl(v)] = true;
        if (m_peq_done.size() <= n)
            m_peq_done.resize(n + 1, false);
        m_peq_done[n] = true;
        value mv = m_model.eval(v);
        std::vector<value> seen;
        term_id def = e;
        for (std::size_t k = 2; k < as.size(); ++k) {
            value iv = m_model.eval(as[k]);
            if (std::find(seen.begin(), seen.end(), iv) != seen.end())
                continue;
            seen.push_back(iv);
            term_id d = fresh(m.sig().sort(m.sort(v)).value, m_model.read(mv, iv));
            def = m.mk_write(def, as[k], d);
        }
        unsigned before = g().eq_atoms().size();
        m_g.assert_eq(v, def);
        m_def_atom.resize(g().eq_atoms().size(), false);
        for (unsigned k = before; k < g().eq_atoms().size(); ++k)
            m_def_atom[k] = true;
        m_g.assert_true(t);
        return true;
    }
    return false;
}

// Array disequality with a variable to project: a fresh index where M's
// arrays differ, and the reads there asserted different.
bool mbp_engine::array_diseq(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::distinct || !m.sig().is_array(m.sort(m.args(t)[0])) || !has_projected(t))
        return false;
    term_id x = m.args(t)[0], y = m.args(t)[1];
    value a = m_model.eval(x), b = m_model.eval(y);
    sort_id arr = m.sort(x), is = m.sig().sort(arr).index;
    std::optional<value> witness;
    std::vector<value> cands = a.keys;
    cands.insert(cands.end(), b.keys.begin(), b.keys.end());
    for (value const& k : cands)
        if (m_model.read(a, k) != m_model.read(b, k)) {
            witness = k;
            break;
        }
    if (!witness) {
        // The arrays differ only in their defaults: any index off both key sets.
        if (auto all = m_model.enumerate(is)) {
            for (value const& k : *all)
                if (m_model.read(a, k) != m_model.read(b, k)) {
                    witness = k;
                    break;
                }
        } else if (m.sig().sort(is).kind == sort_kind::integer) {
            std::int64_t hi = 0;
            for (value const& k : cands)
                hi = std::max(hi, k.num + 1);
            witness = value::mk_int(is, hi);
        }
    }
    if (!witness)
        throw model_error("the model gives equal values to " + m.to_string(x) + " and " + m.to_string(y));
    fire("ArrayDiseq");
    term_id k = fresh(is, *witness);
    m_g.assert_diseq(m.mk_read(x, k), m.mk_read(y, k));
    return true;
}

// A constructor application c(t⃗) whose class holds a variable to project, or
// which contains one: sel_k ≈ t_k on the projected variable of its class if
// there is one, else on c(t⃗) itself. The pass never offers a c-ground
// application, so a c-ground c(t⃗) is matched from the variable's side.
bool mbp_engine::adt_deconstruct(node_id n) {
    term_id t = g().term(n), target = t;
    if (m.kind(t) == op_kind::ctor) {
        for (node_id x : g().class_of(n))
            if (is_projected_var(x)) {
                target = g().term(x);
                break;
            }
        if (target == t && !has_projected(t))
            return false;
    } else {
        if (!is_projected_var(n) || !m.sig().is_datatype(m.sort(t)))
            return false;
        bool found = false;
        for (node_id x : g().class_of(n))
            if (m.kind(g().term(x)) == op_kind::ctor && cground().is_cground(x)) {
                t = g().term(x);
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    decl_info const& cd = m.sig().decl(m.decl(t));
    sort_info const& dt = m.sig().sort(cd.range);
    fire("AdtDeconstructEq");
    ctor_info const& c = dt.ctors[cd.ctor_idx];
    for (std::size_t k = 0; k < c.fields.size(); ++k)
        m_g.assert_eq(m.mk_app(c.fields[k].selector, {target}), m.args(t)[k]);
    if (dt.ctors.size() > 1)
        m_g.assert_true(m.mk_app(c.tester, {target}));
    return true;
}

// Datatype disequality with a variable to project, split by the model.
bool mbp_engine::adt_split_diseq(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::distinct || !m.sig().is_datatype(m.sort(m.args(t)[0])) || !has_projected(t))
        return false;
    term_id x = m.args(t)[0], y = m.args(t)[1];
    value a = m_model.eval(x), b = m_model.eval(y);
    sort_info const& dt = m.sig().sort(m.sort(x));
    if (a.num != b.num) {
        fire("AdtSplitDiseq");
        decl_id tester = dt.ctors[a.num].tester;
        m_g.assert_true(m.mk_app(tester, {x}));
        m_g.assert_eq(m.mk_app(tester, {y}), m.mk_false());
        return true;
    }
    for (std::size_t k = 0; k < a.args.size(); ++k)
        if (a.args[k] != b.args[k]) {
            fire("AdtSplitDiseq");
            decl_id sel = dt.ctors[a.num].fields[k].selector;
            m_g.assert_diseq(m.mk_app(sel, {x}), m.mk_app(sel, {y}));
            return true;
        }
    throw model_error("the model gives equal values to " + m.to_string(x) + " and " + m.to_string(y));
}

// A read with a variable to project whose class is not ground gets a fresh
// symbol holding its model value.
bool mbp_engine::read_fresh(node_id n) {
    term_id t = g().term(n);
    if (m.kind(t) != op_kind::read || !has_projected(t) || cground().class_ground(g(), n))
        return false;
    fire("ReadFresh");
    m_g.assert_eq(t, fresh(m.sort(t), m_model.eval(t)));
    return true;
}

// A datatype variable to project whose class is neither ground nor holds a
// constructor application is equated to its model constructor over fresh
// arguments.
bool mbp_engine::adt_expand(node_id n) {
    if (!is_projected_var(n) || !m.sig().is_datatype(m.sort(g().term(n))) || cground().class_ground(g(), n))
        return false;
    for (node_id x : g().class_of(n))
        if (m.kind(g().term(x)) == op_kind::ctor)
            return false;
    term_id v = g().term(n);
    value mv = m_model.eval(v);
    sort_info const& dt = m.sig().sort(m.sort(v));
    ctor_info const& c = dt.ctors[mv.num];
    fire("AdtExpand");
    std::vector<term_id> args;
    for (std::size_t k = 0; k < c.fields.size(); ++k)
        args.push_back(fresh(c.fields[k].sort, mv.args[k]));
    m_g.assert_eq(v, m.mk_app(c.ctor, args));
    return true;
}

// An array equality atom with a variable to project becomes a partial
// equality with no exceptions.
bool mbp_engine::partial_eq(unsigned atom) {
    if (atom < m_def_atom.size() && m_def_atom[atom])
        return false;
    auto [a, b] = g().eq_atoms()[atom];
    term_id ta = g().term(a), tb = g().term(b);
    if (!m.sig().is_array(m.sort(ta)) || (!has_projected(ta) && !has_projected(tb)))
        return false;
    fire("PartialEq");
    m_g.assert_true(m.mk_app(m.sig().peq_decl(m.sort(ta), 0), {ta, tb}));
    return true;
}

// Two reads of one non-ground array class at indices not yet known equal or
// different: the model decides.
bool mbp_engine::ackermann(node_id a, node_id b) {
    term_id ta = g().term(a), tb = g().term(b);
    if (m.kind(ta) != op_kind::read || m.kind(tb) != op_kind::read)
        return false;
    node_id arr_a = g().children(a)[0], arr_b = g().children(b)[0];
    if (!g().same_class(arr_a, arr_b) || !has_projected(ta) || !has_projected(tb))
        return false;
    if (cground().class_ground(g(), arr_a))
        return false;
    node_id ia = g().children(a)[1], ib = g().children(b)[1];
    if (g().same_class(ia, ib))
        return false;
    auto key = std::minmax(g().root(ia), g().root(ib));
    for (auto [x, y] : g().diseqs())
        if (std::minmax(g().root(x), g().root(y)) == key)
            return false;
    term_id ea = m.args(ta)[1], eb = m.args(tb)[1];
    fire("Ackermann");
    if (model_eq(ea, eb))
        m_g.assert_eq(ea, eb);
    else
        m_g.assert_diseq(ea, eb);
    return true;
}

bool mbp_engine::offer(rule_set rs, node_id n) {
    term_id t = g().term(n);
    bool eq_shaped = m.kind(t) == op_kind::peq || m.kind(t) == op_kind::eq || m.kind(t) == op_kind::ueq;
    if (!eq_shaped && cground().is_cground(n))
        return false;
    bool any = false;
    switch (rs) {
    case rule_set::arrays:
        any |= elim_wr_rd(n);
        any |= elim_wr(n);
        any |= elim_eq(n);
        any |= array_diseq(n);
        break;
    case rule_set::adts:
        any |= adt_deconstruct(n);
        any |= adt_split_diseq(n);
        break;
    case rule_set::fallback:
        any |= read_fresh(n);
        any |= adt_expand(n);
        break;
    }
    return any;
}

bool mbp_engine::apply_rules(rule_set rs) {
    ++m_stats.rounds;
    watermark& w = m_seen[rs];
    bool progress = false;
    // Nodes and equality atoms added while the pass runs are visited too.
    while (w.nodes < g().num_nodes() || (rs == rule_set::arrays && w.atoms < g().eq_atoms().size())) {
        for (; w.nodes < g().num_nodes(); ++w.nodes)
            progress |= offer(rs, w.nodes);
        if (rs == rule_set::arrays)
            for (; w.atoms < g().eq_atoms().size(); ++w.atoms)
                progress |= partial_eq(w.atoms);
    }
    if (rs == rule_set::arrays) {
        // Unordered pairs (a, b), a < b, in lexicographic order; pairs whose
        // larger node is below the watermark were offered before.
        for (; w.pairs < g().num_nodes(); ++w.pairs) {
            node_id b = w.pairs;
            if (m.kind(g().term(b)) != op_kind::read)
                continue;
            for (node_id a = 0; a < b; ++a)
                progress |= ackermann(a, b);
        }
        // Pairs may have created nodes and atoms for the unary rules.
        if (w.nodes < g().num_nodes() || w.atoms < g().eq_atoms().size())
            progress |= apply_rules(rs);
    }
    return progress;
}

void mbp_engine::saturate() {
    while (true) {
        bool p1 = true, p2 = true;
        while (p1 || p2) {
            p1 = apply_rules(rule_set::arrays);
            p2 = apply_rules(rule_set::adts);
        }
        if (!apply_rules(rule_set::fallback))
            break;
    }
    m_stats.nodes_saturated = g().num_nodes();
}

mbp_result mbp_engine::finish(repr_fn* used) {
    std::set<decl_id> ve;
    std::vector<decl_id> all_vars;
    for (node_id n = 0; n < g().num_nodes(); ++n)
        if (g().is_var(n)) {
            all_vars.push_back(g().label(n));
            if (projected(g().label(n)))
                ve.insert(g().label(n));
        }
    std::sort(all_vars.begin(), all_vars.end());
    repr_fn defs = find_defs(g());
    repr_fn r = refine_defs(g(), defs, [&](node_id cand, repr_fn const& tentative) {
        return !m.contains_any(to_expr(g(), cand, tentative), ve);
    });
    std::vector<bool> core = find_core(g(), r);
    std::vector<bool> excluded(g().num_nodes(), false);
    extractor x(g(), r);
    for (node_id n = 0; n < g().num_nodes(); ++n) {
        term_id t = g().term(n);
        bool aux = m.kind(t) == op_kind::peq ||
                   (m.kind(t) == op_kind::tester && m.sig().sort(m.sort(m.args(t)[0])).ctors.size() == 1);
        excluded[n] = !core[n] || aux || m.contains_any(x.to_expr(n), ve);
    }
    mbp_result res;
    res.out = to_formula(g(), r, excluded);
    std::vector<decl_id> order = m_vars;
    for (decl_id d : m_fresh)
        if (m.sig().is_var(d))
            order.push_back(d);
    res.out.free_vars = occurring_vars(m, res.out.lits, order);
    for (decl_id v : m_vars) {
        auto const& fv = res.out.free_vars;
        (std::find(fv.begin(), fv.end(), v) == fv.end() ? res.eliminated : res.remaining).push_back(v);
    }
    res.mdl = m_model;
    res.stats = m_stats;
    res.fresh = m_fresh;
    if (used)
        *used = r;
    return res;
}

mbp_result mbp_qel(term_manager& m, formula const& f, std::vector<decl_id> const& vars, model const& M,
                   mbp_options const& opts) {
    mbp_engine e(m, f, vars, M, opts);
    e.saturate();
    return e.finish();
}

}
