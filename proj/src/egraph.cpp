#include "qe/egraph.h"

#include <algorithm>
#include <sstream>

#include "qe/extraction.h"

namespace qe {

std::size_t egraph::key_hash::operator()(std::pair<decl_id, std::vector<node_id>> const& k) const {
    std::size_t h = k.first;
    for (node_id c : k.second)
        hash_combine(h, c);
    return h;
}

egraph::egraph(term_manager& tm) : m(tm) {
    m_true = add_term(m.mk_true());
}

egraph egraph::from_formula(term_manager& tm, formula const& f) {
    egraph g(tm);
    for (literal const& l : f.lits)
        g.add_literal(l);
    return g;
}

node_id egraph::root(node_id n) const {
    node_id r = n;
    while (m_find[r] != r)
        r = m_find[r];
    while (m_find[n] != r) {
        node_id next = m_find[n];
        m_find[n] = r;
        n = next;
    }
    return r;
}

std::pair<decl_id, std::vector<node_id>> egraph::key(node_id n) const {
    std::vector<node_id> cs;
    cs.reserve(m_nodes[n].children.size());
    for (node_id c : m_nodes[n].children)
        cs.push_back(root(c));
    return {m_nodes[n].label, std::move(cs)};
}

node_id egraph::add_term(term_id t) {
    auto it = m_term2node.find(t);
    if (it != m_term2node.end())
        return it->second;
    std::vector<node_id> cs;
    for (term_id a : m.args(t))
        cs.push_back(add_term(a));
    node_id n = m_nodes.size();
    m_nodes.push_back({t, m.decl(t), cs, {}});
    m_find.push_back(n);
    m_members.push_back({n});
    m_term2node[t] = n;
    for (node_id c : cs) {
        auto& ps = m_nodes[c].parents;
        if (ps.empty() || ps.back() != n)
            ps.push_back(n);
    }
    ++m_version;
    if (!cs.empty()) {
        auto k = key(n);
        auto [pos, inserted] = m_table.emplace(std::move(k), n);
        if (!inserted)
            m_pending.push_back({pos->second, n});
    }
    propagate();
    check_consistent();
    return n;
}

void egraph::merge(node_id a, node_id b) {
    node_id ra = root(a), rb = root(b);
    if (ra == rb)
        return;
    node_id winner = std::min(ra, rb), loser = std::max(ra, rb);
    std::vector<node_id> touched;
    for (node_id x : m_members[loser])
        for (node_id p : m_nodes[x].parents)
            touched.push_back(p);
    m_find[loser] = winner;
    std::vector<node_id> merged;
    merged.reserve(m_members[winner].size() + m_members[loser].size());
    std::merge(m_members[winner].begin(), m_members[winner].end(), m_members[loser].begin(),
               m_members[loser].end(), std::back_inserter(merged));
    m_members[winner] = std::move(merged);
    m_members[loser].clear();
    ++m_version;
    for (node_id p : touched) {
        auto k = key(p);
        auto it = m_table.find(k);
        if (it == m_table.end())
            m_table.emplace(std::move(k), p);
        else if (root(it->second) != root(p))
            m_pending.push_back({it->second, p});
    }
}

void egraph::propagate() {
    while (!m_pending.empty()) {
        auto [a, b] = m_pending.back();
        m_pending.pop_back();
        merge(a, b);
    }
}

void egraph::check_consistent() const {
    term_id f = m.mk_false();
    auto it = m_term2node.find(f);
    if (it != m_term2node.end() && same_class(it->second, m_true))
        throw inconsistency_error("true and false are merged");
    for (auto [a, b] : m_diseqs)
        if (same_class(a, b))
            throw inconsistency_error("disequality " + m.to_string(term(a)) + " != " + m.to_string(term(b)) +
                                      " contradicts the equalities");
}

void egraph::add_literal(literal const& l) {
    switch (l.kind) {
    case lit_kind::eq:          assert_eq(l.lhs, l.rhs); break;
    case lit_kind::diseq:       assert_diseq(l.lhs, l.rhs); break;
    case lit_kind::explicit_eq: assert_explicit_eq(l.lhs, l.rhs); break;
    }
}

void egraph::assert_eq(term_id a, term_id b) {
    node_id na = add_term(a), nb = add_term(b);
    m_eq_atoms.push_back({na, nb});
    merge(na, nb);
    propagate();
    check_consistent();
}

void egraph::assert_diseq(term_id a, term_id b) {
    node_id na = add_term(a), nb = add_term(b);
    auto p = std::minmax(na, nb);
    if (std::find(m_diseqs.begin(), m_diseqs.end(), std::pair<node_id, node_id>(p)) == m_diseqs.end())
        m_diseqs.push_back(p);
    check_consistent();
    assert_true(m.mk_distinct(a, b));
}

void egraph::assert_explicit_eq(term_id a, term_id b) {
    assert_true(m.mk_app(m.sig().ueq_decl(m.sort(a)), {a, b}));
    node_id na = add_term(a), nb = add_term(b);
    m_eq_atoms.push_back({na, nb});
    merge(na, nb);
    propagate();
    check_consistent();
}

void egraph::assert_true(term_id p) {
    node_id n = add_term(p);
    merge(n, m_true);
    propagate();
    check_consistent();
}

std::vector<node_id> egraph::roots() const {
    std::vector<node_id> r;
    for (node_id n = 0; n < m_nodes.size(); ++n)
        if (root(n) == n)
            r.push_back(n);
    return r;
}

unsigned egraph::num_classes() const {
    unsigned k = 0;
    for (node_id n = 0; n < m_nodes.size(); ++n)
        k += root(n) == n;
    return k;
}

bool egraph::congruent(node_id a, node_id b) const {
    if (label(a) != label(b) || children(a).empty() || children(a).size() != children(b).size())
        return false;
    for (std::size_t i = 0; i < children(a).size(); ++i)
        if (!same_class(children(a)[i], children(b)[i]))
            return false;
    return true;
}

namespace {
std::string escape(std::string const& s) {
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\')
            r += '\\';
        r += c;
    }
    return r;
}
}

std::string egraph::dump_dot(repr_fn const* r) const {
    std::ostringstream out;
    out << "digraph egraph {\n";
    for (node_id n = 0; n < m_nodes.size(); ++n) {
        std::string sym = m.args(term(n)).empty() ? m.to_string(term(n)) : m.sig().decl(label(n)).name;
        out << "  n" << n << " [label=\"" << escape(std::to_string(n) + ": " + sym) << "\"];\n";
    }
    for (node_id n = 0; n < m_nodes.size(); ++n)
        for (std::size_t i = 0; i < children(n).size(); ++i)
            out << "  n" << n << " -> n" << children(n)[i] << " [label=\"" << i << "\"];\n";
    for (node_id n = 0; n < m_nodes.size(); ++n)
        if (root(n) != n)
            out << "  n" << n << " -> n" << root(n) << " [style=dashed, color=red];\n";
    if (r) {
        for (auto [from, to] : repr_graph_edges(*this, *r))
            out << "  n" << from << " -> n" << to << " [style=dotted, color=blue];\n";
    }
    out << "}\n";
    return out.str();
}

}
