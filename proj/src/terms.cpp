#include "qe/terms.h"

#include <functional>
#include <sstream>

namespace qe {

signature::signature() {
    m_bool = declare_sort("Bool");
    m_sorts[m_bool].kind = sort_kind::boolean;
    m_int = declare_sort("Int");
    m_sorts[m_int].kind = sort_kind::integer;
    m_true  = add_decl({"true", op_kind::tt, {}, m_bool});
    m_false = add_decl({"false", op_kind::ff, {}, m_bool});
}

decl_id signature::add_decl(decl_info d) {
    m_decls.push_back(std::move(d));
    return m_decls.size() - 1;
}

void signature::check_fresh_name(std::string const& name) const {
    if (m_symbols.count(name) || name == "true" || name == "false")
        throw sort_error("duplicate declaration of '" + name + "'");
}

sort_id signature::declare_sort(std::string const& name) {
    if (m_sort_names.count(name))
        throw sort_error("duplicate sort '" + name + "'");
    sort_info si;
    si.name = name;
    si.kind = sort_kind::uninterpreted;
    m_sorts.push_back(si);
    m_sort_names[name] = m_sorts.size() - 1;
    return m_sorts.size() - 1;
}

sort_id signature::mk_array_sort(sort_id index, sort_id value) {
    auto it = m_array_sorts.find({index, value});
    if (it != m_array_sorts.end())
        return it->second;
    sort_info si;
    si.kind = sort_kind::array;
    si.index = index;
    si.value = value;
    m_sorts.push_back(si);
    sort_id s = m_sorts.size() - 1;
    m_sorts[s].name = "(Array " + sort_name(index) + " " + sort_name(value) + ")";
    m_array_sorts[{index, value}] = s;
    return s;
}

sort_id signature::declare_datatype(
    std::string const& name,
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, sort_id>>>> const& ctors) {
    if (ctors.empty())
        throw sort_error("datatype '" + name + "' has no constructors");
    sort_id s = declare_sort(name);
    m_sorts[s].kind = sort_kind::datatype;
    for (unsigned ci = 0; ci < ctors.size(); ++ci) {
        auto const& [cname, fields] = ctors[ci];
        ctor_info info;
        info.name = cname;
        std::vector<sort_id> dom;
        for (unsigned fi = 0; fi < fields.size(); ++fi) {
            if (fields[fi].second == s)
                throw sort_error("recursive datatype '" + name + "' is not supported");
            dom.push_back(fields[fi].second);
        }
        check_fresh_name(cname);
        decl_info cd{cname, op_kind::ctor, dom, s};
        cd.dt = s;
        cd.ctor_idx = ci;
        info.ctor = add_decl(cd);
        m_symbols[cname] = info.ctor;
        std::string tname = "is-" + cname;
        check_fresh_name(tname);
        decl_info td{tname, op_kind::tester, {s}, m_bool};
        td.dt = s;
        td.ctor_idx = ci;
        info.tester = add_decl(td);
        m_symbols[tname] = info.tester;
        for (unsigned fi = 0; fi < fields.size(); ++fi) {
            check_fresh_name(fields[fi].first);
            decl_info sd{fields[fi].first, op_kind::sel, {s}, fields[fi].second};
            sd.dt = s;
            sd.ctor_idx = ci;
            sd.field_idx = fi;
            decl_id sel = add_decl(sd);
            m_symbols[fields[fi].first] = sel;
            info.fields.push_back({fields[fi].first, fields[fi].second, sel});
        }
        m_sorts[s].ctors.push_back(info);
    }
    return s;
}

std::optional<sort_id> signature::find_sort(std::string const& name) const {
    auto it = m_sort_names.find(name);
    if (it == m_sort_names.end())
        return std::nullopt;
    return it->second;
}

std::string signature::sort_name(sort_id s) const {
    return m_sorts[s].name;
}

decl_id signature::declare_fun(std::string const& name, std::vector<sort_id> const& domain, sort_id range) {
    check_fresh_name(name);
    decl_id d = add_decl({name, op_kind::uninterp, domain, range});
    m_symbols[name] = d;
    return d;
}

decl_id signature::declare_var(std::string const& name, sort_id s) {
    check_fresh_name(name);
    decl_id d = add_decl({name, op_kind::var, {}, s});
    m_symbols[name] = d;
    m_vars.push_back(d);
    return d;
}

decl_id signature::mk_fresh(std::string const& prefix, sort_id s, bool is_var) {
    std::string name;
    do {
        name = prefix + "!" + std::to_string(m_fresh++);
    } while (m_symbols.count(name));
    return is_var ? declare_var(name, s) : declare_fun(name, {}, s);
}

std::optional<decl_id> signature::find_symbol(std::string const& name) const {
    auto it = m_symbols.find(name);
    if (it == m_symbols.end())
        return std::nullopt;
    return it->second;
}

decl_id signature::numeral(std::int64_t n) {
    auto it = m_numerals.find(n);
    if (it != m_numerals.end())
        return it->second;
    decl_info d{std::to_string(n), op_kind::numeral, {}, m_int};
    d.num = n;
    decl_id id = add_decl(d);
    m_numerals[n] = id;
    return id;
}

decl_id signature::builtin(op_kind k, sort_id s, unsigned n) {
    auto key = std::make_tuple(k, s, n);
    auto it = m_builtins.find(key);
    if (it != m_builtins.end())
        return it->second;
    decl_info d;
    d.kind = k;
    switch (k) {
    case op_kind::eq:       d.name = "=";        d.domain = {s, s}; d.range = m_bool; break;
    case op_kind::distinct: d.name = "distinct"; d.domain = {s, s}; d.range = m_bool; break;
    case op_kind::ueq:      d.name = "ueq";      d.domain = {s, s}; d.range = m_bool; break;
    case op_kind::read:
        if (!is_array(s)) throw sort_error("read over non-array sort " + sort_name(s));
        d.name = "read"; d.domain = {s, m_sorts[s].index}; d.range = m_sorts[s].value;
        break;
    case op_kind::write:
        if (!is_array(s)) throw sort_error("write over non-array sort " + sort_name(s));
        d.name = "write"; d.domain = {s, m_sorts[s].index, m_sorts[s].value}; d.range = s;
        break;
    case op_kind::peq:
        if (!is_array(s)) throw sort_error("peq over non-array sort " + sort_name(s));
        d.name = "peq"; d.domain = {s, s};
        for (unsigned i = 0; i < n; ++i) d.domain.push_back(m_sorts[s].index);
        d.range = m_bool;
        break;
    case op_kind::add: d.name = "+";  d.domain = {m_int, m_int}; d.range = m_int; break;
    case op_kind::sub: d.name = "-";  d.domain = {m_int, m_int}; d.range = m_int; break;
    case op_kind::gt:  d.name = ">";  d.domain = {m_int, m_int}; d.range = m_bool; break;
    case op_kind::lt:  d.name = "<";  d.domain = {m_int, m_int}; d.range = m_bool; break;
    case op_kind::ge:  d.name = ">="; d.domain = {m_int, m_int}; d.range = m_bool; break;
    case op_kind::le:  d.name = "<="; d.domain = {m_int, m_int}; d.range = m_bool; break;
    default:
        throw sort_error("not a builtin operator");
    }
    decl_id id = add_decl(d);
    m_builtins[key] = id;
    return id;
}

decl_id signature::resolve(std::string const& name, std::vector<sort_id> const& as) {
    auto need = [&](std::size_t n) {
        if (as.size() != n)
            throw sort_error("'" + name + "' expects " + std::to_string(n) + " arguments, got " +
                             std::to_string(as.size()));
    };
    if (name == "true")  { need(0); return m_true; }
    if (name == "false") { need(0); return m_false; }
    if (name == "=")        { need(2); return eq_decl(as[0]); }
    if (name == "distinct") { need(2); return distinct_decl(as[0]); }
    if (name == "ueq")      { need(2); return ueq_decl(as[0]); }
    if (name == "read" || name == "select") { need(2); return read_decl(as[0]); }
    if (name == "write" || name == "store") { need(3); return write_decl(as[0]); }
    if (name == "+")  { need(2); return arith_decl(op_kind::add); }
    if (name == "-")  { need(2); return arith_decl(op_kind::sub); }
    if (name == ">")  { need(2); return arith_decl(op_kind::gt); }
    if (name == "<")  { need(2); return arith_decl(op_kind::lt); }
    if (name == ">=") { need(2); return arith_decl(op_kind::ge); }
    if (name == "<=") { need(2); return arith_decl(op_kind::le); }
    if (auto d = find_symbol(name))
        return *d;
    throw sort_error("unknown symbol '" + name + "'");
}

std::size_t term_manager::key_hash::operator()(std::pair<decl_id, std::vector<term_id>> const& k) const {
    std::size_t h = k.first;
    for (term_id a : k.second)
        hash_combine(h, a);
    return h;
}

term_id term_manager::mk_app(decl_id f, std::vector<term_id> const& args) {
    decl_info const& d = m_sig.decl(f);
    if (d.domain.size() != args.size())
        throw sort_error("'" + d.name + "' expects " + std::to_string(d.domain.size()) + " arguments, got " +
                         std::to_string(args.size()));
    for (unsigned i = 0; i < args.size(); ++i)
        if (sort(args[i]) != d.domain[i])
            throw sort_error("argument " + std::to_string(i + 1) + " of '" + d.name + "' has sort " +
                             m_sig.sort_name(sort(args[i])) + ", expected " + m_sig.sort_name(d.domain[i]));
    if ((d.kind == op_kind::eq || d.kind == op_kind::distinct || d.kind == op_kind::ueq) &&
        sort(args[0]) != sort(args[1]))
        throw sort_error("'" + d.name + "' over different sorts");
    std::pair<decl_id, std::vector<term_id>> key{f, args};
    auto it = m_table.find(key);
    if (it != m_table.end())
        return it->second;
    bool ground = d.kind != op_kind::var;
    for (term_id a : args)
        ground = ground && is_ground(a);
    m_terms.push_back({f, args, d.range, ground});
    term_id t = m_terms.size() - 1;
    m_table.emplace(std::move(key), t);
    return t;
}

term_id term_manager::mk_app(std::string const& name, std::vector<term_id> const& args) {
    std::vector<sort_id> sorts;
    for (term_id a : args)
        sorts.push_back(sort(a));
    return mk_app(m_sig.resolve(name, sorts), args);
}

term_id term_manager::mk_eq(term_id a, term_id b) { return mk_app(m_sig.eq_decl(sort(a)), {a, b}); }
term_id term_manager::mk_distinct(term_id a, term_id b) { return mk_app(m_sig.distinct_decl(sort(a)), {a, b}); }
term_id term_manager::mk_read(term_id a, term_id i) { return mk_app(m_sig.read_decl(sort(a)), {a, i}); }
term_id term_manager::mk_write(term_id a, term_id i, term_id v) {
    return mk_app(m_sig.write_decl(sort(a)), {a, i, v});
}

std::set<decl_id> term_manager::free_vars(term_id t) const {
    std::set<decl_id> r;
    std::vector<term_id> todo{t};
    std::set<term_id> seen;
    while (!todo.empty()) {
        term_id u = todo.back();
        todo.pop_back();
        if (is_ground(u) || !seen.insert(u).second)
            continue;
        if (is_var(u))
            r.insert(decl(u));
        for (term_id a : args(u))
            todo.push_back(a);
    }
    return r;
}

bool term_manager::contains_any(term_id t, std::set<decl_id> const& syms) const {
    std::vector<term_id> todo{t};
    std::set<term_id> seen;
    while (!todo.empty()) {
        term_id u = todo.back();
        todo.pop_back();
        if (!seen.insert(u).second)
            continue;
        if (syms.count(decl(u)))
            return true;
        for (term_id a : args(u))
            todo.push_back(a);
    }
    return false;
}

std::string term_manager::to_string(term_id t) const {
    std::ostringstream out;
    std::function<void(term_id)> pp = [&](term_id u) {
        decl_info const& d = m_sig.decl(decl(u));
        if (d.kind == op_kind::numeral) {
            if (d.num < 0)
                out << "(- " << -d.num << ")";
            else
                out << d.num;
            return;
        }
        if (args(u).empty()) {
            out << d.name;
            return;
        }
        out << "(" << d.name;
        for (term_id a : args(u)) {
            out << " ";
            pp(a);
        }
        out << ")";
    };
    pp(t);
    return out.str();
}

std::vector<decl_id> occurring_vars(term_manager const& m, std::vector<literal> const& lits,
                                    std::vector<decl_id> const& order) {
    std::set<decl_id> occ;
    for (literal const& l : lits) {
        for (decl_id v : m.free_vars(l.lhs)) occ.insert(v);
        for (decl_id v : m.free_vars(l.rhs)) occ.insert(v);
    }
    std::vector<decl_id> r;
    for (decl_id v : order)
        if (occ.count(v))
            r.push_back(v);
    return r;
}

std::string to_string(term_manager const& m, literal const& l) {
    switch (l.kind) {
    case lit_kind::diseq:
        return "(distinct " + m.to_string(l.lhs) + " " + m.to_string(l.rhs) + ")";
    case lit_kind::explicit_eq:
        return "(ueq " + m.to_string(l.lhs) + " " + m.to_string(l.rhs) + ")";
    case lit_kind::eq:
        break;
    }
    // Predicate form for P(a) = true / P(a) = false.
    // Applications of =, distinct and ueq keep the explicit form so that they
    // re-parse as the same literal kind.
    op_kind k = m.kind(l.lhs);
    bool pred = !m.args(l.lhs).empty() && m.sort(l.lhs) == m.sig().bool_sort() &&
                k != op_kind::eq && k != op_kind::distinct && k != op_kind::ueq;
    if (pred && m.is_true(l.rhs))
        return m.to_string(l.lhs);
    if (pred && m.is_false(l.rhs))
        return "(not " + m.to_string(l.lhs) + ")";
    return "(= " + m.to_string(l.lhs) + " " + m.to_string(l.rhs) + ")";
}

std::string to_string(term_manager const& m, formula const& f) {
    if (f.lits.empty())
        return "true";
    std::string r = "(and";
    for (literal const& l : f.lits)
        r += " " + to_string(m, l);
    return r + ")";
}

}
