#include "qe/model.h"

#include <algorithm>
#include <functional>

#include "qe/parser.h"

namespace qe {

value value::mk_int(sort_id s, std::int64_t n) {
    value v;
    v.kind = value_kind::integer;
    v.sort = s;
    v.num = n;
    return v;
}

value value::mk_bool(sort_id s, bool b) {
    value v;
    v.kind = value_kind::boolean;
    v.sort = s;
    v.num = b;
    return v;
}

value value::mk_elem(sort_id s, std::int64_t k) {
    value v;
    v.kind = value_kind::elem;
    v.sort = s;
    v.num = k;
    return v;
}

value value::mk_adt(sort_id s, unsigned ctor, std::vector<value> args) {
    value v;
    v.kind = value_kind::adt;
    v.sort = s;
    v.num = ctor;
    v.args = std::move(args);
    return v;
}

namespace {
int compare_vec(std::vector<value> const& a, std::vector<value> const& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = compare(a[i], b[i]))
            return c;
    return 0;
}
}

int compare(value const& a, value const& b) {
    if (a.kind != b.kind)
        return a.kind < b.kind ? -1 : 1;
    if (a.sort != b.sort)
        return a.sort < b.sort ? -1 : 1;
    if (a.num != b.num)
        return a.num < b.num ? -1 : 1;
    if (int c = compare_vec(a.args, b.args))
        return c;
    if (int c = compare_vec(a.def, b.def))
        return c;
    if (int c = compare_vec(a.keys, b.keys))
        return c;
    return compare_vec(a.vals, b.vals);
}

std::optional<unsigned> model::universe(sort_id s) const {
    auto it = m_universe.find(s);
    if (it == m_universe.end())
        return std::nullopt;
    return it->second;
}

void model::set_const(decl_id d, value v) { m_consts[d] = std::move(v); }
void model::set_fun(decl_id d, fun_table t) { m_funs[d] = std::move(t); }

model model::extend(decl_id d, value v) const {
    if (m_consts.count(d) || m_funs.count(d))
        throw model_error("symbol '" + m->sig().decl(d).name + "' is already interpreted");
    model r = *this;
    r.m_consts[d] = std::move(v);
    return r;
}

value model::default_value(sort_id s) const {
    sort_info const& si = m->sig().sort(s);
    switch (si.kind) {
    case sort_kind::boolean:       return value::mk_bool(s, false);
    case sort_kind::integer:       return value::mk_int(s, 0);
    case sort_kind::uninterpreted: return value::mk_elem(s, 0);
    case sort_kind::array:         return mk_array(s, default_value(si.value), {});
    case sort_kind::datatype: {
        std::vector<value> args;
        for (field_info const& f : si.ctors[0].fields)
            args.push_back(default_value(f.sort));
        return value::mk_adt(s, 0, std::move(args));
    }
    }
    return value();
}

std::optional<std::vector<value>> model::enumerate(sort_id s, std::size_t cap) const {
    sort_info const& si = m->sig().sort(s);
    std::vector<value> out;
    switch (si.kind) {
    case sort_kind::boolean:
        return std::vector<value>{value::mk_bool(s, false), value::mk_bool(s, true)};
    case sort_kind::integer:
        return std::nullopt;
    case sort_kind::uninterpreted: {
        auto n = universe(s);
        if (!n || *n > cap)
            return std::nullopt;
        for (unsigned k = 0; k < *n; ++k)
            out.push_back(value::mk_elem(s, k));
        return out;
    }
    case sort_kind::array: {
        auto is = enumerate(si.index, cap), vs = enumerate(si.value, cap);
        if (!is || !vs)
            return std::nullopt;
        double total = 1;
        for (std::size_t k = 0; k < is->size(); ++k)
            total *= vs->size();
        if (total > cap)
            return std::nullopt;
        std::vector<std::size_t> digits(is->size(), 0);
        while (true) {
            std::vector<std::pair<value, value>> es;
            for (std::size_t k = 0; k < is->size(); ++k)
                es.push_back({(*is)[k], (*vs)[digits[k]]});
            out.push_back(mk_array(s, (*vs)[0], es));
            std::size_t k = 0;
            while (k < digits.size() && ++digits[k] == vs->size())
                digits[k++] = 0;
            if (k == digits.size())
                break;
        }
        return out;
    }
    case sort_kind::datatype:
        for (unsigned c = 0; c < si.ctors.size(); ++c) {
            std::vector<std::vector<value>> doms;
            for (field_info const& f : si.ctors[c].fields) {
                auto d = enumerate(f.sort, cap);
                if (!d)
                    return std::nullopt;
                doms.push_back(*d);
            }
            std::vector<std::size_t> digits(doms.size(), 0);
            while (true) {
                std::vector<value> args;
                for (std::size_t k = 0; k < doms.size(); ++k) {
                    if (doms[k].empty())
                        goto next_ctor;
                    args.push_back(doms[k][digits[k]]);
                }
                out.push_back(value::mk_adt(s, c, std::move(args)));
                if (out.size() > cap)
                    return std::nullopt;
                {
                    std::size_t k = 0;
                    while (k < digits.size() && ++digits[k] == doms[k].size())
                        digits[k++] = 0;
                    if (k == digits.size())
                        break;
                }
            }
        next_ctor:;
        }
        return out;
    }
    return std::nullopt;
}

void model::canonicalize(value& a) const {
    sort_info const& si = m->sig().sort(a.sort);
    std::vector<std::pair<value, value>> es;
    for (std::size_t k = 0; k < a.keys.size(); ++k)
        es.push_back({a.keys[k], a.vals[k]});
    std::sort(es.begin(), es.end(), [](auto const& x, auto const& y) { return x.first < y.first; });
    if (auto dom = enumerate(si.index, 256)) {
        // Finite index domain: the default is the most frequent value.
        std::vector<value> table;
        for (value const& i : *dom) {
            auto it = std::lower_bound(es.begin(), es.end(), i,
                                       [](auto const& e, value const& k) { return e.first < k; });
            table.push_back(it != es.end() && it->first == i ? it->second : a.def[0]);
        }
        std::vector<value> sorted = table;
        std::sort(sorted.begin(), sorted.end());
        value best = sorted[0];
        std::size_t best_n = 0;
        for (std::size_t k = 0; k < sorted.size();) {
            std::size_t e = k;
            while (e < sorted.size() && sorted[e] == sorted[k])
                ++e;
            if (e - k > best_n) {
                best_n = e - k;
                best = sorted[k];
            }
            k = e;
        }
        a.def = {best};
        a.keys.clear();
        a.vals.clear();
        for (std::size_t k = 0; k < dom->size(); ++k)
            if (table[k] != best) {
                a.keys.push_back((*dom)[k]);
                a.vals.push_back(table[k]);
            }
        return;
    }
    a.keys.clear();
    a.vals.clear();
    for (auto& [k, v] : es)
        if (v != a.def[0]) {
            a.keys.push_back(k);
            a.vals.push_back(v);
        }
}

value model::mk_array(sort_id s, value def, std::vector<std::pair<value, value>> const& entries) const {
    value a;
    a.kind = value_kind::array;
    a.sort = s;
    a.def = {std::move(def)};
    for (auto const& [k, v] : entries) {
        auto it = std::find(a.keys.begin(), a.keys.end(), k);
        if (it != a.keys.end()) {
            a.vals[it - a.keys.begin()] = v;
        } else {
            a.keys.push_back(k);
            a.vals.push_back(v);
        }
    }
    canonicalize(a);
    return a;
}

value model::read(value const& a, value const& i) const {
    auto it = std::lower_bound(a.keys.begin(), a.keys.end(), i);
    if (it != a.keys.end() && *it == i)
        return a.vals[it - a.keys.begin()];
    return a.def[0];
}

value model::write(value const& a, value const& i, value const& v) const {
    std::vector<std::pair<value, value>> es;
    for (std::size_t k = 0; k < a.keys.size(); ++k)
        es.push_back({a.keys[k], a.vals[k]});
    es.push_back({i, v});
    return mk_array(a.sort, a.def[0], es);
}

value model::eval(term_id t) const {
    signature const& sig = m->sig();
    decl_info const& d = sig.decl(m->decl(t));
    sort_id s = m->sort(t);
    std::vector<value> as;
    for (term_id a : m->args(t))
        as.push_back(eval(a));
    auto boolean = [&](bool b) { return value::mk_bool(sig.bool_sort(), b); };
    switch (d.kind) {
    case op_kind::tt:       return boolean(true);
    case op_kind::ff:       return boolean(false);
    case op_kind::numeral:  return value::mk_int(s, d.num);
    case op_kind::eq:
    case op_kind::ueq:      return boolean(as[0] == as[1]);
    case op_kind::distinct: return boolean(as[0] != as[1]);
    case op_kind::read:     return read(as[0], as[1]);
    case op_kind::write:    return write(as[0], as[1], as[2]);
    case op_kind::peq: {
        value a = as[0];
        for (std::size_t k = 2; k < as.size(); ++k)
            a = write(a, as[k], read(as[1], as[k]));
        return boolean(a == as[1]);
    }
    case op_kind::add: return value::mk_int(s, as[0].num + as[1].num);
    case op_kind::sub: return value::mk_int(s, as[0].num - as[1].num);
    case op_kind::gt:  return boolean(as[0].num > as[1].num);
    case op_kind::lt:  return boolean(as[0].num < as[1].num);
    case op_kind::ge:  return boolean(as[0].num >= as[1].num);
    case op_kind::le:  return boolean(as[0].num <= as[1].num);
    case op_kind::ctor: return value::mk_adt(s, d.ctor_idx, std::move(as));
    case op_kind::sel:
        if (as[0].num == d.ctor_idx)
            return as[0].args[d.field_idx];
        return default_value(s);
    case op_kind::tester: return boolean(as[0].num == d.ctor_idx);
    case op_kind::var:
    case op_kind::uninterp:
        break;
    }
    if (as.empty()) {
        auto it = m_consts.find(m->decl(t));
        if (it != m_consts.end())
            return it->second;
    }
    auto it = m_funs.find(m->decl(t));
    if (it == m_funs.end())
        throw model_error("no interpretation for '" + d.name + "'");
    for (auto const& [key, v] : it->second.rows)
        if (key == as)
            return v;
    return it->second.def;
}

bool model::holds(literal const& l) const {
    bool eq = eval(l.lhs) == eval(l.rhs);
    return l.kind == lit_kind::diseq ? !eq : eq;
}

bool model::satisfies(formula const& f) const {
    for (literal const& l : f.lits)
        if (!holds(l))
            return false;
    return true;
}

std::string model::to_string(value const& v) const {
    signature const& sig = m->sig();
    switch (v.kind) {
    case value_kind::integer:
        return v.num < 0 ? "(- " + std::to_string(-v.num) + ")" : std::to_string(v.num);
    case value_kind::boolean:
        return v.num ? "true" : "false";
    case value_kind::elem:
        return "(elem " + sig.sort_name(v.sort) + " " + std::to_string(v.num) + ")";
    case value_kind::array: {
        std::string r = "(array (default " + to_string(v.def[0]) + ")";
        for (std::size_t k = 0; k < v.keys.size(); ++k)
            r += " (" + to_string(v.keys[k]) + " " + to_string(v.vals[k]) + ")";
        return r + ")";
    }
    case value_kind::adt: {
        std::string const& c = sig.sort(v.sort).ctors[v.num].name;
        if (v.args.empty())
            return c;
        std::string r = "(" + c;
        for (value const& a : v.args)
            r += " " + to_string(a);
        return r + ")";
    }
    }
    return "";
}

std::string model::to_string() const {
    signature const& sig = m->sig();
    std::string r;
    for (auto [s, n] : m_universe)
        r += "(universe " + sig.sort_name(s) + " " + std::to_string(n) + ")\n";
    for (auto const& [d, v] : m_consts)
        r += "(define-value " + sig.decl(d).name + " " + to_string(v) + ")\n";
    for (auto const& [d, t] : m_funs) {
        r += "(define-fun-values " + sig.decl(d).name + " (default " + to_string(t.def) + ")";
        for (auto const& [key, v] : t.rows) {
            r += " ((";
            for (std::size_t k = 0; k < key.size(); ++k)
                r += (k ? " " : "") + to_string(key[k]);
            r += ") " + to_string(v) + ")";
        }
        r += ")\n";
    }
    return r;
}

namespace {

bool all_digits(std::string const& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

value parse_value(model const& mdl, term_manager const& tm, sort_id s, sexpr const& e) {
    signature const& sig = tm.sig();
    sort_info const& si = sig.sort(s);
    switch (si.kind) {
    case sort_kind::integer:
        if (e.is_atom && all_digits(e.atom))
            return value::mk_int(s, std::stoll(e.atom));
        if (e.is_atom && e.atom.size() > 1 && e.atom[0] == '-' && all_digits(e.atom.substr(1)))
            return value::mk_int(s, std::stoll(e.atom));
        if (!e.is_atom && e.list.size() == 2 && e.list[0].is("-") && e.list[1].is_atom && all_digits(e.list[1].atom))
            return value::mk_int(s, -std::stoll(e.list[1].atom));
        e.fail("expected an integer");
    case sort_kind::boolean:
        if (e.is("true") || e.is("false"))
            return value::mk_bool(s, e.is("true"));
        e.fail("expected true or false");
    case sort_kind::uninterpreted: {
        if (e.is_atom || e.list.size() != 3 || !e.list[0].is("elem") || !e.list[1].is(si.name) ||
            !e.list[2].is_atom || !all_digits(e.list[2].atom))
            e.fail("expected (elem " + si.name + " <index>)");
        std::int64_t k = std::stoll(e.list[2].atom);
        if (auto n = mdl.universe(s); n && k >= static_cast<std::int64_t>(*n))
            e.list[2].fail("element index outside the universe of " + si.name);
        return value::mk_elem(s, k);
    }
    case sort_kind::array: {
        if (e.is_atom || e.list.size() < 2 || !e.list[0].is("array") || e.list[1].is_atom ||
            e.list[1].list.size() != 2 || !e.list[1].list[0].is("default"))
            e.fail("expected (array (default <value>) (<key> <value>)*)");
        value def = parse_value(mdl, tm, si.value, e.list[1].list[1]);
        std::vector<std::pair<value, value>> es;
        for (std::size_t k = 2; k < e.list.size(); ++k) {
            sexpr const& p = e.list[k];
            if (p.is_atom || p.list.size() != 2)
                p.fail("expected (<key> <value>)");
            value key = parse_value(mdl, tm, si.index, p.list[0]);
            for (auto const& [k2, v2] : es)
                if (k2 == key)
                    p.fail("duplicate array key");
            es.push_back({key, parse_value(mdl, tm, si.value, p.list[1])});
        }
        return mdl.mk_array(s, def, es);
    }
    case sort_kind::datatype: {
        std::string const& name = e.is_atom ? e.atom : (!e.list.empty() && e.list[0].is_atom ? e.list[0].atom : "");
        for (unsigned c = 0; c < si.ctors.size(); ++c) {
            if (si.ctors[c].name != name)
                continue;
            std::size_t n = e.is_atom ? 0 : e.list.size() - 1;
            if (n != si.ctors[c].fields.size())
                e.fail("constructor '" + name + "' expects " + std::to_string(si.ctors[c].fields.size()) + " values");
            std::vector<value> args;
            for (std::size_t k = 0; k < n; ++k)
                args.push_back(parse_value(mdl, tm, si.ctors[c].fields[k].sort, e.list[k + 1]));
            return value::mk_adt(s, c, std::move(args));
        }
        e.fail("expected a constructor of " + si.name);
    }
    }
    e.fail("unsupported sort");
}

decl_id lookup(term_manager const& tm, sexpr const& e) {
    if (!e.is_atom)
        e.fail("expected a symbol");
    auto d = tm.sig().find_symbol(e.atom);
    if (!d)
        e.fail("unknown symbol '" + e.atom + "'");
    op_kind k = tm.sig().decl(*d).kind;
    if (k != op_kind::uninterp && k != op_kind::var)
        e.fail("'" + e.atom + "' is not an uninterpreted symbol");
    return *d;
}

}

model parse_model(term_manager& tm, std::string const& text) {
    model mdl(tm);
    std::vector<sexpr> cmds = read_sexprs(text);
    for (sexpr const& e : cmds) {
        if (e.is_atom || e.list.empty() || !e.list[0].is_atom)
            e.fail("expected a model command");
        if (!e.list[0].is("universe"))
            continue;
        if (e.list.size() != 3 || !e.list[2].is_atom || !all_digits(e.list[2].atom))
            e.fail("expected (universe <sort> <size>)");
        auto s = tm.sig().find_sort(e.list[1].is_atom ? e.list[1].atom : "");
        if (!s || tm.sig().sort(*s).kind != sort_kind::uninterpreted)
            e.list[1].fail("expected an uninterpreted sort");
        mdl.set_universe(*s, std::stoul(e.list[2].atom));
    }
    for (sexpr const& e : cmds) {
        std::string const& h = e.list[0].atom;
        if (h == "universe")
            continue;
        if (h == "define-value") {
            if (e.list.size() != 3)
                e.fail("expected (define-value <name> <value>)");
            decl_id d = lookup(tm, e.list[1]);
            decl_info const& di = tm.sig().decl(d);
            if (!di.domain.empty())
                e.list[1].fail("'" + di.name + "' is a function; use define-fun-values");
            if (mdl.has_const(d))
                e.list[1].fail("duplicate value for '" + di.name + "'");
            mdl.set_const(d, parse_value(mdl, tm, di.range, e.list[2]));
        } else if (h == "define-fun-values") {
            if (e.list.size() < 3 || e.list[2].is_atom || e.list[2].list.size() != 2 ||
                !e.list[2].list[0].is("default"))
                e.fail("expected (define-fun-values <name> (default <value>) ((<arg>*) <value>)*)");
            decl_id d = lookup(tm, e.list[1]);
            decl_info const& di = tm.sig().decl(d);
            fun_table t;
            t.def = parse_value(mdl, tm, di.range, e.list[2].list[1]);
            for (std::size_t k = 3; k < e.list.size(); ++k) {
                sexpr const& row = e.list[k];
                if (row.is_atom || row.list.size() != 2 || row.list[0].is_atom ||
                    row.list[0].list.size() != di.domain.size())
                    row.fail("expected ((<arg>*) <value>) with " + std::to_string(di.domain.size()) + " arguments");
                std::vector<value> key;
                for (std::size_t a = 0; a < di.domain.size(); ++a)
                    key.push_back(parse_value(mdl, tm, di.domain[a], row.list[0].list[a]));
                for (auto const& [k2, v2] : t.rows)
                    if (k2 == key)
                        row.fail("duplicate argument tuple");
                t.rows.push_back({key, parse_value(mdl, tm, di.range, row.list[1])});
            }
            mdl.set_fun(d, std::move(t));
        } else {
            e.list[0].fail("unknown model command '" + h + "'");
        }
    }
    return mdl;
}

}
