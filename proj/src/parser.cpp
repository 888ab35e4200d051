#include "qe/parser.h"

#include <cctype>

namespace qe {

namespace {

class reader {
    std::string const& m_text;
    std::size_t m_pos = 0;
    unsigned m_line = 1, m_col = 1;

    void advance() {
        if (m_text[m_pos] == '\n') {
            ++m_line;
            m_col = 1;
        } else {
            ++m_col;
        }
        ++m_pos;
    }

    void skip_ws() {
        while (m_pos < m_text.size()) {
            char c = m_text[m_pos];
            if (c == ';') {
                while (m_pos < m_text.size() && m_text[m_pos] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

public:
    explicit reader(std::string const& t) : m_text(t) {}

    bool at_end() {
        skip_ws();
        return m_pos >= m_text.size();
    }

    sexpr read() {
        skip_ws();
        sexpr e;
        e.line = m_line;
        e.column = m_col;
        if (m_pos >= m_text.size())
            throw parse_error("unexpected end of input", m_line, m_col);
        char c = m_text[m_pos];
        if (c == ')')
            throw parse_error("unexpected ')'", m_line, m_col);
        if (c == '(') {
            advance();
            e.is_atom = false;
            while (true) {
                skip_ws();
                if (m_pos >= m_text.size())
                    throw parse_error("unbalanced '(' opened here", e.line, e.column);
                if (m_text[m_pos] == ')') {
                    advance();
                    break;
                }
                e.list.push_back(read());
            }
            return e;
        }
        if (c == '|') {
            advance();
            while (m_pos < m_text.size() && m_text[m_pos] != '|') {
                e.atom += m_text[m_pos];
                advance();
            }
            if (m_pos >= m_text.size())
                throw parse_error("unterminated quoted symbol", e.line, e.column);
            advance();
            return e;
        }
        while (m_pos < m_text.size()) {
            c = m_text[m_pos];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
                break;
            e.atom += c;
            advance();
        }
        return e;
    }
};

bool is_numeral(std::string const& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

// Re-raise sort errors with the position of the offending expression.
template <typename F>
auto at(sexpr const& e, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (sort_error const& ex) {
        throw sort_error(std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + ex.what());
    }
}

std::string const& head(sexpr const& e) {
    if (e.is_atom || e.list.empty() || !e.list[0].is_atom)
        e.fail("expected a command");
    return e.list[0].atom;
}

void expect_size(sexpr const& e, std::size_t n) {
    if (e.list.size() != n)
        e.fail("'" + head(e) + "' expects " + std::to_string(n - 1) + " arguments");
}

std::string const& symbol(sexpr const& e) {
    if (!e.is_atom || e.atom.empty() || is_numeral(e.atom))
        e.fail("expected a symbol");
    return e.atom;
}

}

std::vector<sexpr> read_sexprs(std::string const& text) {
    reader r(text);
    std::vector<sexpr> out;
    while (!r.at_end())
        out.push_back(r.read());
    return out;
}

sort_id parse_sort(term_manager& tm, sexpr const& e) {
    if (e.is_atom) {
        if (auto s = tm.sig().find_sort(e.atom))
            return *s;
        e.fail("unknown sort '" + e.atom + "'");
    }
    if (e.list.size() == 3 && e.list[0].is("Array"))
        return tm.sig().mk_array_sort(parse_sort(tm, e.list[1]), parse_sort(tm, e.list[2]));
    e.fail("malformed sort");
}

term_id parse_term(term_manager& tm, sexpr const& e) {
    if (e.is_atom) {
        if (is_numeral(e.atom))
            return tm.mk_numeral(std::stoll(e.atom));
        return at(e, [&] { return tm.mk_app(e.atom, {}); });
    }
    if (e.list.empty())
        e.fail("empty application");
    sexpr const& h = e.list[0];
    if (h.is("-") && e.list.size() == 2 && e.list[1].is_atom && is_numeral(e.list[1].atom))
        return tm.mk_numeral(-std::stoll(e.list[1].atom));
    std::vector<term_id> args;
    for (std::size_t i = 1; i < e.list.size(); ++i)
        args.push_back(parse_term(tm, e.list[i]));
    // ((_ is C) t)
    if (!h.is_atom && h.list.size() == 3 && h.list[0].is("_") && h.list[1].is("is"))
        return at(e, [&] { return tm.mk_app("is-" + symbol(h.list[2]), args); });
    if (!h.is_atom)
        h.fail("expected a function symbol");
    if (h.is("not") || h.is("and"))
        h.fail("'" + h.atom + "' is only allowed at literal level");
    return at(e, [&] { return tm.mk_app(h.atom, args); });
}

literal parse_literal(term_manager& tm, sexpr const& e) {
    auto binary = [&](sexpr const& x, lit_kind k) {
        if (x.list.size() != 3)
            x.fail("'" + x.list[0].atom + "' expects 2 arguments");
        term_id a = parse_term(tm, x.list[1]);
        term_id b = parse_term(tm, x.list[2]);
        if (tm.sort(a) != tm.sort(b))
            throw sort_error(std::to_string(x.line) + ":" + std::to_string(x.column) + ": sides have sorts " +
                             tm.sig().sort_name(tm.sort(a)) + " and " + tm.sig().sort_name(tm.sort(b)));
        return literal{k, a, b};
    };
    auto predicate = [&](sexpr const& x, bool positive) {
        term_id p = parse_term(tm, x);
        if (tm.sort(p) != tm.sig().bool_sort())
            x.fail("literal is not Bool-valued");
        return literal{lit_kind::eq, p, positive ? tm.mk_true() : tm.mk_false()};
    };
    if (!e.is_atom && !e.list.empty() && e.list[0].is_atom) {
        std::string const& h = e.list[0].atom;
        if (h == "=")
            return binary(e, lit_kind::eq);
        if (h == "distinct")
            return binary(e, lit_kind::diseq);
        if (h == "ueq")
            return binary(e, lit_kind::explicit_eq);
        if (h == "not") {
            if (e.list.size() != 2)
                e.fail("'not' expects 1 argument");
            sexpr const& x = e.list[1];
            if (!x.is_atom && !x.list.empty() && x.list[0].is("="))
                return binary(x, lit_kind::diseq);
            if (!x.is_atom && !x.list.empty() && x.list[0].is("distinct"))
                return binary(x, lit_kind::eq);
            return predicate(x, false);
        }
    }
    return predicate(e, true);
}

namespace {

void collect_literals(term_manager& tm, sexpr const& e, std::vector<literal>& out) {
    if (e.is("true"))
        return;
    if (!e.is_atom && !e.list.empty() && e.list[0].is("and")) {
        for (std::size_t i = 1; i < e.list.size(); ++i)
            collect_literals(tm, e.list[i], out);
        return;
    }
    out.push_back(parse_literal(tm, e));
}

void declare_datatype(term_manager& tm, sexpr const& e) {
    expect_size(e, 3);
    std::string const& name = symbol(e.list[1]);
    sexpr const& cs = e.list[2];
    if (cs.is_atom || cs.list.empty())
        cs.fail("expected a constructor list");
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, sort_id>>>> ctors;
    for (sexpr const& c : cs.list) {
        if (c.is_atom) {
            ctors.push_back({symbol(c), {}});
            continue;
        }
        if (c.list.empty())
            c.fail("empty constructor declaration");
        std::vector<std::pair<std::string, sort_id>> fields;
        for (std::size_t i = 1; i < c.list.size(); ++i) {
            sexpr const& f = c.list[i];
            if (f.is_atom || f.list.size() != 2)
                f.fail("expected (selector sort)");
            fields.push_back({symbol(f.list[0]), parse_sort(tm, f.list[1])});
        }
        ctors.push_back({symbol(c.list[0]), fields});
    }
    at(e, [&] { return tm.sig().declare_datatype(name, ctors); });
}

}

problem parse_problem(term_manager& tm, std::string const& text) {
    problem p;
    std::vector<sexpr> cmds = read_sexprs(text);
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        sexpr const& e = cmds[i];
        std::string const& h = head(e);
        if (p.command != command_kind::none)
            e.fail("no command may follow '(qel)' or '(mbp)'");
        if (h == "set-logic" || h == "set-info" || h == "set-option") {
            continue;
        } else if (h == "declare-sort") {
            if (e.list.size() == 3 && !e.list[2].is("0"))
                e.list[2].fail("only arity 0 sorts are supported");
            if (e.list.size() != 2 && e.list.size() != 3)
                e.fail("'declare-sort' expects a name and arity");
            at(e, [&] { return tm.sig().declare_sort(symbol(e.list[1])); });
        } else if (h == "declare-datatype") {
            declare_datatype(tm, e);
        } else if (h == "declare-fun") {
            expect_size(e, 4);
            if (e.list[2].is_atom)
                e.list[2].fail("expected an argument sort list");
            std::vector<sort_id> dom;
            for (sexpr const& s : e.list[2].list)
                dom.push_back(parse_sort(tm, s));
            sort_id r = parse_sort(tm, e.list[3]);
            at(e, [&] { return tm.sig().declare_fun(symbol(e.list[1]), dom, r); });
        } else if (h == "declare-const") {
            expect_size(e, 3);
            sort_id r = parse_sort(tm, e.list[2]);
            at(e, [&] { return tm.sig().declare_fun(symbol(e.list[1]), {}, r); });
        } else if (h == "declare-var") {
            expect_size(e, 3);
            sort_id r = parse_sort(tm, e.list[2]);
            at(e, [&] { return tm.sig().declare_var(symbol(e.list[1]), r); });
        } else if (h == "assert") {
            expect_size(e, 2);
            collect_literals(tm, e.list[1], p.f.lits);
        } else if (h == "qel") {
            expect_size(e, 1);
            p.command = command_kind::qel;
        } else if (h == "mbp") {
            expect_size(e, 1);
            p.command = command_kind::mbp;
        } else {
            e.list[0].fail("unknown command '" + h + "'");
        }
    }
    p.f.free_vars = tm.sig().vars();
    return p;
}

formula parse_formula_in(term_manager& tm, std::string const& text) {
    std::vector<sexpr> es = read_sexprs(text);
    if (es.size() != 1)
        throw parse_error("expected exactly one formula");
    formula f;
    collect_literals(tm, es[0], f.lits);
    f.free_vars = occurring_vars(tm, f.lits, tm.sig().vars());
    return f;
}

}
