#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qe/oracle.h"
#include "qe/parser.h"
#include "qe/terms.h"

namespace qe_test {

inline std::string slurp(std::string const& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string problem_path(std::string const& name) { return std::string(QE_PROBLEMS) + "/" + name; }

inline qe::problem load(qe::term_manager& m, std::string const& name) {
    return qe::parse_problem(m, slurp(problem_path(name)));
}

// Literals as orientation-free strings, for comparisons modulo literal order
// and the orientation of equalities.
inline std::set<std::string> lit_set(qe::term_manager const& m, qe::formula const& f) {
    std::set<std::string> out;
    for (qe::literal const& l : f.lits) {
        std::string a = m.to_string(l.lhs), b = m.to_string(l.rhs);
        if (b < a)
            std::swap(a, b);
        char const* k = l.kind == qe::lit_kind::eq ? "=" : l.kind == qe::lit_kind::diseq ? "!=" : "ueq";
        out.insert(std::string(k) + " " + a + " " + b);
    }
    return out;
}

// The literal set of a formula written in the input syntax.
inline std::set<std::string> lit_set(qe::term_manager& m, std::string const& text) {
    return lit_set(m, qe::parse_formula_in(m, text));
}

inline qe::term_id term(qe::term_manager& m, std::string const& text) {
    auto es = qe::read_sexprs(text);
    return qe::parse_term(m, es.at(0));
}

inline qe::decl_id sym(qe::term_manager const& m, std::string const& name) {
    return m.sig().find_symbol(name).value();
}

// f entails the literal l for every interpretation of its symbols.
inline bool entails_literal(qe::term_manager& m, qe::formula const& f, qe::literal const& l,
                            qe::oracle_bounds const& b) {
    switch (l.kind) {
    case qe::lit_kind::diseq: return qe::entails_eq(m, f, m.mk_distinct(l.lhs, l.rhs), m.mk_true(), b);
    default:                  return qe::entails_eq(m, f, l.lhs, l.rhs, b);
    }
}

// Bounds for the random EUF suites: universe 3 when the interpretations of
// the free symbols fit `cap`, otherwise universe 2. The universe used is
// stored in b.universe.
template <class Check>
auto at_small_universe(Check check, qe::oracle_bounds& b, std::uint64_t cap = 2'000'000) {
    b.universe = 3;
    b.max_interps = cap;
    try {
        return check(b);
    } catch (qe::search_space_error const&) {
        b.universe = 2;
        return check(b);
    }
}

}
