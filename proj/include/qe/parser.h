#pragma once

#include <string>
#include <vector>

#include "qe/terms.h"

namespace qe {

struct sexpr {
    bool               is_atom = true;
    std::string        atom;
    std::vector<sexpr> list;
    unsigned           line = 0, column = 0;

    bool is(std::string const& s) const { return is_atom && atom == s; }
    [[noreturn]] void fail(std::string const& msg) const { throw parse_error(msg, line, column); }
};

// Reads every top-level S-expression in text; ';' starts a line comment.
std::vector<sexpr> read_sexprs(std::string const& text);

enum class command_kind { none, qel, mbp };

struct problem {
    formula      f;
    command_kind command = command_kind::none;
};

// Declarations and assertions of the input language. Symbols are added to tm.
problem parse_problem(term_manager& tm, std::string const& text);

sort_id parse_sort(term_manager& tm, sexpr const& e);
term_id parse_term(term_manager& tm, sexpr const& e);
literal parse_literal(term_manager& tm, sexpr const& e);

// Parses printed output, "true" or "(and lit ...)" or a single literal, over
// an existing signature. free_vars lists the declared variables that occur.
formula parse_formula_in(term_manager& tm, std::string const& text);

}
