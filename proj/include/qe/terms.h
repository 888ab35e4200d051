#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qe/util.h"

namespace qe {

using sort_id = unsigned;
using decl_id = unsigned;
using term_id = unsigned;

enum class sort_kind { boolean, integer, uninterpreted, array, datatype };

struct field_info {
    std::string name;
    sort_id     sort;
    decl_id     selector;
};

struct ctor_info {
    std::string             name;
    std::vector<field_info> fields;
    decl_id                 ctor;
    decl_id                 tester;
};

struct sort_info {
    std::string            name;
    sort_kind              kind;
    sort_id                index = 0;   // arrays
    sort_id                value = 0;   // arrays
    std::vector<ctor_info> ctors;       // datatypes
};

// Interpreted operators are kept as ordinary labels by the egraph; only the
// model evaluator and the oracle give them meaning.
enum class op_kind {
    uninterp, var, numeral, tt, ff,
    eq, distinct, ueq,
    read, write, peq,
    add, sub, gt, lt, ge, le,
    ctor, sel, tester
};

struct decl_info {
    std::string          name;
    op_kind              kind;
    std::vector<sort_id> domain;
    sort_id              range;
    std::int64_t         num = 0;      // numeral value
    sort_id              dt = 0;       // datatype of ctor/sel/tester
    unsigned             ctor_idx = 0;
    unsigned             field_idx = 0;
};

// Sorts and function symbols. Builtins that are polymorphic in the paper
// (=, distinct, ueq, read, write, peq) get one declaration per instance.
class signature {
    std::vector<sort_info>                             m_sorts;
    std::unordered_map<std::string, sort_id>           m_sort_names;
    std::map<std::pair<sort_id, sort_id>, sort_id>     m_array_sorts;
    std::vector<decl_info>                             m_decls;
    std::unordered_map<std::string, decl_id>           m_symbols;
    std::map<std::tuple<op_kind, sort_id, unsigned>, decl_id> m_builtins;
    std::map<std::int64_t, decl_id>                    m_numerals;
    std::vector<decl_id>                               m_vars;
    sort_id m_bool, m_int;
    decl_id m_true, m_false;
    unsigned m_fresh = 0;

    decl_id add_decl(decl_info d);
    decl_id builtin(op_kind k, sort_id s, unsigned n = 0);
    void check_fresh_name(std::string const& name) const;
public:
    signature();

    sort_id bool_sort() const { return m_bool; }
    sort_id int_sort() const { return m_int; }
    sort_id declare_sort(std::string const& name);
    sort_id mk_array_sort(sort_id index, sort_id value);
    // ctors: (constructor name, [(selector name, sort)])
    sort_id declare_datatype(std::string const& name,
                             std::vector<std::pair<std::string, std::vector<std::pair<std::string, sort_id>>>> const& ctors);
    std::optional<sort_id> find_sort(std::string const& name) const;
    sort_info const& sort(sort_id s) const { return m_sorts[s]; }
    unsigned num_sorts() const { return m_sorts.size(); }
    std::string sort_name(sort_id s) const;
    bool is_array(sort_id s) const { return m_sorts[s].kind == sort_kind::array; }
    bool is_datatype(sort_id s) const { return m_sorts[s].kind == sort_kind::datatype; }

    decl_id declare_fun(std::string const& name, std::vector<sort_id> const& domain, sort_id range);
    decl_id declare_var(std::string const& name, sort_id s);
    // Fresh nullary symbol "<prefix>!<n>"; is_var marks it as a variable to eliminate.
    decl_id mk_fresh(std::string const& prefix, sort_id s, bool is_var);
    std::optional<decl_id> find_symbol(std::string const& name) const;
    decl_info const& decl(decl_id d) const { return m_decls[d]; }
    unsigned num_decls() const { return m_decls.size(); }
    bool is_var(decl_id d) const { return m_decls[d].kind == op_kind::var; }
    std::vector<decl_id> const& vars() const { return m_vars; }

    decl_id true_decl() const { return m_true; }
    decl_id false_decl() const { return m_false; }
    decl_id numeral(std::int64_t n);
    decl_id eq_decl(sort_id s) { return builtin(op_kind::eq, s); }
    decl_id distinct_decl(sort_id s) { return builtin(op_kind::distinct, s); }
    decl_id ueq_decl(sort_id s) { return builtin(op_kind::ueq, s); }
    decl_id read_decl(sort_id arr) { return builtin(op_kind::read, arr); }
    decl_id write_decl(sort_id arr) { return builtin(op_kind::write, arr); }
    decl_id peq_decl(sort_id arr, unsigned num_indices) { return builtin(op_kind::peq, arr, num_indices); }
    decl_id arith_decl(op_kind k) { return builtin(k, m_int); }

    // Resolve a surface name ("read", "+", "f", ...) against argument sorts.
    decl_id resolve(std::string const& name, std::vector<sort_id> const& arg_sorts);
};

struct term_node {
    decl_id              decl;
    std::vector<term_id> args;
    sort_id              sort;
    bool                 ground;
};

// Hash-consed term store. Structurally equal terms share one id.
class term_manager {
    signature              m_sig;
    std::vector<term_node> m_terms;
    struct key_hash {
        std::size_t operator()(std::pair<decl_id, std::vector<term_id>> const& k) const;
    };
    std::unordered_map<std::pair<decl_id, std::vector<term_id>>, term_id, key_hash> m_table;
public:
    signature& sig() { return m_sig; }
    signature const& sig() const { return m_sig; }

    term_id mk_app(decl_id f, std::vector<term_id> const& args);
    term_id mk_app(std::string const& name, std::vector<term_id> const& args);
    term_id mk_const(decl_id f) { return mk_app(f, {}); }
    term_id mk_true() { return mk_app(m_sig.true_decl(), {}); }
    term_id mk_false() { return mk_app(m_sig.false_decl(), {}); }
    term_id mk_numeral(std::int64_t n) { return mk_app(m_sig.numeral(n), {}); }
    term_id mk_eq(term_id a, term_id b);
    term_id mk_distinct(term_id a, term_id b);
    term_id mk_read(term_id a, term_id i);
    term_id mk_write(term_id a, term_id i, term_id v);

    term_node const& get(term_id t) const { return m_terms[t]; }
    decl_id decl(term_id t) const { return m_terms[t].decl; }
    op_kind kind(term_id t) const { return m_sig.decl(m_terms[t].decl).kind; }
    sort_id sort(term_id t) const { return m_terms[t].sort; }
    std::vector<term_id> const& args(term_id t) const { return m_terms[t].args; }
    bool is_ground(term_id t) const { return m_terms[t].ground; }
    bool is_var(term_id t) const { return kind(t) == op_kind::var; }
    bool is_true(term_id t) const { return kind(t) == op_kind::tt; }
    bool is_false(term_id t) const { return kind(t) == op_kind::ff; }
    unsigned size() const { return m_terms.size(); }

    std::set<decl_id> free_vars(term_id t) const;
    bool contains_any(term_id t, std::set<decl_id> const& syms) const;
    std::string to_string(term_id t) const;
};

enum class lit_kind { eq, diseq, explicit_eq };

struct literal {
    lit_kind kind;
    term_id  lhs;
    term_id  rhs;
    bool operator==(literal const& o) const { return kind == o.kind && lhs == o.lhs && rhs == o.rhs; }
    bool operator<(literal const& o) const {
        return std::tie(kind, lhs, rhs) < std::tie(o.kind, o.lhs, o.rhs);
    }
};

struct formula {
    std::vector<literal> lits;
    std::vector<decl_id> free_vars;
};

// The variables of `order` that occur in `lits`, in the order of `order`.
std::vector<decl_id> occurring_vars(term_manager const& m, std::vector<literal> const& lits,
                                    std::vector<decl_id> const& order);

std::string to_string(term_manager const& m, literal const& l);
// "true" for the empty conjunction, otherwise "(and l1 ... ln)".
std::string to_string(term_manager const& m, formula const& f);

}
