#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qe/terms.h"

namespace qe {

enum class value_kind { integer, boolean, elem, array, adt };

// A concrete value. Arrays are a default plus the finitely many indices where
// they differ from it, kept in a canonical form so that structural equality is
// extensional equality.
struct value {
    value_kind         kind = value_kind::integer;
    sort_id            sort = 0;
    std::int64_t       num = 0;        // integer, boolean, elem index, constructor index
    std::vector<value> args;           // constructor arguments
    std::vector<value> def;            // array default, one element
    std::vector<value> keys, vals;     // array exceptions, keys ascending

    static value mk_int(sort_id s, std::int64_t n);
    static value mk_bool(sort_id s, bool b);
    static value mk_elem(sort_id s, std::int64_t k);
    static value mk_adt(sort_id s, unsigned ctor, std::vector<value> args);
};

int compare(value const& a, value const& b);
inline bool operator==(value const& a, value const& b) { return compare(a, b) == 0; }
inline bool operator!=(value const& a, value const& b) { return compare(a, b) != 0; }
inline bool operator<(value const& a, value const& b) { return compare(a, b) < 0; }

struct fun_table {
    std::vector<std::pair<std::vector<value>, value>> rows;
    value def;
};

class model {
    term_manager const*              m = nullptr;
    std::map<decl_id, value>         m_consts;
    std::map<decl_id, fun_table>     m_funs;
    std::map<sort_id, unsigned>      m_universe;

    void canonicalize(value& a) const;
public:
    model() = default;
    explicit model(term_manager const& tm) : m(&tm) {}

    term_manager const& manager() const { return *m; }

    void set_universe(sort_id s, unsigned n) { m_universe[s] = n; }
    std::optional<unsigned> universe(sort_id s) const;
    void set_const(decl_id d, value v);
    void set_fun(decl_id d, fun_table t);
    bool has_const(decl_id d) const { return m_consts.count(d) != 0; }
    std::map<decl_id, value> const& consts() const { return m_consts; }
    std::map<decl_id, fun_table> const& funs() const { return m_funs; }
    std::map<sort_id, unsigned> const& universes() const { return m_universe; }
    // A copy with one more constant; the name must be uninterpreted so far.
    model extend(decl_id d, value v) const;

    value eval(term_id t) const;
    bool holds(literal const& l) const;
    bool satisfies(formula const& f) const;

    value default_value(sort_id s) const;
    // All values of a finite sort, nullopt if the sort is infinite or has
    // more than `cap` values.
    std::optional<std::vector<value>> enumerate(sort_id s, std::size_t cap = 4096) const;
    // Array with the given default and exceptions, in canonical form.
    value mk_array(sort_id s, value def, std::vector<std::pair<value, value>> const& entries) const;
    value read(value const& a, value const& i) const;
    value write(value const& a, value const& i, value const& v) const;

    std::string to_string(value const& v) const;
    // Model file text that parse_model reads back.
    std::string to_string() const;
};

model parse_model(term_manager& tm, std::string const& text);

}
