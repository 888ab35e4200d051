#include "qe/oracle.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace qe {

namespace {

using u64 = std::uint64_t;
constexpr u64 too_big = u64(1) << 62;
constexpr u64 overflow = std::numeric_limits<u64>::max();

u64 mul_cap(u64 a, u64 b) {
    if (a == 0 || b == 0)
        return 0;
    if (a > too_big / b)
        return too_big;
    return a * b;
}

// Every value of a sort is a number in [0, size). Arrays are numbers in base
// |V| with one digit per index; datatype values are laid out constructor by
// constructor, each as a mixed-radix number over its fields.
class finite_sorts {
    term_manager const&        m;
    oracle_bounds              b;
    std::map<sort_id, u64>     m_size;
    std::map<sort_id, std::vector<u64>> m_pow;        // arrays: |V|^k
    std::map<sort_id, std::vector<u64>> m_ctor_off;   // datatypes: first index of each ctor
public:
    finite_sorts(term_manager const& tm, oracle_bounds const& bounds) : m(tm), b(bounds) {}

    oracle_bounds const& bounds() const { return b; }

    u64 size(sort_id s) {
        auto it = m_size.find(s);
        if (it != m_size.end())
            return it->second;
        sort_info const& si = m.sig().sort(s);
        u64 n = 0;
        switch (si.kind) {
        case sort_kind::boolean:       n = 2; break;
        case sort_kind::integer:       n = static_cast<u64>(b.int_hi - b.int_lo + 1); break;
        case sort_kind::uninterpreted: n = b.universe; break;
        case sort_kind::array: {
            u64 ni = size(si.index), nv = size(si.value);
            std::vector<u64> pw{1};
            n = 1;
            for (u64 k = 0; k < ni && n < too_big; ++k) {
                n = mul_cap(n, nv);
                pw.push_back(n);
            }
            m_pow[s] = pw;
            break;
        }
        case sort_kind::datatype: {
            std::vector<u64> off;
            for (ctor_info const& c : si.ctors) {
                off.push_back(n);
                u64 k = 1;
                for (field_info const& f : c.fields)
                    k = mul_cap(k, size(f.sort));
                n = std::min(too_big, n + k);
            }
            off.push_back(n);
            m_ctor_off[s] = off;
            break;
        }
        }
        m_size[s] = n;
        return n;
    }

    u64 int_index(std::int64_t v) const {
        if (v < b.int_lo || v > b.int_hi)
            return overflow;
        return static_cast<u64>(v - b.int_lo);
    }
    std::int64_t int_value(u64 i) const { return b.int_lo + static_cast<std::int64_t>(i); }

    u64 read(sort_id s, u64 a, u64 i) {
        u64 nv = size(m.sig().sort(s).value);
        return (a / m_pow[s][i]) % nv;
    }
    u64 write(sort_id s, u64 a, u64 i, u64 v) {
        u64 p = m_pow[s][i];
        return a - read(s, a, i) * p + v * p;
    }

    unsigned ctor_of(sort_id s, u64 v) {
        size(s);
        auto const& off = m_ctor_off[s];
        unsigned c = 0;
        while (v >= off[c + 1])
            ++c;
        return c;
    }
    std::vector<u64> fields(sort_id s, u64 v) {
        unsigned c = ctor_of(s, v);
        u64 rest = v - m_ctor_off[s][c];
        std::vector<u64> out;
        for (field_info const& f : m.sig().sort(s).ctors[c].fields) {
            u64 n = size(f.sort);
            out.push_back(rest % n);
            rest /= n;
        }
        return out;
    }
    u64 mk_ctor(sort_id s, unsigned c, std::vector<u64> const& args) {
        size(s);
        auto const& fs = m.sig().sort(s).ctors[c].fields;
        u64 v = 0, w = 1;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            v += args[k] * w;
            w *= size(fs[k].sort);
        }
        return m_ctor_off[s][c] + v;
    }

    // Mirrors model::default_value.
    u64 default_value(sort_id s) {
        sort_info const& si = m.sig().sort(s);
        switch (si.kind) {
        case sort_kind::boolean:       return 0;
        case sort_kind::integer:       return b.int_lo <= 0 && 0 <= b.int_hi ? int_index(0) : 0;
        case sort_kind::uninterpreted: return 0;
        case sort_kind::array: {
            u64 d = default_value(si.value), a = 0;
            size(s);
            for (u64 k = 0; k + 1 < m_pow[s].size(); ++k)
                a += d * m_pow[s][k];
            return a;
        }
        case sort_kind::datatype: {
            std::vector<u64> args;
            for (field_info const& f : si.ctors[0].fields)
                args.push_back(default_value(f.sort));
            return mk_ctor(s, 0, args);
        }
        }
        return 0;
    }

    value to_value(model const& mdl, sort_id s, u64 v) {
        sort_info const& si = m.sig().sort(s);
        switch (si.kind) {
        case sort_kind::boolean:       return value::mk_bool(s, v != 0);
        case sort_kind::integer:       return value::mk_int(s, int_value(v));
        case sort_kind::uninterpreted: return value::mk_elem(s, static_cast<std::int64_t>(v));
        case sort_kind::array: {
            std::vector<std::pair<value, value>> es;
            u64 ni = size(si.index);
            for (u64 i = 0; i < ni; ++i)
                es.push_back({to_value(mdl, si.index, i), to_value(mdl, si.value, read(s, v, i))});
            return mdl.mk_array(s, to_value(mdl, si.value, read(s, v, 0)), es);
        }
        case sort_kind::datatype: {
            unsigned c = ctor_of(s, v);
            std::vector<value> args;
            auto fv = fields(s, v);
            for (std::size_t k = 0; k < fv.size(); ++k)
                args.push_back(to_value(mdl, si.ctors[c].fields[k].sort, fv[k]));
            return value::mk_adt(s, c, std::move(args));
        }
        }
        return value();
    }
};

// The symbols a set of formulas depends on.
struct symbol_set {
    std::vector<decl_id> consts;   // nullary, not variables
    std::vector<decl_id> funs;     // uninterpreted with arguments
    std::vector<decl_id> vars;     // variables, order of first occurrence
};

void collect(term_manager const& m, term_id t, symbol_set& s, std::set<decl_id>& seen) {
    decl_id d = m.decl(t);
    op_kind k = m.kind(t);
    if ((k == op_kind::var || k == op_kind::uninterp) && seen.insert(d).second) {
        if (k == op_kind::var)
            s.vars.push_back(d);
        else if (m.args(t).empty())
            s.consts.push_back(d);
        else
            s.funs.push_back(d);
    }
    for (term_id a : m.args(t))
        collect(m, a, s, seen);
}

symbol_set symbols_of(term_manager const& m, std::vector<literal> const& lits) {
    symbol_set s;
    std::set<decl_id> seen;
    for (literal const& l : lits) {
        collect(m, l.lhs, s, seen);
        collect(m, l.rhs, s, seen);
    }
    return s;
}

// One interpretation under construction: values of nullary symbols and the
// function tables, both addressed through per-declaration slots.
class evaluator {
    term_manager const& m;
    finite_sorts&       fs;
public:
    std::vector<u64>    val;      // by decl id
    std::vector<u64>    table_off;
    std::vector<u64>    tables;
    bool                overflowed = false;

    evaluator(term_manager const& tm, finite_sorts& f)
        : m(tm), fs(f), val(tm.sig().num_decls(), 0), table_off(tm.sig().num_decls(), 0) {}

    u64 eval(term_id t) {
        decl_info const& d = m.sig().decl(m.decl(t));
        auto const& as = m.args(t);
        u64 a0 = 0, a1 = 0;
        switch (d.kind) {
        case op_kind::var:
            return val[m.decl(t)];
        case op_kind::uninterp: {
            if (as.empty())
                return val[m.decl(t)];
            u64 idx = 0, w = 1;
            for (std::size_t k = 0; k < as.size(); ++k) {
                u64 v = eval(as[k]);
                if (v == overflow)
                    return overflow;
                idx += v * w;
                w *= fs.size(d.domain[k]);
            }
            return tables[table_off[m.decl(t)] + idx];
        }
        case op_kind::numeral: {
            u64 r = fs.int_index(d.num);
            if (r == overflow)
                overflowed = true;
            return r;
        }
        case op_kind::tt: return 1;
        case op_kind::ff: return 0;
        default: break;
        }
        std::vector<u64> vs;
        vs.reserve(as.size());
        for (term_id a : as) {
            u64 v = eval(a);
            if (v == overflow)
                return overflow;
            vs.push_back(v);
        }
        if (!vs.empty()) a0 = vs[0];
        if (vs.size() > 1) a1 = vs[1];
        switch (d.kind) {
        case op_kind::eq:
        case op_kind::ueq:      return a0 == a1;
        case op_kind::distinct: return a0 != a1;
        case op_kind::read:     return fs.read(d.domain[0], a0, a1);
        case op_kind::write:    return fs.write(d.domain[0], a0, a1, vs[2]);
        case op_kind::peq: {
            u64 a = a0;
            for (std::size_t k = 2; k < vs.size(); ++k)
                a = fs.write(d.domain[0], a, vs[k], fs.read(d.domain[0], a1, vs[k]));
            return a == a1;
        }
        case op_kind::add:
        case op_kind::sub: {
            std::int64_t x = fs.int_value(a0), y = fs.int_value(a1);
            u64 r = fs.int_index(d.kind == op_kind::add ? x + y : x - y);
            if (r == overflow)
                overflowed = true;
            return r;
        }
        case op_kind::gt: return a0 > a1;
        case op_kind::lt: return a0 < a1;
        case op_kind::ge: return a0 >= a1;
        case op_kind::le: return a0 <= a1;
        case op_kind::ctor: return fs.mk_ctor(d.range, d.ctor_idx, vs);
        case op_kind::sel:
            if (fs.ctor_of(d.dt, a0) == d.ctor_idx)
                return fs.fields(d.dt, a0)[d.field_idx];
            return fs.default_value(d.range);
        case op_kind::tester: return fs.ctor_of(d.dt, a0) == d.ctor_idx;
        default: break;
        }
        return overflow;
    }

    // nullopt when an out-of-window value was involved.
    std::optional<bool> holds(literal const& l) {
        u64 a = eval(l.lhs), b = eval(l.rhs);
        if (a == overflow || b == overflow)
            return std::nullopt;
        return l.kind == lit_kind::diseq ? a != b : a == b;
    }
};

// Depth-first search for an assignment of `vars` satisfying all literals;
// each literal is checked as soon as its last variable is assigned.
class witness_search {
    std::vector<decl_id>               m_vars;
    std::vector<u64>                   m_dom;
    std::vector<std::vector<literal>>  m_at;   // literals decided after assigning var k-1 (index 0: none)
public:
    witness_search(term_manager const& m, finite_sorts& fs, std::vector<literal> const& lits,
                   std::vector<decl_id> const& vars)
        : m_vars(vars) {
        std::map<decl_id, unsigned> pos;
        for (unsigned k = 0; k < vars.size(); ++k) {
            pos[vars[k]] = k + 1;
            m_dom.push_back(fs.size(m.sig().decl(vars[k]).range));
        }
        m_at.resize(vars.size() + 1);
        for (literal const& l : lits) {
            unsigned lvl = 0;
            for (term_id t : {l.lhs, l.rhs})
                for (decl_id v : m.free_vars(t))
                    lvl = std::max(lvl, pos.count(v) ? pos[v] : 0u);
            m_at[lvl].push_back(l);
        }
    }

    u64 space() const {
        u64 n = 1;
        for (u64 d : m_dom)
            n = mul_cap(n, d);
        return n;
    }

    // nullopt if an arithmetic overflow made the answer unreliable.
    std::optional<bool> run(evaluator& ev) { return go(ev, 0); }

private:
    std::optional<bool> go(evaluator& ev, unsigned k) {
        for (literal const& l : m_at[k]) {
            auto h = ev.holds(l);
            if (!h)
                return std::nullopt;
            if (!*h)
                return false;
        }
        if (k == m_vars.size())
            return true;
        bool unsure = false;
        for (u64 v = 0; v < m_dom[k]; ++v) {
            ev.val[m_vars[k]] = v;
            auto r = go(ev, k + 1);
            if (!r)
                unsure = true;
            else if (*r)
                return true;
        }
        if (unsure)
            return std::nullopt;
        return false;
    }
};

struct cell {
    decl_id  decl;
    u64      slot;   // index into tables, or ~0 for a nullary symbol
    u64      size;
};

std::string describe(term_manager const& m, finite_sorts& fs, sort_id s, u64 v) {
    model mdl(m);
    auto& sig = m.sig();
    for (sort_id k = 0; k < sig.num_sorts(); ++k)
        if (sig.sort(k).kind == sort_kind::uninterpreted)
            mdl.set_universe(k, fs.bounds().universe);
    return mdl.to_string(fs.to_value(mdl, s, v));
}

enum class check_mode { equiv, implies };

oracle_result check(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b,
                    check_mode mode) {
    finite_sorts fs(m, b);
    std::vector<literal> both = f1.lits;
    both.insert(both.end(), f2.lits.begin(), f2.lits.end());
    symbol_set all = symbols_of(m, both);
    symbol_set s1 = symbols_of(m, f1.lits), s2 = symbols_of(m, f2.lits);

    std::vector<cell> cells;
    u64 table_size = 0;
    std::vector<u64> table_off(m.sig().num_decls(), 0);
    for (decl_id d : all.consts)
        cells.push_back({d, ~u64(0), fs.size(m.sig().decl(d).range)});
    for (decl_id d : all.funs) {
        decl_info const& di = m.sig().decl(d);
        u64 n = 1;
        for (sort_id a : di.domain)
            n = mul_cap(n, fs.size(a));
        if (n >= too_big)
            throw search_space_error("function table of '" + di.name + "' is too large");
        table_off[d] = table_size;
        for (u64 k = 0; k < n; ++k)
            cells.push_back({d, table_size + k, fs.size(di.range)});
        table_size += n;
    }
    u64 total = 1;
    for (cell const& c : cells)
        total = mul_cap(total, c.size);
    if (total > b.max_interps)
        throw search_space_error("too many interpretations to enumerate (" +
                                 (total >= too_big ? std::string("overflow") : std::to_string(total)) + ")");
    witness_search w1(m, fs, f1.lits, s1.vars), w2(m, fs, f2.lits, s2.vars);
    if (w1.space() > b.max_witnesses || w2.space() > b.max_witnesses)
        throw search_space_error("too many variable assignments to enumerate");
    // Warm the lazily built sort tables before threads share them.
    for (sort_id s = 0; s < m.sig().num_sorts(); ++s)
        fs.size(s);

    unsigned nt = b.threads ? b.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<u64>(nt, std::max<u64>(1, total / 256)));
    nt = std::min(nt, 16u);
    std::mutex mu;
    oracle_result res;
    u64 first_bad = overflow;
    std::vector<u64> first_cells;
    std::atomic<u64> stop_at{overflow};

    auto worker = [&](u64 lo, u64 hi) {
        evaluator ev(m, fs);
        ev.table_off = table_off;
        ev.tables.assign(table_size, 0);
        std::vector<u64> digits(cells.size(), 0);
        u64 rest = lo;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            digits[k] = rest % cells[k].size;
            rest /= cells[k].size;
        }
        u64 checked = 0, skipped = 0;
        for (u64 idx = lo; idx < hi && idx < stop_at.load(std::memory_order_relaxed); ++idx) {
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (cells[k].slot == ~u64(0))
                    ev.val[cells[k].decl] = digits[k];
                else
                    ev.tables[cells[k].slot] = digits[k];
            }
            ev.overflowed = false;
            auto e1 = w1.run(ev);
            std::optional<bool> e2;
            if (e1 && (mode == check_mode::equiv || *e1))
                e2 = w2.run(ev);
            bool bad = false;
            if (!e1 || (e2 == std::nullopt && (mode == check_mode::equiv || *e1)) || ev.overflowed) {
                ++skipped;
            } else {
                ++checked;
                bad = mode == check_mode::equiv ? *e1 != *e2 : (*e1 && !*e2);
            }
            if (bad) {
                std::lock_guard<std::mutex> lock(mu);
                if (idx < first_bad) {
                    first_bad = idx;
                    first_cells = digits;
                    stop_at.store(idx, std::memory_order_relaxed);
                }
                break;
            }
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (++digits[k] < cells[k].size)
                    break;
                digits[k] = 0;
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        res.checked += checked;
        res.skipped += skipped;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) {
        u64 lo = total * t / nt, hi = total * (t + 1) / nt;
        if (nt == 1)
            worker(lo, hi);
        else
            pool.emplace_back(worker, lo, hi);
    }
    for (auto& t : pool)
        t.join();
    if (first_bad != overflow) {
        res.holds = false;
        std::string w;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            decl_info const& di = m.sig().decl(cells[k].decl);
            w += (w.empty() ? "" : ", ") + di.name;
            if (cells[k].slot != ~u64(0))
                w += "[" + std::to_string(cells[k].slot - table_off[cells[k].decl]) + "]";
            w += " = " + describe(m, fs, di.range, first_cells[k]);
        }
        res.witness = w.empty() ? "(no free symbols)" : w;
    }
    return res;
}

void numerals(term_manager const& m, term_id t, std::int64_t& lo, std::int64_t& hi) {
    if (m.kind(t) == op_kind::numeral) {
        std::int64_t n = m.sig().decl(m.decl(t)).num;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    for (term_id a : m.args(t))
        numerals(m, a, lo, hi);
}

// Rough size of the search: interpretations times the witness spaces.
bool fits(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b) {
    finite_sorts fs(m, b);
    std::vector<literal> both = f1.lits;
    both.insert(both.end(), f2.lits.begin(), f2.lits.end());
    symbol_set all = symbols_of(m, both);
    u64 total = 1;
    for (decl_id d : all.consts)
        total = mul_cap(total, fs.size(m.sig().decl(d).range));
    for (decl_id d : all.funs) {
        decl_info const& di = m.sig().decl(d);
        u64 n = 1;
        for (sort_id a : di.domain)
            n = mul_cap(n, fs.size(a));
        for (u64 k = 0; k < n && total < too_big; ++k)
            total = mul_cap(total, fs.size(di.range));
    }
    if (total > b.max_interps)
        return false;
    for (formula const* f : {&f1, &f2}) {
        u64 w = 1;
        for (decl_id v : symbols_of(m, f->lits).vars)
            w = mul_cap(w, fs.size(m.sig().decl(v).range));
        if (w > b.max_witnesses)
            return false;
    }
    return true;
}

}

oracle_bounds bounds_for(term_manager const& m, std::vector<formula const*> const& fs, unsigned universe,
                         std::int64_t margin) {
    std::int64_t lo = 0, hi = 0;
    for (formula const* f : fs)
        for (literal const& l : f->lits) {
            numerals(m, l.lhs, lo, hi);
            numerals(m, l.rhs, lo, hi);
        }
    oracle_bounds b;
    b.universe = universe;
    b.int_lo = lo - margin;
    b.int_hi = hi + margin;
    return b;
}

oracle_bounds feasible_bounds(term_manager const& m, formula const& f1, formula const& f2, unsigned universe) {
    auto& mm = const_cast<term_manager&>(m);
    std::vector<oracle_bounds> cands;
    for (std::int64_t margin : {2, 1, 0})
        cands.push_back(bounds_for(m, {&f1, &f2}, universe, margin));
    if (cands.back().int_lo == cands.back().int_hi) {
        // A single Int value says little; try a second one first.
        oracle_bounds two = cands.back();
        two.int_hi = two.int_lo + 1;
        cands.insert(cands.end() - 1, two);
    }
    for (oracle_bounds const& b : cands)
        if (fits(mm, f1, f2, b))
            return b;
    throw search_space_error("no feasible bounds for the finite check");
}

oracle_result equiv_exists(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b) {
    return check(m, f1, f2, b, check_mode::equiv);
}

oracle_result implies_exists(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b) {
    return check(m, f1, f2, b, check_mode::implies);
}

bool entails_eq(term_manager& m, formula const& f, term_id lhs, term_id rhs, oracle_bounds const& b) {
    // f ⊨ lhs ≈ rhs iff no assignment satisfies f ∧ lhs ≉ rhs.
    formula g = f;
    g.lits.push_back({lit_kind::diseq, lhs, rhs});
    // implies_exists(g, ⊥) holds iff g is unsatisfiable for every interpretation.
    formula bottom;
    bottom.lits.push_back({lit_kind::eq, m.mk_true(), m.mk_false()});
    return implies_exists(m, g, bottom, b).holds;
}

std::optional<model> sample_model(term_manager& m, formula const& f, oracle_bounds const& b, std::mt19937_64& rng,
                                  unsigned tries) {
    finite_sorts fs(m, b);
    symbol_set syms = symbols_of(m, f.lits);
    evaluator ev(m, fs);
    std::vector<cell> fun_cells;
    u64 table_size = 0;
    for (decl_id d : syms.funs) {
        decl_info const& di = m.sig().decl(d);
        u64 n = 1;
        for (sort_id a : di.domain)
            n = mul_cap(n, fs.size(a));
        if (n >= too_big)
            throw search_space_error("function table of '" + di.name + "' is too large");
        ev.table_off[d] = table_size;
        for (u64 k = 0; k < n; ++k)
            fun_cells.push_back({d, table_size + k, fs.size(di.range)});
        table_size += n;
    }
    ev.tables.assign(table_size, 0);
    // Nullary symbols are searched depth first in random value order, the
    // function tables are resampled between attempts.
    std::vector<decl_id> order = syms.consts;
    order.insert(order.end(), syms.vars.begin(), syms.vars.end());
    std::vector<u64> dom;
    for (decl_id d : order)
        dom.push_back(fs.size(m.sig().decl(d).range));
    std::map<decl_id, unsigned> pos;
    for (unsigned k = 0; k < order.size(); ++k)
        pos[order[k]] = k + 1;
    std::vector<std::vector<literal>> at(order.size() + 1);
    for (literal const& l : f.lits) {
        unsigned lvl = 0;
        symbol_set s = symbols_of(m, {l});
        for (decl_id d : s.consts) lvl = std::max(lvl, pos[d]);
        for (decl_id d : s.vars) lvl = std::max(lvl, pos[d]);
        at[lvl].push_back(l);
    }
    u64 budget = 0;
    std::function<bool(unsigned)> go = [&](unsigned k) -> bool {
        if (++budget > 200000)
            return false;
        for (literal const& l : at[k]) {
            auto h = ev.holds(l);
            if (!h || !*h)
                return false;
        }
        if (k == order.size())
            return true;
        u64 n = dom[k];
        u64 start = std::uniform_int_distribution<u64>(0, n - 1)(rng);
        // Random starting point, then a random stride coprime to n.
        u64 stride = 1;
        if (n > 2) {
            do {
                stride = std::uniform_int_distribution<u64>(1, n - 1)(rng);
            } while (std::gcd(stride, n) != 1);
        }
        for (u64 j = 0; j < n; ++j) {
            ev.val[order[k]] = (start + j * stride) % n;
            if (go(k + 1))
                return true;
            if (budget > 200000)
                return false;
        }
        return false;
    };
    for (unsigned t = 0; t < tries; ++t) {
        for (cell const& c : fun_cells)
            ev.tables[c.slot] = std::uniform_int_distribution<u64>(0, c.size - 1)(rng);
        budget = 0;
        if (!go(0)) {
            // Without function tables the search was exhaustive unless cut short.
            if (fun_cells.empty() && budget <= 200000)
                return std::nullopt;
            continue;
        }
        model mdl(m);
        for (sort_id s = 0; s < m.sig().num_sorts(); ++s)
            if (m.sig().sort(s).kind == sort_kind::uninterpreted)
                mdl.set_universe(s, b.universe);
        for (decl_id d : order)
            mdl.set_const(d, fs.to_value(mdl, m.sig().decl(d).range, ev.val[d]));
        for (decl_id d : syms.funs) {
            decl_info const& di = m.sig().decl(d);
            fun_table tab;
            tab.def = fs.to_value(mdl, di.range, fs.default_value(di.range));
            std::vector<u64> args(di.domain.size(), 0);
            u64 n = 1;
            for (sort_id a : di.domain)
                n *= fs.size(a);
            for (u64 k = 0; k < n; ++k) {
                u64 rest = k;
                std::vector<value> key;
                for (sort_id a : di.domain) {
                    key.push_back(fs.to_value(mdl, a, rest % fs.size(a)));
                    rest /= fs.size(a);
                }
                tab.rows.push_back({key, fs.to_value(mdl, di.range, ev.tables[ev.table_off[d] + k])});
            }
            mdl.set_fun(d, std::move(tab));
        }
        return mdl;
    }
    return std::nullopt;
}

}
