#pragma once

#include <map>
#include <string>
#include <vector>

#include "qe/egraph.h"
#include "qe/model.h"
#include "qe/qel.h"

namespace qe {

struct mbp_options {
    unsigned budget = 10000;   // cap on rule applications
};

struct mbp_stats {
    std::map<std::string, unsigned> fired;   // applications per rule name
    unsigned applications = 0;
    unsigned rounds = 0;                     // ApplyRules calls
    unsigned nodes_initial = 0;
    unsigned nodes_saturated = 0;
    unsigned count(std::string const& rule) const {
        auto it = fired.find(rule);
        return it == fired.end() ? 0 : it->second;
    }
};

struct mbp_result {
    formula              out;
    model                mdl;          // the input model extended with fresh symbols
    mbp_stats            stats;
    std::vector<decl_id> eliminated;   // input variables absent from out
    std::vector<decl_id> remaining;    // input variables still in out
    std::vector<decl_id> fresh;        // symbols introduced by rules
};

enum class rule_set { arrays, adts, fallback };

// Saturates the egraph of a conjunction with the Array and ADT projection
// rules under a model, then extracts a cube without Array/ADT variables.
class mbp_engine {
    term_manager&        m;
    egraph               m_g;
    model                m_model;
    mbp_options          m_opts;
    mbp_stats            m_stats;
    std::vector<decl_id> m_vars;          // input variables
    std::vector<decl_id> m_fresh;
    std::vector<bool>    m_project;       // per decl: Array/ADT variable to eliminate
    std::vector<bool>    m_defined;       // per decl: already given a definition by ElimEq
    std::vector<bool>    m_def_atom;      // per eq atom: asserted by ElimEq
    std::vector<bool>    m_peq_done;      // per node: ElimEq applied to this peq
    struct watermark {
        unsigned nodes = 0, atoms = 0, pairs = 0;
    };
    std::map<rule_set, watermark> m_seen;
    cground_info         m_cg;
    unsigned             m_cg_version = ~0u;

    cground_info const& cground();
    bool projected(decl_id d) const { return d < m_project.size() && m_project[d]; }
    bool has_projected(term_id t) const;
    bool is_projected_var(node_id n) const { return g().is_var(n) && projected(g().label(n)); }
    void fire(char const* rule);
    term_id fresh(sort_id s, value const& v);
    bool model_eq(term_id a, term_id b) const { return m_model.eval(a) == m_model.eval(b); }

    // unary rules over nodes
    bool elim_wr_rd(node_id n);
    bool elim_wr(node_id n);
    bool elim_eq(node_id n);
    bool array_diseq(node_id n);
    bool adt_deconstruct(node_id n);
    bool adt_split_diseq(node_id n);
    bool read_fresh(node_id n);
    bool adt_expand(node_id n);
    // rules over equality atoms and pairs
    bool partial_eq(unsigned atom);
    bool ackermann(node_id a, node_id b);

    bool offer(rule_set rs, node_id n);
public:
    // M must satisfy f; vars are the variables to project.
    mbp_engine(term_manager& tm, formula const& f, std::vector<decl_id> const& vars, model const& M,
               mbp_options const& opts = {});

    egraph const& g() const { return m_g; }
    model const& current_model() const { return m_model; }
    mbp_stats const& stats() const { return m_stats; }

    // One ApplyRules call: offers unseen nodes (equality-shaped ones always,
    // others unless c-ground) and unseen node pairs to the rules of `rs`.
    bool apply_rules(rule_set rs);
    // Arrays and ADTs until neither progresses, then the fallback rules,
    // repeated until nothing applies.
    void saturate();
    // The extraction tail: representatives, core, and the cube without
    // Array/ADT variables. Also returns the representative function used.
    mbp_result finish(repr_fn* used = nullptr);
};

mbp_result mbp_qel(term_manager& m, formula const& f, std::vector<decl_id> const& vars, model const& M,
                   mbp_options const& opts = {});

}
