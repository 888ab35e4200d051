// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.h"
#include "qe/mbp.h"
#include "qe/oracle.h"
#include "qe/qel.h"
#include "support.h"

using namespace qe;
using namespace qe_test;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct criterion {
    bool               ok = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void fail(std::string const& what) {
        ok = false;
        if (failures.size() < 5)
            failures.push_back(what);
    }
};

unsigned failed = 0;

void report(unsigned id, char const* name, criterion const& c) {
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << id << " " << name << ": " << c.detail.str() << "\n";
    for (auto const& f : c.failures)
        std::cout << "        " << f << "\n";
    std::cout.flush();
    failed += !c.ok;
}

// 1. Worked examples, exact modulo literal order and orientation.
void golden() {
    criterion c;
    struct qcase {
        char const* file;
        char const* expected;
    };
    std::vector<qcase> cases{
        {"phi1.smt2", "(and (= (+ k 1) (read a x)) (> 3 (+ k 1)))"},
        {"phi4.smt2", "(= 6 (f (g 6)))"},
        {"phi5.smt2", "(and (= y (h (f y))) (= (f (g (f y))) (f y)))"},
        {"psi_cong.smt2", "true"},
    };
    double worst = 0;
    for (auto const& q : cases) {
        term_manager m;
        problem p = load(m, q.file);
        auto t0 = clock_type::now();
        formula out = qel(m, p.f);
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        if (lit_set(m, out) != lit_set(m, q.expected))
            c.fail(std::string(q.file) + ": got " + to_string(m, out));
        if (dt >= 1.0)
            c.fail(std::string(q.file) + ": took " + std::to_string(dt) + " s");
    }
    char const* cube =
        "(and (distinct (read p2 j) q) (= i (read (fst (read p2 j)) i)) (= (read p2 j) (pair (fst (read p2 j)) l))"
        " (= l (snd (read p2 j))) (= p2 (write p1 j (read p2 j))))";
    std::vector<std::string> printed;
    for (char const* model_file : {"phi_mbp.model", "phi_mbp_alt.model"}) {
        term_manager m;
        problem p = load(m, "phi_mbp.smt2");
        model M = parse_model(m, slurp(problem_path(model_file)));
        auto t0 = clock_type::now();
        mbp_result res = mbp_qel(m, p.f, p.f.free_vars, M);
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        printed.push_back(to_string(m, res.out));
        if (lit_set(m, res.out) != lit_set(m, cube))
            c.fail(std::string("phi_mbp with ") + model_file + ": got " + printed.back());
        if (dt >= 1.0)
            c.fail(std::string("phi_mbp with ") + model_file + ": took " + std::to_string(dt) + " s");
    }
    if (printed[0] != printed[1])
        c.fail("phi_mbp output depends on the model");
    c.detail << "4 qel outputs and the projection cube under 2 models; slowest run " << worst * 1000 << " ms";
    report(1, "golden examples", c);
}

// 2. Representative functions: admissible iff extraction terminates and the
// result is equivalent to the input.
void admissibility_suite() {
    criterion c;
    auto t0 = clock_type::now();
    rng_t rng(1001);
    unsigned n = 1000, admissible = 0, small_universe = 0;
    oracle_bounds b;
    for (unsigned it = 0; it < n; ++it) {
        term_manager m;
        euf_instance inst = random_small_egraph(m, rng, 8);
        egraph g = egraph::from_formula(m, inst.f);
        repr_fn r = random_class_repr(g, rng);
        bool adm = is_admissible(g, r);
        admissible += adm;
        bool terminates = true;
        formula out;
        try {
            out = to_formula(g, r, {});
        } catch (extraction_budget_error const&) {
            terminates = false;
        }
        bool equiv = false;
        if (terminates) {
            equiv = at_small_universe([&](oracle_bounds const& bb) { return equiv_exists(m, inst.f, out, bb).holds; },
                                      b);
            small_universe += b.universe < 3;
        }
        if (adm != (terminates && equiv))
            c.fail("admissible=" + std::to_string(adm) + " terminates=" + std::to_string(terminates) +
                   " equivalent=" + std::to_string(equiv) + " on " + inst.text);
    }
    double dt = seconds_since(t0);
    if (dt > 300)
        c.fail("took " + std::to_string(dt) + " s");
    c.detail << n << " egraphs, " << admissible << " admissible, " << n - admissible << " cyclic; "
             << small_universe << " checked at universe 2 for size; " << dt << " s";
    report(2, "admissible iff extraction terminates and is equivalent", c);
}

// 3. Planted ground definitions are found and the variable is eliminated.
void planted_suite() {
    criterion c;
    rng_t rng(2002);
    unsigned n = 1000;
    for (unsigned it = 0; it < n; ++it) {
        term_manager m;
        planted_instance inst = random_planted(m, rng);
        egraph g = egraph::from_formula(m, inst.f);
        cground_info cg = compute_cground(g);
        repr_fn d = find_defs(g);
        node_id x = g.node_of(m.mk_const(sym(m, inst.planted_var)));
        if (!cg.is_cground(d(x)) || !m.is_ground(to_expr(g, d(x), d)))
            c.fail("no ground definition: " + inst.text);
        qel_result r = qel_run(g, inst.f.free_vars);
        for (decl_id v : r.out.free_vars)
            if (m.sig().decl(v).name == inst.planted_var)
                c.fail("variable kept: " + inst.text + " -> " + to_string(m, r.out));
    }
    c.detail << n << " formulas with a planted ground definition";
    report(3, "ground definitions are found and used", c);
}

// 4. find_defs and refine_defs outputs are admissible and maximally ground.
void preservation_suite() {
    criterion c;
    unsigned checked = 0;
    auto check = [&](egraph const& g, std::string const& text) {
        cground_info cg = compute_cground(g);
        repr_fn d = find_defs(g);
        repr_fn r = refine_defs(g, d);
        ++checked;
        if (!is_admissible(g, d) || !is_maximally_ground(g, d, cg))
            c.fail("find_defs: " + text);
        if (!is_admissible(g, r) || !is_maximally_ground(g, r, cg))
            c.fail("refine_defs: " + text);
    };
    rng_t r2(1001), r3(2002), r4(3003);
    for (unsigned it = 0; it < 1000; ++it) {
        term_manager m;
        euf_instance inst = random_small_egraph(m, r2, 8);
        // Replays the draws of criterion 2.
        random_class_repr(egraph::from_formula(m, inst.f), r2);
        check(egraph::from_formula(m, inst.f), inst.text);
    }
    for (unsigned it = 0; it < 1000; ++it) {
        term_manager m;
        planted_instance inst = random_planted(m, r3);
        check(egraph::from_formula(m, inst.f), inst.text);
    }
    for (unsigned it = 0; it < 1000; ++it) {
        term_manager m;
        euf_instance inst = random_small_egraph(m, r4, 12);
        check(egraph::from_formula(m, inst.f), inst.text);
    }
    c.detail << checked << " egraphs from the suites of criteria 2 and 3 plus 1000 with up to 12 nodes";
    report(4, "find_defs and refine_defs preserve admissibility and maximal groundness", c);
}

// 5. Projection contract on random Array/ADT instances.
void mbp_suite() {
    criterion c;
    auto t0 = clock_type::now();
    rng_t rng(4004);
    unsigned target = 200, done = 0, no_model = 0, too_big = 0;
    std::map<std::string, unsigned> fired;
    oracle_bounds b;
    b.max_interps = 4'000'000;
    while (done < target) {
        term_manager m;
        mbp_instance inst = random_mbp_text(rng);
        problem p = parse_problem(m, mbp_decls + inst.text);
        auto M = sample_model(m, p.f, b, rng, 50);
        if (!M) {
            ++no_model;
            continue;
        }
        mbp_result res;
        try {
            res = mbp_qel(m, p.f, p.f.free_vars, *M);
        } catch (qe_exception const& e) {
            c.fail(std::string(e.what()) + " on " + inst.text);
            ++done;
            continue;
        }
        oracle_result o;
        try {
            o = implies_exists(m, res.out, p.f, b);
        } catch (search_space_error const&) {
            ++too_big;
            continue;
        }
        ++done;
        for (auto const& [k, v] : res.stats.fired)
            fired[k] += v;
        for (decl_id v : res.out.free_vars) {
            sort_id s = m.sig().decl(v).range;
            if (m.sig().is_array(s) || m.sig().is_datatype(s))
                c.fail("variable " + m.sig().decl(v).name + " left in " + to_string(m, res.out));
        }
        if (!res.mdl.satisfies(res.out))
            c.fail("model does not satisfy " + to_string(m, res.out) + " from " + inst.text);
        if (!o.holds)
            c.fail("output does not imply input: " + inst.text + " -> " + to_string(m, res.out) + "; " + o.witness);
    }
    double dt = seconds_since(t0);
    if (dt > 600)
        c.fail("took " + std::to_string(dt) + " s");
    c.detail << done << " instances (" << no_model << " unsatisfiable draws and " << too_big
             << " beyond the checker limit redrawn); rules:";
    for (auto const& [k, v] : fired)
        c.detail << " " << k << "=" << v;
    c.detail << "; " << dt << " s";
    report(5, "projection contract", c);
}

// 6. The datatype disequality of the worked example is never split.
void cground_skip() {
    criterion c;
    term_manager m;
    problem p = load(m, "phi_mbp.smt2");
    model M = parse_model(m, slurp(problem_path("phi_mbp.model")));
    mbp_result res = mbp_qel(m, p.f, p.f.free_vars, M);
    unsigned n = res.stats.count("AdtSplitDiseq");
    if (n != 0)
        c.fail("AdtSplitDiseq fired " + std::to_string(n) + " times");
    c.detail << "AdtSplitDiseq fired " << n << " times";
    report(6, "c-ground disequality is not split", c);
}

}

int main() {
    golden();
    admissibility_suite();
    planted_suite();
    preservation_suite();
    mbp_suite();
    cground_skip();
    std::cout << "SKIP  7 solver-integration benchmarks: out of scope, they need a full SMT and CHC solver\n";
    return failed == 0 ? 0 : 1;
}
