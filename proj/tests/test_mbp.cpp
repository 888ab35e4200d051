#include "doctest.h"
#include "generators.h"
#include "qe/mbp.h"
#include "qe/oracle.h"
#include "support.h"

using namespace qe;
using namespace qe_test;

namespace {

char const* int_arrays =
    "(declare-const b (Array Int Int))(declare-const i Int)(declare-const j Int)"
    "(declare-const e Int)(declare-const c Int)(declare-var v (Array Int Int))";

node_id node(egraph const& g, std::string const& text) { return g.node_of(term(g.manager(), text)); }

bool same(egraph const& g, std::string const& a, std::string const& b) {
    term_manager& m = g.manager();
    term_id ta = term(m, a), tb = term(m, b);
    return g.has_node(ta) && g.has_node(tb) && g.same_class(g.node_of(ta), g.node_of(tb));
}

bool has_diseq(egraph const& g, std::string const& a, std::string const& b) {
    term_manager& m = g.manager();
    for (auto [x, y] : g.diseqs()) {
        std::string sx = m.to_string(g.term(x)), sy = m.to_string(g.term(y));
        if ((sx == a && sy == b) || (sx == b && sy == a))
            return true;
    }
    return false;
}

struct run {
    term_manager m;
    problem      p;
    model        M;
    run(std::string const& decls_and_asserts, std::string const& model_text)
        : p(parse_problem(m, decls_and_asserts)), M(parse_model(m, model_text)) {}
    mbp_engine engine(mbp_options const& o = {}) { return mbp_engine(m, p.f, p.f.free_vars, M, o); }
};

// The projection contract: pure output, satisfied by the extended model, and
// implying the input.
void check_contract(term_manager& m, formula const& in, mbp_result const& res, oracle_bounds const& b) {
    for (decl_id v : res.out.free_vars) {
        sort_id s = m.sig().decl(v).range;
        CHECK_FALSE((m.sig().is_array(s) || m.sig().is_datatype(s)));
    }
    CHECK(res.mdl.satisfies(res.out));
    oracle_result o = implies_exists(m, res.out, in, b);
    CAPTURE(o.witness);
    CHECK(o.holds);
}

char const* phi_mbp_cube =
    "(and (distinct (read p2 j) q) (= i (read (fst (read p2 j)) i)) (= (read p2 j) (pair (fst (read p2 j)) l))"
    " (= l (snd (read p2 j))) (= p2 (write p1 j (read p2 j))))";

}

TEST_CASE("projection of the worked example") {
    std::string printed;
    for (char const* file : {"phi_mbp.model", "phi_mbp_alt.model"}) {
        CAPTURE(file);
        run r(slurp(problem_path("phi_mbp.smt2")), slurp(problem_path(file)));
        mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
        CHECK(lit_set(r.m, res.out) == lit_set(r.m, phi_mbp_cube));
        CHECK(res.stats.count("AdtSplitDiseq") == 0);
        CHECK(res.stats.count("AdtDeconstructEq") == 1);
        CHECK(res.stats.count("ElimWr") == 1);
        CHECK(res.stats.count("ElimEq") == 1);
        CHECK(res.stats.count("PartialEq") == 2);
        CHECK(res.eliminated.size() == 2);
        CHECK(res.mdl.satisfies(res.out));
        if (printed.empty())
            printed = to_string(r.m, res.out);
        else
            CHECK(to_string(r.m, res.out) == printed);
    }
}

TEST_CASE("the output of the worked example implies its input") {
    run r(slurp(problem_path("phi_mbp.smt2")), slurp(problem_path("phi_mbp.model")));
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    oracle_bounds b;
    b.int_lo = 0;
    b.int_hi = 1;
    check_contract(r.m, r.p.f, res, b);
}

TEST_CASE("after array saturation the disequality of the worked example is c-ground") {
    run r(slurp(problem_path("phi_mbp.smt2")), slurp(problem_path("phi_mbp.model")));
    mbp_engine e = r.engine();
    CHECK_FALSE(compute_cground(e.g()).is_cground(node(e.g(), "(distinct p q)")));
    while (e.apply_rules(rule_set::arrays)) {
    }
    CHECK(compute_cground(e.g()).is_cground(node(e.g(), "(distinct p q)")));
    CHECK(same(e.g(), "(read p2 j)", "p"));
    e.apply_rules(rule_set::adts);
    CHECK(e.stats().count("AdtSplitDiseq") == 0);
}

TEST_CASE("ElimWrRd with equal indices") {
    run r(std::string(int_arrays) + "(assert (= c (read (write v i e) j)))",
          "(define-value i 1)(define-value j 1)(define-value e 5)(define-value c 5)(define-value b (array (default 0)))"
          "(define-value v (array (default 0)))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("ElimWrRd") == 1);
    CHECK(same(e.g(), "(read (write v i e) j)", "e"));
    CHECK(same(e.g(), "i", "j"));
    mbp_result res = e.finish();
    CHECK(res.eliminated.size() == 1);
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 1));
}

TEST_CASE("ElimWrRd with different indices") {
    run r(std::string(int_arrays) + "(assert (= c (read (write v i e) j)))",
          "(define-value i 1)(define-value j 2)(define-value e 5)(define-value c 7)(define-value b (array (default 0)))"
          "(define-value v (array (default 0) (2 7)))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("ElimWrRd") == 1);
    CHECK(same(e.g(), "(read (write v i e) j)", "(read v j)"));
    CHECK(has_diseq(e.g(), "i", "j"));
    CHECK_FALSE(same(e.g(), "(read (write v i e) j)", "e"));
    mbp_result res = e.finish();
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 0));
}

TEST_CASE("ElimWrRd does not match writes over ground arrays") {
    run r(std::string(int_arrays) + "(assert (= c (read (write b i e) j)))(assert (= v b))",
          "(define-value i 1)(define-value j 1)(define-value e 5)(define-value c 5)(define-value b (array (default 0)))"
          "(define-value v (array (default 0)))");
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    CHECK(res.stats.count("ElimWrRd") == 0);
}

TEST_CASE("PartialEq and ElimEq on an array equality") {
    run r(std::string(int_arrays) + "(assert (= v b))(assert (= (read v i) e))",
          "(define-value i 1)(define-value j 1)(define-value e 0)(define-value c 0)(define-value b (array (default 0)))"
          "(define-value v (array (default 0)))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("PartialEq") == 1);
    CHECK(e.stats().count("ElimEq") == 1);
    bool peq_true = false;
    for (node_id n = 0; n < e.g().num_nodes(); ++n)
        if (r.m.kind(e.g().term(n)) == op_kind::peq)
            peq_true = peq_true || e.g().same_class(n, e.g().true_node());
    CHECK(peq_true);
    mbp_result res = e.finish();
    CHECK(to_string(r.m, res.out) == "(and (= e (read b i)))");
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 1));
}

TEST_CASE("PartialEq ignores equalities without arrays to project") {
    run r(std::string(int_arrays) + "(assert (= i j))(assert (= b (write b i e)))(assert (= (read v i) e))",
          "(define-value i 1)(define-value j 1)(define-value e 0)(define-value c 0)(define-value b (array (default 0)))"
          "(define-value v (array (default 0)))");
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    CHECK(res.stats.count("PartialEq") == 0);
}

TEST_CASE("ElimWr with a new index") {
    run r(std::string(int_arrays) + "(assert (= b (write v i e)))",
          "(define-value i 1)(define-value j 1)(define-value e 5)(define-value c 0)"
          "(define-value b (array (default 0) (1 5)))(define-value v (array (default 0)))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("ElimWr") == 1);
    CHECK(e.stats().count("ElimEq") == 1);
    CHECK(same(e.g(), "(read b i)", "e"));
    CHECK(e.current_model().satisfies(formula{{{lit_kind::eq, term(r.m, "v"), term(r.m, "(write b i d!0)")}}, {}}));
    mbp_result res = e.finish();
    CHECK(res.fresh.size() == 1);
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 1));
}

TEST_CASE("ElimWr with an index already covered") {
    run r(std::string(int_arrays) + "(assert (= b (write (write v i e) j c)))",
          "(define-value i 1)(define-value j 1)(define-value e 5)(define-value c 3)"
          "(define-value b (array (default 0) (1 3)))(define-value v (array (default 0)))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("ElimWr") == 2);
    CHECK(same(e.g(), "i", "j"));
    CHECK(same(e.g(), "(read b j)", "c"));
    CHECK_FALSE(same(e.g(), "e", "c"));
    mbp_result res = e.finish();
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 0));
}

TEST_CASE("v equal to a write over constants") {
    run r(std::string(int_arrays) + "(assert (= v (write b i e)))(assert (= c (read v j)))",
          "(define-value i 1)(define-value j 2)(define-value e 5)(define-value c 0)"
          "(define-value b (array (default 0)))(define-value v (array (default 0) (1 5)))");
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    CHECK(res.remaining.empty());
    CHECK(lit_set(r.m, res.out) == lit_set(r.m, "(and (= c (read (write b i e) j)))"));
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 0));
}

TEST_CASE("ElimEq keeps one index per model value") {
    run r(std::string(int_arrays) + "(assert (= b (write (write v i e) j e)))",
          "(define-value i 1)(define-value j 1)(define-value e 5)(define-value c 0)"
          "(define-value b (array (default 0) (1 5)))(define-value v (array (default 0)))");
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    CHECK(res.stats.count("ElimEq") == 1);
    CHECK(res.fresh.size() == 1);
}

TEST_CASE("Ackermann decides index pairs by the model") {
    std::string text = std::string(int_arrays) + "(assert (= (read v i) c))(assert (= (read v j) e))";
    {
        run r(text, "(define-value i 1)(define-value j 1)(define-value e 4)(define-value c 4)"
                    "(define-value b (array (default 0)))(define-value v (array (default 4)))");
        mbp_engine e = r.engine();
        e.saturate();
        CHECK(e.stats().count("Ackermann") == 1);
        CHECK(same(e.g(), "c", "e"));
        check_contract(r.m, r.p.f, e.finish(), bounds_for(r.m, {&r.p.f}, 3, 0));
    }
    {
        run r(text, "(define-value i 1)(define-value j 2)(define-value e 4)(define-value c 3)"
                    "(define-value b (array (default 0)))(define-value v (array (default 4) (1 3)))");
        mbp_engine e = r.engine();
        e.saturate();
        CHECK(e.stats().count("Ackermann") == 1);
        CHECK(has_diseq(e.g(), "i", "j"));
        mbp_result res = e.finish();
        CHECK(lit_set(r.m, res.out) == lit_set(r.m, "(distinct i j)"));
        check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 0));
    }
}

TEST_CASE("AdtDeconstructEq on a nullary constructor asserts the tester") {
    run r("(declare-datatype L ((cons (hd Int) (tl Int)) (nil)))(declare-var x L)(declare-const y Int)"
          "(assert (= x nil))(assert (= y (tl x)))",
          "(define-value x nil)(define-value y 0)");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("AdtDeconstructEq") == 1);
    CHECK(same(e.g(), "((_ is nil) x)", "true"));
    mbp_result res = e.finish();
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 1));
}

TEST_CASE("AdtDeconstructEq needs a variable to project") {
    std::string text = slurp(problem_path("phi_mbp.smt2"));
    text.replace(text.find("(mbp)"), 5, "(assert (= q (pair (fst q) (snd q))))(mbp)");
    run r(text, slurp(problem_path("phi_mbp.model")));
    mbp_result res = mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M);
    CHECK(res.stats.count("AdtDeconstructEq") == 1);
}

TEST_CASE("AdtSplitDiseq on the same constructor") {
    run r("(declare-datatype Q ((mk (lft Int) (rgt Int))))(declare-var u Q)(declare-const t Q)"
          "(assert (distinct u t))",
          "(define-value u (mk 0 1))(define-value t (mk 0 2))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("AdtSplitDiseq") == 1);
    CHECK(has_diseq(e.g(), "(rgt u)", "(rgt t)"));
    mbp_result res = e.finish();
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 0));
}

TEST_CASE("AdtSplitDiseq on different constructors") {
    run r("(declare-datatype L ((cons (hd Int) (tl Int)) (nil)))(declare-var x L)(declare-const y L)"
          "(assert (distinct x y))",
          "(define-value x nil)(define-value y (cons 1 2))");
    mbp_engine e = r.engine();
    e.saturate();
    CHECK(e.stats().count("AdtSplitDiseq") == 1);
    CHECK(same(e.g(), "((_ is nil) x)", "true"));
    CHECK(same(e.g(), "((_ is nil) y)", "false"));
    mbp_result res = e.finish();
    CHECK(lit_set(r.m, res.out) == lit_set(r.m, "(and (distinct nil y) (is-nil nil) (not (is-nil y)))"));
    check_contract(r.m, r.p.f, res, bounds_for(r.m, {&r.p.f}, 3, 1));
}

TEST_CASE("without array or datatype variables the result is that of qel") {
    term_manager m;
    problem p = load(m, "phi1.smt2");
    model M = parse_model(m, "(define-value a (array (default 1)))(define-value k 0)"
                             "(define-value x 0)(define-value y 0)(define-value z 1)");
    mbp_result res = mbp_qel(m, p.f, p.f.free_vars, M);
    CHECK(res.stats.applications == 0);
    CHECK(to_string(m, res.out) == to_string(m, qel(m, p.f)));
}

TEST_CASE("errors") {
    {
        run r(slurp(problem_path("phi_mbp.smt2")), slurp(problem_path("phi_mbp.model")));
        mbp_options o;
        o.budget = 2;
        CHECK_THROWS_AS(mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M, o), saturation_budget_error);
    }
    {
        run r(slurp(problem_path("phi_mbp.smt2")), slurp(problem_path("phi_mbp.model")));
        r.M.set_const(sym(r.m, "q"), r.M.eval(term(r.m, "p")));
        CHECK_THROWS_AS(mbp_qel(r.m, r.p.f, r.p.f.free_vars, r.M), model_error);
    }
}

TEST_CASE("saturation grows the egraph monotonically and reaches a fixpoint") {
    rng_t rng(53);
    unsigned done = 0;
    for (unsigned it = 0; it < 60 && done < 25; ++it) {
        term_manager m;
        problem p = parse_problem(m, mbp_decls + random_mbp_text(rng).text);
        oracle_bounds b;
        auto M = sample_model(m, p.f, b, rng, 20);
        if (!M)
            continue;
        ++done;
        CAPTURE(to_string(m, p.f));
        mbp_engine e(m, p.f, p.f.free_vars, *M);
        unsigned last = e.g().num_nodes();
        bool p1 = true, p2 = true, pf = true;
        while (p1 || p2 || pf) {
            p1 = e.apply_rules(rule_set::arrays);
            CHECK(e.g().num_nodes() >= last);
            last = e.g().num_nodes();
            p2 = e.apply_rules(rule_set::adts);
            CHECK(e.g().num_nodes() >= last);
            last = e.g().num_nodes();
            pf = !p1 && !p2 && e.apply_rules(rule_set::fallback);
            CHECK(e.g().num_nodes() >= last);
            last = e.g().num_nodes();
        }
        CHECK_FALSE(e.apply_rules(rule_set::arrays));
        CHECK_FALSE(e.apply_rules(rule_set::adts));
        CHECK_FALSE(e.apply_rules(rule_set::fallback));
        CHECK(e.current_model().satisfies(p.f));
    }
    CHECK(done >= 20);
}

TEST_CASE("projection contract on random instances") {
    rng_t rng(59);
    unsigned done = 0;
    for (unsigned it = 0; it < 80 && done < 25; ++it) {
        term_manager m;
        problem p = parse_problem(m, mbp_decls + random_mbp_text(rng).text);
        oracle_bounds b;
        b.max_interps = 2'000'000;
        auto M = sample_model(m, p.f, b, rng, 20);
        if (!M)
            continue;
        mbp_result res = mbp_qel(m, p.f, p.f.free_vars, *M);
        CAPTURE(to_string(m, p.f));
        CAPTURE(to_string(m, res.out));
        try {
            check_contract(m, p.f, res, b);
            ++done;
        } catch (search_space_error const&) {
        }
    }
    CHECK(done >= 15);
}
