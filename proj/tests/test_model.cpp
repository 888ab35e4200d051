#include "doctest.h"
#include "generators.h"
#include "qe/model.h"
#include "support.h"

using namespace qe;
using namespace qe_test;

namespace {

char const* phi1_decls =
    "(declare-const a (Array Int Int))(declare-const k Int)"
    "(declare-var x Int)(declare-var y Int)(declare-var z Int)";

literal lit(term_manager& m, std::string const& text) { return parse_literal(m, read_sexprs(text).at(0)); }

}

TEST_CASE("evaluating a read against an array value") {
    term_manager m;
    parse_problem(m, phi1_decls);
    model M = parse_model(m, "(define-value x 3)(define-value a (array (default 0) (3 3)))");
    CHECK(M.holds(lit(m, "(= (read a x) x)")));
    CHECK(M.eval(term(m, "(read a 4)")) == value::mk_int(m.sig().int_sort(), 0));
    CHECK(M.eval(m.mk_true()).num == 1);
    CHECK(M.eval(m.mk_true()).kind == value_kind::boolean);
}

TEST_CASE("selectors and testers") {
    term_manager m;
    load(m, "phi_mbp.smt2");
    model M = parse_model(m, "(define-value p (pair (array (default 1)) 5))(define-value q (pair (array (default 1)) 6))");
    CHECK(M.eval(term(m, "(snd p)")).num == 5);
    CHECK(M.eval(term(m, "((_ is pair) p)")).num == 1);
    CHECK(M.holds(lit(m, "(distinct p q)")));
    CHECK(M.holds(lit(m, "(= (fst p) (fst q))")));
}

TEST_CASE("selectors on the wrong constructor give the default of their sort") {
    term_manager m;
    parse_problem(m, "(declare-datatype L ((cons (hd Int) (tl Int)) (nil)))(declare-const l L)");
    model M = parse_model(m, "(define-value l nil)");
    CHECK(M.eval(term(m, "(hd l)")).num == 0);
    CHECK(M.eval(term(m, "(tl l)")).num == 0);
    CHECK(M.to_string(M.default_value(m.sort(term(m, "l")))) == "(cons 0 0)");
    CHECK(M.eval(term(m, "((_ is nil) l)")).num == 1);
}

TEST_CASE("equality and disequality of constants") {
    term_manager m;
    parse_problem(m, "(declare-const i Int)(declare-const j Int)");
    model same = parse_model(m, "(define-value i 2)(define-value j 2)");
    CHECK(same.holds(lit(m, "(= i j)")));
    CHECK(same.holds(lit(m, "(= i i)")));
    model apart = parse_model(m, "(define-value i 1)(define-value j 2)");
    CHECK(apart.holds(lit(m, "(distinct i j)")));
    CHECK_FALSE(apart.holds(lit(m, "(= i j)")));
}

TEST_CASE("extend adds one constant and leaves old values alone") {
    term_manager m;
    parse_problem(m, "(declare-const v (Array Int Int))(declare-const i Int)");
    model M = parse_model(m, "(define-value v (array (default 0) (1 7)))(define-value i 1)");
    decl_id d0 = m.sig().mk_fresh("d", m.sig().int_sort(), false);
    decl_id d1 = m.sig().mk_fresh("d", m.sig().int_sort(), false);
    term_id t = term(m, "(read v i)");
    model M1 = M.extend(d0, M.eval(t));
    CHECK(M1.holds({lit_kind::eq, m.mk_const(d0), t}));
    CHECK(M1.eval(t) == M.eval(t));
    CHECK_THROWS_AS(M1.extend(d0, M.eval(t)), model_error);
    value two = value::mk_int(m.sig().int_sort(), 2);
    model a = M1.extend(d1, two), b = M.extend(d1, two).extend(d0, M.eval(t));
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("the model files of the projection example") {
    for (char const* name : {"phi_mbp.model", "phi_mbp_alt.model"}) {
        CAPTURE(name);
        term_manager m;
        problem p = load(m, "phi_mbp.smt2");
        model M = parse_model(m, slurp(problem_path(name)));
        for (literal const& l : p.f.lits)
            CHECK(M.holds(l));
        model back = parse_model(m, M.to_string());
        CHECK(back.to_string() == M.to_string());
    }
}

TEST_CASE("model file errors") {
    term_manager m;
    parse_problem(m, "(declare-const a (Array Int Int))(declare-sort U 0)(declare-const u U)");
    CHECK_THROWS_AS(parse_model(m, "(define-value a (array (default 0) (1 2) (1 3)))"), parse_error);
    CHECK_THROWS_AS(parse_model(m, "(define-value b 1)"), parse_error);
    CHECK_THROWS_AS(parse_model(m, "(define-value a 1)"), parse_error);
    CHECK_THROWS_AS(parse_model(m, "(universe U 2)(define-value u (elem U 2))"), parse_error);
    CHECK_THROWS_AS(parse_model(m, "(define-value a (array (default 0)))(define-value a (array (default 1)))"),
                    parse_error);
    model empty = parse_model(m, "");
    CHECK(empty.satisfies(formula{}));
    CHECK_THROWS_AS(empty.eval(term(m, "a")), model_error);
}

TEST_CASE("function tables and finite universes") {
    term_manager m;
    parse_problem(m, "(declare-sort U 0)(declare-fun f (U) U)(declare-const a U)");
    model M = parse_model(m, "(universe U 2)(define-value a (elem U 1))"
                             "(define-fun-values f (default (elem U 0)) (((elem U 1)) (elem U 1)))");
    CHECK(M.holds(lit(m, "(= (f a) a)")));
    CHECK(M.eval(term(m, "(f (f a))")) == M.eval(term(m, "a")));
    CHECK(M.enumerate(m.sort(term(m, "a")))->size() == 2);
}

TEST_CASE("array values are extensional") {
    term_manager m;
    parse_problem(m, "(declare-const a (Array Int Int))(declare-const b (Array Int Int))");
    model M = parse_model(m, "(define-value a (array (default 0) (1 0) (2 5)))(define-value b (array (default 0) (2 5)))");
    CHECK(M.holds(lit(m, "(= a b)")));
    CHECK(M.holds(lit(m, "(= (write a 2 5) b)")));
    CHECK(M.holds(lit(m, "(distinct (write a 3 1) b)")));
}

TEST_CASE("read over write on random values") {
    term_manager m;
    parse_problem(m, "(declare-const a (Array Int Int))(declare-const i Int)(declare-const j Int)"
                     "(declare-const v Int)");
    rng_t rng(47);
    for (unsigned it = 0; it < 500; ++it) {
        std::string text = "(define-value a (array (default " + std::to_string(pick(rng, 3)) + ")";
        std::set<unsigned> keys;
        for (unsigned k = 0; k < 3; ++k)
            keys.insert(pick(rng, 4));
        for (unsigned k : keys)
            text += " (" + std::to_string(k) + " " + std::to_string(pick(rng, 3)) + ")";
        text += "))(define-value i " + std::to_string(pick(rng, 4)) + ")(define-value j " +
                std::to_string(pick(rng, 4)) + ")(define-value v " + std::to_string(pick(rng, 3)) + ")";
        model M = parse_model(m, text);
        CAPTURE(text);
        value got = M.eval(term(m, "(read (write a i v) j)"));
        value want = M.eval(term(m, "i")) == M.eval(term(m, "j")) ? M.eval(term(m, "v")) : M.eval(term(m, "(read a j)"));
        CHECK(got == want);
        CHECK(M.holds(lit(m, "(= (read (write a i v) i) v)")));
    }
}
