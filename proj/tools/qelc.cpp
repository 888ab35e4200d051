// qelc: quantifier reduction and model-based projection of conjunctions.
//
//   qelc qel <problem> [--check] [--dot <prefix>]
//   qelc mbp <problem> --model <model> [--check] [--dot <prefix>] [--budget <n>]
//
// Exit codes: 0 success, 2 input error, 3 failed check, 4 budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qe/mbp.h"
#include "qe/oracle.h"
#include "qe/parser.h"
#include "qe/qel.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_check = 3;
constexpr int exit_budget = 4;

struct run_config {
    std::string command;
    std::string input;
    std::string model_path;
    std::string dot;
    bool        check = false;
    unsigned    budget = 10000;
    std::string seed_order = "id";
};

std::string slurp(std::string const& path) {
    std::ifstream in(path);
    if (!in)
        throw qe::qe_exception("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path);
    if (!out)
        throw qe::qe_exception("cannot write " + path);
    out << text;
}

std::string names(qe::term_manager const& m, std::vector<qe::decl_id> const& ds) {
    std::string s;
    for (qe::decl_id d : ds)
        s += " " + m.sig().decl(d).name;
    return s.empty() ? " (none)" : s;
}

void report_vars(qe::term_manager const& m, std::vector<qe::decl_id> const& elim,
                 std::vector<qe::decl_id> const& rem) {
    std::cerr << "eliminated:" << names(m, elim) << "\n";
    std::cerr << "remaining:" << names(m, rem) << "\n";
}

void report_check(qe::oracle_result const& r, qe::oracle_bounds const& b, char const* what) {
    std::cerr << "check (" << what << ", universe " << b.universe << ", Int [" << b.int_lo << ", " << b.int_hi
              << "]): " << (r.holds ? "ok" : "FAILED") << ", " << r.checked << " interpretations";
    if (r.skipped)
        std::cerr << ", " << r.skipped << " skipped for out-of-window arithmetic";
    std::cerr << "\n";
    if (!r.holds)
        std::cerr << "counterexample: " << r.witness << "\n";
}

int run_qel(run_config const& cfg) {
    qe::term_manager m;
    qe::problem p = qe::parse_problem(m, slurp(cfg.input));
    qe::egraph g = qe::egraph::from_formula(m, p.f);
    if (!cfg.dot.empty())
        write_file(cfg.dot + ".initial.dot", g.dump_dot());
    qe::qel_result r = qe::qel_run(g, p.f.free_vars);
    if (!cfg.dot.empty())
        write_file(cfg.dot + ".final.dot", g.dump_dot(&r.refined));
    std::cout << qe::to_string(m, r.out) << "\n";
    report_vars(m, r.eliminated, r.remaining);
    if (!cfg.check)
        return exit_ok;
    qe::oracle_bounds b = qe::feasible_bounds(m, p.f, r.out);
    qe::oracle_result res = qe::equiv_exists(m, p.f, r.out, b);
    report_check(res, b, "output equivalent to input");
    return res.holds ? exit_ok : exit_check;
}

int run_mbp(run_config const& cfg) {
    qe::term_manager m;
    qe::problem p = qe::parse_problem(m, slurp(cfg.input));
    qe::model M = qe::parse_model(m, slurp(cfg.model_path));
    qe::mbp_options opts;
    opts.budget = cfg.budget;
    qe::mbp_engine e(m, p.f, p.f.free_vars, M, opts);
    if (!cfg.dot.empty())
        write_file(cfg.dot + ".initial.dot", e.g().dump_dot());
    e.saturate();
    if (!cfg.dot.empty())
        write_file(cfg.dot + ".saturated.dot", e.g().dump_dot());
    qe::repr_fn r;
    qe::mbp_result res = e.finish(&r);
    if (!cfg.dot.empty())
        write_file(cfg.dot + ".final.dot", e.g().dump_dot(&r));
    std::cout << qe::to_string(m, res.out) << "\n";
    report_vars(m, res.eliminated, res.remaining);
    for (auto const& [rule, n] : res.stats.fired)
        std::cerr << "rule " << rule << ": " << n << "\n";
    if (!cfg.check)
        return exit_ok;
    bool sat = res.mdl.satisfies(res.out);
    std::cerr << "check (model satisfies output): " << (sat ? "ok" : "FAILED") << "\n";
    qe::oracle_bounds b = qe::feasible_bounds(m, res.out, p.f);
    qe::oracle_result o = qe::implies_exists(m, res.out, p.f, b);
    report_check(o, b, "output implies input");
    return sat && o.holds ? exit_ok : exit_check;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Quantifier reduction and model-based projection over egraphs"};
    app.require_subcommand(1);
    run_config cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "problem file")->required();
        sub->add_flag("--check", cfg.check, "verify the result with the finite-model checker");
        sub->add_option("--dot", cfg.dot, "write Graphviz files <prefix>.<stage>.dot");
        sub->add_option("--seed-order", cfg.seed_order, "order of the representative seeds")
            ->check(CLI::IsMember({"id"}));
    };
    CLI::App* qel = app.add_subcommand("qel", "quantifier reduction");
    common(qel);
    CLI::App* mbp = app.add_subcommand("mbp", "model-based projection of Array and ADT variables");
    common(mbp);
    mbp->add_option("--model", cfg.model_path, "model file")->required();
    mbp->add_option("--budget", cfg.budget, "maximum number of rule applications");
    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return exit_input;
    }
    cfg.command = qel->parsed() ? "qel" : "mbp";
    try {
        return cfg.command == "qel" ? run_qel(cfg) : run_mbp(cfg);
    } catch (qe::saturation_budget_error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (qe::search_space_error const& e) {
        std::cerr << "check: " << e.what() << "\n";
        return exit_check;
    } catch (qe::qe_exception const& e) {
        std::cerr << cfg.input << ": error: " << e.what() << "\n";
        return exit_input;
    }
}
