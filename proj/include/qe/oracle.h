#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qe/model.h"
#include "qe/terms.h"

namespace qe {

// Finite semantics used by the checker. Uninterpreted sorts get `universe`
// elements, Int is cut down to [int_lo, int_hi], arrays are all total
// functions between the finite domains, and datatypes are finite trees.
struct oracle_bounds {
    unsigned     universe = 3;
    std::int64_t int_lo = -2;
    std::int64_t int_hi = 2;
    std::uint64_t max_interps = 20'000'000;    // interpretations of the free symbols
    std::uint64_t max_witnesses = 2'000'000;   // assignments to the variables of one formula
    unsigned     threads = 0;                  // 0: hardware concurrency
};

// Window [min - margin, max + margin] over the numerals of the formulas and 0.
oracle_bounds bounds_for(term_manager const& m, std::vector<formula const*> const& fs, unsigned universe = 3,
                         std::int64_t margin = 2);

// Picks the widest window whose search space fits the limits: margin 2,
// then 1, then two values when margin 0 would leave a single one, then
// margin 0. Throws search_space_error if none fits.
oracle_bounds feasible_bounds(term_manager const& m, formula const& f1, formula const& f2, unsigned universe = 3);

struct oracle_result {
    bool          holds = true;
    std::uint64_t checked = 0;    // interpretations examined
    std::uint64_t skipped = 0;    // interpretations with arithmetic outside the window
    std::string   witness;        // distinguishing interpretation when !holds
    explicit operator bool() const { return holds; }
};

// For every interpretation of the non-variable symbols of both formulas:
// some assignment of f1's variables satisfies f1 iff (equiv) / only if
// (implies) some assignment of f2's variables satisfies f2.
oracle_result equiv_exists(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b);
oracle_result implies_exists(term_manager& m, formula const& f1, formula const& f2, oracle_bounds const& b);

// Does f1 entail lhs ≈ rhs for all interpretations (variables universally)?
bool entails_eq(term_manager& m, formula const& f, term_id lhs, term_id rhs, oracle_bounds const& b);

// A model of f over all its symbols, variables included: function tables
// are drawn at random and the constants searched depth first in random
// value order. nullopt if no attempt out of `tries` succeeds.
std::optional<model> sample_model(term_manager& m, formula const& f, oracle_bounds const& b, std::mt19937_64& rng,
                                  unsigned tries = 2000);

}
