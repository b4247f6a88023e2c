#pragma once

// Branch selection: one entry point for every model and exponent combination.

#include "gradcontact/assembly.hpp"
#include "gradcontact/hertz.hpp"
#include "gradcontact/jkr.hpp"
#include "gradcontact/kernel.hpp"

namespace gradcontact {

/// True when the problem takes the closed-form equal-exponent path.
template <typename Scalar>
bool uses_closed_form(const ContactProblem<Scalar>& problem) {
    return problem.equal_exponents() && problem.profile.quadratic();
}

/// Solve with prebuilt tables (ignored by the closed-form branches).
template <typename Scalar>
ContactSolution<Scalar> solve_contact(const ContactProblem<Scalar>& problem, const KernelTables<Scalar>& tables) {
    if (problem.model == ContactModel::hertz) {
        if (uses_closed_form(problem)) return solve_equal_exponent(problem);
        if (problem.equal_exponents()) return solve_equal_exponent_general(problem);
        return solve_hertz(problem, tables);
    }
    if (uses_closed_form(problem)) return solve_jkr_equal(problem);
    return solve_jkr_general(problem, tables);
}

/// Solve, building kernel tables only when the chosen branch needs them.
template <typename Scalar>
ContactSolution<Scalar> solve_contact(const ContactProblem<Scalar>& problem) {
    const bool needs_tables = problem.model == ContactModel::hertz ? !problem.equal_exponents()
                                                                   : !uses_closed_form(problem);
    if (!needs_tables) {
        const KernelTables<Scalar> none = build_tables(problem.exponents(), 1, problem.controls.kernel);
        return solve_contact(problem, none);
    }
    return solve_contact(problem, build_tables(problem.exponents(), problem.controls.N, problem.controls.kernel));
}

}  // namespace gradcontact
