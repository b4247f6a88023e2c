#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gradcontact/app.hpp"
#include "gradcontact/errors.hpp"
#include "gradcontact/solver.hpp"

namespace gradcontact {

namespace {

bool needs_tables(const ContactProblem<double>& p) {
    return p.model == ContactModel::hertz ? !p.equal_exponents() : !uses_closed_form(p);
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

}  // namespace

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ResidualCheck defining_residual(const ContactSolution<double>& s, const KernelTables<double>* tables) {
    const auto& p = s.problem;
    if (p.model == ContactModel::hertz) {
        const auto comb = s.coeffs.combined(s.delta);
        double sum = 0, mag = 0;
        for (int i = 0; i < comb.size(); ++i) {
            const double term = comb(i) * gegenbauer_at_one(2 * i, s.coeffs.alpha1 / 2);
            sum += term;
            mag += std::abs(term);
        }
        return {mag > 0 ? std::abs(sum) / mag : std::abs(sum), 1e-8};
    }
    const double two_gamma = 2 * p.gamma_s;
    const double scale = std::max(1.0, two_gamma);
    if (s.branch == SolutionBranch::jkr_equal_closed_form)
        return {std::abs(strain_energy_equal(p, s.b).dU_db - two_gamma) / scale, 1e-8};
    if (!tables) throw std::invalid_argument("defining_residual: spectral JKR needs kernel tables");
    const double eps = p.controls.fd_epsilon;
    const double fd = (strain_energy_at(p, *tables, s.b + eps) - strain_energy_at(p, *tables, s.b)) / eps;
    return {std::abs(fd - two_gamma) / scale, 1e-6};
}

ResultRecord solve_record(const ContactProblem<double>& input, TableCache& cache,
                          std::optional<ContactSolution<double>>* solution) {
    ResultRecord r;
    r.input = input;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ContactProblem<double> p = input;
        p.normalize();
        r.swapped = p.swapped;
        std::shared_ptr<const KernelTables<double>> tables;
        if (needs_tables(p)) tables = cache.get(p.exponents(), p.controls.N, p.controls.kernel);
        auto s = tables ? solve_contact(p, *tables) : solve_contact(p);
        const auto check = defining_residual(s, tables.get());
        r.defining_residual = check.value;
        if (!check.passed()) {
            r.error_code = "verification";
            r.error_message = "defining residual " + fmt12(check.value) + " exceeds " + fmt12(check.tolerance);
        } else {
            r.ok = true;
            r.branch = branch_name(s.branch);
            r.b = s.b;
            r.delta = s.delta;
            r.p0 = s.pressure(0.0);
            r.b_star = s.b_star;
            r.crossings = s.tensile_crossings;
            r.endpoint_residual = s.diag.endpoint_residual;
            r.load_balance_error = s.diag.load_balance_error;
            r.truncation_tail = s.diag.truncation_tail;
            r.rcond = s.diag.rcond;
            r.root_iterations = s.diag.root_iterations;
            r.sign_changes = s.diag.sign_changes;
            r.kernel_terms = s.diag.kernel_terms;
            r.warnings = s.diag.warnings;
            if (solution) *solution = std::move(s);
        }
    } catch (const BracketError& e) {
        r.error_code = "bracket";
        r.error_message = e.what();
    } catch (const ConvergenceError& e) {
        r.error_code = "convergence";
        r.error_message = e.what();
    } catch (const SingularSystemError& e) {
        r.error_code = "singular";
        r.error_message = e.what();
    } catch (const SolverError& e) {
        r.error_code = "solver";
        r.error_message = e.what();
    } catch (const std::invalid_argument& e) {
        r.error_code = "input";
        r.error_message = e.what();
    } catch (const std::domain_error& e) {
        r.error_code = "domain";
        r.error_message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string csv_header() {
    return "e1,alpha1,nu1,e2,alpha2,nu2,Q0,Q1,P,model,gamma_s,N,fd_epsilon,status,error_code,error,swapped,branch,"
           "b,delta,p0,b_star,crossings,endpoint_residual,load_balance_error,truncation_tail,rcond,"
           "defining_residual,root_iterations,sign_changes,kernel_terms,warnings";
}

std::string csv_row(const ResultRecord& r) {
    const auto& p = r.input;
    std::ostringstream os;
    os << fmt12(p.body1.e) << ',' << fmt12(p.body1.alpha) << ',' << fmt12(p.body1.nu) << ',' << fmt12(p.body2.e)
       << ',' << fmt12(p.body2.alpha) << ',' << fmt12(p.body2.nu) << ',' << fmt12(p.profile.Q0) << ','
       << fmt12(p.profile.Q1) << ',' << fmt12(p.load) << ',' << (p.model == ContactModel::hertz ? "hertz" : "jkr")
       << ',' << fmt12(p.gamma_s) << ',' << p.controls.N << ',' << fmt12(p.controls.fd_epsilon) << ','
       << (r.ok ? "ok" : "failed") << ',' << r.error_code << ',' << quote(r.error_message) << ','
       << (r.swapped ? 1 : 0) << ',';
    if (!r.ok) {
        // Failed rows carry no numbers.
        os << std::string(14, ',');
        return os.str();
    }
    std::string warnings;
    for (const auto& w : r.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    os << r.branch << ',' << fmt12(r.b) << ',' << fmt12(r.delta) << ',' << fmt12(r.p0) << ','
       << (r.b_star ? fmt12(*r.b_star) : "") << ',' << r.crossings << ',' << fmt12(r.endpoint_residual) << ','
       << fmt12(r.load_balance_error) << ',' << fmt12(r.truncation_tail) << ',' << fmt12(r.rcond) << ','
       << fmt12(r.defining_residual) << ',' << r.root_iterations << ',' << r.sign_changes << ',' << r.kernel_terms
       << ',' << quote(warnings);
    return os.str();
}

}  // namespace gradcontact
