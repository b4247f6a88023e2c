#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

#include "gradcontact/app.hpp"
#include "gradcontact/displacement.hpp"
#include "gradcontact/errors.hpp"

namespace gradcontact {

namespace fs = std::filesystem;

namespace {

std::ofstream open_csv(const fs::path& file, const RunConfig& cfg) {
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    os << "# " << describe_config(cfg.tree) << '\n';
    return os;
}

void write_summary(const fs::path& out, const RunConfig& cfg, const std::vector<ResultRecord>& rows) {
    auto os = open_csv(out / "summary.csv", cfg);
    os << csv_header() << '\n';
    for (const auto& r : rows) os << csv_row(r) << '\n';
    // Wall-clock times vary run to run, so they live beside the summary.
    std::ofstream ts(out / "timing.csv");
    ts << "row,seconds\n";
    for (std::size_t i = 0; i < rows.size(); ++i) ts << i << ',' << fmt12(rows[i].seconds) << '\n';
}

void write_fields(const fs::path& out, const RunConfig& cfg, const ContactSolution<double>& s, const std::string& tag,
                  std::ostream& log) {
    const auto& o = cfg.output;
    {
        auto os = open_csv(out / ("pressure_" + tag + ".csv"), cfg);
        os << "# contact pressure p(x) on [-b, b]; p(+-b) is the endpoint limit\n";
        os << "x,p\n";
        for (int i = 0; i < o.pressure_samples; ++i) {
            const double x = i == o.pressure_samples - 1 ? s.b
                                                          : -s.b + 2 * s.b * i / double(o.pressure_samples - 1);
            os << fmt12(x) << ',' << fmt12(s.pressure(x)) << '\n';
        }
    }
    const double x_in = -s.b * (1 + 1e-4);
    double x_out = -o.displacement_xmax;
    if (!(x_out < x_in)) {
        x_out = -10 * s.b;
        log << "warning: output.displacement_xmax <= b; sampling displacements out to |x| = 10 b\n";
    }
    for (int body : {1, 2}) {
        auto os = open_csv(out / ("displacement_" + tag + "_body" + std::to_string(body) + ".csv"), cfg);
        os << "# surface displacement v_" << body << "(x) outside the contact zone (x < -b, symmetric in x)";
        if (body == 2) os << "; the lower body's upward surface displacement is u_y = -v_2";
        os << '\n' << "x,v" << body << '\n';
        for (int i = 0; i < o.displacement_samples; ++i) {
            const double x = x_out + (x_in - x_out) * i / double(o.displacement_samples - 1);
            os << fmt12(x) << ',' << fmt12(surface_displacement(s, body, x)) << '\n';
        }
    }
}

void report(std::ostream& log, const ResultRecord& r) {
    if (!r.ok) {
        log << "failed [" << r.error_code << "]: " << r.error_message << '\n';
        return;
    }
    log << "branch=" << r.branch << " b=" << fmt12(r.b) << " delta=" << fmt12(r.delta) << " p0=" << fmt12(r.p0);
    if (r.b_star) log << " b_star=" << fmt12(*r.b_star);
    log << " residual=" << fmt12(r.defining_residual) << " time=" << fmt12(r.seconds) << "s\n";
    for (const auto& w : r.warnings) log << "  warning: " << w << '\n';
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const fs::path& out, TableCache& cache, std::ostream& log) {
    fs::create_directories(out);
    std::optional<ContactSolution<double>> solution;
    const ResultRecord r = solve_record(cfg.problem, cache, &solution);
    report(log, r);
    write_summary(out, cfg, {r});
    if (!r.ok) return exit_solver;
    if (cfg.output.fields) write_fields(out, cfg, *solution, cfg.output.tag, log);
    return exit_ok;
}

std::vector<RunConfig> expand_sweep(const RunConfig& cfg) {
    std::vector<RunConfig> points;
    std::vector<std::size_t> index(cfg.axes.size(), 0);
    if (cfg.axes.empty()) return {cfg};
    while (true) {
        auto tree = cfg.tree;
        tree.erase("sweep");
        for (std::size_t a = 0; a < cfg.axes.size(); ++a)
            set_key(tree, cfg.axes[a].key, fmt12(cfg.axes[a].values[index[a]]));
        points.push_back(load_config(tree));
        // Odometer increment, last axis fastest.
        std::size_t a = cfg.axes.size();
        while (a > 0) {
            --a;
            if (++index[a] < cfg.axes[a].values.size()) break;
            index[a] = 0;
            if (a == 0) return points;
        }
    }
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out, int workers, TableCache& cache, std::ostream& log) {
    if (cfg.axes.empty()) throw ConfigError("sweep", "no sweep axis given (use sweep.<key> = v1, v2, ...)");
    const auto points = expand_sweep(cfg);
    fs::create_directories(out);
    std::vector<ResultRecord> rows(points.size());
    std::vector<std::optional<ContactSolution<double>>> solutions(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++)
            rows[i] = solve_record(points[i].problem, cache, cfg.output.fields ? &solutions[i] : nullptr);
    };
    const int n = std::clamp<int>(workers, 1, static_cast<int>(points.size()));
    std::vector<std::jthread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(work);
    work();
    pool.clear();

    int failures = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        log << "[" << i + 1 << "/" << rows.size() << "] ";
        report(log, rows[i]);
        if (!rows[i].ok) ++failures;
        if (solutions[i]) write_fields(out, points[i], *solutions[i], cfg.output.tag + "_" + std::to_string(i), log);
    }
    write_summary(out, cfg, rows);
    log << rows.size() - failures << " of " << rows.size() << " points solved; " << cache.builds()
        << " kernel table builds\n";
    return failures ? exit_solver : exit_ok;
}

}  // namespace gradcontact
