#include "kgbound/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "kgbound/error.hpp"
#include "kgbound/io.hpp"

namespace kgbound::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Task
{
    std::size_t case_index = 0;
    int n = 0;
    int ell = 0;
};

enum class Status { compared, approximation_gap, absent, unmatched, error };

const char* to_string(Status s)
{
    switch (s) {
    case Status::compared:
        return "compared";
    case Status::approximation_gap:
        return "approximation_gap";
    case Status::absent:
        return "absent";
    case Status::unmatched:
        return "unmatched";
    case Status::error:
        return "error";
    }
    return "unknown";
}

struct VerifyRow
{
    Task task;
    Status status = Status::error;
    oracle::Comparison comparison;
    bool has_numeric = false;
    int nodes_algebraic = -1;
    int nodes_numeric = -1;
    bool node_pass = false;
    bool pass = false;
    std::string message;
};

int resolve_threads(int threads)
{
    if (threads > 0) {
        return threads;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Results are
// stored by index, so the output order never depends on scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body)
{
    int const workers = std::min<int>(resolve_threads(threads), static_cast<int>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        });
    }
}

std::vector<Task> tasks_for(const JobConfig& job)
{
    bool const single = job.command == Command::solve || job.command == Command::wavefunction;
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < job.cases.size(); ++c) {
        const CaseConfig& cc = job.cases[c];
        if (single) {
            tasks.push_back({c, cc.n, cc.ell});
            continue;
        }
        for (int ell = 0; ell <= cc.ell_max; ++ell) {
            for (int n = 0; n <= cc.n_max; ++n) {
                tasks.push_back({c, n, ell});
            }
        }
    }
    return tasks;
}

VerifyRow verify_one(const JobConfig& job, const Task& t)
{
    const CaseConfig& c = job.cases[t.case_index];
    VerifyRow row;
    row.task = t;
    row.comparison.case_id = c.id;
    row.comparison.n = t.n;
    row.comparison.ell = t.ell;
    row.comparison.centrifugal = c.centrifugal;

    EnergyWindow window = resolve_window(job, c);
    EnergyWindow oracle_window = window;
    oracle_window.scan_points = job.oracle_scan_points;
    auto const problem = oracle::make_problem(c.spec, c.mass, t.ell, c.centrifugal);

    std::optional<BoundState> state;
    try {
        state = solve_energy(c.spec, c.mass, t.n, t.ell, window, job.tolerance);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_root_in_window) {
            row.status = Status::error;
            row.message = e.what();
            return row;
        }
        row.message = e.what();
    }

    oracle::ShootResult shot;
    try {
        shot = oracle::shoot(problem, t.n, oracle_window);
        row.has_numeric = true;
        row.comparison.e_numeric = shot.energy;
        row.nodes_numeric = shot.solution.node_count;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_transition_in_window) {
            row.status = Status::error;
            row.message = e.what();
            return row;
        }
        if (!state) {
            // Neither side has the level in this window.
            row.status = Status::absent;
            row.node_pass = true;
            row.pass = true;
            return row;
        }
        row.message = e.what();
    }

    if (!state || !row.has_numeric) {
        row.status = Status::unmatched;
        if (state) {
            row.comparison.e_algebraic = state->energy;
        }
        return row;
    }

    try {
        row.comparison = oracle::compare(*state, shot, {job.energy_tolerance, job.overlap_threshold});
        row.comparison.case_id = c.id;
        row.nodes_algebraic = evaluate(*state, default_grid(*state)).node_count;
    } catch (const Error& e) {
        row.status = Status::error;
        row.message = e.what();
        return row;
    }
    row.node_pass = row.nodes_algebraic == t.n && row.nodes_numeric == t.n;
    if (row.comparison.same_treatment) {
        row.status = Status::compared;
        row.pass = row.comparison.pass && row.node_pass;
    } else {
        // Exact centrifugal term against an approximated one: the gap is
        // reported, not tested.
        row.status = Status::approximation_gap;
        row.pass = row.node_pass;
    }
    return row;
}

std::vector<VerifyRow> verify_all(const JobConfig& job, const std::vector<Task>& tasks, int threads)
{
    std::vector<VerifyRow> rows(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) { rows[i] = verify_one(job, tasks[i]); });
    return rows;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

std::string energy_row(const std::string& id, const BoundState& s)
{
    return csv_field(id) + "," + std::to_string(s.n) + "," + std::to_string(s.ell) + "," + format_double(s.energy) +
           "," + format_double(s.residual) + "\n";
}

const char* const energy_header = "case,n,ell,E,residual\n";

std::string optional_number(bool present, double x)
{
    return present ? format_double(x) : "";
}

json number_or_null(bool present, double x)
{
    return present && std::isfinite(x) ? json(x) : json(nullptr);
}

void write_verify_report(const fs::path& dir, const JobConfig& job, const std::vector<VerifyRow>& rows, bool all_pass)
{
    json report;
    report["schema_version"] = schema_version;
    report["energy_tolerance"] = job.energy_tolerance;
    report["overlap_threshold"] = job.overlap_threshold;
    report["pass"] = all_pass;
    json entries = json::array();
    std::string csv = "case,n,ell,centrifugal,status,E_algebraic,E_numeric,abs_diff,overlap,nodes_algebraic,"
                      "nodes_numeric,pass\n";
    for (const VerifyRow& r : rows) {
        const oracle::Comparison& c = r.comparison;
        bool const compared = r.status == Status::compared || r.status == Status::approximation_gap;
        bool const has_alg = compared || (r.status == Status::unmatched && c.e_algebraic != 0.0);
        json e;
        e["case"] = c.case_id;
        e["n"] = r.task.n;
        e["ell"] = r.task.ell;
        e["centrifugal"] = oracle::to_string(c.centrifugal);
        e["status"] = to_string(r.status);
        e["e_algebraic"] = number_or_null(has_alg, c.e_algebraic);
        e["e_numeric"] = number_or_null(r.has_numeric, c.e_numeric);
        e["abs_diff"] = number_or_null(compared, c.abs_diff);
        e["rel_diff"] = number_or_null(compared, c.rel_diff);
        e["overlap"] = number_or_null(compared, c.overlap);
        e["tolerance"] = number_or_null(compared, c.tolerance);
        e["energy_pass"] = compared && c.energy_pass;
        e["overlap_pass"] = compared && c.overlap_pass;
        e["nodes_algebraic"] = r.nodes_algebraic;
        e["nodes_numeric"] = r.nodes_numeric;
        e["node_pass"] = r.node_pass;
        e["pass"] = r.pass;
        if (!r.message.empty()) {
            e["message"] = r.message;
        }
        entries.push_back(std::move(e));

        csv += csv_field(c.case_id) + "," + std::to_string(r.task.n) + "," + std::to_string(r.task.ell) + "," +
               oracle::to_string(c.centrifugal) + "," + to_string(r.status) + "," +
               optional_number(has_alg, c.e_algebraic) + "," + optional_number(r.has_numeric, c.e_numeric) + "," +
               optional_number(compared, c.abs_diff) + "," + optional_number(compared, c.overlap) + "," +
               std::to_string(r.nodes_algebraic) + "," + std::to_string(r.nodes_numeric) + "," +
               (r.pass ? "true" : "false") + "\n";
    }
    report["entries"] = std::move(entries);
    write_then_rename(dir / "verify.json", report.dump(2) + "\n");
    write_then_rename(dir / "verify.csv", csv);
}

void write_goldens_from(const fs::path& dir, const JobConfig& job, const std::vector<VerifyRow>& rows)
{
    std::vector<oracle::GoldenEntry> entries;
    for (const VerifyRow& r : rows) {
        if (!r.has_numeric) {
            continue;
        }
        const CaseConfig& c = job.cases[r.task.case_index];
        entries.push_back({c.id, r.task.n, r.task.ell, r.comparison.e_numeric, job.energy_tolerance * c.mass});
    }
    oracle::write_goldens(dir / "goldens.csv", entries);
}

int run_solve(const JobConfig& job, const fs::path& dir)
{
    const CaseConfig& c = job.cases.front();
    BoundState const s = solve_energy(c.spec, c.mass, c.n, c.ell, resolve_window(job, c), job.tolerance);
    write_then_rename(dir / "solve.csv", energy_header + energy_row(c.id, s));
    return exit_ok;
}

int run_spectrum(const JobConfig& job, const RunOptions& options, const fs::path& dir, std::ostream& err)
{
    std::string text = energy_header;
    std::vector<std::string> missing;
    for (const CaseConfig& c : job.cases) {
        Spectrum const sp =
            spectrum(c.spec, c.mass, c.n_max, c.ell_max, resolve_window(job, c), job.tolerance, options.threads);
        for (const BoundState& s : sp.states) {
            text += energy_row(c.id, s);
        }
        for (const MissingState& m : sp.missing) {
            missing.push_back(c.id + " n=" + std::to_string(m.n) + " l=" + std::to_string(m.ell) + ": " + m.message);
        }
    }
    for (const std::string& m : missing) {
        err << "warning: no level for " << m << "\n";
    }
    if (options.strict && !missing.empty()) {
        err << "error: missing levels with --strict\n";
        return exit_compute;
    }
    write_then_rename(dir / "spectrum.csv", text);
    return exit_ok;
}

int run_wavefunction(const JobConfig& job, const fs::path& dir)
{
    const CaseConfig& c = job.cases.front();
    BoundState const s = solve_energy(c.spec, c.mass, c.n, c.ell, resolve_window(job, c), job.tolerance);
    RadialGrid grid = default_grid(s, job.grid.count);
    grid.spacing = job.grid.spacing;
    if (job.grid.r_min) {
        grid.r_min = *job.grid.r_min;
    }
    if (job.grid.r_max) {
        grid.r_max = *job.grid.r_max;
    }
    SampledWavefunction wf = evaluate(s, grid);
    wf = job.normalization == NormMeasure::schrodinger ? normalize(wf) : normalize_klein_gordon(wf, s);
    std::string text = "r,R\n";
    for (std::size_t i = 0; i < wf.r.size(); ++i) {
        text += format_double(wf.r[i]) + "," + format_double(wf.values[i]) + "\n";
    }
    write_then_rename(dir / "wavefunction.csv", text);
    return exit_ok;
}

int run_verify(const JobConfig& job, const RunOptions& options, const fs::path& dir, std::ostream& out,
               std::ostream& err)
{
    auto const rows = verify_all(job, tasks_for(job), options.threads);
    bool all_pass = true;
    int failed = 0;
    for (const VerifyRow& r : rows) {
        if (!r.pass) {
            all_pass = false;
            ++failed;
            err << "FAIL " << r.comparison.case_id << " n=" << r.task.n << " l=" << r.task.ell << " ("
                << to_string(r.status) << ")";
            if (!r.message.empty()) {
                err << ": " << r.message;
            }
            err << "\n";
        }
    }
    write_verify_report(dir, job, rows, all_pass);
    if (options.seed_goldens) {
        write_goldens_from(dir, job, rows);
    }
    out << "verify: " << rows.size() - failed << "/" << rows.size() << " entries pass\n";
    return all_pass ? exit_ok : exit_verification;
}

void print_catalog(std::ostream& out)
{
    for (const CatalogEntry& e : potential_catalog()) {
        out << e.name << "\n  " << e.summary << "\n  parameters: " << e.parameters << "\n";
    }
}

} // namespace

int threads_from_environment()
{
    const char* v = std::getenv("KGBOUND_THREADS");
    if (v == nullptr) {
        return 1;
    }
    char* end = nullptr;
    long const n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 0 || n > 1024) {
        return 1;
    }
    return static_cast<int>(n);
}

int run(const JobConfig& job, const RunOptions& options, std::ostream& out, std::ostream& err)
{
    for (const std::string& w : job.warnings) {
        err << (options.strict ? "error: " : "warning: ") << w << "\n";
    }
    if (options.strict && !job.warnings.empty()) {
        return exit_config;
    }
    if (job.command == Command::list_potentials) {
        print_catalog(out);
        return exit_ok;
    }
    try {
        fs::path const dir = options.out_dir ? fs::path(*options.out_dir) : fs::path(job.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw Error(ErrorCode::io_error, "cannot create " + dir.string());
        }
        int code = exit_ok;
        switch (job.command) {
        case Command::solve:
            code = run_solve(job, dir);
            break;
        case Command::spectrum:
            code = run_spectrum(job, options, dir, err);
            break;
        case Command::wavefunction:
            code = run_wavefunction(job, dir);
            break;
        case Command::verify:
            return run_verify(job, options, dir, out, err);
        case Command::list_potentials:
            break;
        }
        if (code == exit_ok && options.seed_goldens) {
            write_goldens_from(dir, job, verify_all(job, tasks_for(job), options.threads));
        }
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::config_error ? exit_config : exit_compute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_compute;
    }
}

} // namespace kgbound::cli
