#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "kgbound/config.hpp"
#include "kgbound/error.hpp"
#include "reference.hpp"

using namespace kgbound;
namespace fs = std::filesystem;

namespace {

fs::path workdir()
{
    static fs::path const dir = [] {
        auto d = fs::temp_directory_path() / "kgbound_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text)
{
    auto const p = workdir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the command-line tool and returns its exit status.
int run_cli(const std::string& args, const std::string& env = "")
{
    std::string const cmd =
        env + " " + KGBOUND_CLI + " " + args + " >" + (workdir() / "stdout.txt").string() + " 2>" +
        (workdir() / "stderr.txt").string();
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::string config_error(const std::string& text)
{
    try {
        cli::parse_config(text);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::config_error);
        return e.what();
    }
    return "";
}

const std::string coulomb_spectrum = R"({
  "schema_version": 1,
  "command": "spectrum",
  "id": "coulomb",
  "potential": {"type": "coulomb", "z_alpha": 0.2},
  "quantum_numbers": {"n_max": 2, "ell_max": 1}
})";

const std::string hulthen_q0 = R"({
  "schema_version": 1,
  "command": "solve",
  "potential": {"type": "hulthen", "v0": 0.02, "s0": 0.01, "delta": 0.05, "q_def": 0}
})";

} // namespace

TEST_CASE("config parsing")
{
    auto const job = cli::parse_config(coulomb_spectrum);
    CHECK(job.command == cli::Command::spectrum);
    REQUIRE(job.cases.size() == 1);
    CHECK(job.cases[0].id == "coulomb");
    CHECK(job.cases[0].n_max == 2);
    CHECK(job.cases[0].ell_max == 1);
    CHECK(job.cases[0].mass == 1.0);
    CHECK(std::get<Coulomb>(job.cases[0].spec).z_alpha == 0.2);
    CHECK(job.tolerance == default_tolerance);
    CHECK(job.warnings.empty());
    auto const w = cli::resolve_window(job, job.cases[0]);
    CHECK(w.lo == -1.0);
    CHECK(w.hi == 1.0);
}

TEST_CASE("config rejects malformed jobs")
{
    CHECK(config_error("{not json").find("invalid JSON") != std::string::npos);
    CHECK(config_error(R"({"command": "solve"})").find("schema_version") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 2, "command": "solve"})").find("schema_version") !=
          std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve", "colour": 3,
                          "potential": {"type": "coulomb", "z_alpha": 0.2}})")
              .find("unknown key 'colour'") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "coulomb", "z_alpha": 0.2, "zz": 1}})")
              .find("unknown key 'zz'") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "coulomb"}})")
              .find("z_alpha") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "coulomb", "z_alpha": "0.2"}})")
              .find("must be a number") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "fly",
                          "potential": {"type": "coulomb", "z_alpha": 0.2}})")
              .find("unknown command") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "morse", "d": 1}})")
              .find("unknown potential type") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "cases": [{"potential": {"type": "coulomb", "z_alpha": 0.2}},
                                    {"potential": {"type": "coulomb", "z_alpha": 0.1}}]})")
              .find("exactly one case") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "coulomb", "z_alpha": 0.2}, "window": {"lo": 0.5, "hi": 0.1}})")
              .find("lo < hi") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "solve",
                          "potential": {"type": "coulomb", "z_alpha": 0.2, "scalar_z_alpha": 0.1}})")
              .find("UnsupportedCoupling") != std::string::npos);
    CHECK(config_error(R"({"schema_version": 1, "command": "spectrum",
                          "potential": {"type": "hulthen", "v0": 0.02, "s0": 0.01, "delta": 0.05, "q_def": 0.5},
                          "quantum_numbers": {"ell_max": 1}})")
              .find("l = 0 only") != std::string::npos);
}

TEST_CASE("hulthen q = 0 cites the deformation parameter")
{
    CHECK(config_error(hulthen_q0).find("q != 0 is the deformation parameter") != std::string::npos);
}

TEST_CASE("hulthen q != 1 is accepted with a warning")
{
    auto const job = cli::parse_config(R"({"schema_version": 1, "command": "solve",
        "potential": {"type": "hulthen", "v0": 0.02, "s0": 0.01, "delta": 0.05, "q_def": 0.5}})");
    REQUIRE(job.warnings.size() == 1);
    CHECK(job.warnings[0].find("experimental") != std::string::npos);
}

TEST_CASE("catalog lists every potential")
{
    auto const& cat = cli::potential_catalog();
    CHECK(cat.size() == 7);
    CHECK(run_cli("list-potentials") == 0);
    auto const out = slurp(workdir() / "stdout.txt");
    for (const char* name :
         {"coulomb", "mie", "kratzer_fues", "non_central", "hulthen", "woods_saxon", "poschl_teller"}) {
        CHECK(out.find(name) != std::string::npos);
    }
}

TEST_CASE("spectrum job writes the coulomb levels")
{
    auto const cfg = write_config("spectrum.json", coulomb_spectrum);
    auto const out = workdir() / "spectrum_out";
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + out.string()) == 0);
    auto const rows = lines(slurp(out / "spectrum.csv"));
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "case,n,ell,E,residual");
    std::size_t i = 1;
    for (int ell = 0; ell <= 1; ++ell) {
        for (int n = 0; n <= 2; ++n, ++i) {
            std::istringstream row(rows[i]);
            std::string id, sn, sl, se;
            std::getline(row, id, ',');
            std::getline(row, sn, ',');
            std::getline(row, sl, ',');
            std::getline(row, se, ',');
            CHECK(id == "coulomb");
            CHECK(std::stoi(sn) == n);
            CHECK(std::stoi(sl) == ell);
            CHECK(std::abs(std::stod(se) - ref::coulomb_level(0.2, n, ell)) <= 1e-10);
        }
    }
}

TEST_CASE("spectrum output is byte-identical across runs and thread counts")
{
    auto const cfg = write_config("spectrum_det.json", coulomb_spectrum);
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + (workdir() / "det1").string()) == 0);
    REQUIRE(run_cli("--config " + cfg.string() + " --out " + (workdir() / "det2").string(), "KGBOUND_THREADS=3") ==
            0);
    CHECK(slurp(workdir() / "det1" / "spectrum.csv") == slurp(workdir() / "det2" / "spectrum.csv"));
}

TEST_CASE("config errors exit 2 and write nothing")
{
    auto const cfg = write_config("hq0.json", hulthen_q0);
    auto const out = workdir() / "hq0_out";
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out / "solve.csv"));
    CHECK(slurp(workdir() / "stderr.txt").find("q != 0 is the deformation parameter") != std::string::npos);
    CHECK(run_cli("--config " + (workdir() / "absent.json").string()) == 2);
    CHECK(run_cli("--bogus-flag") == 2);
    CHECK(run_cli("solve") == 2);
    auto const spec_cfg = write_config("mismatch.json", coulomb_spectrum);
    CHECK(run_cli("solve --config " + spec_cfg.string()) == 2);
}

TEST_CASE("strict mode promotes warnings")
{
    auto const cfg = write_config("hq05.json", R"({"schema_version": 1, "command": "solve",
        "potential": {"type": "hulthen", "v0": 0.02, "s0": 0.01, "delta": 0.05, "q_def": 0.5}})");
    CHECK(run_cli("--strict --config " + cfg.string() + " --out " + (workdir() / "strict").string()) == 2);
    CHECK_FALSE(fs::exists(workdir() / "strict" / "solve.csv"));
}

TEST_CASE("compute errors exit 3 and write nothing")
{
    auto const cfg = write_config("noroot.json", R"({"schema_version": 1, "command": "solve",
        "potential": {"type": "coulomb", "z_alpha": 0.2}, "window": {"lo": 0.0, "hi": 0.5}})");
    auto const out = workdir() / "noroot_out";
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) == 3);
    CHECK_FALSE(fs::exists(out / "solve.csv"));
    CHECK(slurp(workdir() / "stderr.txt").find("NoRootInWindow") != std::string::npos);
}

TEST_CASE("solve and wavefunction jobs")
{
    auto const solve = write_config("solve.json", R"({"schema_version": 1, "command": "solve",
        "id": "kf", "potential": {"type": "kratzer_fues", "ve": 0.25, "re": 1.0},
        "quantum_numbers": {"n": 0, "ell": 0}})");
    REQUIRE(run_cli("--config " + solve.string() + " --out " + (workdir() / "solve_out").string()) == 0);
    auto const rows = lines(slurp(workdir() / "solve_out" / "solve.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("kf,0,0,1.29715650817", 0) == 0);

    auto const wf = write_config("wf.json", R"({"schema_version": 1, "command": "wavefunction",
        "potential": {"type": "coulomb", "z_alpha": 0.2}, "quantum_numbers": {"n": 1, "ell": 0},
        "grid": {"count": 1025}})");
    REQUIRE(run_cli("--config " + wf.string() + " --out " + (workdir() / "wf_out").string()) == 0);
    auto const samples = lines(slurp(workdir() / "wf_out" / "wavefunction.csv"));
    REQUIRE(samples.size() == 1026);
    CHECK(samples[0] == "r,R");
    int sign_changes = 0;
    double prev = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double const v = std::stod(samples[i].substr(samples[i].find(',') + 1));
        if (prev != 0.0 && v != 0.0 && (v > 0.0) != (prev > 0.0)) {
            ++sign_changes;
        }
        if (v != 0.0) {
            prev = v;
        }
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("verify job on the exact-mapping suite")
{
    auto const cfg = fs::path(KGBOUND_TEST_DATA) / "jobs" / "verify_exact_mapping.json";
    auto const a = workdir() / "verify_a";
    auto const b = workdir() / "verify_b";
    CHECK(run_cli("--config " + cfg.string() + " --out " + a.string()) == 0);
    CHECK(run_cli("--config " + cfg.string() + " --out " + b.string() + " --seed-goldens", "KGBOUND_THREADS=2") ==
          0);
    CHECK(slurp(a / "verify.json") == slurp(b / "verify.json"));
    CHECK(slurp(a / "verify.csv") == slurp(b / "verify.csv"));
    CHECK(lines(slurp(a / "verify.csv")).size() == 29);
    CHECK(slurp(a / "verify.json").find("\"pass\": false") == std::string::npos);
    CHECK(lines(slurp(b / "goldens.csv")).size() == 29);
    CHECK_FALSE(fs::exists(a / "goldens.csv"));
}

TEST_CASE("verify exits 4 on a failed tolerance")
{
    auto const cfg = write_config("tight.json", R"({"schema_version": 1, "command": "verify",
        "potential": {"type": "mie", "v0": 0.3, "a": 1.5}, "quantum_numbers": {"n_max": 0, "ell_max": 0},
        "verify": {"energy_tolerance": 1e-16}})");
    auto const out = workdir() / "tight_out";
    CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) == 4);
    CHECK(slurp(out / "verify.json").find("\"energy_pass\": false") != std::string::npos);
}
