#include "kgbound/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kgbound/error.hpp"

namespace kgbound::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::config_error, where + ": " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    std::set<std::string> const ok(allowed.begin(), allowed.end());
    for (auto const& item : j.items()) {
        if (!ok.count(item.key())) {
            fail(where, "unknown key '" + item.key() + "'");
        }
    }
}

double number(const json& j, const std::string& where, const char* key)
{
    if (!j.contains(key)) {
        fail(where, std::string("missing '") + key + "'");
    }
    const json& v = j.at(key);
    if (!v.is_number()) {
        fail(where, std::string("'") + key + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const json& j, const std::string& where, const char* key, double fallback)
{
    return j.contains(key) ? number(j, where, key) : fallback;
}

int integer_or(const json& j, const std::string& where, const char* key, int fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
        fail(where, std::string("'") + key + "' must be an integer");
    }
    return v.get<int>();
}

std::string string_or(const json& j, const std::string& where, const char* key, const std::string& fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_string()) {
        fail(where, std::string("'") + key + "' must be a string");
    }
    return v.get<std::string>();
}

PotentialSpec parse_potential(const json& j, const std::string& where)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        fail(where, "needs a string 'type'");
    }
    std::string const type = j.at("type").get<std::string>();
    if (type == "coulomb") {
        check_keys(j, where, {"type", "z_alpha", "scalar_z_alpha"});
        return Coulomb{number(j, where, "z_alpha"), number_or(j, where, "scalar_z_alpha", 0.0)};
    }
    if (type == "mie") {
        check_keys(j, where, {"type", "v0", "a"});
        return Mie{number(j, where, "v0"), number(j, where, "a")};
    }
    if (type == "kratzer_fues") {
        check_keys(j, where, {"type", "ve", "re"});
        return KratzerFues{number(j, where, "ve"), number(j, where, "re")};
    }
    if (type == "non_central") {
        check_keys(j, where, {"type", "alpha_c", "lambda_sep"});
        return NonCentralRadial{number(j, where, "alpha_c"), number(j, where, "lambda_sep")};
    }
    if (type == "hulthen") {
        check_keys(j, where, {"type", "v0", "s0", "delta", "q_def"});
        return Hulthen{number(j, where, "v0"), number(j, where, "s0"), number(j, where, "delta"),
                       number_or(j, where, "q_def", 1.0)};
    }
    if (type == "woods_saxon") {
        check_keys(j, where, {"type", "v0", "s0", "a", "r_big", "q_def", "pekeris"});
        WoodsSaxon w{number(j, where, "v0"), number(j, where, "s0"), number(j, where, "a"),
                     number(j, where, "r_big"), number_or(j, where, "q_def", 1.0), std::nullopt};
        if (j.contains("pekeris")) {
            const json& d = j.at("pekeris");
            std::string const sub = where + ".pekeris";
            check_keys(d, sub, {"d0", "d1", "d2"});
            w.pekeris = PekerisCoefficients{number(d, sub, "d0"), number(d, sub, "d1"), number(d, sub, "d2")};
        }
        return w;
    }
    if (type == "poschl_teller") {
        check_keys(j, where, {"type", "v1", "v2", "alpha_pt"});
        return PoschlTeller{number(j, where, "v1"), number(j, where, "v2"), number(j, where, "alpha_pt")};
    }
    fail(where, "unknown potential type '" + type + "' (see list-potentials)");
}

oracle::Centrifugal parse_centrifugal(const std::string& s, const std::string& where)
{
    if (s == "approximate") {
        return oracle::Centrifugal::approximate;
    }
    if (s == "exact") {
        return oracle::Centrifugal::exact;
    }
    fail(where, "centrifugal must be 'approximate' or 'exact'");
}

CaseConfig parse_case(const json& j, const std::string& where, double default_mass, const std::string& default_id)
{
    CaseConfig c;
    c.spec = parse_potential(j.at("potential"), where + ".potential");
    c.mass = number_or(j, where, "mass", default_mass);
    c.id = string_or(j, where, "id", default_id.empty() ? potential_name(c.spec) : default_id);
    c.centrifugal = parse_centrifugal(string_or(j, where, "centrifugal", "approximate"), where);
    if (j.contains("quantum_numbers")) {
        const json& q = j.at("quantum_numbers");
        std::string const sub = where + ".quantum_numbers";
        check_keys(q, sub, {"n", "ell", "n_max", "ell_max"});
        c.n = integer_or(q, sub, "n", 0);
        c.ell = integer_or(q, sub, "ell", 0);
        c.n_max = integer_or(q, sub, "n_max", c.n);
        c.ell_max = integer_or(q, sub, "ell_max", c.ell);
    }
    if (c.n < 0 || c.ell < 0 || c.n_max < 0 || c.ell_max < 0) {
        fail(where, "quantum numbers must be non-negative");
    }
    try {
        validate(c.spec, c.mass);
    } catch (const Error& e) {
        fail(where, e.what());
    }
    if (auto const* h = std::get_if<Hulthen>(&c.spec); h && h->q_def != 1.0 && std::max(c.ell, c.ell_max) > 0) {
        fail(where, "hulthen with q_def != 1 supports l = 0 only");
    }
    return c;
}

Command parse_command(const std::string& s)
{
    if (s == "solve") {
        return Command::solve;
    }
    if (s == "spectrum") {
        return Command::spectrum;
    }
    if (s == "wavefunction") {
        return Command::wavefunction;
    }
    if (s == "verify") {
        return Command::verify;
    }
    if (s == "list-potentials") {
        return Command::list_potentials;
    }
    fail("command", "unknown command '" + s + "'");
}

} // namespace

const char* to_string(Command c) noexcept
{
    switch (c) {
    case Command::solve:
        return "solve";
    case Command::spectrum:
        return "spectrum";
    case Command::wavefunction:
        return "wavefunction";
    case Command::verify:
        return "verify";
    case Command::list_potentials:
        return "list-potentials";
    }
    return "unknown";
}

JobConfig parse_config(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("config", std::string("invalid JSON: ") + e.what());
    }
    check_keys(j, "config",
               {"schema_version", "command", "id", "mass", "potential", "quantum_numbers", "centrifugal", "cases",
                "window", "tolerance", "grid", "normalization", "verify", "output"});
    if (!j.contains("schema_version")) {
        fail("config", "missing 'schema_version'");
    }
    if (integer_or(j, "config", "schema_version", 0) != schema_version) {
        fail("config", "unsupported schema_version (expected " + std::to_string(schema_version) + ")");
    }
    if (!j.contains("command")) {
        fail("config", "missing 'command'");
    }

    JobConfig job;
    job.command = parse_command(string_or(j, "config", "command", ""));

    double const mass = number_or(j, "config", "mass", 1.0);
    bool const single = j.contains("potential");
    if (single && j.contains("cases")) {
        fail("config", "give either 'potential' or 'cases', not both");
    }
    if (single) {
        job.cases.push_back(parse_case(j, "config", mass, string_or(j, "config", "id", "")));
    } else if (j.contains("cases")) {
        if (j.contains("quantum_numbers") || j.contains("centrifugal") || j.contains("id")) {
            fail("config", "'quantum_numbers', 'centrifugal' and 'id' belong inside each case");
        }
        const json& list = j.at("cases");
        if (!list.is_array() || list.empty()) {
            fail("config.cases", "expected a non-empty array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::string const where = "config.cases[" + std::to_string(i) + "]";
            check_keys(list[i], where, {"id", "mass", "potential", "quantum_numbers", "centrifugal"});
            if (!list[i].contains("potential")) {
                fail(where, "missing 'potential'");
            }
            job.cases.push_back(parse_case(list[i], where, mass, ""));
        }
    }
    if (job.command != Command::list_potentials && job.cases.empty()) {
        fail("config", "needs 'potential' or 'cases'");
    }
    if ((job.command == Command::solve || job.command == Command::wavefunction) && job.cases.size() != 1) {
        fail("config", std::string(to_string(job.command)) + " takes exactly one case");
    }

    if (j.contains("window")) {
        const json& w = j.at("window");
        check_keys(w, "config.window", {"lo", "hi", "sign", "scan_points"});
        if (w.contains("lo")) {
            job.window.lo = number(w, "config.window", "lo");
        }
        if (w.contains("hi")) {
            job.window.hi = number(w, "config.window", "hi");
        }
        std::string const sign = string_or(w, "config.window", "sign", "particle");
        if (sign == "particle") {
            job.window.sign = EnergySign::particle;
        } else if (sign == "antiparticle") {
            job.window.sign = EnergySign::antiparticle;
        } else {
            fail("config.window", "sign must be 'particle' or 'antiparticle'");
        }
        job.window.scan_points = integer_or(w, "config.window", "scan_points", job.window.scan_points);
        if (job.window.scan_points < 64) {
            fail("config.window", "scan_points must be at least 64");
        }
        if (job.window.lo && job.window.hi && !(*job.window.lo < *job.window.hi)) {
            fail("config.window", "needs lo < hi");
        }
    }

    job.tolerance = number_or(j, "config", "tolerance", job.tolerance);
    if (!(job.tolerance > 0.0)) {
        fail("config", "tolerance must be positive");
    }

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        check_keys(g, "config.grid", {"r_min", "r_max", "count", "spacing"});
        if (g.contains("r_min")) {
            job.grid.r_min = number(g, "config.grid", "r_min");
        }
        if (g.contains("r_max")) {
            job.grid.r_max = number(g, "config.grid", "r_max");
        }
        job.grid.count = integer_or(g, "config.grid", "count", job.grid.count);
        std::string const spacing = string_or(g, "config.grid", "spacing", "log");
        if (spacing == "log") {
            job.grid.spacing = GridSpacing::log;
        } else if (spacing == "uniform") {
            job.grid.spacing = GridSpacing::uniform;
        } else {
            fail("config.grid", "spacing must be 'log' or 'uniform'");
        }
        if (job.grid.count < 128) {
            fail("config.grid", "count must be at least 128");
        }
        if ((job.grid.r_min && !(*job.grid.r_min > 0.0)) ||
            (job.grid.r_min && job.grid.r_max && !(*job.grid.r_min < *job.grid.r_max))) {
            fail("config.grid", "needs 0 < r_min < r_max");
        }
    }

    std::string const norm = string_or(j, "config", "normalization", "schrodinger");
    if (norm == "schrodinger") {
        job.normalization = NormMeasure::schrodinger;
    } else if (norm == "klein_gordon") {
        job.normalization = NormMeasure::klein_gordon;
    } else {
        fail("config", "normalization must be 'schrodinger' or 'klein_gordon'");
    }

    if (j.contains("verify")) {
        const json& v = j.at("verify");
        check_keys(v, "config.verify", {"energy_tolerance", "overlap_threshold", "scan_points"});
        job.energy_tolerance = number_or(v, "config.verify", "energy_tolerance", job.energy_tolerance);
        job.overlap_threshold = number_or(v, "config.verify", "overlap_threshold", job.overlap_threshold);
        job.oracle_scan_points = integer_or(v, "config.verify", "scan_points", job.oracle_scan_points);
        if (!(job.energy_tolerance > 0.0) || job.oracle_scan_points < 2) {
            fail("config.verify", "energy_tolerance must be positive and scan_points >= 2");
        }
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "config.output", {"directory"});
        job.output_dir = string_or(o, "config.output", "directory", job.output_dir);
    }

    for (const CaseConfig& c : job.cases) {
        if (auto const* h = std::get_if<Hulthen>(&c.spec); h && h->q_def != 1.0) {
            job.warnings.push_back(c.id + ": hulthen with q_def != 1 is experimental");
        }
    }
    return job;
}

JobConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail("config", "cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

EnergyWindow resolve_window(const JobConfig& job, const CaseConfig& c)
{
    EnergyWindow w = default_window(c.spec, c.mass, job.window.sign, job.window.scan_points);
    if (job.window.lo) {
        w.lo = *job.window.lo;
    }
    if (job.window.hi) {
        w.hi = *job.window.hi;
    }
    return w;
}

const std::vector<CatalogEntry>& potential_catalog()
{
    static const std::vector<CatalogEntry> catalog = {
        {"coulomb", "V = -z_alpha / r, no scalar part", "z_alpha; scalar_z_alpha (must be 0)"},
        {"mie", "V = S = v0 [(a/r)^2 / 2 - a/r]", "v0 (energy), a (length > 0)"},
        {"kratzer_fues", "V = S = ve (r - re)^2 / r^2", "ve (energy), re (length > 0)"},
        {"non_central", "radial part of V = S = alpha_c / r + angular term",
         "alpha_c (energy x length), lambda_sep (separation constant, replaces l(l+1))"},
        {"hulthen", "V = -v0 f, S = -s0 f, f = e^{-delta r} / (1 - q e^{-delta r})",
         "v0, s0 (energies), delta (> 0), q_def (!= 0, <= 1, default 1; l > 0 needs 1)"},
        {"woods_saxon", "V = -v0 s, S = -s0 s, s = 1 / (1 + q e^{(r - R)/a})",
         "v0, s0 (energies), a (> 0), r_big (> 0), q_def (> 0, default 1), pekeris {d0, d1, d2} (optional)"},
        {"poschl_teller", "V = S = -v1 / cosh^2(alpha r) + v2 / sinh^2(alpha r)",
         "v1, v2 (energies, v2 >= 0), alpha_pt (> 0)"},
    };
    return catalog;
}

} // namespace kgbound::cli
