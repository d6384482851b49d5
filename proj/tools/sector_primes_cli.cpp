// sector-primes: command-line front end.
//
// Exit codes: 0 ok, 2 usage, 3 I/O, 4 a bound or certificate failed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sector_primes/checkpoint.hpp"
#include "sector_primes/envelope.hpp"
#include "sector_primes/errors.hpp"
#include "sector_primes/lemma.hpp"
#include "sector_primes/pipeline.hpp"
#include "sector_primes/report.hpp"

namespace sp = sector_primes;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitRedFlag = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw flag values; unset means "take it from --config, else the default".
struct Flags {
    std::optional<double> y, alpha, K, tolerance, gamma;
    std::optional<std::uint64_t> limit, segment_size;
    std::optional<unsigned> threads;
    std::optional<std::string> format, out, checkpoint;
    std::optional<std::string> config;
    std::vector<std::uint64_t> triple;
    bool no_timings = false;
};

struct Settings {
    sp::SectorParams params;
    sp::SieveConfig sieve;
    std::string format = "table";
    std::optional<fs::path> out;
    std::optional<fs::path> checkpoint;
    double tolerance = 1e-3;
    double gamma = 0.0;
    bool timings = true;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--y", f.y, "phase scale y > 0 (default 10)");
    cmd->add_option("--alpha", f.alpha, "phase offset in [0, 2pi) (default 0)");
    cmd->add_option("--K", f.K, "sector threshold in (0, 1) (default 0.5)");
    cmd->add_option("--limit", f.limit, "sieve primes up to this bound (default 1e8)");
    cmd->add_option("--segment-size", f.segment_size, "sieve segment buffer in bytes");
    cmd->add_option("--threads", f.threads, "sieve workers (fallback: SECTOR_PRIMES_THREADS)");
    cmd->add_option("--format", f.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--out", f.out, "write output to PATH instead of stdout");
    cmd->add_option("--config", f.config, "JSON file with the same keys as the flags; flags win");
    cmd->add_flag("--no-timings", f.no_timings, "omit the timings block from JSON output");
}

template <typename T>
std::optional<T> config_value(const json& j, std::initializer_list<const char*> keys) {
    for (const char* key : keys)
        if (j.contains(key)) {
            try {
                return j.at(key).get<T>();
            } catch (const json::exception&) {
                throw UsageError(std::string("config key '") + key + "' has the wrong type");
            }
        }
    return std::nullopt;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    try {
        json j = json::parse(in);
        if (!j.is_object()) throw UsageError("config file must hold a JSON object: " + path);
        return j;
    } catch (const json::parse_error& e) {
        throw UsageError("config file is not valid JSON: " + path + " (" + e.what() + ")");
    }
}

unsigned env_threads() {
    const char* raw = std::getenv("SECTOR_PRIMES_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (*end != '\0' || v == 0 || v > 4096)
        throw UsageError(std::string("SECTOR_PRIMES_THREADS must be a positive integer, got '") + raw + "'");
    return static_cast<unsigned>(v);
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& file, T fallback) {
    return flag ? *flag : (file ? *file : fallback);
}

Settings resolve(const Flags& f) {
    const json file = f.config ? load_config(*f.config) : json::object();
    Settings s;
    s.params = sp::SectorParams::make(pick(f.y, config_value<double>(file, {"y"}), 10.0),
                                      pick(f.alpha, config_value<double>(file, {"alpha"}), 0.0),
                                      pick(f.K, config_value<double>(file, {"K"}), 0.5));
    s.sieve.limit = pick(f.limit, config_value<std::uint64_t>(file, {"limit"}), std::uint64_t{100'000'000});
    s.sieve.segment_size = pick(f.segment_size, config_value<std::uint64_t>(file, {"segment-size", "segment_size"}),
                                sp::kDefaultSegmentBytes);
    unsigned threads = pick(f.threads, config_value<unsigned>(file, {"threads"}), 0u);
    if (threads == 0) threads = env_threads();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    s.sieve.worker_count = threads;
    s.sieve.validate();

    s.format = pick(f.format, config_value<std::string>(file, {"format"}), std::string("table"));
    if (s.format != "table" && s.format != "csv" && s.format != "json")
        throw UsageError("format must be one of table, csv, json; got '" + s.format + "'");
    if (const auto out = f.out ? f.out : config_value<std::string>(file, {"out"})) s.out = *out;
    if (const auto ck = f.checkpoint ? f.checkpoint : config_value<std::string>(file, {"checkpoint"}))
        s.checkpoint = *ck;
    s.tolerance = pick(f.tolerance, config_value<double>(file, {"tolerance"}), 1e-3);
    s.gamma = pick(f.gamma, config_value<double>(file, {"gamma"}), 0.0);
    s.timings = !f.no_timings;
    return s;
}

void emit(const Settings& s, const std::string& text) {
    if (!s.out) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const fs::path tmp = s.out->string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!(out << text) || !out.flush()) throw IoError("cannot write output file: " + s.out->string());
    }
    std::error_code ec;
    fs::rename(tmp, *s.out, ec);
    if (ec) throw IoError("cannot write output file: " + s.out->string() + " (" + ec.message() + ")");
}

std::string dump(const json& j) { return j.dump(2) + '\n'; }

sp::RunOptions run_options(const Settings& s) {
    sp::RunOptions opts;
    opts.checkpoint_path = s.checkpoint;
    return opts;
}

void warn_red_flag(const sp::RunReport& r) {
    if (r.red_flag)
        std::cerr << "sector-primes: red flag: " << r.bound_violations << " bound violation(s), |A\\P+|="
                  << r.sums.a_not_plus << ", |B\\P-|=" << r.sums.b_not_minus << '\n';
}

int cmd_sum(const Settings& s) {
    const sp::RunReport r = sp::run(s.params, s.sieve, run_options(s));
    if (s.format == "json")
        emit(s, dump(sp::to_json(r, s.timings)));
    else if (s.format == "csv")
        emit(s, sp::decades_csv(r.decades, r.growth));
    else
        emit(s, sp::sums_table(r));
    warn_red_flag(r);
    return r.red_flag ? kExitRedFlag : kExitOk;
}

int cmd_shells(const Settings& s) {
    const sp::RunReport r = sp::run(s.params, s.sieve, run_options(s));
    if (s.format == "json")
        emit(s, dump(sp::to_json(r, s.timings)));
    else if (s.format == "csv")
        emit(s, sp::shells_csv(r.shells));
    else
        emit(s, sp::shells_table(r.shells));
    warn_red_flag(r);
    return r.red_flag ? kExitRedFlag : kExitOk;
}

int cmd_envelope(const Settings& s) {
    const sp::EnvelopeReport e = sp::find_envelope_M(s.params, s.sieve);
    if (s.format == "json")
        emit(s, dump(sp::to_json(e)));
    else if (s.format == "csv")
        emit(s, sp::envelope_csv(e));
    else
        emit(s, sp::envelope_table(e));
    return kExitOk;
}

int cmd_lemma(const Settings& s, const std::vector<std::uint64_t>& triple) {
    if (!triple.empty()) {
        if (triple.size() != 5) throw UsageError("--triple takes five integers: p1 p2 p3 h k");
        const sp::TripleCertificate c = sp::check_triple(triple[0], triple[1], triple[2], triple[3], triple[4]);
        sp::LemmaFindings f;
        f.ray = sp::RaySpec::make(s.params.y, s.gamma, s.tolerance);
        f.certificates.push_back(c);
        f.certificates_failed = c.exact_inequality_holds ? 0 : 1;
        if (s.format == "json")
            emit(s, dump(sp::to_json(f)));
        else if (s.format == "csv")
            emit(s, sp::lemma_csv(f));
        else
            emit(s, sp::lemma_table(f));
        return c.exact_inequality_holds ? kExitOk : kExitRedFlag;
    }
    const sp::RaySpec ray = sp::RaySpec::make(s.params.y, s.gamma, s.tolerance);
    const sp::LemmaFindings f = sp::run_lemma(ray, s.sieve);
    if (s.format == "json")
        emit(s, dump(sp::to_json(f)));
    else if (s.format == "csv")
        emit(s, sp::lemma_csv(f));
    else
        emit(s, sp::lemma_table(f));
    return f.certificates_failed > 0 ? kExitRedFlag : kExitOk;
}

int cmd_report(Settings s) {
    sp::RunOptions opts = run_options(s);
    opts.ray = sp::RaySpec::make(s.params.y, s.gamma, s.tolerance);
    const sp::RunReport r = sp::run(s.params, s.sieve, opts);
    emit(s, dump(sp::to_json(r, s.timings)));
    warn_red_flag(r);
    return r.red_flag ? kExitRedFlag : kExitOk;
}

int fail(int code, const std::string& what) {
    std::cerr << "sector-primes: " << what << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sector sums of prime reciprocals, shell bounds and ray certificates"};
    app.set_version_flag("--version", std::string(sp::version()));
    app.require_subcommand(1);

    Flags f;
    CLI::App* sum = app.add_subcommand("sum", "sector sums and per-decade growth");
    CLI::App* shells = app.add_subcommand("shells", "per-shell counts and bound verdicts");
    CLI::App* envelope = app.add_subcommand("envelope", "empirical prime-counting envelope threshold");
    CLI::App* lemma = app.add_subcommand("lemma", "ray scan and exact triple certificates");
    CLI::App* report = app.add_subcommand("report", "everything, as one JSON document");
    for (CLI::App* cmd : {sum, shells, envelope, lemma, report}) add_common(cmd, f);
    for (CLI::App* cmd : {sum, shells, report}) cmd->add_option("--checkpoint", f.checkpoint, "resume token path");
    for (CLI::App* cmd : {lemma, report}) {
        cmd->add_option("--tolerance", f.tolerance, "ray half-width in (0, pi] (default 1e-3)");
        cmd->add_option("--gamma", f.gamma, "ray offset in [0, 2pi) (default 0)");
    }
    lemma->add_option("--triple", f.triple, "check one triple: p1 p2 p3 h k")->expected(5);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Settings s = resolve(f);
        if (*sum) return cmd_sum(s);
        if (*shells) return cmd_shells(s);
        if (*envelope) return cmd_envelope(s);
        if (*lemma) return cmd_lemma(s, f.triple);
        return cmd_report(s);
    } catch (const UsageError& e) {
        return fail(kExitUsage, e.what());
    } catch (const sp::DomainError& e) {
        return fail(kExitUsage, e.what());
    } catch (const sp::ConfigError& e) {
        return fail(kExitUsage, e.what());
    } catch (const sp::ValidationError& e) {
        return fail(kExitUsage, e.what());
    } catch (const sp::PreconditionError& e) {
        return fail(kExitUsage, e.what());
    } catch (const sp::ResumeError& e) {
        const int code = e.kind() == sp::ResumeError::Kind::Corrupt ? kExitIo : kExitUsage;
        return fail(code, e.what());
    } catch (const IoError& e) {
        return fail(kExitIo, e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(kExitIo, std::string(e.what()));
    } catch (const std::exception& e) {
        return fail(kExitRedFlag, std::string("internal error: ") + e.what());
    }
}
