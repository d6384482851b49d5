#include "sector_primes/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sector_primes {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

ShellKind kind_from(const std::string& s) {
    if (s == "A") return ShellKind::A;
    if (s == "B") return ShellKind::B;
    throw std::invalid_argument("unknown shell kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
    if (s == "holds") return Verdict::Holds;
    if (s == "violated") return Verdict::Violated;
    if (s == "n/a") return Verdict::NotApplicable;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

json shell_json(const ShellStats& s) {
    return json{{"kind", to_string(s.kind)},
                {"n", s.n},
                {"lo", s.lo},
                {"hi", s.hi},
                {"complete", s.complete},
                {"above_M", s.above_M},
                {"count", s.count},
                {"count_bound", opt(s.count_bound)},
                {"recip_sum", s.recip_sum},
                {"recip_bound", opt(s.recip_bound)},
                {"count_ok", to_string(s.count_ok)},
                {"recip_ok", to_string(s.recip_ok)}};
}

ShellStats shell_from(const json& j) {
    ShellStats s;
    s.kind = kind_from(j.at("kind").get<std::string>());
    s.n = j.at("n").get<std::uint64_t>();
    s.lo = j.at("lo").get<double>();
    s.hi = j.at("hi").get<double>();
    s.complete = j.at("complete").get<bool>();
    s.above_M = j.at("above_M").get<bool>();
    s.count = j.at("count").get<std::uint64_t>();
    s.count_bound = get_opt<double>(j, "count_bound");
    s.recip_sum = j.at("recip_sum").get<double>();
    s.recip_bound = get_opt<double>(j, "recip_bound");
    s.count_ok = verdict_from(j.at("count_ok").get<std::string>());
    s.recip_ok = verdict_from(j.at("recip_ok").get<std::string>());
    return s;
}

EnvelopeReport envelope_from(const json& j) {
    EnvelopeReport e;
    e.beta_over_2y = j.at("beta_over_2y").get<double>();
    e.lower_factor = j.at("lower_factor").get<double>();
    e.upper_factor = j.at("upper_factor").get<double>();
    e.limit = j.at("limit").get<std::uint64_t>();
    e.M_found = get_opt<double>(j, "M_found");
    e.max_upper_violation_x = get_opt<double>(j, "max_upper_violation_x");
    e.max_lower_violation_x = get_opt<double>(j, "max_lower_violation_x");
    e.samples_checked = j.at("samples_checked").get<std::uint64_t>();
    e.min_upper_margin = get_opt<double>(j, "min_upper_margin");
    e.min_lower_margin = get_opt<double>(j, "min_lower_margin");
    return e;
}

LemmaFindings lemma_from(const json& j) {
    LemmaFindings f;
    const json& ray = j.at("ray");
    f.ray = RaySpec{ray.at("y").get<double>(), ray.at("gamma").get<double>(), ray.at("tolerance").get<double>()};
    f.limit = j.at("limit").get<std::uint64_t>();
    for (const json& h : j.at("hits"))
        f.hits.push_back(RayHit{h.at("p").get<std::uint64_t>(), h.at("n").get<std::int64_t>(),
                                h.at("phase_distance").get<double>()});
    for (const json& c : j.at("certificates")) {
        TripleCertificate t;
        t.p1 = c.at("p1").get<std::uint64_t>();
        t.p2 = c.at("p2").get<std::uint64_t>();
        t.p3 = c.at("p3").get<std::uint64_t>();
        t.h = c.at("h").get<std::uint64_t>();
        t.k = c.at("k").get<std::uint64_t>();
        t.residual = c.at("residual").get<double>();
        t.exact_inequality_holds = c.at("exact_inequality_holds").get<bool>();
        t.lhs_digits = c.at("lhs").get<std::string>();
        t.rhs_digits = c.at("rhs").get<std::string>();
        f.certificates.push_back(std::move(t));
    }
    f.certificates_failed = j.at("certificates_failed").get<std::uint64_t>();
    return f;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, end);
}

std::string shells_csv(const std::vector<ShellStats>& shells) {
    std::string out = kShellCsvHeader;
    out += '\n';
    for (const ShellStats& s : shells) {
        out += to_string(s.kind);
        out += ',' + std::to_string(s.n);
        out += ',' + format_double(s.lo);
        out += ',' + format_double(s.hi);
        out += s.complete ? ",true" : ",false";
        out += s.above_M ? ",true" : ",false";
        out += ',' + std::to_string(s.count);
        out += ',' + opt_field(s.count_bound);
        out += ',' + format_double(s.recip_sum);
        out += ',' + opt_field(s.recip_bound);
        out += ',';
        out += to_string(s.count_ok);
        out += ',';
        out += to_string(s.recip_ok);
        out += '\n';
    }
    return out;
}

std::string decades_csv(const std::vector<DecadeRow>& decades, const std::vector<DecadeGrowth>& growth) {
    std::string out = "x,sum_plus,sum_minus,sum_all,count_all,plus_increment,predicted_plus,minus_increment,predicted_minus\n";
    for (std::size_t i = 0; i < decades.size(); ++i) {
        const DecadeRow& r = decades[i];
        out += std::to_string(r.x) + ',' + format_double(r.sum_plus) + ',' + format_double(r.sum_minus) + ',' +
               format_double(r.sum_all) + ',' + std::to_string(r.count_all);
        const DecadeGrowth* g = nullptr;
        for (const DecadeGrowth& candidate : growth)
            if (candidate.to_x == r.x) g = &candidate;
        if (g != nullptr)
            out += ',' + format_double(g->plus_increment) + ',' + format_double(g->predicted_plus) + ',' +
                   format_double(g->minus_increment) + ',' + format_double(g->predicted_minus);
        else
            out += ",,,,";
        out += '\n';
    }
    return out;
}

std::string envelope_csv(const EnvelopeReport& e) {
    std::string out =
        "beta_over_2y,lower_factor,upper_factor,limit,M_found,max_upper_violation_x,max_lower_violation_x,"
        "samples_checked,min_upper_margin,min_lower_margin\n";
    out += format_double(e.beta_over_2y) + ',' + format_double(e.lower_factor) + ',' +
           format_double(e.upper_factor) + ',' + std::to_string(e.limit) + ',' + opt_field(e.M_found) + ',' +
           opt_field(e.max_upper_violation_x) + ',' + opt_field(e.max_lower_violation_x) + ',' +
           std::to_string(e.samples_checked) + ',' + opt_field(e.min_upper_margin) + ',' +
           opt_field(e.min_lower_margin) + '\n';
    return out;
}

std::string lemma_csv(const LemmaFindings& f) {
    // One table for both record types; columns that do not apply stay empty.
    std::string out = "record,p,n,phase_distance,p1,p2,p3,h,k,residual,exact_inequality_holds\n";
    for (const RayHit& h : f.hits)
        out += "hit," + std::to_string(h.p) + ',' + std::to_string(h.n) + ',' + format_double(h.phase_distance) +
               ",,,,,,,\n";
    for (const TripleCertificate& c : f.certificates)
        out += "triple,,,," + std::to_string(c.p1) + ',' + std::to_string(c.p2) + ',' + std::to_string(c.p3) + ',' +
               std::to_string(c.h) + ',' + std::to_string(c.k) + ',' + format_double(c.residual) + ',' +
               (c.exact_inequality_holds ? "true" : "false") + '\n';
    return out;
}

std::string shells_table(const std::vector<ShellStats>& shells) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-5s %14s %14s %4s %4s %10s %12s %12s %12s %-8s %-8s\n", "kind", "n",
                  "lo", "hi", "cmpl", ">M", "count", "count_bound", "recip_sum", "recip_bound", "count_ok",
                  "recip_ok");
    os << line;
    for (const ShellStats& s : shells) {
        std::snprintf(line, sizeof line, "%-4s %-5llu %14.6g %14.6g %4s %4s %10llu %12s %12.6g %12s %-8s %-8s\n",
                      std::string(to_string(s.kind)).c_str(), static_cast<unsigned long long>(s.n), s.lo, s.hi,
                      s.complete ? "yes" : "no", s.above_M ? "yes" : "no",
                      static_cast<unsigned long long>(s.count),
                      s.count_bound ? format_double(*s.count_bound).substr(0, 12).c_str() : "-", s.recip_sum,
                      s.recip_bound ? format_double(*s.recip_bound).substr(0, 12).c_str() : "-",
                      std::string(to_string(s.count_ok)).c_str(), std::string(to_string(s.recip_ok)).c_str());
        os << line;
    }
    return os.str();
}

std::string sums_table(const RunReport& r) {
    std::ostringstream os;
    os << "y=" << format_double(r.params.y) << " alpha=" << format_double(r.params.alpha)
       << " K=" << format_double(r.params.K) << " beta=" << format_double(r.params.beta)
       << " limit=" << r.config.limit << '\n';
    os << "sum_plus  = " << format_double(r.sums.sum_plus) << "  (" << r.sums.count_plus << " primes)\n";
    os << "sum_minus = " << format_double(r.sums.sum_minus) << "  (" << r.sums.count_minus << " primes)\n";
    os << "sum_all   = " << format_double(r.sums.sum_all) << "  (" << r.sums.count_all << " primes)\n";
    os << "|A\\P+| = " << r.sums.a_not_plus << "  |B\\P-| = " << r.sums.b_not_minus
       << "  boundary-flagged = " << r.sums.boundary_flagged << '\n';
    char line[200];
    std::snprintf(line, sizeof line, "\n%14s %22s %22s %22s %22s\n", "x", "sum_plus", "sum_minus", "sum_all",
                  "predicted_plus_incr");
    os << line;
    for (const DecadeRow& d : r.decades) {
        std::string predicted = "-";
        for (const DecadeGrowth& g : r.growth)
            if (g.to_x == d.x) predicted = format_double(g.predicted_plus);
        std::snprintf(line, sizeof line, "%14llu %22s %22s %22s %22s\n", static_cast<unsigned long long>(d.x),
                      format_double(d.sum_plus).c_str(), format_double(d.sum_minus).c_str(),
                      format_double(d.sum_all).c_str(), predicted.c_str());
        os << line;
    }
    return os.str();
}

std::string envelope_table(const EnvelopeReport& e) {
    std::ostringstream os;
    os << "band for pi(x) ln x / x: [" << format_double(e.lower_factor) << ", " << format_double(e.upper_factor)
       << "]  (beta/2y = " << format_double(e.beta_over_2y) << ")\n";
    os << "samples checked: " << e.samples_checked << " up to " << e.limit << '\n';
    if (e.M_found) {
        os << "M_found = " << format_double(*e.M_found) << '\n';
        if (e.min_upper_margin) os << "min upper margin above M = " << format_double(*e.min_upper_margin) << '\n';
        if (e.min_lower_margin) os << "min lower margin above M = " << format_double(*e.min_lower_margin) << '\n';
    } else {
        os << "envelope not reached up to " << e.limit << '\n';
    }
    if (e.max_upper_violation_x) os << "last upper violation at x = " << format_double(*e.max_upper_violation_x) << '\n';
    if (e.max_lower_violation_x) os << "last lower violation at x = " << format_double(*e.max_lower_violation_x) << '\n';
    return os.str();
}

std::string lemma_table(const LemmaFindings& f) {
    std::ostringstream os;
    os << "ray y=" << format_double(f.ray.y) << " gamma=" << format_double(f.ray.gamma)
       << " tolerance=" << format_double(f.ray.tolerance) << " limit=" << f.limit << '\n';
    os << f.hits.size() << " hit(s)\n";
    for (const RayHit& h : f.hits)
        os << "  p=" << h.p << " n=" << h.n << " distance=" << format_double(h.phase_distance) << '\n';
    os << f.certificates.size() << " triple certificate(s), " << f.certificates_failed << " failed\n";
    for (const TripleCertificate& c : f.certificates)
        os << "  (" << c.p1 << ',' << c.p2 << ',' << c.p3 << ") h=" << c.h << " k=" << c.k
           << " residual=" << format_double(c.residual) << (c.exact_inequality_holds ? " ok" : " FAILED") << '\n';
    return os.str();
}

json to_json(const EnvelopeReport& e) {
    return json{{"beta_over_2y", e.beta_over_2y},
                {"lower_factor", e.lower_factor},
                {"upper_factor", e.upper_factor},
                {"limit", e.limit},
                {"reached", e.reached()},
                {"M_found", opt(e.M_found)},
                {"max_upper_violation_x", opt(e.max_upper_violation_x)},
                {"max_lower_violation_x", opt(e.max_lower_violation_x)},
                {"samples_checked", e.samples_checked},
                {"min_upper_margin", opt(e.min_upper_margin)},
                {"min_lower_margin", opt(e.min_lower_margin)}};
}

json to_json(const LemmaFindings& f) {
    json hits = json::array();
    for (const RayHit& h : f.hits) hits.push_back({{"p", h.p}, {"n", h.n}, {"phase_distance", h.phase_distance}});
    json certs = json::array();
    for (const TripleCertificate& c : f.certificates)
        certs.push_back({{"p1", c.p1},
                         {"p2", c.p2},
                         {"p3", c.p3},
                         {"h", c.h},
                         {"k", c.k},
                         {"residual", c.residual},
                         {"exact_inequality_holds", c.exact_inequality_holds},
                         {"lhs", c.lhs_digits},
                         {"rhs", c.rhs_digits}});
    return json{{"ray", {{"y", f.ray.y}, {"gamma", f.ray.gamma}, {"tolerance", f.ray.tolerance}}},
                {"limit", f.limit},
                {"hits", std::move(hits)},
                {"certificates", std::move(certs)},
                {"certificates_failed", f.certificates_failed}};
}

json to_json(const RunReport& r, bool with_timings) {
    json shells = json::array();
    for (const ShellStats& s : r.shells) shells.push_back(shell_json(s));

    json exceptions = json::array();
    for (const BoundaryException& e : r.sums.boundary_exceptions)
        exceptions.push_back({{"p", e.p}, {"detail", e.detail}});

    json decades = json::array();
    for (const DecadeRow& d : r.decades)
        decades.push_back({{"x", d.x},
                           {"sum_plus", d.sum_plus},
                           {"sum_minus", d.sum_minus},
                           {"sum_all", d.sum_all},
                           {"count_all", d.count_all}});

    json growth = json::array();
    for (const DecadeGrowth& g : r.growth)
        growth.push_back({{"from_x", g.from_x},
                          {"to_x", g.to_x},
                          {"plus_increment", g.plus_increment},
                          {"minus_increment", g.minus_increment},
                          {"predicted_plus", g.predicted_plus},
                          {"predicted_minus", g.predicted_minus},
                          {"shells_plus", g.shells_plus},
                          {"shells_minus", g.shells_minus}});

    json j{{"schema_version", kSchemaVersion},
           {"version", r.version},
           {"params", {{"y", r.params.y}, {"alpha", r.params.alpha}, {"K", r.params.K}, {"beta", r.params.beta}}},
           {"config",
            {{"limit", r.config.limit},
             {"segment_size", r.config.segment_size},
             {"worker_count", r.config.worker_count}}},
           {"constants", {{"c", r.constants.c}, {"d", r.constants.d}, {"N", opt(r.constants.N)}, {"M", opt(r.constants.M)}}},
           {"envelope", to_json(r.envelope)},
           {"shells", std::move(shells)},
           {"sums",
            {{"sum_plus", r.sums.sum_plus},
             {"sum_minus", r.sums.sum_minus},
             {"sum_all", r.sums.sum_all},
             {"count_plus", r.sums.count_plus},
             {"count_minus", r.sums.count_minus},
             {"count_all", r.sums.count_all},
             {"count_outside_shells", r.sums.count_outside_shells},
             {"a_not_plus", r.sums.a_not_plus},
             {"b_not_minus", r.sums.b_not_minus},
             {"boundary_flagged", r.sums.boundary_flagged},
             {"boundary_exceptions", std::move(exceptions)}}},
           {"decades", std::move(decades)},
           {"growth", std::move(growth)},
           {"lemma_findings", r.lemma_findings ? to_json(*r.lemma_findings) : json(nullptr)},
           {"bound_violations", r.bound_violations},
           {"red_flag", r.red_flag}};
    if (with_timings)
        j["timings"] = {{"sieve_ms", r.timings.sieve_ms},
                        {"finalize_ms", r.timings.finalize_ms},
                        {"lemma_ms", r.timings.lemma_ms},
                        {"total_ms", r.timings.total_ms}};
    return j;
}

RunReport report_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("unsupported RunReport schema_version");
    RunReport r;
    r.version = j.at("version").get<std::string>();
    const json& p = j.at("params");
    r.params = SectorParams{p.at("y").get<double>(), p.at("alpha").get<double>(), p.at("K").get<double>(),
                            p.at("beta").get<double>()};
    const json& c = j.at("config");
    r.config.limit = c.at("limit").get<std::uint64_t>();
    r.config.segment_size = c.at("segment_size").get<std::uint64_t>();
    r.config.worker_count = c.at("worker_count").get<unsigned>();
    const json& k = j.at("constants");
    r.constants.c = k.at("c").get<double>();
    r.constants.d = k.at("d").get<double>();
    r.constants.N = get_opt<std::uint64_t>(k, "N");
    r.constants.M = get_opt<double>(k, "M");
    r.envelope = envelope_from(j.at("envelope"));
    for (const json& s : j.at("shells")) r.shells.push_back(shell_from(s));

    const json& s = j.at("sums");
    r.sums.sum_plus = s.at("sum_plus").get<double>();
    r.sums.sum_minus = s.at("sum_minus").get<double>();
    r.sums.sum_all = s.at("sum_all").get<double>();
    r.sums.count_plus = s.at("count_plus").get<std::uint64_t>();
    r.sums.count_minus = s.at("count_minus").get<std::uint64_t>();
    r.sums.count_all = s.at("count_all").get<std::uint64_t>();
    r.sums.count_outside_shells = s.at("count_outside_shells").get<std::uint64_t>();
    r.sums.a_not_plus = s.at("a_not_plus").get<std::uint64_t>();
    r.sums.b_not_minus = s.at("b_not_minus").get<std::uint64_t>();
    r.sums.boundary_flagged = s.at("boundary_flagged").get<std::uint64_t>();
    for (const json& e : s.at("boundary_exceptions"))
        r.sums.boundary_exceptions.push_back({e.at("p").get<std::uint64_t>(), e.at("detail").get<std::string>()});

    for (const json& d : j.at("decades"))
        r.decades.push_back(DecadeRow{d.at("x").get<std::uint64_t>(), d.at("sum_plus").get<double>(),
                                      d.at("sum_minus").get<double>(), d.at("sum_all").get<double>(),
                                      d.at("count_all").get<std::uint64_t>()});
    for (const json& g : j.at("growth"))
        r.growth.push_back(DecadeGrowth{g.at("from_x").get<std::uint64_t>(), g.at("to_x").get<std::uint64_t>(),
                                        g.at("plus_increment").get<double>(), g.at("minus_increment").get<double>(),
                                        g.at("predicted_plus").get<double>(), g.at("predicted_minus").get<double>(),
                                        g.at("shells_plus").get<std::uint64_t>(),
                                        g.at("shells_minus").get<std::uint64_t>()});
    if (const json& l = j.at("lemma_findings"); !l.is_null()) r.lemma_findings = lemma_from(l);
    r.bound_violations = j.at("bound_violations").get<std::uint64_t>();
    r.red_flag = j.at("red_flag").get<bool>();
    if (j.contains("timings")) {
        const json& t = j.at("timings");
        r.timings = Timings{t.at("sieve_ms").get<double>(), t.at("finalize_ms").get<double>(),
                            t.at("lemma_ms").get<double>(), t.at("total_ms").get<double>()};
    }
    return r;
}

}  // namespace sector_primes
