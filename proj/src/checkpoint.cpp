#include "sector_primes/checkpoint.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include "sector_primes/errors.hpp"

namespace sector_primes {

namespace {

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void flag(bool v) { u8(v ? 1 : 0); }
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void str(const std::string& s) {
        u64(s.size());
        out_.insert(out_.end(), s.begin(), s.end());
    }
    void sum(const NeumaierSum& s) {
        f64(s.partial());
        f64(s.compensation());
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    void put(std::uint64_t v, int width) {
        for (int i = 0; i < width; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint64_t u64() { return get(8); }
    double f64() { return std::bit_cast<double>(u64()); }
    bool flag() {
        const std::uint8_t v = u8();
        if (v > 1) throw corrupt("invalid boolean byte");
        return v == 1;
    }
    void bytes(std::span<std::uint8_t> out) {
        need(out.size());
        std::memcpy(out.data(), in_.data() + pos_, out.size());
        pos_ += out.size();
    }
    std::string str() {
        const std::uint64_t n = length();
        std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    NeumaierSum sum() {
        const double partial = f64();
        const double comp = f64();
        return NeumaierSum(partial, comp);
    }
    // Element count that must fit in the remaining bytes at `min_size` each.
    std::uint64_t length(std::uint64_t min_size = 1) {
        const std::uint64_t n = u64();
        if (min_size != 0 && n > (in_.size() - pos_) / min_size) throw corrupt("length field exceeds payload");
        return n;
    }
    bool done() const { return pos_ == in_.size(); }

    static ResumeError corrupt(const std::string& what) {
        return ResumeError(ResumeError::Kind::Corrupt, "corrupt resume token: " + what);
    }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw corrupt("truncated");
    }
    std::uint64_t get(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

void write_cells(Writer& w, const std::vector<ShellCell>& cells) {
    w.u64(cells.size());
    for (const ShellCell& c : cells) {
        w.u64(c.count);
        w.sum(c.recip);
    }
}

std::vector<ShellCell> read_cells(Reader& r) {
    std::vector<ShellCell> cells(r.length(24));
    for (ShellCell& c : cells) {
        c.count = r.u64();
        c.recip = r.sum();
    }
    return cells;
}

void write_state(Writer& w, const RunState& state) {
    const AccumulatorState& a = state.accumulator;
    w.u64(a.next_segment);
    w.u64(a.covered_hi);
    write_cells(w, a.a_shells);
    write_cells(w, a.b_shells);
    w.sum(a.plus);
    w.sum(a.minus);
    w.sum(a.all);
    w.u64(a.count_plus);
    w.u64(a.count_minus);
    w.u64(a.count_all);
    w.u64(a.count_outside_shells);
    w.u64(a.a_not_plus);
    w.u64(a.b_not_minus);
    w.u64(a.boundary_flagged);
    w.u64(a.exceptions.size());
    for (const BoundaryException& e : a.exceptions) {
        w.u64(e.p);
        w.str(e.detail);
    }
    w.u64(a.decades.size());
    for (const DecadeRow& row : a.decades) {
        w.u64(row.x);
        w.f64(row.sum_plus);
        w.f64(row.sum_minus);
        w.f64(row.sum_all);
        w.u64(row.count_all);
    }

    const EnvelopeState& e = state.envelope;
    w.u64(e.prime_count);
    w.u64(e.grid_index);
    w.u64(e.samples);
    w.f64(e.fail_point);
    w.flag(e.has_failure);
    w.flag(e.pending_upper);
    w.f64(e.pending_x);
    w.f64(e.max_upper_violation);
    w.flag(e.has_upper_violation);
    w.f64(e.max_lower_violation);
    w.flag(e.has_lower_violation);
    w.f64(e.upper_margin);
    w.f64(e.lower_margin);
}

RunState read_state(Reader& r) {
    RunState state;
    AccumulatorState& a = state.accumulator;
    a.next_segment = r.u64();
    a.covered_hi = r.u64();
    a.a_shells = read_cells(r);
    a.b_shells = read_cells(r);
    a.plus = r.sum();
    a.minus = r.sum();
    a.all = r.sum();
    a.count_plus = r.u64();
    a.count_minus = r.u64();
    a.count_all = r.u64();
    a.count_outside_shells = r.u64();
    a.a_not_plus = r.u64();
    a.b_not_minus = r.u64();
    a.boundary_flagged = r.u64();
    a.exceptions.resize(r.length(16));
    for (BoundaryException& e : a.exceptions) {
        e.p = r.u64();
        e.detail = r.str();
    }
    a.decades.resize(r.length(40));
    for (DecadeRow& row : a.decades) {
        row.x = r.u64();
        row.sum_plus = r.f64();
        row.sum_minus = r.f64();
        row.sum_all = r.f64();
        row.count_all = r.u64();
    }

    EnvelopeState& e = state.envelope;
    e.prime_count = r.u64();
    e.grid_index = r.u64();
    e.samples = r.u64();
    e.fail_point = r.f64();
    e.has_failure = r.flag();
    e.pending_upper = r.flag();
    e.pending_x = r.f64();
    e.max_upper_violation = r.f64();
    e.has_upper_violation = r.flag();
    e.max_lower_violation = r.f64();
    e.has_lower_violation = r.flag();
    e.upper_margin = r.f64();
    e.lower_margin = r.f64();
    return state;
}

}  // namespace

ParamsDigest params_digest(const SectorParams& params) {
    Writer w;
    for (const char c : std::string_view("sector-primes/params/v1")) w.u8(static_cast<std::uint8_t>(c));
    w.f64(params.y);
    w.f64(params.alpha);
    w.f64(params.K);
    const std::vector<std::uint8_t> message = w.take();

    ParamsDigest digest{};
    unsigned int len = 0;
    if (EVP_Digest(message.data(), message.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != digest.size())
        throw std::runtime_error("SHA-256 digest failed");
    return digest;
}

ResumeToken checkpoint(const SectorParams& params, std::uint64_t segment_span, const RunState& state) {
    ResumeToken token;
    token.params_digest = params_digest(params);
    token.segment_span = segment_span;
    token.segment_index = (state.accumulator.covered_hi + 1) / segment_span;
    token.state = state;
    return token;
}

std::vector<std::uint8_t> encode(const ResumeToken& token) {
    Writer w;
    for (const char c : ResumeToken::kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u16(ResumeToken::kVersion);
    w.bytes(token.params_digest);
    w.u64(token.segment_index);
    w.u64(token.segment_span);
    write_state(w, token.state);
    return w.take();
}

ResumeToken decode(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    for (const char c : ResumeToken::kMagic)
        if (r.u8() != static_cast<std::uint8_t>(c)) throw Reader::corrupt("bad magic");
    if (const std::uint16_t version = r.u16(); version != ResumeToken::kVersion)
        throw Reader::corrupt("unsupported version " + std::to_string(version));
    ResumeToken token;
    r.bytes(token.params_digest);
    token.segment_index = r.u64();
    token.segment_span = r.u64();
    token.state = read_state(r);
    if (!r.done()) throw Reader::corrupt("trailing bytes");
    return token;
}

RunState resume(const ResumeToken& token, const SectorParams& params, const SieveConfig& config) {
    if (token.params_digest != params_digest(params))
        throw ResumeError(ResumeError::Kind::ParamMismatch,
                          "resume token was written for different (y, alpha, K) parameters");
    if (token.segment_span != config.segment_span())
        throw ResumeError(ResumeError::Kind::SegmentAlignment,
                          "resume token segment span " + std::to_string(token.segment_span) +
                              " does not match the configured span " +
                              std::to_string(config.segment_span()) + " (segment_size differs)");
    const std::uint64_t covered = token.state.accumulator.covered_hi;
    if (token.segment_index != (covered + 1) / token.segment_span)
        throw ResumeError(ResumeError::Kind::SegmentAlignment,
                          "resume token segment index is not aligned with its covered range");
    if (covered > config.limit)
        throw ResumeError(ResumeError::Kind::SegmentAlignment,
                          "resume token already covers primes up to " + std::to_string(covered) +
                              ", beyond limit " + std::to_string(config.limit));
    return token.state;
}

void write_token(const std::filesystem::path& path, const ResumeToken& token) {
    const std::vector<std::uint8_t> bytes = encode(token);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw std::filesystem::filesystem_error("cannot write checkpoint", tmp,
                                                    std::make_error_code(std::errc::io_error));
    }
    std::filesystem::rename(tmp, path);
}

ResumeToken read_token(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::filesystem::filesystem_error("cannot read checkpoint", path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode(bytes);
}

}  // namespace sector_primes
