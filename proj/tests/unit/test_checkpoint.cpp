#include "doctest.h"

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "sector_primes/checkpoint.hpp"
#include "sector_primes/errors.hpp"
#include "sector_primes/pipeline.hpp"

using namespace sector_primes;
namespace fs = std::filesystem;

namespace {

SieveConfig make(std::uint64_t limit, std::uint64_t segment_size = 8192, unsigned workers = 1) {
    SieveConfig c;
    c.limit = limit;
    c.segment_size = segment_size;
    c.worker_count = workers;
    return c;
}

const SectorParams kDesk = SectorParams::make(10.0, 0.0, 0.5);

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("sp_ckpt_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunState full_run_state(const SectorParams& params, const SieveConfig& config) {
    SectorAccumulator acc(params);
    EnvelopeTracker env(params);
    sieve_stream(config, [&](const Segment& s) {
        acc.consume(s);
        env.observe(s);
    });
    return {acc.state(), env.state()};
}

}  // namespace

TEST_CASE("encode/decode round trip") {
    SieveConfig config = make(300'000, 512);
    const RunState state = full_run_state(kDesk, config);
    const ResumeToken token = checkpoint(kDesk, config.segment_span(), state);
    const std::vector<std::uint8_t> bytes = encode(token);
    REQUIRE(bytes.size() > 38);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SPRM");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    const ResumeToken back = decode(bytes);
    CHECK(back.state == state);
    CHECK(back.params_digest == params_digest(kDesk));
    CHECK(back.segment_span == config.segment_span());
    CHECK(encode(back) == bytes);
}

TEST_CASE("resuming at every segment boundary is bit-identical") {
    const SieveConfig config = make(200'000, 256);
    const RunState expected = full_run_state(kDesk, config);
    const std::uint64_t segments = config.segment_count();
    // The last segment ends at the limit; extending past it is covered below.
    for (std::uint64_t stop = 0; stop + 1 < segments; stop += 3) {
        SectorAccumulator acc(kDesk);
        EnvelopeTracker env(kDesk);
        try {
            sieve_stream(config, [&](const Segment& s) {
                acc.consume(s);
                env.observe(s);
                if (s.index == stop) throw std::runtime_error("stop");
            });
        } catch (const std::runtime_error&) {
        }
        const auto bytes = encode(checkpoint(kDesk, config.segment_span(), {acc.state(), env.state()}));
        const ResumeToken token = decode(bytes);
        CHECK(token.segment_index == stop + 1);
        const RunState state = resume(token, kDesk, config);

        SectorAccumulator acc2(kDesk);
        EnvelopeTracker env2(kDesk);
        acc2.restore(state.accumulator);
        env2.restore(state.envelope);
        sieve_stream(
            config,
            [&](const Segment& s) {
                acc2.consume(s);
                env2.observe(s);
            },
            token.segment_index);
        REQUIRE(RunState{acc2.state(), env2.state()} == expected);
    }
}

TEST_CASE("resume from a shorter run and extend the limit") {
    TempDir dir;
    const fs::path file = dir.path / "run.sprm";
    RunOptions opts;
    opts.checkpoint_path = file;
    opts.checkpoint_every = 5;

    const RunReport first = run(kDesk, make(1'000'000), opts);
    REQUIRE(fs::exists(file));
    CHECK(first.sums.count_all == 78498);
    const RunReport resumed = run(kDesk, make(10'000'000), opts);
    const RunReport direct = run(kDesk, make(10'000'000));

    CHECK(resumed.sums == direct.sums);
    CHECK(resumed.shells == direct.shells);
    CHECK(resumed.decades == direct.decades);
    CHECK(resumed.envelope == direct.envelope);
    CHECK(to_json(resumed, false) == to_json(direct, false));
}

TEST_CASE("refusals") {
    const SieveConfig config = make(100'000, 512);
    const ResumeToken token = checkpoint(kDesk, config.segment_span(), full_run_state(kDesk, make(50'000, 512)));

    SUBCASE("altered y") {
        try {
            resume(token, SectorParams::make(10.5, 0.0, 0.5), config);
            FAIL("expected a mismatch");
        } catch (const ResumeError& e) {
            CHECK(e.kind() == ResumeError::Kind::ParamMismatch);
        }
    }
    SUBCASE("different segment grid") {
        try {
            resume(token, kDesk, make(100'000, 1024));
            FAIL("expected an alignment error");
        } catch (const ResumeError& e) {
            CHECK(e.kind() == ResumeError::Kind::SegmentAlignment);
        }
    }
    SUBCASE("token beyond the new limit") {
        try {
            resume(token, kDesk, make(10'000, 512));
            FAIL("expected an alignment error");
        } catch (const ResumeError& e) {
            CHECK(e.kind() == ResumeError::Kind::SegmentAlignment);
        }
    }
    SUBCASE("corrupt bytes") {
        auto bytes = encode(token);
        auto truncated = bytes;
        truncated.resize(bytes.size() / 2);
        auto bad_magic = bytes;
        bad_magic[0] = 'X';
        auto bad_version = bytes;
        bad_version[4] = 9;
        auto trailing = bytes;
        trailing.push_back(0);
        for (const auto& b : {truncated, bad_magic, bad_version, trailing}) {
            try {
                decode(b);
                FAIL("expected corrupt");
            } catch (const ResumeError& e) {
                CHECK(e.kind() == ResumeError::Kind::Corrupt);
            }
        }
    }
}

TEST_CASE("token files") {
    TempDir dir;
    const ResumeToken token = checkpoint(kDesk, 8192, full_run_state(kDesk, make(1000, 512)));
    write_token(dir.path / "t.sprm", token);
    CHECK(encode(read_token(dir.path / "t.sprm")) == encode(token));
    CHECK_THROWS_AS(read_token(dir.path / "missing.sprm"), fs::filesystem_error);
    CHECK_THROWS_AS(write_token(dir.path / "no" / "such" / "dir" / "t.sprm", token), fs::filesystem_error);
}
