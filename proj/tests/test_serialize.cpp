#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "danlab/cli_runner.hpp"
#include "danlab/schema_check.hpp"
#include "danlab/serialize.hpp"
#include "helpers.hpp"

using namespace danlab;

namespace {

const Surface<ExactComplex>& quadric() {
    static Surface<ExactComplex> s(Polynomial<ExactComplex>::parse("-1,0,1"));
    return s;
}

Json load_schema(const char* name) {
    std::ifstream in(std::string(DANLAB_SCHEMA_DIR) + "/" + name);
    REQUIRE_MESSAGE(in.good(), "schema file missing: " << name);
    Json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("word JSON round-trip is bit-exact for exact parameters") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto w = testing::random_exact_word(rng, 10);
        const Json j = word_to_json(w);
        const auto back = word_from_json<ExactComplex>(j);
        CHECK(back == w);
        CHECK(word_to_json(back) == j);
    }
}

TEST_CASE("word JSON matches the documented record shapes") {
    Word<ExactComplex> w;
    w.gens = {Generator<ExactComplex>::flow_y(ExactComplex(mpq_class(1, 2))),
              Generator<ExactComplex>::replica_y(Polynomial<ExactComplex>::parse("0,1"),
                                                 ExactComplex(-1)),
              Generator<ExactComplex>::swap()};
    const Json j = word_to_json(w);
    CHECK(j[0] == Json{{"kind", "FlowY"}, {"t", "1/2"}});
    CHECK(j[1] == Json{{"kind", "ReplicaY"}, {"h", "0,1"}, {"t", "-1"}});
    CHECK(j[2] == Json{{"kind", "Swap"}});
    std::string err;
    CHECK_MESSAGE(schema_validate(j, load_schema("word.schema.json"), &err), err);
}

TEST_CASE("approximate word round-trip through shortest decimals") {
    Rng rng(14);
    Word<Complex> w;
    for (int i = 0; i < 10; ++i) w.gens.push_back(Generator<Complex>::flow_y(rng.gaussian()));
    const auto back = word_from_json<Complex>(word_to_json(w));
    CHECK(back == w);
}

TEST_CASE("discrete set JSON round-trip") {
    const auto& s = quadric();
    Rng rng(15);
    std::vector<SurfacePoint<ExactComplex>> pts;
    for (int i = 0; i < 6; ++i) {
        auto p = testing::random_exact_point(s, rng);
        bool dup = false;
        for (const auto& q : pts)
            if (q == p) dup = true;
        if (!dup) pts.push_back(p);
    }
    const DiscreteSet<ExactComplex> d(s, pts);
    const Json j = set_to_json(d);
    std::string err;
    CHECK_MESSAGE(schema_validate(j, load_schema("discrete_set.schema.json"), &err), err);
    const auto back = set_from_json(s, j);
    REQUIRE(back.size() == d.size());
    for (size_t i = 0; i < d.size(); ++i) CHECK(back[i] == d[i]);
}

TEST_CASE("schedule JSON round-trip") {
    const auto sched = make_schedule({1.0, 2.5, 19.0}, 1.0);
    const Json j = schedule_to_json(sched);
    std::string err;
    CHECK_MESSAGE(schema_validate(j, load_schema("schedule.schema.json"), &err), err);
    const auto back = schedule_from_json(j);
    CHECK(back.radii == sched.radii);
    CHECK(back.r_ball == sched.r_ball);
    CHECK(back.deltas == sched.deltas);
}

TEST_CASE("every JSON command output validates against its published schema") {
    using namespace danlab::cli;
    auto validate_output = [&](RunConfig cfg, const char* schema_name) {
        const RunResult res = run_command(cfg);
        REQUIRE(res.exit_code == 0);
        const Json doc = Json::parse(res.output);
        std::string err;
        CHECK_MESSAGE(schema_validate(doc, load_schema(schema_name), &err), err);
        CHECK_MESSAGE(schema_validate(doc.at("config"), load_schema("config.schema.json"), &err),
                      err);
    };

    RunConfig verify;
    verify.command = Command::verify_surface;
    validate_output(verify, "verify_surface.schema.json");

    RunConfig threshold;
    threshold.command = Command::threshold;
    threshold.nmax = 2;
    validate_output(threshold, "threshold.schema.json");

    RunConfig toy;
    toy.command = Command::toy;
    toy.samples = 2000;
    toy.grid = {10.0, 100.0};
    validate_output(toy, "toy.schema.json");

    const char* set_json = R"({"points": [["1","-1","0"], ["-1/2","2","0"]], "zeta": [40, 40]})";
    RunConfig spread;
    spread.command = Command::spread_set;
    spread.backend = Backend::exact;
    spread.input_json = set_json;
    validate_output(spread, "spread_set.schema.json");

    RunConfig split_cfg;
    split_cfg.command = Command::split;
    split_cfg.backend = Backend::exact;
    split_cfg.input_json = set_json;
    validate_output(split_cfg, "split.schema.json");

    RunConfig map_cfg;
    map_cfg.command = Command::map_tame;
    map_cfg.backend = Backend::exact;
    map_cfg.input_json = R"({"D": [["1","-1","0"]], "Dt": [["0","-1","1"]], "map": [0]})";
    validate_output(map_cfg, "map_tame.schema.json");

    RunConfig rand_cfg;
    rand_cfg.command = Command::randomize_projection;
    rand_cfg.backend = Backend::exact;
    rand_cfg.input_json = R"({"points": [["5","0","1"], ["5","0","-1"]]})";
    validate_output(rand_cfg, "randomize_projection.schema.json");

    RunConfig pre_cfg;
    pre_cfg.command = Command::prescribe;
    pre_cfg.backend = Backend::exact;
    pre_cfg.input_json = R"({"points": [["1","-1","0"]], "targets": ["0"]})";
    validate_output(pre_cfg, "prescribe.schema.json");

    RunConfig interp_cfg;
    interp_cfg.command = Command::interpolate;
    interp_cfg.backend = Backend::exact;
    interp_cfg.input_json = R"({"nodes": [["0","1"], ["1","2"], ["2","5"]]})";
    const RunResult interp_res = run_command(interp_cfg);
    REQUIRE(interp_res.exit_code == 0);
    const Json interp_doc = Json::parse(interp_res.output);
    std::string err;
    CHECK_MESSAGE(schema_validate(interp_doc, load_schema("interpolate.schema.json"), &err), err);
    CHECK(interp_doc["coeffs"] == "1,0,1");
}

TEST_CASE("witness JSON matches its schema") {
    const auto& s = quadric();
    const DiscreteSet<ExactComplex> d(
        s, {s.point(ExactComplex(1), ExactComplex(-1), ExactComplex(0))});
    const auto wit = spread_past(s, d, {25.0});
    std::string err;
    CHECK_MESSAGE(schema_validate(witness_to_json(wit), load_schema("witness.schema.json"), &err),
                  err);
}

TEST_CASE("schema checker rejects structural violations") {
    const Json schema = {{"type", "object"},
                         {"required", {"radii"}},
                         {"properties", {{"radii", {{"type", "array"}, {"items", {{"type", "number"}}}}}}}};
    std::string err;
    CHECK(schema_validate(Json{{"radii", {1.0, 2.0}}}, schema, &err));
    CHECK_FALSE(schema_validate(Json{{"other", 1}}, schema, &err));
    CHECK(err.find("radii") != std::string::npos);
    CHECK_FALSE(schema_validate(Json{{"radii", {"x"}}}, schema, &err));
}
