#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bq/diffops.hpp"
#include "bq/io.hpp"
#include "bq/random.hpp"

using namespace bq;

TEST_CASE("biquaternion JSON form round-trips exactly") {
    Rng rng(401);
    for (int i = 0; i < 100; ++i) {
        const Biquaternion f = rng.biquaternion();
        const Json j = to_json(f);
        const Biquaternion back = biquaternion_from_json(j);
        CHECK(back.s == f.s);
        CHECK(back.v.x == f.v.x);
        CHECK(back.v.y == f.v.y);
        CHECK(back.v.z == f.v.z);
        // and through its serialized text
        const Biquaternion back2 = biquaternion_from_json(Json::parse(j.dump()));
        CHECK(back2.s == f.s);
    }
}

TEST_CASE("biquaternion JSON parsing is strict") {
    CHECK_THROWS_AS(biquaternion_from_json(Json::parse(R"({"s":[1,2]})")), parse_error);
    CHECK_THROWS_AS(biquaternion_from_json(Json::parse(R"({"s":[1,2],"v":[[1,2],[3,4]]})")),
                    parse_error);
    CHECK_THROWS_AS(
        biquaternion_from_json(Json::parse(R"({"s":[1,2],"v":[[1,2],[3,4],[5,6]],"w":1})")),
        parse_error);
    CHECK_THROWS_AS(biquaternion_from_json(Json::parse(R"({"s":[1],"v":[[1,2],[3,4],[5,6]]})")),
                    parse_error);
    CHECK_THROWS_AS(biquaternion_from_json(Json::parse(R"({"s":["a",2],"v":[[1,2],[3,4],[5,6]]})")),
                    parse_error);
    CHECK_NOTHROW(
        biquaternion_from_json(Json::parse(R"({"s":[1,2],"v":[[1,2],[3,4],[5,6]]})")));
}

TEST_CASE("point records") {
    const SpacetimePoint p{0.25, {1.0, -2.0, 3.5}};
    const SpacetimePoint q = point_from_json(to_json(p));
    CHECK(q.tau == p.tau);
    CHECK(norm(q.x - p.x) == 0.0);
    CHECK_THROWS_AS(point_from_json(Json::parse(R"({"tau":1})")), parse_error);
    CHECK_THROWS_AS(point_from_json(Json::parse(R"({"tau":1,"x":[1,2]})")), parse_error);
    // the line number travels with the error
    try {
        point_from_json(Json::parse(R"({"x":[1,2,3]})"), 17);
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line == 17);
        CHECK(std::string(e.what()).find("17") != std::string::npos);
    }
}

TEST_CASE("malformed JSON lines carry their line number") {
    CHECK_THROWS_AS(parse_json_line("{not json", 3), parse_error);
    try {
        parse_json_line("{oops", 42);
    } catch (const parse_error& e) {
        CHECK(e.line == 42);
    }
}

TEST_CASE("transform configuration") {
    const Json both = Json::parse(
        R"({"rotor":{"phi":0.5,"e":[0,0,1]},"boost":{"v":0.6,"e":[1,0,0]}})");
    const TransformConfig cfg = transform_from_json(both);
    REQUIRE(cfg.rotor.has_value());
    REQUIRE(cfg.boost.has_value());
    CHECK(cfg.rotor->phi == 0.5);
    CHECK(cfg.boost->velocity() == doctest::Approx(0.6));

    // boost first, then rotor
    const SpacetimePoint p{1.0, {0.0, 0.0, 0.0}};
    const SpacetimePoint expect =
        apply_rotation(*cfg.rotor, apply_boost(*cfg.boost, p));
    const SpacetimePoint got = cfg.apply(p);
    CHECK(std::abs(got.tau - expect.tau) + norm(got.x - expect.x) < 1e-15);

    CHECK_THROWS_AS(transform_from_json(Json::parse(R"({})")), parse_error);
    CHECK_THROWS_AS(transform_from_json(Json::parse(R"({"spin":{}})")), parse_error);
    CHECK_THROWS_AS(transform_from_json(Json::parse(R"({"rotor":{"phi":1}})")), parse_error);
    CHECK_THROWS_AS(transform_from_json(Json::parse(R"({"boost":{"v":1.2,"e":[1,0,0]}})")),
                    invalid_velocity);
}

TEST_CASE("grid files round-trip byte-for-byte") {
    Rng rng(409);
    QuadraticBqField quad;
    quad.c0 = rng.biquaternion();
    for (int a = 0; a < 4; ++a) quad.c1[a] = rng.biquaternion();
    const GridBqField g =
        sample_grid(quad.as_field(), {0.1, {-0.2, 0.0, 0.3}}, {0.1, 0.2, 0.15, 0.25}, {3, 2, 2, 4});

    std::stringstream first;
    write_grid(first, g);
    std::stringstream second;
    write_grid(second, read_grid(first));
    CHECK(first.str() == second.str());

    // header validation
    std::stringstream bad_schema("{\"schema\":\"2\",\"origin\":[0,0,0,0]}\n");
    CHECK_THROWS_AS(read_grid(bad_schema), parse_error);
    std::stringstream truncated;
    write_grid(truncated, g);
    std::string text = truncated.str();
    text.erase(text.rfind('{'));  // drop the last record
    std::stringstream missing(text);
    CHECK_THROWS_AS(read_grid(missing), parse_error);
}

TEST_CASE("source specifications") {
    // gaussian
    const Source g = source_from_json(Json::parse(
        R"({"type":"gaussian","amplitude":{"s":[0,1],"v":[[0,0],[0,0],[0,0]]},
            "center":[0.5,0,0],"sigma":0.3,"t0":0.2,"sigma_t":0.4})"));
    CHECK(g.compact);
    CHECK(g.support_radius == doctest::Approx(1.8));
    CHECK(norm(g.support_center - Vec3{0.5, 0.0, 0.0}) == 0.0);
    CHECK(std::abs(g.field.value({0.2, {0.5, 0.0, 0.0}}).s - kImag) < 1e-15);

    // plane
    const Source p = source_from_json(
        Json::parse(R"({"type":"plane","xi":[0.4,0.2,-0.3],"omega_sign":1,"sign":"+"})"));
    CHECK(!p.compact);
    // the plane-wave source solves the homogeneous equation
    CHECK(norm(bigradient(Sign::plus, p.field, {0.3, {0.1, 0.0, 0.2}})) < 1e-10);

    // table round trip through a file
    Rng rng(419);
    QuadraticBqField quad;
    quad.c0 = rng.biquaternion();
    const GridBqField grid =
        sample_grid(quad.as_field(), {0.0, {0.0, 0.0, 0.0}}, {0.1, 0.1, 0.1, 0.1}, {3, 3, 3, 3});
    const auto path = std::filesystem::temp_directory_path() / "bq_test_grid.jsonl";
    {
        std::ofstream out(path);
        write_grid(out, grid);
    }
    const Source t = source_from_json(Json{{"type", "table"}, {"path", path.string()}});
    CHECK(t.compact);
    CHECK(norm(t.field.value(grid.node(1, 1, 1, 1)) - grid.at(1, 1, 1, 1)) == 0.0);
    // multilinear interpolation is exact on linear fields and vanishes
    // outside the sampled box
    QuadraticBqField lin;
    lin.c0 = rng.biquaternion();
    for (int a = 0; a < 4; ++a) lin.c1[a] = rng.biquaternion();
    const GridBqField lgrid =
        sample_grid(lin.as_field(), {0.0, {0.0, 0.0, 0.0}}, {0.1, 0.1, 0.1, 0.1}, {3, 3, 3, 3});
    const SpacetimePoint mid{0.05, {0.13, 0.02, 0.17}};
    CHECK(norm(interpolate(lgrid, mid) - lin.as_field().value(mid)) < 1e-14);
    CHECK(norm(interpolate(lgrid, {0.05, {0.5, 0.0, 0.0}})) == 0.0);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(source_from_json(Json::parse(R"({"type":"vortex"})")), parse_error);
    CHECK_THROWS_AS(source_from_json(Json::parse(R"({"type":"gaussian","sigma":-1})")),
                    parse_error);
    CHECK_THROWS_AS(source_from_json(Json::parse(R"({"type":"table","path":"/nonexistent"})")),
                    parse_error);
}

TEST_CASE("sampling grids") {
    const Json j = Json::parse(
        R"({"tau":{"min":0.5,"max":1.0,"n":3},"x1":{"min":-1,"max":1,"n":2},
            "x2":{"min":0,"max":0,"n":1},"x3":{"min":2,"max":4,"n":3}})");
    const SampleGrid g = sample_grid_from_json(j, true);
    CHECK(g.size() == 3 * 2 * 1 * 3);
    // row-major, tau slowest
    CHECK(g.point(0).tau == 0.5);
    CHECK(g.point(0).x.z == 2.0);
    CHECK(g.point(1).x.z == 3.0);
    CHECK(g.point(3).x.x == 1.0);   // x3 wraps (3 nodes), then x2 (1), then x1
    CHECK(g.point(6).tau == 0.75);  // a full x-block (2·1·3) advances tau
    CHECK(g.point(6).x.x == -1.0);
    CHECK(g.point(g.size() - 1).tau == 1.0);
    CHECK(g.point(g.size() - 1).x.z == 4.0);

    CHECK_THROWS_AS(sample_grid_from_json(Json::parse(R"({"x1":{"n":2}})"), true), parse_error);
    CHECK_THROWS_AS(
        sample_grid_from_json(Json::parse(R"({"tau":{"min":1,"max":0,"n":3}})"), true),
        parse_error);
}

TEST_CASE("deterministic float formatting") {
    CHECK(fmt_double(0.1) == "0.10000000000000001");
    CHECK(fmt_double(1.25) == "1.25");
    CHECK(fmt_double(-3.0) == "-3");
    // round-trips through strtod
    Rng rng(421);
    for (int i = 0; i < 50; ++i) {
        const double v = rng.symmetric() * std::pow(10.0, rng.in(-8, 8));
        CHECK(std::strtod(fmt_double(v).c_str(), nullptr) == v);
    }
}
