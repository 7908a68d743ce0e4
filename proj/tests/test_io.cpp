#include <doctest.h>

#include <sstream>

#include "bulgsol/io.hpp"

using namespace bulgsol;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/10") == Rational(3, 10));
    CHECK(Rational::parse("1") == Rational(1, 1));
    CHECK(Rational::parse("6/20") == Rational(3, 10));  // normalized
    CHECK(throws_code(ErrorCode::BadInput, [] { Rational::parse("x/y"); }));
    CHECK(throws_code(ErrorCode::BadInput, [] { Rational(1, 0); }));
}

TEST_CASE("partition json round trip") {
    const Partition p = Partition::validate({7, 3, 2});
    CHECK(partition_to_json(p).dump() == R"({"parts":[7,3,2]})");
    CHECK(partition_from_json(partition_to_json(p)) == p);
    CHECK(throws_code(ErrorCode::NotSorted, [] { partition_from_json(Json{{"parts", {3, 5}}}); }));
    CHECK(throws_code(ErrorCode::BadInput, [] { partition_from_json(Json{{"piles", {3}}}); }));
    for_each_partition(12, [](const std::vector<std::int64_t>& parts) {
        const Partition q = Partition::validate(parts);
        CHECK(partition_from_json(partition_to_json(q)) == q);
    });
}

TEST_CASE("rule json round trip") {
    const auto q = SigmaRule::q_proportion(Rational(3, 10));
    const Json jq = rule_to_json(q);
    CHECK(jq["type"] == "q");
    CHECK(jq["q"] == "3/10");
    CHECK(rule_from_json(jq).sigma(10) == 3);

    const auto levels = SigmaRule::levels({1, 4}, 7);
    const Json jl = rule_to_json(levels);
    CHECK(jl["H"] == Json::array({1, 4}));
    CHECK(jl["h_max"] == 7);
    CHECK(rule_from_json(jl).sigma(7) == 2);

    const auto table = SigmaRule::table({1, 1, 3});
    const Json jt = rule_to_json(table);
    CHECK(jt["sigma"] == Json::array({1, 1, 3}));
    CHECK(rule_from_json(jt).sigma(3) == 3);

    CHECK(throws_code(ErrorCode::BadInput, [] { rule_from_json(Json{{"type", "unknown"}}); }));
}

TEST_CASE("rule literals") {
    CHECK(parse_rule_spec("q:3/10").sigma(10) == 3);
    CHECK(parse_rule_spec("levels:1,4@7").sigma(7) == 2);
    CHECK(parse_rule_spec("table:1,1,2").sigma(3) == 2);
    CHECK(throws_code(ErrorCode::BadInput, [] { parse_rule_spec("nonsense"); }));
    CHECK(throws_code(ErrorCode::BadInput, [] { parse_rule_spec("levels:1,4"); }));
}

TEST_CASE("partition literals") {
    CHECK(parse_partition_literal("7,3,2") == Partition::validate({7, 3, 2}));
    CHECK(parse_partition_literal("") == Partition());
    CHECK(throws_code(ErrorCode::NotSorted, [] { parse_partition_literal("3,7"); }));
}

TEST_CASE("cycle json layout") {
    CycleInfo info;
    info.tail_length = 2;
    info.cycle_length = 1;
    info.cycle = {Partition::validate({2, 1})};
    CHECK(cycle_to_json(info).dump() == R"({"cycle":[[2,1]],"period":1,"tail":2})");
}

TEST_CASE("shape json") {
    CHECK(shape_to_json(LimitShape::triangle()).dump() == R"({"kind":"triangle"})");
    const Json j = shape_to_json(interpolating_shape(1.0));
    CHECK(j["kind"] == "interpolating");
    CHECK(j["widths"].size() == 2);
    CHECK(shape_from_json(j).sections == 2);
    CHECK(shape_from_json(Json{{"kind", "exponential"}}).kind == ShapeKind::Exponential);
}

TEST_CASE("csv writers") {
    std::ostringstream trace_os;
    write_trace_csv(trace_os, {{1, 1}, {1, 0}, {0, 0}});
    CHECK(trace_os.str() == "t,surplus,deficit\n0,1,1\n1,1,0\n2,0,0\n");

    const Partition p = Partition::validate({4, 4, 2, 1, 1});
    std::ostringstream boundary_os;
    write_boundary_csv(boundary_os, p, 12, {0.0, 1.0 / 3.0, 2.0 / 3.0});
    std::string line;
    std::istringstream in(boundary_os.str());
    std::getline(in, line);
    CHECK(line == "x,y");
    std::getline(in, line);
    CHECK(line == "0,1");

    const LimitShape tri = LimitShape::triangle();
    const auto dist = empirical_distance(p, 12, tri, {0.5, 1.0});
    std::ostringstream dist_os;
    write_distance_csv(dist_os, p, 12, tri, dist);
    const std::string text = dist_os.str();
    CHECK(text.rfind("x,empirical,analytic,abs_error\n", 0) == 0);
    CHECK(text.find("# sup_error=") != std::string::npos);
}

TEST_CASE("trajectory jsonl lines parse back") {
    const auto traj = play_trajectory(SigmaRule::q_proportion(Rational(3, 10)),
                                      Partition::validate({6, 2, 2, 1}), 4, 1);
    std::ostringstream os;
    write_trajectory_jsonl(os, traj);
    std::istringstream in(os.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const Json j = Json::parse(line);
        CHECK(j.contains("t"));
        (void)Partition::validate(j["parts"].get<std::vector<std::int64_t>>());
        ++rows;
    }
    CHECK(rows == 5);
}
