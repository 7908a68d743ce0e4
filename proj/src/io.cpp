#include "bulgsol/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bulgsol {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::logic_error&) {
            fail(ErrorCode::BadInput, "cannot parse integer '" + item + "'");
        }
    }
    return out;
}

} // namespace

Json partition_to_json(const Partition& p) {
    return Json{{"parts", p.parts()}};
}

Partition partition_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("parts") || !j["parts"].is_array()) {
        fail(ErrorCode::BadInput, "partition JSON must be {\"parts\":[...]}");
    }
    return Partition::validate(j["parts"].get<std::vector<std::int64_t>>());
}

Json rule_to_json(const SigmaRule& rule) {
    switch (rule.kind()) {
    case RuleKind::QProportion:
        return Json{{"type", "q"}, {"q", rule.q().str()}};
    case RuleKind::Table: {
        std::vector<std::int64_t> sigma;
        for (std::int64_t h = 1; h <= rule.h_max(); ++h) sigma.push_back(rule.sigma(h));
        return Json{{"type", "table"}, {"sigma", sigma}};
    }
    case RuleKind::Levels:
        return Json{{"type", "levels"},
                    {"H", picked_levels(rule, rule.h_max())},
                    {"h_max", rule.h_max()}};
    }
    fail(ErrorCode::BadInput, "unknown rule kind");
}

SigmaRule rule_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) fail(ErrorCode::BadInput, "rule JSON needs a type");
    const std::string type = j["type"].get<std::string>();
    if (type == "q") return SigmaRule::q_proportion(Rational::parse(j.at("q").get<std::string>()));
    if (type == "table") return SigmaRule::table(j.at("sigma").get<std::vector<std::int64_t>>());
    if (type == "levels") {
        return SigmaRule::levels(j.at("H").get<std::vector<std::int64_t>>(),
                                 j.at("h_max").get<std::int64_t>());
    }
    fail(ErrorCode::BadInput, "unknown rule type '" + type + "'");
}

Json cycle_to_json(const CycleInfo& info) {
    Json cycle = Json::array();
    for (const auto& p : info.cycle) cycle.push_back(p.parts());
    return Json{{"tail", info.tail_length}, {"period", info.cycle_length}, {"cycle", cycle}};
}

Json shape_to_json(const LimitShape& shape) {
    switch (shape.kind) {
    case ShapeKind::Triangle: return Json{{"kind", "triangle"}};
    case ShapeKind::Exponential: return Json{{"kind", "exponential"}};
    case ShapeKind::Interpolating:
        return Json{{"kind", "interpolating"}, {"C", shape.C},  {"z", shape.z},
                    {"widths", shape.widths},  {"slopes", shape.slopes}};
    }
    fail(ErrorCode::BadInput, "unknown shape kind");
}

LimitShape shape_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "triangle") return LimitShape::triangle();
    if (kind == "exponential") return LimitShape::exponential();
    if (kind == "interpolating") return interpolating_shape(j.at("C").get<double>());
    fail(ErrorCode::BadInput, "unknown shape kind '" + kind + "'");
}

SigmaRule parse_rule_spec(const std::string& text) {
    if (text.rfind("q:", 0) == 0) {
        return SigmaRule::q_proportion(Rational::parse(text.substr(2)));
    }
    if (text.rfind("levels:", 0) == 0) {
        const std::string body = text.substr(7);
        const auto at = body.find('@');
        if (at == std::string::npos) fail(ErrorCode::BadInput, "levels literal needs '@h_max'");
        return SigmaRule::levels(parse_int_list(body.substr(0, at)),
                                 Rational::parse(body.substr(at + 1)).num);
    }
    if (text.rfind("table:", 0) == 0) {
        return SigmaRule::table(parse_int_list(text.substr(6)));
    }
    std::ifstream in(text);
    if (!in) fail(ErrorCode::BadInput, "rule spec '" + text + "' is neither a literal nor a readable file");
    Json j;
    in >> j;
    return rule_from_json(j);
}

Partition parse_partition_literal(const std::string& text) {
    return Partition::validate(parse_int_list(text));
}

void write_trajectory_jsonl(std::ostream& os, const std::vector<TrajectoryEntry>& trajectory) {
    for (const auto& entry : trajectory) {
        Json line{{"t", entry.t}, {"parts", entry.config.parts()}};
        os << line.dump() << '\n';
    }
}

void write_boundary_csv(std::ostream& os, const Partition& p, std::int64_t n,
                        const std::vector<double>& grid) {
    os << "x,y\n";
    for (double x : grid) {
        os << fmt_double(x) << ',' << fmt_double(downscale_boundary(p, n, x)) << '\n';
    }
}

void write_trace_csv(std::ostream& os, const std::vector<std::pair<std::int64_t, std::int64_t>>& trace) {
    os << "t,surplus,deficit\n";
    for (std::size_t t = 0; t < trace.size(); ++t) {
        os << t << ',' << trace[t].first << ',' << trace[t].second << '\n';
    }
}

void write_distance_csv(std::ostream& os, const Partition& p, std::int64_t n, const LimitShape& shape,
                        const ShapeDistance& distance) {
    os << "x,empirical,analytic,abs_error\n";
    for (std::size_t i = 0; i < distance.grid.size(); ++i) {
        const double x = distance.grid[i];
        os << fmt_double(x) << ',' << fmt_double(downscale_boundary(p, n, x)) << ','
           << fmt_double(shape_eval(shape, x)) << ',' << fmt_double(distance.errors[i]) << '\n';
    }
    os << "# sup_error=" << fmt_double(distance.sup_error) << '\n';
}

} // namespace bulgsol
