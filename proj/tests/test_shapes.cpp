#include <doctest.h>

#include <cmath>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/shapes.hpp"
#include "bulgsol/stability.hpp"

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

TEST_CASE("g of z") {
    CHECK(g_of_z(1e-6) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(g_of_z(1.0) == doctest::Approx(1.0));
    CHECK(g_of_z(std::sqrt(3.0)) == doctest::Approx(2.0));
    CHECK(throws_code(ErrorCode::NonPositiveZ, [] { g_of_z(0.0); }));
}

TEST_CASE("z solver") {
    CHECK(solve_z(0.5) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(solve_z(1.0) - std::sqrt(3.0)) < 1e-9);
    CHECK(solve_z(0.02) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(throws_code(ErrorCode::NonPositiveC, [] { solve_z(0.0); }));
    // round trip across magnitudes
    for (double e = -3.0; e <= 3.0; e += 0.25) {
        const double C = std::pow(10.0, e);
        CHECK(g_of_z(solve_z(C)) == doctest::Approx(2.0 * C).epsilon(1e-9));
    }
}

TEST_CASE("interpolating shape for C=1") {
    const LimitShape s = interpolating_shape(1.0);
    CHECK(s.sections == 2);
    CHECK(s.widths[0] == doctest::Approx((3.0 - std::sqrt(3.0)) / 2.0).epsilon(1e-9));
    CHECK(s.widths[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
    CHECK(s.slopes[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(s.slopes[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(shape_eval(s, s.widths[0]) == doctest::Approx(std::sqrt(3.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("small C collapses to the triangle") {
    for (double C : {0.5, 0.125, 0.01}) {
        const LimitShape s = interpolating_shape(C);
        CHECK(s.sections == 1);
        CHECK(s.widths[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(s.slopes[0] == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("shape evaluation endpoints") {
    CHECK(shape_eval(LimitShape::triangle(), 0.0) == doctest::Approx(1.0));
    CHECK(shape_eval(LimitShape::triangle(), 2.0) == doctest::Approx(0.0));
    CHECK(shape_eval(LimitShape::triangle(), 5.0) == 0.0);
    CHECK(shape_eval(LimitShape::exponential(), 0.0) == doctest::Approx(1.0));
    CHECK(shape_eval(LimitShape::exponential(), 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(throws_code(ErrorCode::NegativeX, [] { shape_eval(LimitShape::triangle(), -1.0); }));
}

TEST_CASE("right derivatives") {
    CHECK(shape_right_derivative(LimitShape::triangle(), 1.0) == -0.5);
    CHECK(shape_right_derivative(LimitShape::triangle(), 2.0) == 0.0);
    const LimitShape s = interpolating_shape(1.0);
    CHECK(shape_right_derivative(s, 0.0) == doctest::Approx(-2.0 / 3.0));
    CHECK(shape_right_derivative(s, s.widths[0]) == doctest::Approx(-1.0 / 3.0));  // boundary goes right
    CHECK(shape_right_derivative(s, 10.0) == 0.0);
}

TEST_CASE("regime classification") {
    CHECK(regime_shape(Rational(1, 100), 100).kind == ShapeKind::Triangle);
    CHECK(regime_shape(Rational(1, 32), 1000000).kind == ShapeKind::Exponential);
    const LimitShape mid = regime_shape(Rational(1, 100), 10000);
    CHECK(mid.kind == ShapeKind::Interpolating);
    CHECK(mid.C == doctest::Approx(1.0));
    CHECK(throws_code(ErrorCode::QOutOfRange, [] { regime_shape(Rational(3, 2), 10); }));
}

TEST_CASE("empirical distance on the exact staircase") {
    std::vector<std::int64_t> parts;
    for (std::int64_t v = 1000; v >= 1; --v) parts.push_back(v);
    const Partition p = Partition::validate(parts);
    const LimitShape tri = LimitShape::triangle();
    const auto grid = default_distance_grid(tri, p, p.n());
    const auto dist = empirical_distance(p, p.n(), tri, grid);
    CHECK(dist.sup_error <= 2.0 / 1000.0);
    CHECK(dist.errors.size() == grid.size());
    double max_seen = 0.0;
    for (double e : dist.errors) max_seen = std::max(max_seen, e);
    CHECK(dist.sup_error == max_seen);
}

TEST_CASE("empirical distance validates its grid") {
    const Partition p = Partition::validate({3, 2, 1});
    CHECK(throws_code(ErrorCode::BadInput, [&] {
        (void)empirical_distance(p, 6, LimitShape::triangle(), {0.5, 0.4});
    }));
    CHECK(throws_code(ErrorCode::BadInput, [&] {
        (void)empirical_distance(p, 6, LimitShape::triangle(), {0.0, 0.4});
    }));
    CHECK(throws_code(ErrorCode::EmptyPartition, [&] {
        (void)empirical_distance(Partition(), 6, LimitShape::triangle(), {0.5});
    }));
}

TEST_CASE("shape_to_stable c=0 triangle") {
    const Partition mu = shape_to_stable(LimitShape::triangle(), 0.0, 10000);
    CHECK(mu.n() == 10000);
    CHECK(is_convex(mu));
    CHECK(step(rule_from_convex(mu), mu) == mu);
    // under the construction's own scaling the tail follows the triangle
    const double a = shape_to_stable_scaling(0.0, 10000);
    double sup = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.1 + 1.8 * i / 199.0;
        const auto k = static_cast<std::size_t>(std::ceil(a * x));
        sup = std::max(sup, std::abs(a / 10000.0 * static_cast<double>(mu.part(k - 1)) - (1.0 - 0.5 * x)));
    }
    CHECK(sup <= 0.035);
}

TEST_CASE("shape_to_stable c>0 with matching slope unit") {
    const LimitShape s = interpolating_shape(1.0);
    const double c = s.C / (s.z * s.z);  // slopes are (Z-i) multiples of this
    const Partition mu = shape_to_stable(s, c, 10000);
    CHECK(mu.n() == 10000);
    CHECK(is_convex(mu));
    CHECK(step(rule_from_convex(mu), mu) == mu);

    const Partition tri = shape_to_stable(LimitShape::triangle(), 0.5, 20000);
    CHECK(tri.n() == 20000);
    CHECK(step(rule_from_convex(tri), tri) == tri);
}

TEST_CASE("shape_to_stable degenerate and error cases") {
    CHECK(shape_to_stable(LimitShape::triangle(), 0.0, 1) == Partition::validate({1}));
    CHECK(shape_to_stable(LimitShape::triangle(), 0.5, 1) == Partition::validate({1}));
    CHECK(throws_code(ErrorCode::DerivativeNotMultipleOfC, [] {
        (void)shape_to_stable(LimitShape::triangle(), 0.3, 1000);
    }));
    CHECK(throws_code(ErrorCode::DerivativeNotMultipleOfC, [] {
        (void)shape_to_stable(LimitShape::exponential(), 0.25, 1000);
    }));
    CHECK(throws_code(ErrorCode::NonPositiveC, [] {
        (void)shape_to_stable(LimitShape::triangle(), -0.5, 1000);
    }));
}

TEST_CASE("shape_to_stable c=0 exponential input") {
    const Partition mu = shape_to_stable(LimitShape::exponential(), 0.0, 100000);
    CHECK(mu.n() == 100000);
    CHECK(is_convex(mu));
    CHECK(step(rule_from_convex(mu), mu) == mu);
}

TEST_CASE("large-deck exponential stable distance") {
    // q = n^{-1/4} at n = 1e8: the sigma_bar chain is ~1000 piles, so this
    // stays cheap even though the deck is huge.
    const std::int64_t n = 100000000;
    const auto found = find_stable(SigmaRule::q_proportion(Rational(1, 100)), n);
    const LimitShape expo = LimitShape::exponential();
    const auto dist = empirical_distance(found.config, n, expo, default_distance_grid(expo, found.config, n));
    CHECK(dist.sup_error <= 0.01);
}
