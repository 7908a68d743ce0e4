#include "bulgsol/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bulgsol {

namespace {

double harmonic(std::int64_t k) {
    double h = 0.0;
    for (std::int64_t j = 1; j <= k; ++j) h += 1.0 / static_cast<double>(j);
    return h;
}

} // namespace

LimitShape LimitShape::triangle() {
    LimitShape s;
    s.kind = ShapeKind::Triangle;
    return s;
}

LimitShape LimitShape::exponential() {
    LimitShape s;
    s.kind = ShapeKind::Exponential;
    return s;
}

double LimitShape::total_width() const {
    switch (kind) {
    case ShapeKind::Triangle: return 2.0;
    case ShapeKind::Exponential: return std::numeric_limits<double>::infinity();
    case ShapeKind::Interpolating: {
        double w = 0.0;
        for (double a : widths) w += a;
        return w;
    }
    }
    return 0.0;
}

double g_of_z(double z) {
    if (z <= 0.0) fail(ErrorCode::NonPositiveZ, "g(z) needs z > 0");
    const std::int64_t Z = static_cast<std::int64_t>(std::ceil(z));
    return (z * z + static_cast<double>(Z) * static_cast<double>(Z)) / static_cast<double>(Z) - harmonic(Z);
}

double solve_z(double C) {
    if (C <= 0.0) fail(ErrorCode::NonPositiveC, "solve_z needs C > 0");
    const double target = 2.0 * C;
    if (target <= 1.0) return std::sqrt(target);  // g(z) = z^2 on (0, 1]
    // g(k) = 2k - H_k at integers; find the first integer at or above target.
    std::int64_t K = 1;
    double h = 1.0;
    while (2.0 * static_cast<double>(K) - h < target) {
        ++K;
        h += 1.0 / static_cast<double>(K);
        if (K > (1LL << 40)) fail(ErrorCode::NoConvergence, "z-equation interval scan ran away");
    }
    double lo = static_cast<double>(K - 1);
    double hi = static_cast<double>(K);
    constexpr double kTol = 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = g_of_z(mid);
        if (std::abs(g - target) <= kTol) return mid;
        if (g < target) lo = mid;
        else hi = mid;
    }
    fail(ErrorCode::NoConvergence, "z-equation bisection did not reach tolerance");
}

LimitShape interpolating_shape(double C) {
    const double z = solve_z(C);
    const std::int64_t Z = static_cast<std::int64_t>(std::ceil(z));
    LimitShape shape;
    shape.kind = ShapeKind::Interpolating;
    shape.C = C;
    shape.z = z;
    shape.sections = Z;
    shape.widths.reserve(static_cast<std::size_t>(Z));
    shape.slopes.reserve(static_cast<std::size_t>(Z));
    shape.widths.push_back((z / C) * (1.0 + z - static_cast<double>(Z)) / static_cast<double>(Z));
    for (std::int64_t k = 1; k < Z; ++k) {
        shape.widths.push_back((z / C) / static_cast<double>(Z - k));
    }
    for (std::int64_t i = 0; i < Z; ++i) {
        shape.slopes.push_back(C * static_cast<double>(Z - i) / (z * z));
    }
    // Height drop and area are identically 1 for this family; anything beyond
    // rounding noise means the solver went wrong.
    double drop = 0.0, area = 0.0, y = 1.0;
    for (std::size_t i = 0; i < shape.widths.size(); ++i) {
        const double y2 = y - shape.slopes[i] * shape.widths[i];
        drop += shape.slopes[i] * shape.widths[i];
        area += shape.widths[i] * 0.5 * (y + y2);
        y = y2;
    }
    if (std::abs(drop - 1.0) > 1e-9 || std::abs(area - 1.0) > 1e-9) {
        fail(ErrorCode::NoConvergence, "interpolating shape failed height/area identities");
    }
    return shape;
}

double shape_eval(const LimitShape& shape, double x) {
    if (x < 0.0) fail(ErrorCode::NegativeX, "shape at x < 0");
    switch (shape.kind) {
    case ShapeKind::Triangle: return std::max(0.0, 1.0 - 0.5 * x);
    case ShapeKind::Exponential: return std::exp(-x);
    case ShapeKind::Interpolating: {
        double y = 1.0;
        for (std::size_t i = 0; i < shape.widths.size(); ++i) {
            if (x <= shape.widths[i]) return std::max(0.0, y - shape.slopes[i] * x);
            x -= shape.widths[i];
            y -= shape.slopes[i] * shape.widths[i];
        }
        return 0.0;
    }
    }
    return 0.0;
}

double shape_right_derivative(const LimitShape& shape, double x) {
    if (x < 0.0) fail(ErrorCode::NegativeX, "shape derivative at x < 0");
    switch (shape.kind) {
    case ShapeKind::Triangle: return x < 2.0 ? -0.5 : 0.0;
    case ShapeKind::Exponential: return -std::exp(-x);
    case ShapeKind::Interpolating: {
        double acc = 0.0;
        for (std::size_t i = 0; i < shape.widths.size(); ++i) {
            acc += shape.widths[i];
            // points on a boundary belong to the right-hand section
            if (x < acc - 1e-12) return -shape.slopes[i];
        }
        return 0.0;
    }
    }
    return 0.0;
}

LimitShape regime_shape(const Rational& q, std::int64_t n, double c_lo, double c_hi) {
    if (q.num <= 0 || Rational(1, 1) < q) fail(ErrorCode::QOutOfRange, "q must lie in (0,1]");
    if (n < 1) fail(ErrorCode::BadInput, "regime needs n >= 1");
    const double qd = q.to_double();
    const double Cn = static_cast<double>(n) * qd * qd;
    if (Cn <= c_lo) return LimitShape::triangle();
    if (Cn >= c_hi) return LimitShape::exponential();
    return interpolating_shape(Cn);
}

ShapeDistance empirical_distance(const Partition& p, std::int64_t n, const LimitShape& shape,
                                 const std::vector<double>& grid) {
    if (p.empty()) fail(ErrorCode::EmptyPartition, "distance from empty partition");
    ShapeDistance out;
    out.grid = grid;
    out.errors.reserve(grid.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        if (x <= 0.0 || (i > 0 && x < prev)) {
            fail(ErrorCode::BadInput, "grid must be ascending and strictly positive");
        }
        prev = x;
        const double err = std::abs(downscale_boundary(p, n, x) - shape_eval(shape, x));
        out.errors.push_back(err);
        out.sup_error = std::max(out.sup_error, err);
    }
    return out;
}

std::vector<double> default_distance_grid(const LimitShape& shape, const Partition& p, std::int64_t n,
                                          std::size_t points) {
    if (p.empty()) fail(ErrorCode::EmptyPartition, "grid for empty partition");
    if (points < 2) fail(ErrorCode::BadInput, "grid needs at least two points");
    double x_end = 0.0;
    switch (shape.kind) {
    case ShapeKind::Triangle: x_end = 1.9; break;
    case ShapeKind::Exponential: x_end = 4.0; break;
    case ShapeKind::Interpolating: x_end = shape.total_width() - 0.1; break;
    }
    const double x0 = 0.1;
    if (x_end <= x0) x_end = 2.0 * x0;
    const double col_width = static_cast<double>(p.lambda1()) / static_cast<double>(n);
    std::vector<double> grid;
    grid.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        double x = x0 + (x_end - x0) * static_cast<double>(i) / static_cast<double>(points - 1);
        const double t = x * static_cast<double>(n) / static_cast<double>(p.lambda1());
        if (std::abs(t - std::round(t)) < 1e-9) x += 0.5 * col_width;
        grid.push_back(x);
    }
    return grid;
}

namespace {

void validate_shape_input(const LimitShape& shape) {
    if (shape.kind != ShapeKind::Interpolating) return;
    double area = 0.0, y = 1.0;
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shape.widths.size(); ++i) {
        if (shape.widths[i] <= 0.0 || shape.slopes[i] < 0.0) {
            fail(ErrorCode::NotConvexShape, "sections need positive widths and nonnegative slopes");
        }
        if (shape.slopes[i] > prev_slope + 1e-12) {
            fail(ErrorCode::NotConvexShape, "slopes must be non-increasing");
        }
        prev_slope = shape.slopes[i];
        const double y2 = y - shape.slopes[i] * shape.widths[i];
        area += shape.widths[i] * 0.5 * (y + y2);
        y = y2;
    }
    if (area > 1.0 + 1e-9) fail(ErrorCode::AreaExceedsOne, "shape area exceeds 1");
}

Partition assemble_from_slabs(const std::vector<std::int64_t>& slab, std::int64_t n) {
    // lambda_k = sum of slabs k+1..N, k = 1..N-1; the first part absorbs the
    // slack so the total lands exactly on n.
    std::vector<std::int64_t> parts;
    std::int64_t suffix = 0;
    std::int64_t total = 0;
    for (std::size_t i = slab.size(); i-- > 2;) {
        if (__builtin_add_overflow(suffix, slab[i], &suffix) ||
            __builtin_add_overflow(total, suffix, &total)) {
            fail(ErrorCode::Overflow, "slab total overflow");
        }
        parts.push_back(suffix);
    }
    std::reverse(parts.begin(), parts.end());
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    if (total > n) fail(ErrorCode::AreaExceedsOne, "construction exceeded the deck");
    if (parts.empty()) {
        parts.push_back(n);
    } else {
        parts[0] += n - total;
    }
    return Partition::validate(std::move(parts));
}

} // namespace

double shape_to_stable_scaling(double c, std::int64_t n) {
    if (c > 0.0) return std::sqrt(c * static_cast<double>(n));
    const std::int64_t m = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(n), 0.2)));
    return std::sqrt(static_cast<double>(n) / (2.0 * static_cast<double>(m)));
}

Partition shape_to_stable(const LimitShape& shape, double c, std::int64_t n) {
    if (n < 1) fail(ErrorCode::BadInput, "need n >= 1");
    if (c < 0.0) fail(ErrorCode::NonPositiveC, "c must be >= 0");
    validate_shape_input(shape);

    if (c > 0.0) {
        if (shape.kind == ShapeKind::Exponential) {
            fail(ErrorCode::DerivativeNotMultipleOfC, "e^{-x} has no common slope unit");
        }
        // Slab count per section: slope / c, which must be an integer.
        std::vector<double> sec_widths;
        std::vector<std::int64_t> sec_slabs;
        if (shape.kind == ShapeKind::Triangle) {
            sec_widths = {2.0};
            sec_slabs = {0};
            const double ratio = 0.5 / c;
            sec_slabs[0] = std::llround(ratio);
            if (std::abs(ratio - static_cast<double>(sec_slabs[0])) > 1e-9 || sec_slabs[0] < 1) {
                fail(ErrorCode::DerivativeNotMultipleOfC, "1/2 is not an integer multiple of c");
            }
        } else {
            for (std::size_t i = 0; i < shape.widths.size(); ++i) {
                const double ratio = shape.slopes[i] / c;
                const std::int64_t k = std::llround(ratio);
                if (std::abs(ratio - static_cast<double>(k)) > 1e-9 || k < 0) {
                    fail(ErrorCode::DerivativeNotMultipleOfC,
                         "slope " + std::to_string(shape.slopes[i]) + " not a multiple of c");
                }
                sec_widths.push_back(shape.widths[i]);
                sec_slabs.push_back(k);
            }
        }
        const double sq = std::sqrt(c * static_cast<double>(n));
        const double support = shape.total_width();
        const std::int64_t N = static_cast<std::int64_t>(std::ceil(support * sq)) + 1;
        if (N > 100'000'000) fail(ErrorCode::TooLarge, "construction needs too many slabs");
        std::vector<std::int64_t> slab(static_cast<std::size_t>(N) + 1, 0);
        for (std::int64_t i = 1; i <= N; ++i) {
            const double x = static_cast<double>(i) / sq;
            double acc = 0.0;
            std::int64_t k = 0;
            for (std::size_t s = 0; s < sec_widths.size(); ++s) {
                acc += sec_widths[s];
                if (x < acc - 1e-12) { k = sec_slabs[s]; break; }
            }
            slab[static_cast<std::size_t>(i)] = k;
        }
        return assemble_from_slabs(slab, n);
    }

    // c = 0: scaling a = sqrt(n/2m) keeps n/a^2 = 2m exact, so slabs round
    // predictably; truncate where the shape drops below 1/sqrt(n).
    const std::int64_t m = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(n), 0.2)));
    const double a = std::sqrt(static_cast<double>(n) / (2.0 * static_cast<double>(m)));
    const double threshold = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::int64_t> slab(1, 0);
    std::int64_t i = 1;
    while (true) {
        const double x = static_cast<double>(i) / a;
        if (shape_eval(shape, x) < threshold) break;
        slab.push_back(static_cast<std::int64_t>(
            std::floor(2.0 * static_cast<double>(m) * (-shape_right_derivative(shape, x)))));
        ++i;
        if (i > 100'000'000) fail(ErrorCode::TooLarge, "construction needs too many slabs");
    }
    return assemble_from_slabs(slab, n);
}

} // namespace bulgsol
