#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core/error.hpp"
#include "core/resample.hpp"
#include "core/types.hpp"

using sigcast::Plane;
using sigcast::bilinear_resize_2d;
using sigcast::linear_resample_1d;

namespace {

// Independent piecewise-linear oracle: evaluate the source polyline at
// j*(n-1)/(m-1) with no shared code.
std::vector<double> oracle_1d(const std::vector<double>& src, std::size_t m) {
    const std::size_t n = src.size();
    std::vector<double> out(m);
    if (m == 1) {
        const double pos = 0.5 * static_cast<double>(n - 1);
        const auto i0 = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i0);
        out[0] = frac == 0.0 ? src[i0] : src[i0] * (1.0 - frac) + src[i0 + 1] * frac;
        return out;
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double pos = static_cast<double>(j) * static_cast<double>(n - 1) /
                           static_cast<double>(m - 1);
        auto i0 = static_cast<std::size_t>(pos);
        if (i0 >= n - 1) i0 = n - 2;
        const double frac = pos - static_cast<double>(i0);
        out[j] = src[i0] * (1.0 - frac) + src[i0 + 1] * frac;
    }
    return out;
}

double oracle_sample_axis(const std::vector<double>& src, double pos) {
    const std::size_t n = src.size();
    if (n == 1) return src[0];
    auto i0 = static_cast<std::size_t>(pos);
    if (i0 >= n - 1) i0 = n - 2;
    const double frac = pos - static_cast<double>(i0);
    return src[i0] * (1.0 - frac) + src[i0 + 1] * frac;
}

// Direct (non-separable) bilinear evaluation; the implementation is
// separable, so agreement is a real cross-check.
Plane oracle_2d(const Plane& p, std::size_t tr, std::size_t tc) {
    Plane out;
    out.rows = tr;
    out.cols = tc;
    out.values.resize(tr * tc);
    for (std::size_t r = 0; r < tr; ++r) {
        const double rpos = (tr == 1 || p.rows == 1)
                                ? (tr == 1 ? 0.5 * static_cast<double>(p.rows - 1) : 0.0)
                                : static_cast<double>(r) * static_cast<double>(p.rows - 1) /
                                      static_cast<double>(tr - 1);
        std::size_t r0 = static_cast<std::size_t>(rpos);
        if (p.rows > 1 && r0 >= p.rows - 1) r0 = p.rows - 2;
        const double rf = p.rows == 1 ? 0.0 : rpos - static_cast<double>(r0);
        for (std::size_t c = 0; c < tc; ++c) {
            std::vector<double> row0(p.cols), row1(p.cols);
            for (std::size_t k = 0; k < p.cols; ++k) {
                row0[k] = p.at(r0, k);
                row1[k] = p.rows == 1 ? p.at(r0, k) : p.at(r0 + 1, k);
            }
            const double cpos =
                (tc == 1 || p.cols == 1)
                    ? (tc == 1 ? 0.5 * static_cast<double>(p.cols - 1) : 0.0)
                    : static_cast<double>(c) * static_cast<double>(p.cols - 1) /
                          static_cast<double>(tc - 1);
            const double v0 = oracle_sample_axis(row0, cpos);
            const double v1 = oracle_sample_axis(row1, cpos);
            out.values[r * tc + c] = v0 * (1.0 - rf) + v1 * rf;
        }
    }
    return out;
}

bool close_rel(double a, double b, double tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

}  // namespace

TEST_CASE("linear resample hits the frozen reference values") {
    const std::vector<double> src{0.0, 1.0, 4.0};
    const auto out = linear_resample_1d(src, 5);
    REQUIRE(out.size() == 5);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out[2] == 1.0);
    CHECK(out[3] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(out[4] == 4.0);
}

TEST_CASE("single-sample target reads the source midpoint") {
    CHECK(linear_resample_1d({0.0, 1.0, 4.0}, 1) == std::vector<double>{1.0});
    const auto mid_even = linear_resample_1d({0.0, 1.0, 4.0, 9.0}, 1);
    CHECK(mid_even.size() == 1);
    CHECK(mid_even[0] == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("identity target length returns the input bit for bit") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    std::vector<double> src(17);
    for (double& v : src) v = dist(gen);
    const auto out = linear_resample_1d(src, src.size());
    REQUIRE(out.size() == src.size());
    for (std::size_t i = 0; i < src.size(); ++i) CHECK(out[i] == src[i]);
}

TEST_CASE("endpoints are preserved exactly for targets of two or more") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> src(2 + gen() % 40);
        for (double& v : src) v = dist(gen);
        const std::size_t m = 2 + gen() % 60;
        const auto out = linear_resample_1d(src, m);
        CHECK(out.front() == src.front());
        CHECK(out.back() == src.back());
    }
}

TEST_CASE("outputs stay inside the source value range") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> src(2 + gen() % 30);
        for (double& v : src) v = dist(gen);
        const double lo = *std::min_element(src.begin(), src.end());
        const double hi = *std::max_element(src.begin(), src.end());
        const auto out = linear_resample_1d(src, 1 + gen() % 50);
        for (double v : out) {
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
    }
}

TEST_CASE("monotone input produces monotone output") {
    std::vector<double> src{-3.0, -1.0, 0.0, 0.5, 4.0, 9.0};
    const auto out = linear_resample_1d(src, 23);
    for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i] >= out[i - 1]);
}

TEST_CASE("resample validates its input") {
    CHECK_THROWS_AS((void)linear_resample_1d({1.0}, 5), sigcast::validation_error);
    CHECK_THROWS_AS((void)linear_resample_1d({}, 5), sigcast::validation_error);
    CHECK_THROWS_AS((void)linear_resample_1d({1.0, 2.0}, 0), sigcast::validation_error);
    const double nan = std::nan("");
    CHECK_THROWS_AS((void)linear_resample_1d({1.0, nan}, 3), sigcast::numeric_error);
}

TEST_CASE("random shapes match the piecewise-linear oracle") {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> src(2 + gen() % 64);
        for (double& v : src) v = dist(gen);
        const std::size_t m = 1 + gen() % 80;
        const auto got = linear_resample_1d(src, m);
        const auto want = oracle_1d(src, m);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(close_rel(got[i], want[i], 1e-10));
    }
}

TEST_CASE("2x2 to 3x3 matches the frozen grid") {
    Plane p;
    p.rows = 2;
    p.cols = 2;
    p.values = {0.0, 1.0, 2.0, 3.0};
    const Plane out = bilinear_resize_2d(p, 3, 3);
    const std::vector<double> want{0.0, 0.5, 1.0, 1.0, 1.5, 2.0, 2.0, 2.5, 3.0};
    REQUIRE(out.values.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(out.values[i] == doctest::Approx(want[i]).epsilon(1e-15));
}

TEST_CASE("resize to the source shape is the identity") {
    Plane p;
    p.rows = 3;
    p.cols = 4;
    p.values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    const Plane out = bilinear_resize_2d(p, 3, 4);
    CHECK(out.values == p.values);
}

TEST_CASE("size-1 source axes replicate") {
    Plane row;
    row.rows = 1;
    row.cols = 3;
    row.values = {5.0, 6.0, 7.0};
    const Plane out = bilinear_resize_2d(row, 4, 3);
    REQUIRE(out.rows == 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(out.at(r, c) == row.at(0, c));

    Plane col;
    col.rows = 3;
    col.cols = 1;
    col.values = {5.0, 6.0, 7.0};
    const Plane out2 = bilinear_resize_2d(col, 3, 5);
    REQUIRE(out2.cols == 5);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 5; ++c) CHECK(out2.at(r, c) == col.at(r, 0));
}

TEST_CASE("random planes match the direct bilinear oracle") {
    std::mt19937_64 gen(307);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int trial = 0; trial < 80; ++trial) {
        Plane p;
        p.rows = 1 + gen() % 12;
        p.cols = 1 + gen() % 12;
        p.values.resize(p.rows * p.cols);
        for (double& v : p.values) v = dist(gen);
        const std::size_t tr = 1 + gen() % 16;
        const std::size_t tc = 1 + gen() % 16;
        const Plane got = bilinear_resize_2d(p, tr, tc);
        const Plane want = oracle_2d(p, tr, tc);
        REQUIRE(got.rows == tr);
        REQUIRE(got.cols == tc);
        for (std::size_t i = 0; i < got.values.size(); ++i)
            CHECK(close_rel(got.values[i], want.values[i], 1e-10));
    }
}

TEST_CASE("separable order does not matter") {
    // Rows-then-columns and columns-then-rows agree for a bilinear kernel.
    std::mt19937_64 gen(911);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        Plane p;
        p.rows = 2 + gen() % 8;
        p.cols = 2 + gen() % 8;
        p.values.resize(p.rows * p.cols);
        for (double& v : p.values) v = dist(gen);
        const std::size_t tr = 2 + gen() % 10;
        const std::size_t tc = 2 + gen() % 10;

        // other order, via two explicit 1-D passes
        Plane cols_first;
        cols_first.rows = p.rows;
        cols_first.cols = tc;
        cols_first.values.resize(p.rows * tc);
        for (std::size_t r = 0; r < p.rows; ++r) {
            std::vector<double> row(p.cols);
            for (std::size_t c = 0; c < p.cols; ++c) row[c] = p.at(r, c);
            const auto rs = oracle_1d(row, tc);
            for (std::size_t c = 0; c < tc; ++c) cols_first.at(r, c) = rs[c];
        }
        Plane both;
        both.rows = tr;
        both.cols = tc;
        both.values.resize(tr * tc);
        for (std::size_t c = 0; c < tc; ++c) {
            std::vector<double> col(p.rows);
            for (std::size_t r = 0; r < p.rows; ++r) col[r] = cols_first.at(r, c);
            const auto cs = oracle_1d(col, tr);
            for (std::size_t r = 0; r < tr; ++r) both.at(r, c) = cs[r];
        }

        const Plane got = bilinear_resize_2d(p, tr, tc);
        for (std::size_t i = 0; i < got.values.size(); ++i)
            CHECK(close_rel(got.values[i], both.values[i], 1e-12));
    }
}

TEST_CASE("2-D resize validates its input") {
    Plane p;
    p.rows = 2;
    p.cols = 2;
    p.values = {0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)bilinear_resize_2d(p, 0, 3), sigcast::validation_error);
    Plane bad = p;
    bad.values.pop_back();
    CHECK_THROWS_AS((void)bilinear_resize_2d(bad, 3, 3), sigcast::validation_error);
}
