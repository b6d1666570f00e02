#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stokeswire/manufactured.hpp"
#include "stokeswire/polynomials.hpp"

using namespace stokeswire;

TEST_CASE("velocity is pointwise divergence-free and zero on the boundary") {
  const ManufacturedSolution exact;
  std::mt19937 rng(137);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 x{coord(rng), coord(rng)};
    CHECK(std::abs(exact.velocity_gradient(x).trace()) <= 1e-12);
  }
  for (int i = 0; i < 400; ++i) {
    const double t = coord(rng);
    for (const Point2 x : {Point2{t, 0.0}, Point2{t, 1.0}, Point2{0.0, t},
                           Point2{1.0, t}}) {
      const auto u = exact.velocity(x);
      CHECK(std::abs(u[0]) <= 1e-12);
      CHECK(std::abs(u[1]) <= 1e-12);
    }
  }
}

TEST_CASE("velocity gradient matches finite differences") {
  const ManufacturedSolution exact;
  std::mt19937 rng(139);
  std::uniform_real_distribution<double> coord(0.05, 0.95);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const Point2 x{coord(rng), coord(rng)};
    const Eigen::Matrix2d g = exact.velocity_gradient(x);
    for (int c = 0; c < 2; ++c) {
      const auto up_x = exact.velocity({x.x + h, x.y});
      const auto dn_x = exact.velocity({x.x - h, x.y});
      const auto up_y = exact.velocity({x.x, x.y + h});
      const auto dn_y = exact.velocity({x.x, x.y - h});
      CHECK(g(c, 0) == doctest::Approx((up_x[c] - dn_x[c]) / (2 * h)).epsilon(1e-6));
      CHECK(g(c, 1) == doctest::Approx((up_y[c] - dn_y[c]) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("pressure has zero mean after the shift") {
  const ManufacturedSolution exact;
  // oracle: composite Gauss with an unrelated panel layout, split at the
  // flat point; the target is 1e-10 absolute on a quantity of size ~1e3
  auto oracle_integral = [](double c) {
    std::vector<double> pts, wts;
    stokeswire::gauss_legendre_01(16, pts, wts);
    double total = 0.0;
    const int panels = 150;
    for (const auto [lo, hi] : {std::pair{0.0, c}, std::pair{c, 1.0}}) {
      const double width = (hi - lo) / panels;
      for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        for (std::size_t q = 0; q < pts.size(); ++q) {
          const double d = a + pts[q] * width - c;
          total += width * wts[q] * (d == 0.0 ? 0.0 : std::exp(-1.0 / (d * d)));
        }
      }
    }
    return total;
  };
  const double ix = oracle_integral(0.3);
  const double iy = oracle_integral(32.0 / 500.0);
  const double mean = 1e6 * ix * iy + exact.mean_shift();
  CHECK(std::abs(mean) <= 1e-10);
}

TEST_CASE("force matches finite differences of the closed forms") {
  const ManufacturedSolution exact;
  std::mt19937 rng(149);
  std::uniform_real_distribution<double> coord(0.05, 0.95);
  const double h = 1e-4;
  int tested = 0;
  while (tested < 30) {
    const Point2 x{coord(rng), coord(rng)};
    // stay away from the flat lines where high derivatives spike
    if (std::abs(x.x - 0.3) < 0.15 || std::abs(x.y - 0.064) < 0.15) continue;
    ++tested;
    auto u = [&](double a, double b, int c) {
      return exact.velocity({a, b})[c];
    };
    for (int c = 0; c < 2; ++c) {
      const double lap =
          (u(x.x + h, x.y, c) + u(x.x - h, x.y, c) + u(x.x, x.y + h, c) +
           u(x.x, x.y - h, c) - 4.0 * u(x.x, x.y, c)) /
          (h * h);
      const double dp =
          c == 0 ? (exact.pressure({x.x + h, x.y}) - exact.pressure({x.x - h, x.y})) /
                       (2 * h)
                 : (exact.pressure({x.x, x.y + h}) - exact.pressure({x.x, x.y - h})) /
                       (2 * h);
      const double expected = -lap + dp;
      const double got = exact.force(x)[c];
      CHECK(got == doctest::Approx(expected).epsilon(1e-4));
    }
  }
}

TEST_CASE("flat bump integral agrees with the adaptive oracle") {
  for (double c : {0.3, 0.064, 0.5}) {
    auto g = [&](double s) {
      const double d = s - c;
      return d == 0.0 ? 0.0 : std::exp(-1.0 / (d * d));
    };
    CHECK(flat_bump_integral(c) ==
          doctest::Approx(oracles::adaptive_simpson(g, 0.0, 1.0, 1e-14))
              .epsilon(1e-12));
  }
}
