#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pdq/error.hpp"
#include "pdq/numeric.hpp"

using doctest::Approx;
namespace nm = pdq::numeric;

TEST_CASE("integrate matches closed forms") {
  CHECK(nm::integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        Approx(std::numbers::e - 1.0).epsilon(1e-12));
  CHECK(nm::integrate([](double x) { return 1.0 / (1.0 + x * x); }, -1.0, 1.0) ==
        Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("integrate_unit handles endpoint singularities") {
  // integral of u^-1/2 (1-u)^-1/2 is pi
  const double v = nm::integrate_unit([](double u, double w) { return 1.0 / std::sqrt(u * w); });
  CHECK(v == Approx(std::numbers::pi).epsilon(1e-9));
  // v is passed as 1 - u without cancellation
  const double t = nm::integrate_unit([](double, double w) { return std::log(w); });
  CHECK(t == Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("integrate_unit agrees with an independent Simpson rule") {
  auto f = [](double u) { return u * u * std::exp(-u) * std::sin(3.0 * u); };
  const double ref = oracle::simpson(f, 0.0, 1.0);
  CHECK(nm::integrate_unit([&](double u, double) { return f(u); }) == Approx(ref).epsilon(1e-10));
}

TEST_CASE("cell averages sum to the full integral") {
  auto h = [](double u, double v) { return 6.0 * u * v; };
  const std::size_t m = 37;
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) s += nm::cell_average(h, j, m);
  CHECK(s / m == Approx(1.0).epsilon(1e-12));
  // cell average of a linear function is its midpoint value
  CHECK(nm::cell_average([](double u, double) { return u; }, 3, 10) == Approx(0.35));
}

TEST_CASE("find_root and minimize") {
  const double r = nm::find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  CHECK(r == Approx(0.7390851332151607).epsilon(1e-12));
  CHECK_THROWS_AS(nm::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), pdq::Error);
  try {
    nm::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0);
  } catch (const pdq::Error& e) {
    CHECK(e.code() == pdq::ErrorCode::RootNotBracketed);
  }
  const auto m = nm::minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, -1.0, 2.0);
  CHECK(m.x == Approx(0.3).epsilon(1e-6));
  CHECK(m.value == Approx(2.0));
}
