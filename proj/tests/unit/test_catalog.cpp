#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "pdq/dists.hpp"
#include "pdq/error.hpp"

using doctest::Approx;

namespace {

double sup_diff(const pdq::GridDensity& g, const std::vector<double>& ref) {
  double d = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) d = std::max(d, std::abs(g[j] - ref[j]));
  return d;
}

double sup_diff(const pdq::GridDensity& a, const pdq::GridDensity& b) {
  return sup_diff(a, std::vector<double>(b.values().begin(), b.values().end()));
}

pdq::ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const pdq::Error& e) {
    return e.code();
  }
  FAIL("no pdq::Error thrown");
  return pdq::ErrorCode::NonConvergence;
}

}  // namespace

TEST_CASE("closed-form pdQs match cell averages of textbook formulas") {
  const std::size_t m = 200;
  const double pi = std::numbers::pi;
  struct Case {
    const char* name;
    std::vector<double> shape;
    std::function<double(double)> fstar;
  };
  const std::vector<Case> cases = {
      {"uniform", {}, [](double) { return 1.0; }},
      {"power", {3.0}, [](double u) { return (2.0 - 1.0 / 3.0) * std::pow(u, 1.0 - 1.0 / 3.0); }},
      {"laplace", {}, [](double u) { return 4.0 * std::min(u, 1.0 - u); }},
      {"logistic", {}, [](double u) { return 6.0 * u * (1.0 - u); }},
      {"extreme_value", {}, [](double u) { return -4.0 * u * std::log(u); }},
      {"cauchy", {}, [pi](double u) { return 2.0 * std::pow(std::sin(pi * u), 2); }},
      {"normal", {},
       [pi](double u) { return 2.0 * std::sqrt(pi) * oracle::normal_pdf(oracle::normal_quantile(u)); }},
      {"lognormal", {},
       [pi](double u) {
         const double z = oracle::normal_quantile(u);
         return 2.0 * std::sqrt(pi) * std::exp(-0.25) * oracle::normal_pdf(z) * std::exp(-z);
       }},
      {"pareto1", {1.5}, [](double u) { return (2.0 + 1.0 / 1.5) * std::pow(1.0 - u, 1.0 + 1.0 / 1.5); }},
      {"exponential", {}, [](double u) { return 2.0 * (1.0 - u); }},
  };
  for (const auto& c : cases) {
    CAPTURE(std::string(c.name));
    const auto g = pdq::pdq(pdq::make_model(c.name, c.shape), m);
    CHECK(sup_diff(g, oracle::cell_averages(c.fstar, m)) < 2e-5);
  }
}

TEST_CASE("every catalog family yields a unit-mass pdQ that matches its numeric pdQ") {
  for (const auto name : pdq::catalog_families()) {
    CAPTURE(std::string(name));
    std::vector<double> shape;
    if (name == "normal_mixture") shape = {0.25, 1.5, 0.7};
    else if (name == "beta") shape = {1.5, 2.5};
    else if (pdq::family_arity(name) == 1) shape = {name == "tukey" ? -0.4 : 3.0};
    const auto model = pdq::make_model(name, shape);
    const auto g = pdq::pdq(model, 300);
    CHECK(g.mass() == Approx(1.0).epsilon(1e-9));
    CHECK(sup_diff(g, pdq::pdq_numeric(model, 300)) < 1e-6);
    CHECK(pdq::numeric_kappa(model) == Approx(model.kappa()).epsilon(1e-7));
  }
}

TEST_CASE("kappa values") {
  CHECK(pdq::make_model("normal").kappa() == Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi))));
  CHECK(pdq::make_model("laplace").kappa() == Approx(0.25));
  CHECK(pdq::make_model("gamma", {3.0}).kappa() == Approx(0.1875));
  CHECK(pdq::make_model("student_t", {2.0}).kappa() == Approx(0.20826).epsilon(1e-5));
  CHECK(pdq::tukey_kappa(0.0) == Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(pdq::tukey_kappa(1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(pdq::tukey_kappa(2.0) == Approx(1.0).epsilon(1e-12));
  CHECK(pdq::tukey_kappa(3.0) == Approx(std::numbers::pi / 2).epsilon(1e-10));
  CHECK(pdq::tukey_kappa_approx(0.0) == Approx(1.0 / 6.0));
  CHECK(pdq::tukey_kappa_approx(1.0) == Approx(0.5));
  for (double l : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(std::abs(pdq::tukey_kappa(l) - pdq::tukey_kappa_approx(l)) < 0.005);
  }
  // kappa scales as 1/scale, the pdQ does not move
  const auto m = pdq::make_model("logistic").located(4.0, 2.5);
  CHECK(m.kappa() == Approx(pdq::make_model("logistic").kappa() / 2.5));
}

TEST_CASE("pdq_near evaluates close to the boundary without cancellation") {
  const auto e = pdq::make_model("exponential");
  CHECK(e.pdq_near(1e-40, pdq::Side::Right) == Approx(2e-40).epsilon(1e-10));
  CHECK(e.pdq_near(1e-3, pdq::Side::Left) == Approx(2.0 * (1.0 - 1e-3)));
}

TEST_CASE("error paths") {
  CHECK(code_of([] { pdq::make_model("nosuch"); }) == pdq::ErrorCode::UnknownFamily);
  CHECK(code_of([] { pdq::make_model("weibull", {-1.0}); }) == pdq::ErrorCode::InvalidParameter);
  CHECK(code_of([] { pdq::make_model("weibull", {0.4}); }) == pdq::ErrorCode::NonSquareIntegrable);
  CHECK(code_of([] { pdq::make_model("power", {0.5}); }) == pdq::ErrorCode::NonSquareIntegrable);
  CHECK(code_of([] { pdq::make_model("tukey"); }) == pdq::ErrorCode::InvalidParameter);
  CHECK(code_of([] { pdq::make_model("normal").located(0.0, -1.0); }) ==
        pdq::ErrorCode::InvalidParameter);
}

TEST_CASE("model_from_functions builds a pdQ numerically") {
  const auto m = pdq::model_from_functions(
      "custom", [](double x) { return x > 0 ? std::exp(-x) : 0.0; },
      [](double x) { return x > 0 ? 1.0 - std::exp(-x) : 0.0; },
      [](double u) { return -std::log1p(-u); });
  CHECK(m.kappa() == Approx(0.5).epsilon(1e-8));
  CHECK(sup_diff(pdq::pdq(m, 100), oracle::cell_averages([](double u) { return 2.0 * (1.0 - u); }, 100)) <
        1e-7);
}
