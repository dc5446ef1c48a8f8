#include <cmath>
#include <string>

#include "pdq/dists.hpp"
#include "pdq/error.hpp"
#include "pdq/numeric.hpp"

namespace pdq {

ContinuousModel::ContinuousModel(std::string name, std::vector<double> shape_params,
                                 ModelFunctions fns)
    : name_(std::move(name)), shape_params_(std::move(shape_params)) {
  if (!fns.density || !fns.cdf || !fns.quantile) {
    throw Error(ErrorCode::InvalidParameter, name_ + ": density, cdf and quantile are required");
  }
  if (!fns.density_quantile) {
    fns.density_quantile = [density = fns.density, quantile = fns.quantile](double u, double v) {
      return density(quantile(u, v));
    };
  }
  double kappa = 0.0;
  if (fns.kappa) {
    kappa = *fns.kappa;
  } else {
    try {
      kappa = numeric::integrate_unit(fns.density_quantile);
    } catch (const Error& e) {
      throw Error(ErrorCode::QuadratureFailure, name_ + ": kappa: " + e.what());
    }
  }
  if (!std::isfinite(kappa) || !(kappa > 0.0)) {
    throw Error(ErrorCode::NonSquareIntegrable,
                name_ + ": integral of f^2 is " + std::to_string(kappa));
  }
  kappa_ = kappa;
  fns_ = std::make_shared<const ModelFunctions>(std::move(fns));
}

ContinuousModel ContinuousModel::located(double location, double scale) const {
  if (!std::isfinite(location) || !std::isfinite(scale) || !(scale > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "location-scale requires finite location and scale > 0");
  }
  ContinuousModel copy = *this;
  copy.location_ = location;
  copy.scale_ = scale;
  return copy;
}

double ContinuousModel::density(double x) const {
  return fns_->density((x - location_) / scale_) / scale_;
}

double ContinuousModel::cdf(double x) const { return fns_->cdf((x - location_) / scale_); }

double ContinuousModel::quantile(double u) const { return quantile(u, 1.0 - u); }

double ContinuousModel::quantile(double u, double v) const {
  return location_ + scale_ * fns_->quantile(u, v);
}

double ContinuousModel::quantile_density(double u) const { return 1.0 / density_quantile(u); }

double ContinuousModel::density_quantile(double u) const {
  return fns_->density_quantile(u, 1.0 - u) / scale_;
}

double ContinuousModel::pdq(double u) const { return pdq(u, 1.0 - u); }

double ContinuousModel::pdq(double u, double v) const {
  return fns_->density_quantile(u, v) / kappa_;
}

double ContinuousModel::pdq_near(double s, Side side) const {
  return side == Side::Left ? pdq(s, 1.0 - s) : pdq(1.0 - s, s);
}

ContinuousModel model_from_functions(std::string name, std::function<double(double)> density,
                                     std::function<double(double)> cdf,
                                     std::function<double(double)> quantile) {
  ModelFunctions fns;
  fns.density = std::move(density);
  fns.cdf = std::move(cdf);
  fns.quantile = [q = std::move(quantile)](double u, double) { return q(u); };
  return ContinuousModel(std::move(name), {}, std::move(fns));
}

namespace {

void require_grid(std::size_t m) {
  if (m < 100) throw Error(ErrorCode::InvalidParameter, "pdq grids need m >= 100");
}

GridDensity cells_to_density(const numeric::UnitFunction& fstar, std::size_t m,
                             const std::string& name) {
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) values[j] = numeric::cell_average(fstar, j, m);
  double mass = 0.0;
  for (double v : values) mass += v;
  mass /= static_cast<double>(m);
  if (!(std::abs(mass - 1.0) <= GridDensity::kMassTolerance)) {
    throw Error(ErrorCode::QuadratureFailure,
                name + ": pdq grid mass " + std::to_string(mass) + " differs from 1");
  }
  return GridDensity::normalized(std::move(values));
}

}  // namespace

GridDensity pdq(const ContinuousModel& model, std::size_t m) {
  require_grid(m);
  return cells_to_density([&](double u, double v) { return model.pdq(u, v); }, m, model.name());
}

double numeric_kappa(const ContinuousModel& model) {
  return numeric::integrate_unit(
      [&](double u, double v) { return model.density(model.quantile(u, v)); });
}

GridDensity pdq_numeric(const ContinuousModel& model, std::size_t m) {
  require_grid(m);
  const double kappa = numeric_kappa(model);
  return cells_to_density(
      [&](double u, double v) { return model.density(model.quantile(u, v)) / kappa; }, m,
      model.name());
}

}  // namespace pdq
