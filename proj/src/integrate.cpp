#include "lowthrust/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace lowthrust {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous-extension weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace

Eigen::VectorXd OdeSolution::eval(double t) const {
  // Locate the accepted step containing t.
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = (it == t_.begin()) ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  i = std::min(i, interp_.size() - 1);
  const double h = t_[i + 1] - t_[i];
  const double th = (t - t_[i]) / h;
  const auto& r = interp_[i];
  return r[0] + th * (r[1] + (1.0 - th) * (r[2] + th * (r[3] + (1.0 - th) * r[4])));
}

OdeSolution integrate(const OdeRhs& f, const Eigen::VectorXd& y0, double t0, double t1,
                      const OdeOptions& opts) {
  const long n = y0.size();
  const double span = t1 - t0;
  if (span <= 0.0) throw std::invalid_argument("integrate: t1 must exceed t0");

  OdeSolution sol;
  sol.t_.push_back(t0);
  sol.y_.push_back(y0);

  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = f(t0, y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  if (!k1.allFinite()) throw StepSizeUnderflow(t0);

  double t = t0;
  double h = opts.initial_step;
  if (h <= 0.0) {
    const double scale = std::max(1e-8, k1.cwiseAbs().maxCoeff());
    h = std::min(span, 0.01 * std::max(1e-10, y.cwiseAbs().maxCoeff() + 1.0) / scale);
  }
  const double h_min = span * 1e-14;

  double err_old = 1.0;
  bool rejected = false;
  Eigen::VectorXd ynew(n), yerr(n), ytmp(n);

  for (long step = 0; step < opts.max_steps && t < t1; ++step) {
    h = std::min(h, t1 - t);
    if (h < h_min) throw StepSizeUnderflow(t);

    ytmp = y + h * (a21 * k1);
    k2 = f(t + c2 * h, ytmp);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    k3 = f(t + c3 * h, ytmp);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    k4 = f(t + c4 * h, ytmp);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5 = f(t + c5 * h, ytmp);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6 = f(t + h, ytmp);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(t + h, ynew);  // FSAL
    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    bool finite = ynew.allFinite() && yerr.allFinite();
    if (finite) {
      for (long i = 0; i < n; ++i) {
        const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err += (yerr[i] / sc) * (yerr[i] / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));
    } else {
      err = 10.0;
    }

    if (finite && err <= 1.0) {
      auto& r = sol.interp_.emplace_back();
      const Eigen::VectorXd ydiff = ynew - y;
      const Eigen::VectorXd bspl = h * k1 - ydiff;
      r[0] = y;
      r[1] = ydiff;
      r[2] = bspl;
      r[3] = ydiff - h * k7 - bspl;
      r[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      t += h;
      y.swap(ynew);
      k1.swap(k7);
      sol.t_.push_back(t);
      sol.y_.push_back(y);

      // PI controller.
      const double e = std::max(err, 1e-16);
      double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_old, 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, rejected ? 1.0 : 5.0);
      h *= fac;
      err_old = e;
      rejected = false;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5);
      rejected = true;
    }
  }
  if (t < t1) throw StepSizeUnderflow(t);
  return sol;
}

}  // namespace lowthrust
