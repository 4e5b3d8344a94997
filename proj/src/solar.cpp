#include "lowthrust/solar.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lowthrust {

namespace {
constexpr double kDeg = M_PI / 180.0;
}

Vec3 sun_direction(double jd) {
  // Meeus, Astronomical Algorithms, low-precision solar coordinates.
  const double T = (jd - 2451545.0) / 36525.0;
  const double L0 = 280.46646 + 36000.76983 * T + 0.0003032 * T * T;  // mean longitude, deg
  const double M = 357.52911 + 35999.05029 * T - 0.0001537 * T * T;   // mean anomaly, deg
  const double Mr = M * kDeg;
  const double C = (1.914602 - 0.004817 * T - 0.000014 * T * T) * std::sin(Mr) +
                   (0.019993 - 0.000101 * T) * std::sin(2.0 * Mr) +
                   0.000289 * std::sin(3.0 * Mr);
  const double lambda = (L0 + C) * kDeg;  // true ecliptic longitude
  const double eps = (23.439291 - 0.0130042 * T) * kDeg;

  return Vec3(std::cos(lambda), std::cos(eps) * std::sin(lambda), std::sin(eps) * std::sin(lambda));
}

double parse_epoch_utc(const std::string& iso) {
  int y = 0, mo = 0, d = 0, hh = 0, mm = 0;
  double ss = 0.0;
  const int n = std::sscanf(iso.c_str(), "%d-%d-%dT%d:%d:%lf", &y, &mo, &d, &hh, &mm, &ss);
  if (n < 3) throw std::invalid_argument("cannot parse epoch: " + iso);

  // Fliegel-Van Flandern day number, valid for the Gregorian calendar.
  const long a = (14 - mo) / 12;
  const long yy = y + 4800 - a;
  const long m = mo + 12 * a - 3;
  const long jdn = d + (153 * m + 2) / 5 + 365 * yy + yy / 4 - yy / 100 + yy / 400 - 32045;
  return static_cast<double>(jdn) - 0.5 + (hh + (mm + ss / 60.0) / 60.0) / 24.0;
}

}  // namespace lowthrust
