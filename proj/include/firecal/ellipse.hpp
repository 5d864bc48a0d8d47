#pragma once

// Elliptical spread geometry for a burning cell. The fire front grows as an
// ellipse anchored at one focus; head/flank/back rates of spread define the
// semi-axis growth rates and the eccentricity, and the directional rate of
// spread is evaluated in polar form from that focus.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace firecal {

// Thrown when a flank rate exceeds the semi-major growth rate, which would
// make the eccentricity imaginary.
class InfeasibleGeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Head, flank and back rates of spread in m/min.
struct RosTriple {
  double hros = 0.0;
  double fros = 0.0;
  double bros = 0.0;
};

// Multiplicative adjustment factors for hros (x1), fros (x2), bros (x3) and
// the eccentricity (x4). All-ones leaves the geometry untouched.
struct FactorTuple {
  double x1 = 1.0;
  double x2 = 1.0;
  double x3 = 1.0;
  double x4 = 1.0;

  bool operator==(const FactorTuple&) const = default;
};

// Ellipse semi-axis growth rates (m/min) and eccentricity. The axes grow
// linearly in time, so the shape parameters are time-independent.
struct EllipseRates {
  double a_rate = 0.0;  // semi-major growth rate
  double b_rate = 0.0;  // semi-minor growth rate
  double ecc = 0.0;     // eccentricity in [0, 1)
};

// Eccentricity is kept strictly below 1 so the polar form stays finite.
inline constexpr double kEccCeiling = 1.0 - 1e-6;

inline void validate(const RosTriple& ros) {
  if (!(ros.hros >= 0.0) || !(ros.fros >= 0.0) || !(ros.bros >= 0.0) ||
      !std::isfinite(ros.hros) || !std::isfinite(ros.fros) || !std::isfinite(ros.bros)) {
    throw std::invalid_argument("rates of spread must be finite and non-negative");
  }
}

inline void validate(const FactorTuple& x) {
  for (double v : {x.x1, x.x2, x.x3, x.x4}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("adjustment factors must be finite and non-negative");
    }
  }
}

// FROS = (HROS + BROS) / (2 LB). LB is the primitive here; the flank rate is
// always derived from it.
inline double derive_flank_ros(double hros, double bros, double lb) {
  if (!(hros >= 0.0) || !(bros >= 0.0)) {
    throw std::invalid_argument("rates of spread must be non-negative");
  }
  if (!(lb >= 1.0)) {
    throw InfeasibleGeometryError("length-to-breadth ratio must be >= 1");
  }
  return (hros + bros) / (2.0 * lb);
}

// a = (HROS + BROS)/2, b = FROS, e = sqrt(1 - (b/a)^2). A triple of zero
// rates yields the degenerate circle with zero radius (ecc defined as 0).
inline EllipseRates ellipse_rates(const RosTriple& ros) {
  validate(ros);
  const double a = 0.5 * (ros.hros + ros.bros);
  if (a == 0.0) {
    if (ros.fros > 0.0) {
      throw InfeasibleGeometryError("flank rate exceeds semi-major growth rate");
    }
    return EllipseRates{0.0, 0.0, 0.0};
  }
  if (ros.fros > a) {
    throw InfeasibleGeometryError("flank rate exceeds semi-major growth rate");
  }
  const double ratio = ros.fros / a;
  const double ecc = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  return EllipseRates{a, ros.fros, ecc};
}

// Scale (hros, fros, bros) by (x1, x2, x3), then multiply the resulting
// eccentricity by x4, clamped into [0, 1 - 1e-6]. When the clamped value
// equals the raw one (x4 = 1 in particular) the rates pass through
// bit-exactly; otherwise the semi-minor rate is recomputed from the adjusted
// eccentricity.
inline EllipseRates apply_factors(const RosTriple& ros, const FactorTuple& x) {
  validate(ros);
  validate(x);
  const RosTriple scaled{x.x1 * ros.hros, x.x2 * ros.fros, x.x3 * ros.bros};
  EllipseRates er = ellipse_rates(scaled);
  const double adjusted = std::clamp(x.x4 * er.ecc, 0.0, kEccCeiling);
  if (adjusted != er.ecc) {
    er.ecc = adjusted;
    er.b_rate = er.a_rate * std::sqrt(1.0 - adjusted * adjusted);
  }
  return er;
}

// Directional rate of spread r(phi) = a (1 - e^2) / (1 - e cos phi), with phi
// in degrees measured in the ellipse frame (0 = head direction). Maximal at
// the head, minimal at the back; constant for a circle.
inline double spread_rate(const EllipseRates& er, double phi_deg) {
  if (er.a_rate == 0.0) {
    return 0.0;
  }
  const double phi = phi_deg * std::numbers::pi / 180.0;
  return er.a_rate * (1.0 - er.ecc * er.ecc) / (1.0 - er.ecc * std::cos(phi));
}

}  // namespace firecal
