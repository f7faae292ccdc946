#ifndef HELIO_WEALTH_HPP
#define HELIO_WEALTH_HPP

#include <cmath>

namespace helio {

// Four-component wealth quantity: ordinary capital/labour (kr, lr) and
// space/human capital (ks, ls). Positive components are revenues, negative
// are costs; magnitudes are sign-blind.
struct WealthVector {
  double kr = 0.0;
  double lr = 0.0;
  double ks = 0.0;
  double ls = 0.0;

  // m = sqrt(kr^2 + lr^2), the production-plane magnitude.
  double production_magnitude() const { return std::hypot(kr, lr); }
  // t = sqrt(ks^2 + ls^2), the time-axis magnitude.
  double time_magnitude() const { return std::hypot(ks, ls); }
  // Euclidean norm over all four components; the edge/chain measure.
  // Pure trace edges reduce to m, pure time edges to t.
  double magnitude() const { return std::sqrt(kr * kr + lr * lr + ks * ks + ls * ls); }

  WealthVector& operator+=(const WealthVector& o) {
    kr += o.kr;
    lr += o.lr;
    ks += o.ks;
    ls += o.ls;
    return *this;
  }
  WealthVector& operator-=(const WealthVector& o) {
    kr -= o.kr;
    lr -= o.lr;
    ks -= o.ks;
    ls -= o.ls;
    return *this;
  }
  friend WealthVector operator+(WealthVector a, const WealthVector& b) { return a += b; }
  friend WealthVector operator-(WealthVector a, const WealthVector& b) { return a -= b; }
  friend WealthVector operator*(WealthVector a, double c) {
    a.kr *= c;
    a.lr *= c;
    a.ks *= c;
    a.ls *= c;
    return a;
  }
  friend WealthVector operator*(double c, WealthVector a) { return a * c; }
  friend bool operator==(const WealthVector& a, const WealthVector& b) {
    return a.kr == b.kr && a.lr == b.lr && a.ks == b.ks && a.ls == b.ls;
  }
};

struct Magnitudes {
  double m = 0.0;  // production plane
  double t = 0.0;  // time axis
};

Magnitudes magnitudes(const WealthVector& v);

// Multipliers applied to the wealth basis after macro feedback:
// r_scale on the kr axis, w_scale on the lr axis, rho_scale on (ks, ls).
struct BasisScale {
  double r_scale = 1.0;
  double w_scale = 1.0;
  double rho_scale = 1.0;

  BasisScale composed(const BasisScale& o) const {
    return {r_scale * o.r_scale, w_scale * o.w_scale, rho_scale * o.rho_scale};
  }
};

// Throws std::invalid_argument if any scale component is not positive.
WealthVector rescale(const WealthVector& v, const BasisScale& s);

}  // namespace helio

#endif  // HELIO_WEALTH_HPP
