#include "helio/wealth.hpp"

#include <stdexcept>

namespace helio {

Magnitudes magnitudes(const WealthVector& v) {
  return {v.production_magnitude(), v.time_magnitude()};
}

WealthVector rescale(const WealthVector& v, const BasisScale& s) {
  if (!(s.r_scale > 0.0) || !(s.w_scale > 0.0) || !(s.rho_scale > 0.0)) {
    throw std::invalid_argument("rescale: basis scale components must be positive");
  }
  return {v.kr * s.r_scale, v.lr * s.w_scale, v.ks * s.rho_scale, v.ls * s.rho_scale};
}

}  // namespace helio
