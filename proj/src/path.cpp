#include "caustica/path.hpp"

namespace caustica {

ManifoldPath ManifoldPath::straight(const Vec& from, const Vec& to) {
  return {[from, to](double t) { return Vec((1.0 - t) * from + t * to); }};
}

ManifoldPath ManifoldPath::constant(const Vec& at) {
  return {[at](double) { return at; }};
}

ManifoldPath ManifoldPath::concat(const ManifoldPath& first, const ManifoldPath& second) {
  return {[first, second](double t) {
    return t <= 0.5 ? first.gamma(2.0 * t) : second.gamma(2.0 * t - 1.0);
  }};
}

ManifoldPath ManifoldPath::reversed() const {
  return {[g = gamma](double t) { return g(1.0 - t); }};
}

ManifoldPath ManifoldPath::reparametrized(std::function<double(double)> s) const {
  return {[g = gamma, s = std::move(s)](double t) { return g(s(t)); }};
}

}  // namespace caustica
