#include "aa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "aa/errors.hpp"

namespace aa {

namespace {

struct LegendreValue {
  double p;
  double dp;
};

// P_4 and its derivative by the three-term recurrence.
LegendreValue legendre4(double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= 4; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = 4.0 * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

double bisect_root(double lo, double hi) {
  double flo = legendre4(lo).p;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = legendre4(mid).p;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GaussLegendre4 build_rule() {
  // Each bracket holds exactly one sign change of P_4 (roots near +-0.34, +-0.86).
  const std::array<std::pair<double, double>, 2> brackets{{{0.1, 0.6}, {0.6, 0.99}}};
  GaussLegendre4 rule{};
  for (std::size_t i = 0; i < 2; ++i) {
    const double r = bisect_root(brackets[i].first, brackets[i].second);
    const double dp = legendre4(r).dp;
    const double w = 2.0 / ((1.0 - r * r) * dp * dp);
    rule.nodes[1 - i] = -r;
    rule.weights[1 - i] = w;
    rule.nodes[2 + i] = r;
    rule.weights[2 + i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre4& gauss_legendre4() {
  static const GaussLegendre4 rule = build_rule();
  return rule;
}

QuadratureRule gauss_legendre_composite(std::size_t n) {
  if (n == 0 || n % 4 != 0)
    throw Error(ErrorCode::InvalidSize, "quadrature size must be a positive multiple of 4, got " +
                                           std::to_string(n));
  const auto& base = gauss_legendre4();
  const std::size_t panels = n / 4;
  const double h = 1.0 / static_cast<double>(panels);

  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (std::size_t s = 0; s < panels; ++s) {
    const double left = static_cast<double>(s) * h;
    for (std::size_t j = 0; j < 4; ++j)
      pts.emplace_back(left + 0.5 * h * (base.nodes[j] + 1.0), 0.5 * h * base.weights[j]);
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (const auto& [x, w] : pts) {
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
  }
  return rule;
}

}  // namespace aa
