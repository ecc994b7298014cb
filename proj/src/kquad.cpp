#include "ptspec/kquad.hpp"

#include <algorithm>
#include <cmath>

namespace ptspec {

namespace {

// Trapezoid rule on [lo, hi] with m >= 2 nodes, appended to the quadrature.
void append_segment(KQuadrature& q, double lo, double hi, int m) {
  const double d = (hi - lo) / (m - 1);
  for (int i = 0; i < m; ++i) {
    q.nodes.push_back(lo + d * i);
    q.weights.push_back((i == 0 || i == m - 1) ? 0.5 * d : d);
  }
}

}  // namespace

KQuadrature KQuadrature::full_range(double k_max, double extent, double refine) {
  if (!(k_max > 0.0) || !(extent > 0.0) || !(refine >= 1.0))
    throw InvalidParameter("KQuadrature::full_range: bad parameters");
  const double target = max_spacing(extent) / refine;
  int m = static_cast<int>(std::ceil(2.0 * k_max / target)) + 1;
  if (m % 2 == 1) ++m;  // even count keeps k = 0 off the node set
  KQuadrature q;
  q.nodes.reserve(m);
  q.weights.reserve(m);
  append_segment(q, -k_max, k_max, m);
  return q;
}

KQuadrature KQuadrature::low_energy(double extent) {
  KQuadrature q = full_range(1.0, extent);
  q.band = 0;
  return q;
}

KQuadrature KQuadrature::dyadic_band(int j, double extent, int min_nodes_per_side) {
  const double k_lo = std::pow(2.0, (j - 2) / 2.0);
  const double k_hi = std::pow(2.0, j / 2.0);
  const double target = max_spacing(extent);
  const int m = std::max(min_nodes_per_side,
                         static_cast<int>(std::ceil((k_hi - k_lo) / target)) + 1);
  KQuadrature q;
  q.nodes.reserve(2 * m);
  q.weights.reserve(2 * m);
  append_segment(q, -k_hi, -k_lo, m);
  append_segment(q, k_lo, k_hi, m);
  q.band = j;
  return q;
}

double KQuadrature::spacing_bound() const {
  double worst = 0.0;
  for (size_t i = 1; i < nodes.size(); ++i) {
    const double gap = nodes[i] - nodes[i - 1];
    // the gap between the negative and positive segments is not a spacing
    if (nodes[i - 1] < 0.0 && nodes[i] > 0.0 && weights[i - 1] < 0.6 * gap) continue;
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace ptspec
