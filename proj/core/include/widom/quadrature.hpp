#pragma once

#include <vector>

namespace widom {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points. Rules are cached per order and
/// the returned reference stays valid for the program lifetime.
const GaussRule& gauss_legendre(int order);

/// Nodes and weights mapped to [a, b].
void gauss_legendre_interval(int order, double a, double b,
                             std::vector<double>& x, std::vector<double>& w);

}  // namespace widom
