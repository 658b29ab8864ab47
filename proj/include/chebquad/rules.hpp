#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chebquad/chebcore.hpp"
#include "chebquad/moments.hpp"

namespace chebquad {

/// An n-point rule I_n[f] = sum_j weights[j] f(nodes[j]) for int w(x) f(x) dx.
struct QuadratureRule {
  Family family = Family::GaussLegendre;
  std::size_t n = 0;
  WeightSpec weight;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Interpolatory Fejer1 / Fejer2 / Clenshaw-Curtis rule for the given weight.
/// The weights are the transpose of the interpolation transform applied to the
/// modified moments M_0..M_{n-1} (or G_0..G_{n-1}), so that
/// apply(rule, f) == sum_j b_j(f) m_j. Requires n >= 2.
QuadratureRule build_weighted_rule(Family family, std::size_t n, const WeightSpec& weight);

/// Same, with caller-supplied moments (at least n of them).
QuadratureRule build_weighted_rule(Family family, std::size_t n, const WeightSpec& weight,
                                   std::span<const double> moments);

/// n-point Gauss-Legendre rule (w == 1), nodes ascending.
///
/// Each node in the left half starts from x = -cos(theta_k),
///   theta_k = phi_k + cot(phi_k) / (2 (2n+1)^2),  phi_k = (4k-1) pi / (4n+2),
/// and is refined by Newton's method on P_n evaluated by its three-term
/// recurrence; the right half is mirrored. Weights are 2 / ((1-x^2) P_n'(x)^2).
/// Throws NumericalFailure if a node needs more than 20 Newton steps.
QuadratureRule gauss_legendre(std::size_t n);

/// sum_j w_j f(x_j) with compensated summation. Throws std::domain_error when
/// f is not finite at a node.
double apply(const QuadratureRule& rule, const std::function<double(double)>& f);

/// sum_j |w_j|
double weight_abs_sum(const QuadratureRule& rule);

}  // namespace chebquad
