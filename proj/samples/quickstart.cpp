// Builds a few double-constant matrices, applies closed-form operations, and
// centers a small data set.
#include <iostream>
#include <vector>

#include "dcm/dcm.hpp"

int main() {
  using M = dcm::DoubleConstant<double>;

  const M m(3, 2.0, 1.0);
  std::cout << m << "\n";
  std::cout << "  eigenvalues: lambda* = " << m.lambda_major() << " (x" << m.n() - 1
            << "), lambda** = " << m.lambda_minor() << "\n";
  std::cout << "  determinant: " << dcm::determinant(m) << "\n";
  std::cout << "  class:       " << dcm::classify(m) << "\n";
  std::cout << "  inverse:     " << dcm::inverse(m) << "\n";
  std::cout << "  sqrt:        " << dcm::sqrt_principal(m) << "\n";

  const auto c = M::centering(4);
  std::cout << "\ncentering " << c << " is " << dcm::classify(c) << " with rank " << dcm::rank(c) << "\n";

  const std::vector<double> x{1.0, 2.0, 3.0, 6.0};
  const auto cx = dcm::apply(c, std::span<const double>(x));
  std::cout << "  C*x =";
  for (double v : cx) std::cout << " " << v;
  std::cout << "\n  sum of squares = " << dcm::sum_of_squares(x) << ", s^2 = " << dcm::sample_variance(x) << "\n";

  const auto df = dcm::effective_df(x.size(), 0.25);
  std::cout << "  with rho = 0.25: df_eff = " << df.df_eff << ", adjusted s^2 = "
            << dcm::adjusted_sample_variance(x, 0.25) << "\n";

  const std::vector<std::vector<double>> groups{{1.0, 2.0}, {4.0, 6.0}};
  const auto ss = dcm::pooled_ss_decomposition(std::span<const std::vector<double>>(groups));
  std::cout << "\ngroups (1,2)|(4,6): pooled " << ss.pooled_ss << ", between " << ss.between_term << "\n";
  return 0;
}
