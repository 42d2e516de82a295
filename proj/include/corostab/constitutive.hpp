#pragma once

#include <functional>
#include <string>
#include <vector>

#include "corostab/kinematics.hpp"
#include "corostab/tensor.hpp"

namespace corostab {

class NotFoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Isotropic Cauchy-elastic law B -> sigma(B).
struct ConstitutiveLaw {
  std::string name;
  std::string description;
  Params params;
  std::function<Sym3(const SymPD3&)> sigma;
  /// (B, H) -> D_B sigma(B).H; left empty when only the FD route exists.
  std::function<Sym3(const SymPD3&, const Sym3&)> dsigma;
  bool claims_invertible = false;

  Sym3 stress(const SymPD3& B) const { return sigma(B); }
  Sym3 dstress(const SymPD3& B, const Sym3& H) const;
  /// D_B sigma(B) as an operator.
  Tensor4 tangent(const SymPD3& B) const;
  bool analytic() const { return static_cast<bool>(dsigma); }
};

std::vector<std::string> law_names();
/// Builds a catalog law with default parameters overridden by `overrides`.
ConstitutiveLaw make_law(const std::string& name, const Params& overrides = {});
std::vector<ConstitutiveLaw> law_catalog();

/// sigma = B^2, used as a chain-rule control.
ConstitutiveLaw square_law();
/// sigma = (tr(B - 1))^3 1, a law with singular derivative at B = 1.
ConstitutiveLaw cubic_trace_law();

/// Central differences of sigma along the six Mandel basis directions.
Tensor4 dsigma_fd(const ConstitutiveLaw& law, const SymPD3& B);

/// D_{log B} sigma_hat(log B) = D_B sigma(B) o (D_B log B)^{-1}.
Tensor4 sigma_hat_jacobian(const ConstitutiveLaw& law, const SymPD3& B);

/// Principal Cauchy stresses at principal stretches (l1, l2, l3), paired to axes.
Vec3 principal_stresses(const ConstitutiveLaw& law, double l1, double l2, double l3);

/// Gradient of Psi(B) = mu ||log B||^2, i.e. 2 mu log B B^{-1}.
Sym3 log_energy_gradient(const SymPD3& B, double mu);

/// Volumetric stored energy h(det F) with derivatives.
struct ScalarVolLaw {
  std::string name;
  std::function<double(double)> h;
  std::function<double(double)> dh;
  std::function<double(double)> d2h;

  static ScalarVolLaw quadratic(double a, double b);
  static ScalarVolLaw log_squared();
  static ScalarVolLaw exp_log_squared();
};

}  // namespace corostab
