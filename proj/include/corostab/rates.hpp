#pragma once

#include <functional>
#include <string>

#include "corostab/constitutive.hpp"
#include "corostab/kinematics.hpp"
#include "corostab/tensor.hpp"

namespace corostab {

/// nu_k(I1, I2, I3) coefficients of the material-spin family.
struct SpinFamilyCoeffs {
  using Coeff = std::function<double(double, double, double)>;
  Coeff nu1;
  Coeff nu2;
  Coeff nu3;
  std::string label;

  static SpinFamilyCoeffs constant(double n1, double n2, double n3);
};

struct RateKind {
  enum class Tag { ZJ, GN, Log, MaterialSpin, Oldroyd, Truesdell };
  Tag tag = Tag::ZJ;
  SpinFamilyCoeffs coeffs;

  static RateKind zj() { return {Tag::ZJ, {}}; }
  static RateKind gn() { return {Tag::GN, {}}; }
  static RateKind log() { return {Tag::Log, {}}; }
  static RateKind oldroyd() { return {Tag::Oldroyd, {}}; }
  static RateKind truesdell() { return {Tag::Truesdell, {}}; }
  static RateKind material_spin(SpinFamilyCoeffs c) { return {Tag::MaterialSpin, std::move(c)}; }

  bool corotational() const { return tag != Tag::Oldroyd && tag != Tag::Truesdell; }
  std::string name() const;
};

/// Parses "zj" | "gn" | "log" | "spin:n1,n2,n3" | "oldroyd" | "truesdell".
RateKind parse_rate(const std::string& text);

/// I1 = tr B, I2 = tr Cof B, I3 = det B
Vec3 invariants(const SymPD3& B);

/// nu1 skew(BD) + nu2 skew(B^2 D) + nu3 skew(B^2 D B)
Skew3 material_spin_extra(const SymPD3& B, const Sym3& D, const SpinFamilyCoeffs& c);

/// Spin of a corotational rate at the given state. GN needs the path for R(t).
Skew3 spin(const RateKind& kind, const KinematicState& s, const DeformationPath& path);
Skew3 spin(const RateKind& kind, const DeformationPath& path, double t);

using SymPath = std::function<Sym3(double)>;
using MatPath = std::function<Mat3(double)>;
using SpinPath = std::function<Skew3(double)>;

/// Central difference of a path, step dt = 1e-6 (1 + |t|).
Mat3 path_derivative(const MatPath& x, double t);

/// Sigma_dot(t) - Omega(t) Sigma(t) + Sigma(t) Omega(t)
Sym3 corotational_rate(const SymPath& sigma, const SpinPath& omega, double t);

/// Rate of a (not necessarily symmetric) tensor path for any kind, including the
/// Oldroyd and Truesdell controls.
Mat3 objective_rate(const MatPath& x, const RateKind& kind, const DeformationPath& path, double t);

/// A(B).D, the rate of B induced by stretching D.
Sym3 a_apply(const SymPD3& B, const RateKind& kind, const Sym3& D);
Tensor4 a_operator(const SymPD3& B, const RateKind& kind);
/// Log-rate kinematic operator assembled through a 6x6 inverse of D_B log B.
Tensor4 a_operator_log_inverse(const SymPD3& B);

/// H(B).D for the given law and rate.
Sym3 induced_apply(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind,
                   const Sym3& D);
Tensor4 induced_stiffness(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind);

double noll_spin_identity_residual(const ConstitutiveLaw& law, const SymPD3& B,
                                   const Skew3& omega);

double chain_rule_residual(const ConstitutiveLaw& law, const DeformationPath& path, double t,
                           const RateKind& kind);

/// D[s1 s2] - D[s1] s2 - s1 D[s2] along the path.
Mat3 product_rule_defect(const ConstitutiveLaw& law1, const ConstitutiveLaw& law2,
                         const DeformationPath& path, double t, const RateKind& kind);
double product_rule_residual(const ConstitutiveLaw& law1, const ConstitutiveLaw& law2,
                             const DeformationPath& path, double t, const RateKind& kind);
/// s1 (2 D - 1 tr D) s2
Mat3 truesdell_product_defect(const Sym3& s1, const Sym3& s2, const Sym3& D);

}  // namespace corostab
