#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "corostab/tensor.hpp"

namespace corostab {

using Params = std::map<std::string, double>;

/// Time-parametrized deformation gradient with its analytic rate.
struct DeformationPath {
  std::string name;
  Params params;
  std::function<Mat3(double)> F;
  std::function<Mat3(double)> Fdot;
};

DeformationPath static_path();
DeformationPath shear_path(double gamma);
DeformationPath uniaxial_path(double a);
DeformationPath triaxial_path(double a1, double a2, double a3);
DeformationPath rotation_path(double omega);
DeformationPath rotation_shear_path(double omega, double gamma);
/// The path t -> Q0 F(t) for a constant rotation Q0.
DeformationPath rotated(const DeformationPath& base, const Mat3& q0);

/// Builds a named path; unknown names or parameters raise std::invalid_argument.
DeformationPath make_path(const std::string& name, const Params& params);
std::vector<std::string> path_names();

Mat3 rotation_about(const Vec3& axis, double angle);

struct KinematicState {
  double t = 0.0;
  Mat3 F = Mat3::Identity();
  Mat3 Fdot = Mat3::Zero();
  SymPD3 B;
  SymPD3 V;
  Mat3 R = Mat3::Identity();
  Mat3 L = Mat3::Zero();
  Sym3 D;
  Skew3 W;
};

KinematicState state_at(const DeformationPath& path, double t);

/// Central-difference approximation of Rdot R^T, skew-symmetrized.
Skew3 polar_spin_fd(const DeformationPath& path, double t, double dt = -1.0);

Skew3 log_spin(const SymPD3& B, const Sym3& D, const Skew3& W);

/// || L B + B L^T - Omega B + B Omega - 2 V D V ||
double dienes_residual(const KinematicState& s, const Skew3& omega);

}  // namespace corostab
