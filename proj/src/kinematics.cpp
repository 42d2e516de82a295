#include "corostab/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace corostab {

namespace {

Mat3 spin_z(double omega) {
  Mat3 z = Mat3::Zero();
  z(0, 1) = -omega;
  z(1, 0) = omega;
  return z;
}

void require_keys(const std::string& name, const Params& given,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : given) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("path '" + name + "': unknown parameter '" + k + "'");
  }
}

double get(const Params& p, const char* key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

Mat3 rotation_about(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

DeformationPath static_path() {
  return {"static", {}, [](double) -> Mat3 { return Mat3::Identity(); },
          [](double) -> Mat3 { return Mat3::Zero(); }};
}

DeformationPath shear_path(double gamma) {
  DeformationPath p;
  p.name = "shear";
  p.params = {{"gamma", gamma}};
  p.F = [gamma](double t) -> Mat3 {
    Mat3 f = Mat3::Identity();
    f(0, 1) = gamma * t;
    return f;
  };
  p.Fdot = [gamma](double) -> Mat3 {
    Mat3 f = Mat3::Zero();
    f(0, 1) = gamma;
    return f;
  };
  return p;
}

DeformationPath uniaxial_path(double a) {
  DeformationPath p;
  p.name = "uniaxial";
  p.params = {{"a", a}};
  p.F = [a](double t) -> Mat3 { return Vec3(1.0 + a * t, 1.0, 1.0).asDiagonal(); };
  p.Fdot = [a](double) -> Mat3 { return Vec3(a, 0.0, 0.0).asDiagonal(); };
  return p;
}

DeformationPath triaxial_path(double a1, double a2, double a3) {
  DeformationPath p;
  p.name = "triaxial";
  p.params = {{"a1", a1}, {"a2", a2}, {"a3", a3}};
  const Vec3 a(a1, a2, a3);
  p.F = [a](double t) -> Mat3 { return (a * t).array().exp().matrix().asDiagonal(); };
  p.Fdot = [a](double t) -> Mat3 {
    return (a.array() * (a * t).array().exp()).matrix().asDiagonal();
  };
  return p;
}

DeformationPath rotation_path(double omega) {
  DeformationPath p;
  p.name = "rotation";
  p.params = {{"omega", omega}};
  p.F = [omega](double t) -> Mat3 { return rotation_about(Vec3::UnitZ(), omega * t); };
  p.Fdot = [omega](double t) -> Mat3 {
    return spin_z(omega) * rotation_about(Vec3::UnitZ(), omega * t);
  };
  return p;
}

DeformationPath rotation_shear_path(double omega, double gamma) {
  const auto rot = rotation_path(omega);
  const auto sh = shear_path(gamma);
  DeformationPath p;
  p.name = "rotation-shear";
  p.params = {{"omega", omega}, {"gamma", gamma}};
  p.F = [rot, sh](double t) -> Mat3 { return rot.F(t) * sh.F(t); };
  p.Fdot = [rot, sh](double t) -> Mat3 {
    return rot.Fdot(t) * sh.F(t) + rot.F(t) * sh.Fdot(t);
  };
  return p;
}

DeformationPath rotated(const DeformationPath& base, const Mat3& q0) {
  DeformationPath p = base;
  p.name = base.name + "-rotated";
  p.F = [base, q0](double t) -> Mat3 { return q0 * base.F(t); };
  p.Fdot = [base, q0](double t) -> Mat3 { return q0 * base.Fdot(t); };
  return p;
}

std::vector<std::string> path_names() {
  return {"static", "shear", "uniaxial", "triaxial", "rotation", "rotation-shear"};
}

DeformationPath make_path(const std::string& name, const Params& params) {
  if (name == "static") {
    require_keys(name, params, {});
    return static_path();
  }
  if (name == "shear") {
    require_keys(name, params, {"gamma"});
    return shear_path(get(params, "gamma", 1.0));
  }
  if (name == "uniaxial") {
    require_keys(name, params, {"a"});
    return uniaxial_path(get(params, "a", 1.0));
  }
  if (name == "triaxial") {
    require_keys(name, params, {"a1", "a2", "a3"});
    return triaxial_path(get(params, "a1", 0.5), get(params, "a2", -0.2), get(params, "a3", 0.1));
  }
  if (name == "rotation") {
    require_keys(name, params, {"omega"});
    return rotation_path(get(params, "omega", 1.0));
  }
  if (name == "rotation-shear") {
    require_keys(name, params, {"omega", "gamma"});
    return rotation_shear_path(get(params, "omega", 1.0), get(params, "gamma", 1.0));
  }
  throw std::invalid_argument("unknown path '" + name + "'");
}

KinematicState state_at(const DeformationPath& path, double t) {
  KinematicState s;
  s.t = t;
  s.F = path.F(t);
  s.Fdot = path.Fdot(t);
  const double det = s.F.determinant();
  if (!(det > 1e-12)) throw DomainError("state_at: det F is not positive");

  s.B = SymPD3(Sym3::from_matrix(s.F * s.F.transpose()));
  s.V = SymPD3(apply_primary(s.B, ScaleFunction::sqrt()));
  const Mat3 vinv = apply_primary(s.B, ScaleFunction::power(-0.5)).matrix();
  s.R = vinv * s.F;
  s.L = s.Fdot * s.F.inverse();
  s.D = Sym3::from_matrix(s.L);
  s.W = Skew3::from_matrix(s.L);
  return s;
}

Skew3 polar_spin_fd(const DeformationPath& path, double t, double dt) {
  if (dt <= 0.0) dt = 1e-5 * (1.0 + std::abs(t));
  const Mat3 rp = state_at(path, t + dt).R;
  const Mat3 rm = state_at(path, t - dt).R;
  const Mat3 r = state_at(path, t).R;
  const Mat3 rdot = (rp - rm) / (2.0 * dt);
  return Skew3::from_matrix(rdot * r.transpose());
}

Skew3 log_spin(const SymPD3& B, const Sym3& D, const Skew3& W) {
  const Vec3& l = B.values();
  const Mat3& q = B.vectors();
  const Mat3 dq = q.transpose() * D.matrix() * q;
  Mat3 extra = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double r = l[i] / l[j];
      if (std::abs(r - 1.0) < 1e-8) continue;
      const double c = (1.0 + r) / (1.0 - r) + 2.0 / std::log(r);
      // B_i D B_j in the eigenbasis is dq(i, j) e_i e_j^T
      extra += c * dq(i, j) * q.col(i) * q.col(j).transpose();
    }
  }
  return W + Skew3::from_matrix(extra);
}

double dienes_residual(const KinematicState& s, const Skew3& omega) {
  const Mat3 b = s.B.matrix();
  const Mat3 v = s.V.matrix();
  const Mat3 o = omega.matrix();
  const Mat3 r = s.L * b + b * s.L.transpose() - o * b + b * o - 2.0 * v * s.D.matrix() * v;
  return r.norm();
}

}  // namespace corostab
