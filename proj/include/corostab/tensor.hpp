#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace corostab {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double det)
      : std::runtime_error(what), det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric 3x3 tensor, stored as (11, 22, 33, 12, 23, 31).
class Sym3 {
 public:
  Sym3() : v_{} {}
  explicit Sym3(const std::array<double, 6>& voigt) : v_(voigt) {}

  static Sym3 from_matrix(const Mat3& m);  // takes the symmetric part
  static Sym3 identity() { return diag(1.0, 1.0, 1.0); }
  static Sym3 diag(double a, double b, double c) { return Sym3({a, b, c, 0.0, 0.0, 0.0}); }
  static Sym3 zero() { return Sym3(); }

  double operator()(int i, int j) const;
  const std::array<double, 6>& voigt() const { return v_; }
  Mat3 matrix() const;

  double trace() const { return v_[0] + v_[1] + v_[2]; }
  double norm() const;
  double det() const { return matrix().determinant(); }

  Sym3& operator+=(const Sym3& o);
  Sym3& operator-=(const Sym3& o);
  Sym3& operator*=(double s);

 private:
  std::array<double, 6> v_;
};

Sym3 operator+(Sym3 a, const Sym3& b);
Sym3 operator-(Sym3 a, const Sym3& b);
Sym3 operator-(const Sym3& a);
Sym3 operator*(double s, Sym3 a);
Sym3 operator*(Sym3 a, double s);
bool operator==(const Sym3& a, const Sym3& b);

double inner(const Sym3& a, const Sym3& b);
Sym3 dev(const Sym3& a);

/// Skew-symmetric 3x3 tensor, stored as (W12, W23, W31).
class Skew3 {
 public:
  Skew3() : w_{} {}
  Skew3(double w12, double w23, double w31) : w_{w12, w23, w31} {}

  static Skew3 from_matrix(const Mat3& m);  // takes the skew part
  Mat3 matrix() const;
  const std::array<double, 3>& components() const { return w_; }
  double norm() const { return matrix().norm(); }

 private:
  std::array<double, 3> w_;
};

Skew3 operator+(const Skew3& a, const Skew3& b);
Skew3 operator*(double s, const Skew3& a);

Mat3 sym_part(const Mat3& m);
Mat3 skew_part(const Mat3& m);

struct EigenSystem {
  Vec3 values;   // descending
  Mat3 vectors;  // columns are eigenvectors
};

EigenSystem eig_sym3(const Sym3& s);

/// Symmetric positive-definite tensor with its cached eigensystem.
class SymPD3 {
 public:
  SymPD3();
  explicit SymPD3(const Sym3& s);
  explicit SymPD3(const Mat3& m) : SymPD3(Sym3::from_matrix(m)) {}

  const Sym3& sym() const { return s_; }
  Mat3 matrix() const { return s_.matrix(); }
  const Vec3& values() const { return e_.values; }
  const Mat3& vectors() const { return e_.vectors; }
  double min_eig() const { return e_.values[2]; }
  double max_eig() const { return e_.values[0]; }

 private:
  Sym3 s_;
  EigenSystem e_;
};

bool is_spd(const Sym3& s);

/// Scalar function f with derivative, applied spectrally to symmetric tensors.
struct ScaleFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  bool positive_domain = false;

  bool defined(double x) const { return !positive_domain || x > 0.0; }

  static ScaleFunction log();
  static ScaleFunction exp();
  static ScaleFunction sqrt();
  static ScaleFunction reciprocal();
  static ScaleFunction power(double p);
};

Sym3 apply_primary(const Sym3& s, const ScaleFunction& f);
Sym3 apply_primary(const SymPD3& s, const ScaleFunction& f);

/// Divided-difference matrix of f on the spectrum (Daleckii-Krein kernel).
Mat3 divided_differences(const Vec3& lambda, const ScaleFunction& f);

Sym3 frechet_primary(const SymPD3& s, const ScaleFunction& f, const Sym3& h);
Sym3 frechet_primary(const Sym3& s, const ScaleFunction& f, const Sym3& h);

/// Inverse of H -> frechet_primary(S, f, H); requires nonvanishing divided differences.
Sym3 frechet_primary_inverse(const SymPD3& s, const ScaleFunction& f, const Sym3& h);

Vec6 mandel_encode(const Sym3& s);
Sym3 mandel_decode(const Vec6& v);
Sym3 mandel_basis(int k);

enum class Source { Analytic, FiniteDifference };

/// Linear operator Sym3 -> Sym3 in the orthonormal Mandel representation.
struct Tensor4 {
  Mat6 m = Mat6::Zero();
  Source source = Source::Analytic;

  static Tensor4 identity();
};

Tensor4 operator*(double s, const Tensor4& t);
Tensor4 operator+(const Tensor4& a, const Tensor4& b);
Tensor4 operator-(const Tensor4& a, const Tensor4& b);

using SymAction = std::function<Sym3(const Sym3&)>;

Tensor4 t4_assemble(const SymAction& action, Source source = Source::Analytic);
Sym3 t4_apply(const Tensor4& t, const Sym3& h);
double t4_scale(const Tensor4& t);
double t4_sym_min_eig(const Tensor4& t);
/// Minimum eigenvalue of the symmetric part and a unit minimizing direction.
std::pair<double, Sym3> t4_sym_min_eigpair(const Tensor4& t);
double t4_det(const Tensor4& t);
Tensor4 t4_invert(const Tensor4& t);
/// a o b, i.e. H -> a.(b.H)
Tensor4 t4_compose(const Tensor4& a, const Tensor4& b);
double t4_asymmetry(const Tensor4& t);

}  // namespace corostab
