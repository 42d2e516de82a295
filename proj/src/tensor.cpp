#include "corostab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corostab {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr int kMaxSweeps = 64;
constexpr double kRepeatedTol = 1e-8;

int slot(int i, int j) {
  if (i == j) return i;
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 3;
  if (i == 1 && j == 2) return 4;
  return 5;
}

void rotate(Mat3& a, Mat3& v, int p, int q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  Mat3 j = Mat3::Identity();
  j(p, p) = c;
  j(q, q) = c;
  j(p, q) = s;
  j(q, p) = -s;
  a = j.transpose() * a * j;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  v = v * j;
}

}  // namespace

Sym3 Sym3::from_matrix(const Mat3& m) {
  return Sym3({m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(1, 2) + m(2, 1)),
               0.5 * (m(2, 0) + m(0, 2))});
}

double Sym3::operator()(int i, int j) const { return v_[slot(i, j)]; }

Mat3 Sym3::matrix() const {
  Mat3 m;
  m << v_[0], v_[3], v_[5],
       v_[3], v_[1], v_[4],
       v_[5], v_[4], v_[2];
  return m;
}

double Sym3::norm() const { return std::sqrt(inner(*this, *this)); }

Sym3& Sym3::operator+=(const Sym3& o) {
  for (int k = 0; k < 6; ++k) v_[k] += o.v_[k];
  return *this;
}

Sym3& Sym3::operator-=(const Sym3& o) {
  for (int k = 0; k < 6; ++k) v_[k] -= o.v_[k];
  return *this;
}

Sym3& Sym3::operator*=(double s) {
  for (auto& x : v_) x *= s;
  return *this;
}

Sym3 operator+(Sym3 a, const Sym3& b) { return a += b; }
Sym3 operator-(Sym3 a, const Sym3& b) { return a -= b; }
Sym3 operator-(const Sym3& a) { return -1.0 * a; }
Sym3 operator*(double s, Sym3 a) { return a *= s; }
Sym3 operator*(Sym3 a, double s) { return a *= s; }
bool operator==(const Sym3& a, const Sym3& b) { return a.voigt() == b.voigt(); }

double inner(const Sym3& a, const Sym3& b) {
  const auto& x = a.voigt();
  const auto& y = b.voigt();
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + 2.0 * (x[3] * y[3] + x[4] * y[4] + x[5] * y[5]);
}

Sym3 dev(const Sym3& a) { return a - (a.trace() / 3.0) * Sym3::identity(); }

Skew3 Skew3::from_matrix(const Mat3& m) {
  return Skew3(0.5 * (m(0, 1) - m(1, 0)), 0.5 * (m(1, 2) - m(2, 1)), 0.5 * (m(2, 0) - m(0, 2)));
}

Mat3 Skew3::matrix() const {
  Mat3 m;
  m << 0.0, w_[0], -w_[2],
       -w_[0], 0.0, w_[1],
       w_[2], -w_[1], 0.0;
  return m;
}

Skew3 operator+(const Skew3& a, const Skew3& b) {
  return Skew3::from_matrix(a.matrix() + b.matrix());
}

Skew3 operator*(double s, const Skew3& a) { return Skew3::from_matrix(s * a.matrix()); }

Mat3 sym_part(const Mat3& m) { return 0.5 * (m + m.transpose()); }
Mat3 skew_part(const Mat3& m) { return 0.5 * (m - m.transpose()); }

EigenSystem eig_sym3(const Sym3& s) {
  Mat3 a = s.matrix();
  if (!a.allFinite()) throw DomainError("eig_sym3: non-finite input");
  Mat3 v = Mat3::Identity();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off == 0.0) {
      converged = true;
      break;
    }
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
        } else {
          rotate(a, v, p, q);
        }
      }
    }
  }
  if (!converged) throw ConvergenceError("eig_sym3: no convergence after 64 Jacobi sweeps");

  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenSystem out;
  for (int k = 0; k < 3; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    Vec3 col = v.col(idx[k]);
    int big = 0;
    for (int r = 1; r < 3; ++r)
      if (std::abs(col[r]) > std::abs(col[big])) big = r;
    if (col[big] < 0.0) col = -col;
    out.vectors.col(k) = col;
  }
  return out;
}

SymPD3::SymPD3() : s_(Sym3::identity()), e_{Vec3::Ones(), Mat3::Identity()} {}

SymPD3::SymPD3(const Sym3& s) : s_(s), e_(eig_sym3(s)) {
  if (!(e_.values[2] > 1e-14 * e_.values[0]) || !(e_.values[0] > 0.0))
    throw DomainError("SymPD3: tensor is not positive definite");
}

bool is_spd(const Sym3& s) {
  const auto e = eig_sym3(s);
  return e.values[0] > 0.0 && e.values[2] > 1e-14 * e.values[0];
}

ScaleFunction ScaleFunction::log() {
  return {"log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; }, true};
}

ScaleFunction ScaleFunction::exp() {
  return {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, false};
}

ScaleFunction ScaleFunction::sqrt() {
  return {"sqrt", [](double x) { return std::sqrt(x); },
          [](double x) { return 0.5 / std::sqrt(x); }, true};
}

ScaleFunction ScaleFunction::reciprocal() {
  return {"reciprocal", [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); },
          true};
}

ScaleFunction ScaleFunction::power(double p) {
  return {"power", [p](double x) { return std::pow(x, p); },
          [p](double x) { return p * std::pow(x, p - 1.0); }, true};
}

namespace {

Sym3 spectral(const Vec3& lambda, const Mat3& q, const ScaleFunction& f) {
  Vec3 fl;
  for (int i = 0; i < 3; ++i) {
    if (!f.defined(lambda[i]))
      throw DomainError("apply_primary: " + f.name + " undefined on the spectrum");
    fl[i] = f.f(lambda[i]);
  }
  return Sym3::from_matrix(q * fl.asDiagonal() * q.transpose());
}

}  // namespace

Sym3 apply_primary(const Sym3& s, const ScaleFunction& f) {
  const auto e = eig_sym3(s);
  return spectral(e.values, e.vectors, f);
}

Sym3 apply_primary(const SymPD3& s, const ScaleFunction& f) {
  return spectral(s.values(), s.vectors(), f);
}

Mat3 divided_differences(const Vec3& l, const ScaleFunction& f) {
  Mat3 k;
  for (int i = 0; i < 3; ++i) {
    if (!f.defined(l[i]))
      throw DomainError("frechet_primary: " + f.name + " undefined on the spectrum");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double gap = std::abs(l[i] - l[j]);
      const double scale = std::max({1.0, std::abs(l[i]), std::abs(l[j])});
      if (gap <= kRepeatedTol * scale)
        k(i, j) = f.df(0.5 * (l[i] + l[j]));
      else
        k(i, j) = (f.f(l[i]) - f.f(l[j])) / (l[i] - l[j]);
    }
  }
  return k;
}

namespace {

Sym3 schur_action(const Mat3& q, const Mat3& kernel, const Sym3& h, bool divide) {
  Mat3 hq = q.transpose() * h.matrix() * q;
  hq = divide ? Mat3(hq.cwiseQuotient(kernel)) : Mat3(hq.cwiseProduct(kernel));
  return Sym3::from_matrix(q * hq * q.transpose());
}

}  // namespace

Sym3 frechet_primary(const SymPD3& s, const ScaleFunction& f, const Sym3& h) {
  return schur_action(s.vectors(), divided_differences(s.values(), f), h, false);
}

Sym3 frechet_primary(const Sym3& s, const ScaleFunction& f, const Sym3& h) {
  const auto e = eig_sym3(s);
  return schur_action(e.vectors, divided_differences(e.values, f), h, false);
}

Sym3 frechet_primary_inverse(const SymPD3& s, const ScaleFunction& f, const Sym3& h) {
  const Mat3 k = divided_differences(s.values(), f);
  if ((k.array() == 0.0).any())
    throw SingularityError("frechet_primary_inverse: vanishing divided difference", 0.0);
  return schur_action(s.vectors(), k, h, true);
}

Vec6 mandel_encode(const Sym3& s) {
  const auto& v = s.voigt();
  Vec6 out;
  out << v[0], v[1], v[2], kSqrt2 * v[3], kSqrt2 * v[4], kSqrt2 * v[5];
  return out;
}

Sym3 mandel_decode(const Vec6& v) {
  return Sym3({v[0], v[1], v[2], v[3] / kSqrt2, v[4] / kSqrt2, v[5] / kSqrt2});
}

Sym3 mandel_basis(int k) {
  Vec6 e = Vec6::Zero();
  e[k] = 1.0;
  return mandel_decode(e);
}

Tensor4 Tensor4::identity() { return Tensor4{Mat6::Identity(), Source::Analytic}; }

Tensor4 operator*(double s, const Tensor4& t) { return Tensor4{s * t.m, t.source}; }

namespace {
Source merge(Source a, Source b) {
  return (a == Source::FiniteDifference || b == Source::FiniteDifference) ? Source::FiniteDifference
                                                                          : Source::Analytic;
}
}  // namespace

Tensor4 operator+(const Tensor4& a, const Tensor4& b) {
  return Tensor4{a.m + b.m, merge(a.source, b.source)};
}

Tensor4 operator-(const Tensor4& a, const Tensor4& b) {
  return Tensor4{a.m - b.m, merge(a.source, b.source)};
}

Tensor4 t4_assemble(const SymAction& action, Source source) {
  Tensor4 t;
  t.source = source;
  for (int k = 0; k < 6; ++k) t.m.col(k) = mandel_encode(action(mandel_basis(k)));
  return t;
}

Sym3 t4_apply(const Tensor4& t, const Sym3& h) { return mandel_decode(t.m * mandel_encode(h)); }

double t4_scale(const Tensor4& t) { return t.m.norm() / std::sqrt(6.0); }

double t4_sym_min_eig(const Tensor4& t) { return t4_sym_min_eigpair(t).first; }

std::pair<double, Sym3> t4_sym_min_eigpair(const Tensor4& t) {
  const Mat6 s = 0.5 * (t.m + t.m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat6> es(s);
  return {es.eigenvalues()[0], mandel_decode(es.eigenvectors().col(0))};
}

double t4_det(const Tensor4& t) { return t.m.partialPivLu().determinant(); }

Tensor4 t4_invert(const Tensor4& t) {
  const double det = t4_det(t);
  const double scale = t4_scale(t);
  if (!(std::abs(det) > 1e-12 * std::pow(scale, 6)))
    throw SingularityError("t4_invert: singular operator", det);
  return Tensor4{t.m.partialPivLu().inverse(), t.source};
}

Tensor4 t4_compose(const Tensor4& a, const Tensor4& b) {
  return Tensor4{a.m * b.m, merge(a.source, b.source)};
}

double t4_asymmetry(const Tensor4& t) { return (t.m - t.m.transpose()).norm(); }

}  // namespace corostab
