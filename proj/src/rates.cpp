#include "corostab/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace corostab {

SpinFamilyCoeffs SpinFamilyCoeffs::constant(double n1, double n2, double n3) {
  std::ostringstream label;
  label.precision(17);
  label << n1 << "," << n2 << "," << n3;
  return {[n1](double, double, double) { return n1; }, [n2](double, double, double) { return n2; },
          [n3](double, double, double) { return n3; }, label.str()};
}

std::string RateKind::name() const {
  switch (tag) {
    case Tag::ZJ: return "zj";
    case Tag::GN: return "gn";
    case Tag::Log: return "log";
    case Tag::MaterialSpin: return "spin:" + coeffs.label;
    case Tag::Oldroyd: return "oldroyd";
    case Tag::Truesdell: return "truesdell";
  }
  return "?";
}

RateKind parse_rate(const std::string& text) {
  if (text == "zj") return RateKind::zj();
  if (text == "gn") return RateKind::gn();
  if (text == "log") return RateKind::log();
  if (text == "oldroyd") return RateKind::oldroyd();
  if (text == "truesdell") return RateKind::truesdell();
  if (text.rfind("spin:", 0) == 0) {
    std::istringstream in(text.substr(5));
    double nu[3];
    for (int k = 0; k < 3; ++k) {
      std::string tok;
      if (!std::getline(in, tok, ',') || tok.empty())
        throw std::invalid_argument("rate '" + text + "': expected spin:nu1,nu2,nu3");
      std::size_t used = 0;
      try {
        nu[k] = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw std::invalid_argument("rate '" + text + "': bad coefficient '" + tok + "'");
    }
    std::string rest;
    if (std::getline(in, rest))
      throw std::invalid_argument("rate '" + text + "': expected exactly three coefficients");
    return RateKind::material_spin(SpinFamilyCoeffs::constant(nu[0], nu[1], nu[2]));
  }
  throw std::invalid_argument("unknown rate '" + text + "'");
}

Vec3 invariants(const SymPD3& B) {
  const Vec3& l = B.values();
  return Vec3(l.sum(), l[0] * l[1] + l[1] * l[2] + l[2] * l[0], l.prod());
}

Skew3 material_spin_extra(const SymPD3& B, const Sym3& D, const SpinFamilyCoeffs& c) {
  const Vec3 inv = invariants(B);
  const Mat3 b = B.matrix();
  const Mat3 d = D.matrix();
  const Mat3 b2 = b * b;
  const Mat3 m = c.nu1(inv[0], inv[1], inv[2]) * skew_part(b * d) +
                 c.nu2(inv[0], inv[1], inv[2]) * skew_part(b2 * d) +
                 c.nu3(inv[0], inv[1], inv[2]) * skew_part(b2 * d * b);
  return Skew3::from_matrix(m);
}

Skew3 spin(const RateKind& kind, const KinematicState& s, const DeformationPath& path) {
  switch (kind.tag) {
    case RateKind::Tag::ZJ:
    case RateKind::Tag::Oldroyd:
    case RateKind::Tag::Truesdell:
      return s.W;
    case RateKind::Tag::GN:
      return polar_spin_fd(path, s.t);
    case RateKind::Tag::Log:
      return log_spin(s.B, s.D, s.W);
    case RateKind::Tag::MaterialSpin:
      return s.W + material_spin_extra(s.B, s.D, kind.coeffs);
  }
  return s.W;
}

Skew3 spin(const RateKind& kind, const DeformationPath& path, double t) {
  return spin(kind, state_at(path, t), path);
}

Mat3 path_derivative(const MatPath& x, double t) {
  const double dt = 1e-6 * (1.0 + std::abs(t));
  return (x(t + dt) - x(t - dt)) / (2.0 * dt);
}

Sym3 corotational_rate(const SymPath& sigma, const SpinPath& omega, double t) {
  const Mat3 sdot = path_derivative([&](double u) { return sigma(u).matrix(); }, t);
  const Mat3 s = sigma(t).matrix();
  const Mat3 o = omega(t).matrix();
  return Sym3::from_matrix(sdot - o * s + s * o);
}

Mat3 objective_rate(const MatPath& x, const RateKind& kind, const DeformationPath& path,
                    double t) {
  const KinematicState s = state_at(path, t);
  const Mat3 xdot = path_derivative(x, t);
  const Mat3 xt = x(t);
  if (kind.corotational()) {
    const Mat3 o = spin(kind, s, path).matrix();
    return xdot - o * xt + xt * o;
  }
  Mat3 r = xdot - s.L * xt - xt * s.L.transpose();
  if (kind.tag == RateKind::Tag::Truesdell) r += xt * s.D.trace();
  return r;
}

Sym3 a_apply(const SymPD3& B, const RateKind& kind, const Sym3& D) {
  const Mat3 b = B.matrix();
  const Mat3 d = D.matrix();
  switch (kind.tag) {
    case RateKind::Tag::ZJ:
      return Sym3::from_matrix(b * d + d * b);
    case RateKind::Tag::GN: {
      const Mat3 v = apply_primary(B, ScaleFunction::sqrt()).matrix();
      return Sym3::from_matrix(2.0 * v * d * v);
    }
    case RateKind::Tag::Log:
      return frechet_primary_inverse(B, ScaleFunction::log(), 2.0 * D);
    case RateKind::Tag::MaterialSpin: {
      const Mat3 y = material_spin_extra(B, D, kind.coeffs).matrix();
      return Sym3::from_matrix(b * d + d * b + b * y - y * b);
    }
    case RateKind::Tag::Oldroyd:
      return Sym3::zero();
    case RateKind::Tag::Truesdell:
      return D.trace() * B.sym();
  }
  return Sym3::zero();
}

Tensor4 a_operator(const SymPD3& B, const RateKind& kind) {
  return t4_assemble([&](const Sym3& D) { return a_apply(B, kind, D); });
}

Tensor4 a_operator_log_inverse(const SymPD3& B) {
  const Tensor4 dlog =
      t4_assemble([&](const Sym3& H) { return frechet_primary(B, ScaleFunction::log(), H); });
  return 2.0 * t4_invert(dlog);
}

Sym3 induced_apply(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind,
                   const Sym3& D) {
  if (kind.corotational()) return law.dstress(B, a_apply(B, kind, D));
  const Sym3 sigma = law.stress(B);
  const Mat3 s = sigma.matrix();
  const Mat3 d = D.matrix();
  Sym3 r = law.dstress(B, a_apply(B, RateKind::zj(), D)) - Sym3::from_matrix(d * s + s * d);
  if (kind.tag == RateKind::Tag::Truesdell) r += D.trace() * sigma;
  return r;
}

Tensor4 induced_stiffness(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind) {
  Tensor4 t = t4_assemble([&](const Sym3& D) { return induced_apply(law, B, kind, D); });
  if (!law.analytic()) t.source = Source::FiniteDifference;
  return t;
}

double noll_spin_identity_residual(const ConstitutiveLaw& law, const SymPD3& B,
                                   const Skew3& omega) {
  const Mat3 o = omega.matrix();
  const Mat3 s = law.stress(B).matrix();
  const Mat3 b = B.matrix();
  const Sym3 rhs = law.dstress(B, Sym3::from_matrix(o * b - b * o));
  return (o * s - s * o - rhs.matrix()).norm();
}

namespace {

SymPD3 b_of(const DeformationPath& path, double t) {
  const Mat3 f = path.F(t);
  return SymPD3(Sym3::from_matrix(f * f.transpose()));
}

}  // namespace

double chain_rule_residual(const ConstitutiveLaw& law, const DeformationPath& path, double t,
                           const RateKind& kind) {
  const MatPath sigma = [&](double u) { return law.stress(b_of(path, u)).matrix(); };
  const MatPath logb = [&](double u) {
    return apply_primary(b_of(path, u), ScaleFunction::log()).matrix();
  };
  const Mat3 lhs = objective_rate(sigma, kind, path, t);
  const Mat3 dlog = objective_rate(logb, kind, path, t);
  const Tensor4 j = sigma_hat_jacobian(law, b_of(path, t));
  const Mat3 rhs = t4_apply(j, Sym3::from_matrix(dlog)).matrix();
  return (lhs - rhs).norm();
}

Mat3 product_rule_defect(const ConstitutiveLaw& law1, const ConstitutiveLaw& law2,
                         const DeformationPath& path, double t, const RateKind& kind) {
  const MatPath s1 = [&](double u) { return law1.stress(b_of(path, u)).matrix(); };
  const MatPath s2 = [&](double u) { return law2.stress(b_of(path, u)).matrix(); };
  const MatPath prod = [&](double u) { return s1(u) * s2(u); };
  return objective_rate(prod, kind, path, t) - objective_rate(s1, kind, path, t) * s2(t) -
         s1(t) * objective_rate(s2, kind, path, t);
}

double product_rule_residual(const ConstitutiveLaw& law1, const ConstitutiveLaw& law2,
                             const DeformationPath& path, double t, const RateKind& kind) {
  return product_rule_defect(law1, law2, path, t, kind).norm();
}

Mat3 truesdell_product_defect(const Sym3& s1, const Sym3& s2, const Sym3& D) {
  const Mat3 mid = 2.0 * D.matrix() - D.trace() * Mat3::Identity();
  return s1.matrix() * mid * s2.matrix();
}

}  // namespace corostab
