#include "corostab/pathsim.hpp"

#include <algorithm>
#include <cmath>

namespace corostab {

StiffnessSource StiffnessSource::zero_grade(double mu, double lambda) {
  if (!(mu > 0.0 && 2.0 * mu + 3.0 * lambda > 0.0))
    throw std::invalid_argument("zero-grade stiffness needs mu > 0 and 2 mu + 3 lambda > 0");
  StiffnessSource s;
  s.tag = Tag::ZeroGrade;
  s.mu = mu;
  s.lambda = lambda;
  return s;
}

StiffnessSource StiffnessSource::induced(ConstitutiveLaw law) {
  StiffnessSource s;
  s.tag = Tag::Induced;
  s.law = std::move(law);
  return s;
}

StiffnessSource StiffnessSource::none() { return {}; }

std::string StiffnessSource::name() const {
  switch (tag) {
    case Tag::ZeroGrade: return "zero-grade";
    case Tag::Induced: return "induced";
    case Tag::None: return "none";
  }
  return "?";
}

namespace {

struct Rhs {
  const StiffnessSource& source;
  const RateKind& kind;
  const DeformationPath& path;
  double asym = 0.0;

  Sym3 operator()(double t, const Sym3& sigma) {
    const KinematicState s = state_at(path, t);
    Sym3 hd;
    switch (source.tag) {
      case StiffnessSource::Tag::ZeroGrade:
        hd = 2.0 * source.mu * s.D + (source.lambda * s.D.trace()) * Sym3::identity();
        break;
      case StiffnessSource::Tag::Induced:
        hd = induced_apply(*source.law, s.B, kind, s.D);
        break;
      case StiffnessSource::Tag::None:
        break;
    }
    const Mat3 sg = sigma.matrix();
    Mat3 full = hd.matrix();
    if (kind.corotational()) {
      const Mat3 o = spin(kind, s, path).matrix();
      full += o * sg - sg * o;
    } else {
      full += s.L * sg + sg * s.L.transpose();
      if (kind.tag == RateKind::Tag::Truesdell) full -= s.D.trace() * sg;
    }
    asym = std::max(asym, skew_part(full).norm());
    return Sym3::from_matrix(full);
  }
};

StepDiagnostics diagnose(const Sym3& s, double asym) {
  return {s.trace(), s.norm(), s.det(), asym};
}

bool finite(const Sym3& s) {
  for (double x : s.voigt())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

Trajectory integrate(const StiffnessSource& source, const RateKind& kind,
                     const DeformationPath& path, double t_end, double dt, const Sym3& sigma0) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate: t_end must be nonnegative");
  if (source.tag == StiffnessSource::Tag::Induced && !source.law)
    throw std::invalid_argument("integrate: induced stiffness without a law");

  const std::size_t n =
      t_end == 0.0 ? 0 : static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
  const double h = n == 0 ? 0.0 : t_end / static_cast<double>(n);

  Trajectory tr;
  tr.t.reserve(n + 1);
  Rhs f{source, kind, path};
  Sym3 y = sigma0;
  tr.t.push_back(0.0);
  tr.sigma.push_back(y);
  tr.B.push_back(state_at(path, 0.0).B.sym());
  tr.diag.push_back(diagnose(y, 0.0));

  for (std::size_t k = 0; k < n; ++k) {
    const double t = h * static_cast<double>(k);
    const double tn = h * static_cast<double>(k + 1);
    f.asym = 0.0;
    Sym3 next;
    Sym3 bn;
    try {
      const Sym3 k1 = f(t, y);
      const Sym3 k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
      const Sym3 k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
      const Sym3 k4 = f(t + h, y + h * k3);
      next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      bn = state_at(path, tn).B.sym();
    } catch (const DomainError& e) {
      throw DivergenceError(std::string("integrate: ") + e.what(), k, t, y);
    }
    if (!finite(next))
      throw DivergenceError("integrate: non-finite state", k, t, y);
    y = next;
    tr.t.push_back(tn);
    tr.sigma.push_back(y);
    tr.B.push_back(bn);
    tr.diag.push_back(diagnose(y, f.asym));
  }
  return tr;
}

double consistency_error(const ConstitutiveLaw& law, const RateKind& kind,
                         const DeformationPath& path, double t_end, double dt) {
  const Sym3 sigma0 = law.stress(state_at(path, 0.0).B);
  const Trajectory tr = integrate(StiffnessSource::induced(law), kind, path, t_end, dt, sigma0);
  double err = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const Sym3 exact = law.stress(SymPD3(tr.B[i]));
    err = std::max(err, (tr.sigma[i] - exact).norm() / (1.0 + exact.norm()));
  }
  return err;
}

InvariantDrift invariant_drift(const Trajectory& traj) {
  InvariantDrift d;
  if (traj.diag.empty()) return d;
  const auto& first = traj.diag.front();
  for (const auto& s : traj.diag) {
    d.trace = std::max(d.trace, std::abs(s.trace - first.trace));
    d.norm = std::max(d.norm, std::abs(s.norm - first.norm));
    d.det = std::max(d.det, std::abs(s.det - first.det));
  }
  return d;
}

}  // namespace corostab
