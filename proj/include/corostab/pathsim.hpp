#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corostab/constitutive.hpp"
#include "corostab/kinematics.hpp"
#include "corostab/rates.hpp"

namespace corostab {

struct StiffnessSource {
  enum class Tag { ZeroGrade, Induced, None };
  Tag tag = Tag::None;
  double mu = 0.0;
  double lambda = 0.0;
  std::optional<ConstitutiveLaw> law;

  /// Constant isotropic stiffness 2 mu D + lambda tr(D) 1; needs mu > 0, 2 mu + 3 lambda > 0.
  static StiffnessSource zero_grade(double mu, double lambda);
  static StiffnessSource induced(ConstitutiveLaw law);
  /// H = 0, pure corotation of the initial stress.
  static StiffnessSource none();

  std::string name() const;
};

struct StepDiagnostics {
  double trace = 0.0;
  double norm = 0.0;
  double det = 0.0;
  double asymmetry = 0.0;  // largest skew part seen in the stage rates before projection
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Sym3> sigma;
  std::vector<Sym3> B;
  std::vector<StepDiagnostics> diag;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step, double t, Sym3 sigma)
      : std::runtime_error(what), step_(step), t_(t), sigma_(sigma) {}
  std::size_t last_step() const { return step_; }
  double last_t() const { return t_; }
  const Sym3& last_sigma() const { return sigma_; }

 private:
  std::size_t step_;
  double t_;
  Sym3 sigma_;
};

/// Classical fixed-step RK4 for sigma_dot = H.D + Omega sigma - sigma Omega (corotational
/// kinds) or sigma_dot = H.D + L sigma + sigma L^T [- sigma tr D] (Oldroyd, Truesdell).
Trajectory integrate(const StiffnessSource& source, const RateKind& kind,
                     const DeformationPath& path, double t_end, double dt, const Sym3& sigma0);

/// max_t ||sigma_int(t) - sigma(B(t))|| / (1 + ||sigma(B(t))||), started at sigma(B(0)).
double consistency_error(const ConstitutiveLaw& law, const RateKind& kind,
                         const DeformationPath& path, double t_end, double dt);

struct InvariantDrift {
  double trace = 0.0;
  double norm = 0.0;
  double det = 0.0;
};

InvariantDrift invariant_drift(const Trajectory& traj);

}  // namespace corostab
