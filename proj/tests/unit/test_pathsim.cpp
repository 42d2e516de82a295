#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "corostab/pathsim.hpp"

using namespace corostab;

TEST_CASE("stiffness source validation") {
  CHECK_NOTHROW(StiffnessSource::zero_grade(1.0, 0.0));
  CHECK_THROWS_AS(StiffnessSource::zero_grade(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StiffnessSource::zero_grade(1.0, -1.0), std::invalid_argument);
  CHECK(StiffnessSource::induced(make_law("hencky")).name() == "induced");
}

TEST_CASE("zero-grade ZJ shear oscillates") {
  const double mu = 1.3, gamma = 1.0;
  const Trajectory tr = integrate(StiffnessSource::zero_grade(mu, 0.7), RateKind::zj(),
                                  shear_path(gamma), 4 * M_PI, 1e-3, Sym3());
  double err = 0.0, plane = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    err = std::max(err, std::abs(tr.sigma[i](0, 1) - mu * std::sin(gamma * tr.t[i])));
    plane = std::max(plane, std::abs(tr.sigma[i](0, 0) + tr.sigma[i](1, 1)));
  }
  CHECK(err < 1e-4);
  CHECK(plane < 1e-10);
  for (std::size_t i = 1; i < tr.t.size(); ++i) CHECK(tr.t[i] > tr.t[i - 1]);
  CHECK(tr.t.back() == doctest::Approx(4 * M_PI).epsilon(1e-15));

  for (int k = 1; k <= 3; ++k) {
    const auto i = static_cast<std::size_t>(std::lround(k * M_PI / (tr.t[1] - tr.t[0])));
    CHECK(std::abs(tr.sigma[i](0, 1)) < 1e-3);
  }
}

TEST_CASE("induced linear-finger shear is linear") {
  const double mu = 2.0, gamma = 0.5;
  const ConstitutiveLaw law = make_law("linear-finger", {{"mu", mu}});
  const Trajectory tr =
      integrate(StiffnessSource::induced(law), RateKind::zj(), shear_path(gamma), 6.0, 1e-3, Sym3());
  for (std::size_t i = 1; i < tr.t.size(); i += 100)
    CHECK(std::abs(tr.sigma[i](0, 1) - mu * gamma * tr.t[i]) < 1e-9 * mu * gamma * tr.t[i]);
}

TEST_CASE("static path keeps the initial stress") {
  const Sym3 s0({1, -2, 0.5, 0.3, 0.1, -0.4});
  for (const auto& src : {StiffnessSource::zero_grade(1.0, 1.0),
                          StiffnessSource::induced(make_law("hencky")), StiffnessSource::none()}) {
    const Trajectory tr = integrate(src, RateKind::zj(), static_path(), 1.0, 0.01, s0);
    for (const auto& s : tr.sigma) CHECK(s == s0);
  }
}

TEST_CASE("integrate rejects bad input and reports divergence") {
  CHECK_THROWS_AS(integrate(StiffnessSource::none(), RateKind::zj(), static_path(), 1.0, 0.0, Sym3()),
                  std::invalid_argument);
  const Trajectory none = integrate(StiffnessSource::none(), RateKind::zj(), static_path(), 0.0,
                                    0.1, Sym3::identity());
  CHECK(none.t.size() == 1);
  try {
    integrate(StiffnessSource::zero_grade(1.0, 0.0), RateKind::zj(), uniaxial_path(-1.0), 2.0,
              0.1, Sym3());
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.last_t() < 1.0);
    CHECK(std::isfinite(e.last_sigma().norm()));
  }
}

TEST_CASE("consistency with the Cauchy law") {
  const DeformationPath shear = shear_path(1.0);
  CHECK(consistency_error(make_law("mu-b-binv"), RateKind::zj(), shear, 2.0, 1e-3) < 1e-6);
  CHECK(consistency_error(make_law("hencky"), RateKind::log(), shear, 2.0, 1e-3) < 1e-5);
  for (const auto& law : law_catalog())
    CHECK(consistency_error(law, RateKind::zj(), static_path(), 1.0, 0.1) == 0.0);
  const DeformationPath p = rotation_shear_path(0.5, 1.0);
  CHECK(consistency_error(make_law("exp-hencky"), RateKind::gn(), p, 1.0, 1e-2) < 1e-5);
}

TEST_CASE("RK4 error falls with the step") {
  const ConstitutiveLaw law = make_law("mu-b-binv");
  const DeformationPath p = rotation_shear_path(0.7, 1.0);
  const double e1 = consistency_error(law, RateKind::zj(), p, 2.0, 0.1);
  const double e2 = consistency_error(law, RateKind::zj(), p, 2.0, 0.05);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("pure corotation preserves invariants") {
  const Sym3 s0({1.0, -0.4, 0.7, 0.3, -0.2, 0.5});
  const DeformationPath rot = rotation_path(1.3);
  const Trajectory zj = integrate(StiffnessSource::none(), RateKind::zj(), rot, 2.0, 1e-4, s0);
  const InvariantDrift d = invariant_drift(zj);
  CHECK(d.trace < 1e-8);
  CHECK(d.norm < 1e-8);
  CHECK(d.det < 1e-8);

  const DeformationPath rs = rotation_shear_path(1.3, 1.0);
  const Trajectory tr = integrate(StiffnessSource::none(), RateKind::truesdell(), rs, 2.0, 1e-3, s0);
  CHECK(invariant_drift(tr).norm > 1e-3);

  for (const auto& kind : {RateKind::zj(), RateKind::gn(), RateKind::log()}) {
    const Trajectory iso =
        integrate(StiffnessSource::none(), kind, rs, 1.0, 1e-2, 2.5 * Sym3::identity());
    const InvariantDrift di = invariant_drift(iso);
    CHECK(di.trace < 1e-12);
    CHECK(di.norm < 1e-12);
    CHECK(di.det < 1e-12);
  }
}

TEST_CASE("trajectories are frame-indifferent") {
  Rng rng(71);
  const Mat3 q = random_rotation(rng);
  const ConstitutiveLaw law = make_law("hencky");
  const DeformationPath base = shear_path(1.0);
  const DeformationPath turned = rotated(base, q);
  for (const auto& kind : {RateKind::zj(), RateKind::log()}) {
    const Trajectory a = integrate(StiffnessSource::induced(law), kind, base, 1.0, 1e-2, Sym3());
    const Trajectory b = integrate(StiffnessSource::induced(law), kind, turned, 1.0, 1e-2, Sym3());
    for (std::size_t i = 0; i < a.t.size(); ++i)
      CHECK((b.sigma[i].matrix() - q * a.sigma[i].matrix() * q.transpose()).norm() < 1e-8);
  }
}

TEST_CASE("diagnostics stay symmetric") {
  const Trajectory tr = integrate(StiffnessSource::induced(make_law("neo-hooke")), RateKind::gn(),
                                  rotation_shear_path(0.4, 1.0), 1.0, 1e-2, Sym3());
  for (const auto& d : tr.diag) CHECK(d.asymmetry < 1e-13 * (1 + d.norm));
}
