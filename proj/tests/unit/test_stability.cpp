#include <doctest.h>

#include <cmath>
#include <cstring>

#include "helpers.hpp"

using namespace corostab;

namespace {

const std::vector<std::string> kPositiveLaws = {"linear-finger", "mu-b-binv", "hencky",
                                                "exp-hencky"};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_record(const SampleRecord& a, const SampleRecord& b) {
  for (int k = 0; k < 6; ++k)
    if (!same_bits(a.B.voigt()[k], b.B.voigt()[k])) return false;
  return same_bits(a.csp, b.csp) && same_bits(a.tsts, b.tsts) && same_bits(a.det_h, b.det_h) &&
         same_bits(a.det_dsigma, b.det_dsigma) && same_bits(a.det_shat, b.det_shat) &&
         a.csp_sign == b.csp_sign && a.tsts_sign == b.tsts_sign;
}

double cof_dot(const Mat3& f, const Vec3& xi, const Vec3& eta) {
  return (cofactor(f).array() * (xi * eta.transpose()).array()).sum();
}

}  // namespace

TEST_CASE("sample region contract") {
  CHECK_THROWS_AS((SampleRegion{0.0, 1.0, 10, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SampleRegion{2.0, 1.0, 10, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SampleRegion{0.2, 5.0, 0, 1}).validate(), std::invalid_argument);

  const SampleRegion r{0.2, 5.0, 200, 51};
  const auto a = sample_region(r), b = sample_region(r);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sym() == b[i].sym());
    CHECK(a[i].min_eig() >= 0.2 * (1 - 1e-12));
    CHECK(a[i].max_eig() <= 5.0 * (1 + 1e-12));
  }
}

TEST_CASE("banded_sign") {
  CHECK(banded_sign(1e-3, 1e-8) == 1);
  CHECK(banded_sign(-1e-3, 1e-8) == -1);
  CHECK(banded_sign(5e-9, 1e-8) == 0);
}

TEST_CASE("csp_min_eig examples") {
  Rng rng(52);
  const double mu = 1.4, lambda = 0.5;
  const ConstitutiveLaw a = make_law("linear-finger", {{"mu", mu}});
  const ConstitutiveLaw b = make_law("mu-b-binv", {{"mu", mu}, {"lambda", lambda}});
  for (int i = 0; i < 200; ++i) {
    const SymPD3 bb = random_spd(rng, 0.2, 5.0);
    CHECK(csp_min_eig(a, bb, RateKind::zj()) >= 2 * mu * bb.min_eig() * (1 - 1e-12));
    const double vmin = std::sqrt(bb.min_eig()), vmax = std::sqrt(bb.max_eig());
    const double bound = mu * (vmin * vmin + 1.0 / (vmax * vmax));
    CHECK(csp_min_eig(b, bb, RateKind::gn()) >= bound * (1 - 1e-9));
  }
  const ConstitutiveLaw constant = make_law("fluid", {{"a", 0.0}, {"b", 1.0}});
  CHECK(std::abs(csp_min_eig(constant, random_spd(rng, 0.2, 5.0), RateKind::zj())) < 1e-14);
}

TEST_CASE("tsts_min_eig examples") {
  Rng rng(53);
  const double mu = 0.7, lambda = 0.2;
  const ConstitutiveLaw h = make_law("hencky", {{"mu", mu}, {"lambda", lambda}});
  const ConstitutiveLaw eh = make_law("exp-hencky");
  for (int i = 0; i < 200; ++i) {
    const SymPD3 b = random_spd(rng, 0.2, 5.0);
    CHECK(tsts_min_eig(h, b) == doctest::Approx(std::min(mu, mu + 1.5 * lambda)).epsilon(1e-10));
    CHECK(tsts_min_eig(eh, b) > 0.0);
  }
  const ConstitutiveLaw r = make_law("richter", {{"mu", 0.5}});
  CHECK(tsts_min_eig(r, SymPD3(Sym3::diag(400, 1, 4))) < 0.0);
}

TEST_CASE("tsts_pair and mono_in_V_pair") {
  Rng rng(54);
  const SymPD3 b = random_spd(rng, 0.2, 5.0);
  for (const auto& law : law_catalog()) {
    CHECK(tsts_pair(law, b, b) == 0.0);
    CHECK(mono_in_V_pair(law, b, b) == 0.0);
  }

  const double mu = 0.01, lambda = 1.0;
  const ConstitutiveLaw h = make_law("hencky", {{"mu", mu}, {"lambda", lambda}});
  const SymPD3 v1(Sym3::diag(3, 1.0 / 3.0, 1)), v2(Sym3::diag(1, 2, 1));
  const double expect =
      2 * mu * (2 * std::log(18.0) - std::log(6.0) / 3) - lambda * std::log(2.0) / 3;
  CHECK(std::abs(mono_in_V_pair(h, v1, v2) - expect) < 1e-10);
  CHECK(mono_in_V_pair(h, v1, v2) < 0.0);
  const SymPD3 b1(Sym3::diag(9, 1.0 / 9.0, 1)), b2(Sym3::diag(1, 4, 1));
  CHECK(tsts_pair(h, b1, b2) > 0.0);

  const ConstitutiveLaw a = make_law("linear-finger");
  const ConstitutiveLaw r = make_law("richter");
  for (int i = 0; i < 500; ++i) {
    const SymPD3 p = random_spd(rng, 0.2, 5.0), q = random_spd(rng, 0.2, 5.0);
    CHECK(tsts_pair(a, p, q) > 0.0);
    CHECK(mono_in_V_pair(r, p, q) > 0.0);
  }
}

TEST_CASE("principal_jacobian examples") {
  const ConstitutiveLaw r = make_law("richter", {{"mu", 0.5}});
  const Mat3 j = principal_jacobian(r, 20, 1, 2);
  CHECK(std::abs(j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0) - (80 - 0.25 * (1 + 40 + 400))) < 1e-9);
  const Mat3 jfd = principal_jacobian_fd(r, 20, 1, 2);
  CHECK((j - jfd).norm() < 1e-6 * j.norm());

  const double mu = 0.9, lambda = 0.4;
  const ConstitutiveLaw h = make_law("hencky", {{"mu", mu}, {"lambda", lambda}});
  const Mat3 jh = principal_jacobian(h, 1.5, 0.7, 2.2);
  const Mat3 expect = 2 * mu * Mat3::Identity() + lambda * Mat3::Ones();
  CHECK((jh - expect).norm() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Mat3> es(jh);
  CHECK(es.eigenvalues()[0] == doctest::Approx(2 * mu));
  CHECK(es.eigenvalues()[2] == doctest::Approx(2 * mu + 3 * lambda));

  const Mat3 ja = principal_jacobian(make_law("linear-finger"), 1, 1.0001, 1.0002);
  CHECK((ja - 2 * Mat3::Identity()).norm() < 2e-3);

  CHECK_THROWS_AS(principal_jacobian(h, 1.0, 1.0 + 1e-8, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(principal_jacobian_fd(h, 1.0, 1.0 + 1e-8, 2.0), std::invalid_argument);
}

TEST_CASE("analytic principal_jacobian agrees with finite differences") {
  Rng rng(55);
  std::uniform_real_distribution<double> u(std::log(0.3), std::log(4.0));
  for (const auto& law : law_catalog()) {
    for (int i = 0; i < 20; ++i) {
      const double l1 = std::exp(u(rng)), l2 = std::exp(u(rng)), l3 = std::exp(u(rng));
      const Mat3 an = principal_jacobian(law, l1, l2, l3);
      const Mat3 fd = principal_jacobian_fd(law, l1, l2, l3);
      CHECK((an - fd).norm() < 1e-6 * std::max(1.0, an.norm()));
    }
  }
}

TEST_CASE("equivalence scan examples") {
  const SampleRegion region{0.2, 5.0, 1000, 56};
  const StabilityReport b = equivalence_scan(make_law("mu-b-binv"), RateKind::zj(), region);
  CHECK(b.disagreements.empty());
  CHECK(b.agreement() == 1.0);
  CHECK(b.csp_positive());
  CHECK(b.tsts_positive());

  const StabilityReport c = equivalence_scan(make_law("hencky"), RateKind::log(), region);
  CHECK(c.disagreements.empty());
  CHECK(c.csp_positive());
  CHECK(c.tsts_positive());

  const StabilityReport nh =
      equivalence_scan(make_law("neo-hooke"), RateKind::zj(), SampleRegion{0.01, 100.0, 1000, 56});
  CHECK(nh.csp_negative > 0);
  CHECK(nh.tsts_negative > 0);
  CHECK(nh.disagreements.empty());
  CHECK(nh.samples[nh.worst_csp].csp < 0.0);
}

TEST_CASE("serial and parallel scans are bit-identical") {
  const SampleRegion region{0.05, 20.0, 400, 57};
  for (const char* name : {"exp-hencky", "neo-hooke"}) {
    const ConstitutiveLaw law = make_law(name);
    for (const auto& kind : {RateKind::zj(), RateKind::gn(), RateKind::log()}) {
      const StabilityReport s = equivalence_scan(law, kind, region, Exec::Serial);
      const StabilityReport p = equivalence_scan(law, kind, region, Exec::Parallel, 4);
      REQUIRE(s.samples.size() == p.samples.size());
      for (std::size_t i = 0; i < s.samples.size(); ++i)
        CHECK(same_record(s.samples[i], p.samples[i]));
      CHECK(s.disagreements == p.disagreements);
      CHECK(s.worst_csp == p.worst_csp);
      CHECK(s.worst_tsts == p.worst_tsts);
    }
    const auto kinds = std::vector<RateKind>{RateKind::zj(), RateKind::gn(), RateKind::log()};
    const InvertibilityReport si = invertibility_scan(law, kinds, region, Exec::Serial);
    const InvertibilityReport pi = invertibility_scan(law, kinds, region, Exec::Parallel, 3);
    for (std::size_t i = 0; i < si.samples.size(); ++i) {
      CHECK(si.samples[i].det_h == pi.samples[i].det_h);
      CHECK(same_bits(si.samples[i].det_shat, pi.samples[i].det_shat));
    }
  }
}

TEST_CASE("invertibility scan examples") {
  const SampleRegion region{0.2, 5.0, 500, 58};
  const auto kinds = std::vector<RateKind>{RateKind::zj(), RateKind::gn(), RateKind::log()};
  for (const char* name : {"linear-finger", "mu-b-binv", "hencky"}) {
    const InvertibilityReport r = invertibility_scan(make_law(name), kinds, region);
    CHECK(r.inconsistent == 0);
    CHECK(r.singular == 0);
  }

  const ConstitutiveLaw cubic = cubic_trace_law();
  const Tensor4 t = cubic.tangent(SymPD3());
  CHECK(det_is_zero(t));
  CHECK(det_is_zero(induced_stiffness(cubic, SymPD3(), RateKind::zj())));
  const SymPD3 ray1(Sym3::diag(1.5, 1.5, 1.5)), ray2(Sym3::diag(0.5, 0.5, 0.5));
  CHECK(cubic.stress(ray1)(0, 0) > 0.0);
  CHECK(cubic.stress(ray2)(0, 0) < 0.0);
}

TEST_CASE("volumetric ellipticity") {
  Rng rng(59);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto draw_vec = [&] { return Vec3(n(rng), n(rng), n(rng)); };
  const ScalarVolLaw sq = ScalarVolLaw::quadratic(1.0, 0.0);
  const ScalarVolLaw neg = ScalarVolLaw::quadratic(-1.0, 0.0);
  for (int i = 0; i < 50; ++i) {
    const Mat3 f = random_spd(rng, 0.5, 2.0).matrix() * random_rotation(rng);
    const Vec3 xi = draw_vec(), eta = draw_vec();
    const double c = cof_dot(f, xi, eta);
    CHECK(volumetric_ellipticity(sq, f, xi, eta) == doctest::Approx(2 * c * c).epsilon(1e-12));
    CHECK(volumetric_ellipticity(neg, f, xi, eta) < 0.0);
  }
  const Mat3 f = std::exp(2.0 / 3.0) * Mat3::Identity();
  CHECK(volumetric_ellipticity(ScalarVolLaw::log_squared(), f, Vec3(1, 0, 0), Vec3(1, 0, 0)) <
        0.0);
  CHECK(cofactor(f).isApprox(f.determinant() * f.inverse().transpose()));
}

TEST_CASE("counterexample search examples") {
  const SearchResult nh =
      counterexample_search(make_law("neo-hooke"), RateKind::zj(), 0.01, 100.0, 60, 100000);
  REQUIRE(nh.witness);
  CHECK(nh.witness->value < -1e-10);
  CHECK(nh.witness->D.norm() == doctest::Approx(1.0));
  const SymPD3 b(nh.witness->B);
  const Sym3 hd = induced_apply(make_law("neo-hooke"), b, RateKind::zj(), nh.witness->D);
  CHECK(inner(hd, nh.witness->D) == doctest::Approx(nh.witness->value).epsilon(1e-9));

  const SearchResult bl =
      counterexample_search(make_law("mu-b-binv"), RateKind::zj(), 0.2, 5.0, 61, 20000);
  CHECK_FALSE(bl.witness);
  CHECK(bl.probes == 20000);
  CHECK(bl.best_value > 0.0);

  const SearchResult eh =
      counterexample_search(make_law("exp-hencky"), RateKind::zj(), 0.2, 5.0, 62, 20000);
  CHECK_FALSE(eh.witness);

  CHECK_THROWS_AS(counterexample_search(make_law("hencky"), RateKind::zj(), 0.2, 5.0, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("search is deterministic for a seed") {
  const ConstitutiveLaw law = make_law("exp-hencky", {{"k", 0.2}, {"lambda", 0.0}});
  const auto a = counterexample_search(law, RateKind::zj(), 0.2, 5.0, 63, 2000, SearchTarget::TSTS);
  const auto b = counterexample_search(law, RateKind::zj(), 0.2, 5.0, 63, 2000, SearchTarget::TSTS);
  CHECK(a.probes == b.probes);
  CHECK(same_bits(a.best_value, b.best_value));
  CHECK(a.best_B == b.best_B);
}

TEST_CASE("monotonicity implication chain on segments") {
  Rng rng(64);
  for (const auto& name : kPositiveLaws) {
    const ConstitutiveLaw law = make_law(name);
    for (int i = 0; i < 200; ++i) {
      const SymPD3 b1 = random_spd(rng, 0.2, 5.0), b2 = random_spd(rng, 0.2, 5.0);
      bool positive = true;
      for (int k = 0; k <= 8 && positive; ++k) {
        const double s = k / 8.0;
        positive = tsts_min_eig(law, SymPD3((1 - s) * b1.sym() + s * b2.sym())) > 0.0;
      }
      if (positive) CHECK(tsts_pair(law, b1, b2) > 0.0);
    }
  }
}

TEST_CASE("positive TSTS implies the tension-extension inequality") {
  Rng rng(65);
  std::uniform_real_distribution<double> u(std::log(0.3), std::log(3.0));
  for (const auto& law : law_catalog()) {
    for (int i = 0; i < 50; ++i) {
      const double l1 = std::exp(u(rng)), l2 = std::exp(u(rng)), l3 = std::exp(u(rng));
      if (tsts_min_eig(law, SymPD3(Sym3::diag(l1 * l1, l2 * l2, l3 * l3))) <= 0.0) continue;
      const Mat3 j = principal_jacobian(law, l1, l2, l3);
      for (int k = 0; k < 3; ++k) CHECK(j(k, k) > 0.0);
    }
  }
}

TEST_CASE("quadratic form sees only the symmetric part") {
  Rng rng(66);
  const ConstitutiveLaw law = make_law("neo-hooke");
  const SymPD3 b = random_spd(rng, 0.05, 20.0);
  const Tensor4 h = induced_stiffness(law, b, RateKind::zj());
  const double lo = csp_min_eig(law, b, RateKind::zj());
  double best = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const Sym3 d = test::random_unit_sym(rng);
    best = std::min(best, inner(t4_apply(h, d), d));
  }
  CHECK(best >= lo - 1e-12 * t4_scale(h));
  CHECK(best - lo < 0.5 * t4_scale(h));
  const auto [v, dir] = t4_sym_min_eigpair(h);
  CHECK(inner(t4_apply(h, dir), dir) == doctest::Approx(v).epsilon(1e-10));
}

TEST_CASE("positive symmetric part implies positive determinant") {
  const SampleRegion region{0.05, 20.0, 300, 67};
  for (const auto& law : law_catalog()) {
    for (const auto& kind : {RateKind::zj(), RateKind::gn(), RateKind::log()}) {
      for (const auto& b : sample_region(region)) {
        const Tensor4 h = induced_stiffness(law, b, kind);
        if (t4_sym_min_eig(h) > 0.0) CHECK(t4_det(h) > 0.0);
      }
    }
  }
}

TEST_CASE("TSTS-positive laws are CSP-positive for every rate") {
  const SampleRegion region{0.2, 5.0, 300, 68};
  for (const auto& name : kPositiveLaws) {
    const ConstitutiveLaw law = make_law(name);
    for (const auto& b : sample_region(region)) {
      REQUIRE(tsts_min_eig(law, b) > 0.0);
      for (const auto& kind : {RateKind::zj(), RateKind::gn(), RateKind::log()})
        CHECK(csp_min_eig(law, b, kind) > 0.0);
    }
  }
}
