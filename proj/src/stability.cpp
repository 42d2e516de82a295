#include "corostab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace corostab {

namespace {

constexpr double kVerdictBand = 1e-8;
constexpr double kDetBand = 1e-10;

template <typename Fn>
void for_each_index(std::size_t n, Exec exec, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
  if (exec == Exec::Serial) {
    for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#else
  (void)jobs;
#endif
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

SymPD3 from_spectrum(const Mat3& q, const Vec3& l) {
  return SymPD3(Sym3::from_matrix(q * l.asDiagonal() * q.transpose()));
}

}  // namespace

void SampleRegion::validate() const {
  if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument("region: need 0 < lo < hi");
  if (n < 1) throw std::invalid_argument("region: need N >= 1 samples");
}

Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  return Eigen::Quaterniond(w, x, y, z).normalized().toRotationMatrix();
}

SymPD3 random_spd(Rng& rng, double lo, double hi) {
  const Mat3 q = random_rotation(rng);
  Vec3 l;
  for (int i = 0; i < 3; ++i) l[i] = log_uniform(rng, lo, hi);
  return from_spectrum(q, l);
}

std::vector<SymPD3> sample_region(const SampleRegion& region) {
  region.validate();
  Rng rng(region.seed);
  std::vector<SymPD3> out;
  out.reserve(region.n);
  for (std::size_t i = 0; i < region.n; ++i) out.push_back(random_spd(rng, region.lo, region.hi));
  return out;
}

int banded_sign(double value, double band) {
  if (std::abs(value) < band || std::isnan(value)) return 0;
  return value > 0.0 ? 1 : -1;
}

double csp_min_eig(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind) {
  return t4_sym_min_eig(induced_stiffness(law, B, kind));
}

double tsts_min_eig(const ConstitutiveLaw& law, const SymPD3& B) {
  return t4_sym_min_eig(sigma_hat_jacobian(law, B));
}

double tsts_pair(const ConstitutiveLaw& law, const SymPD3& B1, const SymPD3& B2) {
  const auto lg = ScaleFunction::log();
  return inner(law.stress(B1) - law.stress(B2), apply_primary(B1, lg) - apply_primary(B2, lg));
}

double mono_in_V_pair(const ConstitutiveLaw& law, const SymPD3& V1, const SymPD3& V2) {
  const Mat3 v1 = V1.matrix();
  const Mat3 v2 = V2.matrix();
  const SymPD3 b1(Sym3::from_matrix(v1 * v1));
  const SymPD3 b2(Sym3::from_matrix(v2 * v2));
  return inner(law.stress(b1) - law.stress(b2), V1.sym() - V2.sym());
}

namespace {

void require_distinct(double l1, double l2, double l3) {
  if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0))
    throw std::invalid_argument("principal_jacobian: stretches must be positive");
  if (std::abs(l1 - l2) < 1e-6 || std::abs(l2 - l3) < 1e-6 || std::abs(l1 - l3) < 1e-6)
    throw std::invalid_argument("principal_jacobian: stretches must be pairwise distinct");
}

}  // namespace

Mat3 principal_jacobian(const ConstitutiveLaw& law, double l1, double l2, double l3) {
  require_distinct(l1, l2, l3);
  const Vec3 l(l1, l2, l3);
  const SymPD3 B(Sym3::diag(l1 * l1, l2 * l2, l3 * l3));
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    Vec3 e = Vec3::Zero();
    e[c] = 2.0 * l[c] * l[c];
    const Sym3 ds = law.dstress(B, Sym3::diag(e[0], e[1], e[2]));
    for (int r = 0; r < 3; ++r) j(r, c) = ds(r, r);
  }
  return sym_part(j);
}

Mat3 principal_jacobian_fd(const ConstitutiveLaw& law, double l1, double l2, double l3) {
  require_distinct(l1, l2, l3);
  const double h = 1e-6;
  const Vec3 l(l1, l2, l3);
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    Vec3 lp = l, lm = l;
    lp[c] *= std::exp(h);
    lm[c] *= std::exp(-h);
    j.col(c) = (principal_stresses(law, lp[0], lp[1], lp[2]) -
                principal_stresses(law, lm[0], lm[1], lm[2])) /
               (2.0 * h);
  }
  return sym_part(j);
}

double StabilityReport::agreement() const {
  const std::size_t decided = samples.size() - indeterminate;
  return decided == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(decided);
}

StabilityReport equivalence_scan(const ConstitutiveLaw& law, const RateKind& kind,
                                 const SampleRegion& region, Exec exec, int jobs) {
  if (!kind.corotational())
    throw std::invalid_argument("equivalence_scan: rate '" + kind.name() + "' is not corotational");
  const auto bs = sample_region(region);
  StabilityReport rep;
  rep.law = law.name;
  rep.kind = kind.name();
  rep.region = region;
  rep.samples.resize(bs.size());

  for_each_index(bs.size(), exec, jobs, [&](std::size_t i) {
    const SymPD3& b = bs[i];
    const Tensor4 h = induced_stiffness(law, b, kind);
    const Tensor4 ds = law.tangent(b);
    const Tensor4 sh = sigma_hat_jacobian(law, b);
    SampleRecord& r = rep.samples[i];
    r.B = b.sym();
    r.csp = t4_sym_min_eig(h);
    r.tsts = t4_sym_min_eig(sh);
    r.det_h = t4_det(h);
    r.det_dsigma = t4_det(ds);
    r.det_shat = t4_det(sh);
    r.csp_sign = banded_sign(r.csp, kVerdictBand * t4_scale(h));
    r.tsts_sign = banded_sign(r.tsts, kVerdictBand * t4_scale(sh));
  });

  double worst_c = std::numeric_limits<double>::infinity();
  double worst_t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& r = rep.samples[i];
    if (r.csp_sign == 0 || r.tsts_sign == 0)
      ++rep.indeterminate;
    else if (r.csp_sign == r.tsts_sign)
      ++rep.agree;
    else
      rep.disagreements.push_back(i);
    if (r.csp_sign < 0) ++rep.csp_negative;
    if (r.tsts_sign < 0) ++rep.tsts_negative;
    if (r.csp < worst_c) {
      worst_c = r.csp;
      rep.worst_csp = i;
    }
    if (r.tsts < worst_t) {
      worst_t = r.tsts;
      rep.worst_tsts = i;
    }
  }
  return rep;
}

bool det_is_zero(const Tensor4& t) {
  const Eigen::JacobiSVD<Mat6> svd(t.m);
  const auto& sv = svd.singularValues();
  return sv[5] <= kDetBand * sv[0];
}

InvertibilityReport invertibility_scan(const ConstitutiveLaw& law,
                                       const std::vector<RateKind>& kinds,
                                       const SampleRegion& region, Exec exec, int jobs) {
  for (const auto& k : kinds)
    if (!k.corotational())
      throw std::invalid_argument("invertibility_scan: rate '" + k.name() +
                                  "' is not corotational");
  const auto bs = sample_region(region);
  InvertibilityReport rep;
  rep.law = law.name;
  for (const auto& k : kinds) rep.kinds.push_back(k.name());
  rep.region = region;
  rep.samples.resize(bs.size());

  for_each_index(bs.size(), exec, jobs, [&](std::size_t i) {
    const SymPD3& b = bs[i];
    InvertibilityRecord& r = rep.samples[i];
    r.B = b.sym();
    const Tensor4 ds = law.tangent(b);
    const Tensor4 sh = sigma_hat_jacobian(law, b);
    r.det_dsigma = t4_det(ds);
    r.det_shat = t4_det(sh);
    const bool zero = det_is_zero(ds);
    r.consistent = det_is_zero(sh) == zero;
    for (const auto& k : kinds) {
      const Tensor4 h = induced_stiffness(law, b, k);
      r.det_h.push_back(t4_det(h));
      r.consistent = r.consistent && det_is_zero(h) == zero;
    }
    r.all_nonzero = r.consistent && !zero;
  });

  for (const auto& r : rep.samples) {
    if (!r.consistent) ++rep.inconsistent;
    if (!r.all_nonzero) ++rep.singular;
  }
  return rep;
}

Mat3 cofactor(const Mat3& F) { return F.determinant() * F.inverse().transpose(); }

double volumetric_ellipticity(const ScalarVolLaw& h, const Mat3& F, const Vec3& xi,
                              const Vec3& eta) {
  const double det = F.determinant();
  if (!(det > 0.0)) throw DomainError("volumetric_ellipticity: det F must be positive");
  if (xi.norm() == 0.0 || eta.norm() == 0.0)
    throw std::invalid_argument("volumetric_ellipticity: xi and eta must be nonzero");
  const double c = xi.dot(cofactor(F) * eta);
  return h.d2h(det) * c * c;
}

namespace {

struct Probe {
  Mat3 q = Mat3::Identity();
  Vec3 y = Vec3::Zero();  // log-eigenvalues
  double value = std::numeric_limits<double>::infinity();
  Sym3 dir;
};

void evaluate(Probe& p, const ConstitutiveLaw& law, const RateKind& kind, SearchTarget target) {
  const SymPD3 b = from_spectrum(p.q, p.y.array().exp().matrix());
  const Tensor4 t =
      target == SearchTarget::CSP ? induced_stiffness(law, b, kind) : sigma_hat_jacobian(law, b);
  const auto [v, d] = t4_sym_min_eigpair(t);
  p.value = v;
  p.dir = d;
}

}  // namespace

SearchResult counterexample_search(const ConstitutiveLaw& law, const RateKind& kind, double lo,
                                   double hi, std::uint64_t seed, std::size_t budget,
                                   SearchTarget target) {
  if (budget < 1) throw std::invalid_argument("counterexample_search: budget must be >= 1");
  if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument("counterexample_search: need 0 < lo < hi");
  const double ylo = std::log(lo), yhi = std::log(hi);
  std::uniform_real_distribution<double> uy(ylo, yhi);
  Rng rng(seed);

  SearchResult res;
  res.budget = budget;
  Probe best;
  double step = 0.25 * (yhi - ylo);
  int coord = 0;
  int dirn = 1;
  int fails = 0;
  std::size_t explored = 0;

  auto accept = [&](const Probe& p, std::size_t index) -> bool {
    if (p.value < best.value) best = p;
    if (p.value < -1e-10) {
      Witness w;
      w.B = from_spectrum(p.q, p.y.array().exp().matrix()).sym();
      w.D = p.dir;
      w.value = p.value;
      w.probe = index;
      res.witness = w;
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < budget; ++i) {
    Probe p;
    // every eleventh probe refines the best point found so far
    const bool descend = i % 11 == 10 && std::isfinite(best.value);
    if (descend) {
      p = best;
      p.y[coord] = std::clamp(p.y[coord] + dirn * step, ylo, yhi);
      evaluate(p, law, kind, target);
      if (!(p.value < best.value)) {
        if (dirn > 0) {
          dirn = -1;
        } else {
          dirn = 1;
          coord = (coord + 1) % 3;
          if (++fails >= 3) {
            step *= 0.5;
            fails = 0;
          }
        }
      } else {
        fails = 0;
      }
    } else {
      if (explored % 5 == 4) {
        p.q = Mat3::Identity();
        p.y = Vec3(uy(rng), uy(rng), std::clamp(0.0, ylo, yhi));
      } else {
        p.q = random_rotation(rng);
        p.y = Vec3(uy(rng), uy(rng), uy(rng));
      }
      ++explored;
      evaluate(p, law, kind, target);
    }
    res.probes = i + 1;
    if (accept(p, i)) break;
  }
  res.best_value = best.value;
  res.best_B = from_spectrum(best.q, best.y.array().exp().matrix()).sym();
  return res;
}

}  // namespace corostab
