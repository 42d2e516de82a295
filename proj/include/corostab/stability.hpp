#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "corostab/constitutive.hpp"
#include "corostab/rates.hpp"
#include "corostab/tensor.hpp"

namespace corostab {

struct SampleRegion {
  double lo = 0.2;
  double hi = 5.0;
  std::size_t n = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

using Rng = std::mt19937_64;

Mat3 random_rotation(Rng& rng);
/// Q diag(l) Q^T with l log-uniform in [lo, hi] and Q uniformly random.
SymPD3 random_spd(Rng& rng, double lo, double hi);
std::vector<SymPD3> sample_region(const SampleRegion& region);

/// Sign with a dead band: +1, -1, or 0 for |value| < band.
int banded_sign(double value, double band);

double csp_min_eig(const ConstitutiveLaw& law, const SymPD3& B, const RateKind& kind);
double tsts_min_eig(const ConstitutiveLaw& law, const SymPD3& B);
double tsts_pair(const ConstitutiveLaw& law, const SymPD3& B1, const SymPD3& B2);
double mono_in_V_pair(const ConstitutiveLaw& law, const SymPD3& V1, const SymPD3& V2);

/// sym d sigma_i / d log lambda_j at distinct principal stretches.
Mat3 principal_jacobian(const ConstitutiveLaw& law, double l1, double l2, double l3);
/// Same quantity by central differences on log lambda_j, step 1e-6.
Mat3 principal_jacobian_fd(const ConstitutiveLaw& law, double l1, double l2, double l3);

enum class Exec { Serial, Parallel };

struct SampleRecord {
  Sym3 B;
  double csp = 0.0;
  double tsts = 0.0;
  double det_h = 0.0;
  double det_dsigma = 0.0;
  double det_shat = 0.0;
  int csp_sign = 0;
  int tsts_sign = 0;
};

struct StabilityReport {
  std::string law;
  std::string kind;
  SampleRegion region;
  std::vector<SampleRecord> samples;
  std::size_t agree = 0;
  std::size_t indeterminate = 0;
  std::vector<std::size_t> disagreements;
  std::size_t csp_negative = 0;
  std::size_t tsts_negative = 0;
  std::size_t worst_csp = 0;
  std::size_t worst_tsts = 0;

  double agreement() const;
  bool csp_positive() const { return csp_negative == 0; }
  bool tsts_positive() const { return tsts_negative == 0; }
};

StabilityReport equivalence_scan(const ConstitutiveLaw& law, const RateKind& kind,
                                 const SampleRegion& region, Exec exec = Exec::Parallel,
                                 int jobs = 0);

struct InvertibilityRecord {
  Sym3 B;
  std::vector<double> det_h;  // one per rate kind
  double det_dsigma = 0.0;
  double det_shat = 0.0;
  bool consistent = true;
  bool all_nonzero = true;
};

struct InvertibilityReport {
  std::string law;
  std::vector<std::string> kinds;
  SampleRegion region;
  std::vector<InvertibilityRecord> samples;
  std::size_t inconsistent = 0;
  std::size_t singular = 0;
};

/// Zero/nonzero status of det H (per kind), det D_B sigma, det D_{log B} sigma_hat.
InvertibilityReport invertibility_scan(const ConstitutiveLaw& law,
                                       const std::vector<RateKind>& kinds,
                                       const SampleRegion& region, Exec exec = Exec::Parallel,
                                       int jobs = 0);

/// True when the smallest singular value is at most 1e-10 times the largest.
bool det_is_zero(const Tensor4& t);

/// D^2 h(det F).(xi x eta, xi x eta) = h''(det F) <Cof F, xi x eta>^2
double volumetric_ellipticity(const ScalarVolLaw& h, const Mat3& F, const Vec3& xi,
                              const Vec3& eta);
Mat3 cofactor(const Mat3& F);

enum class SearchTarget { CSP, TSTS };

struct Witness {
  Sym3 B;
  Sym3 D;  // unit direction
  double value = 0.0;
  std::size_t probe = 0;
};

struct SearchResult {
  std::optional<Witness> witness;
  std::size_t probes = 0;
  std::size_t budget = 0;
  double best_value = 0.0;
  Sym3 best_B;
};

/// Randomized search for <H.D, D> < -1e-10 (or the TSTS analogue): 80% uniform samples in
/// the region, 20% axis-aligned diag(alpha, beta, 1) probes, plus coordinate descent on the
/// log-eigenvalues of the best probe so far.
SearchResult counterexample_search(const ConstitutiveLaw& law, const RateKind& kind,
                                   double lo, double hi, std::uint64_t seed, std::size_t budget,
                                   SearchTarget target = SearchTarget::CSP);

}  // namespace corostab
