#include "corostab/constitutive.hpp"

#include <cmath>

namespace corostab {

namespace {

const Sym3 kId = Sym3::identity();

Sym3 inverse(const SymPD3& B) { return apply_primary(B, ScaleFunction::reciprocal()); }

double log_det(const SymPD3& B) {
  const Vec3& l = B.values();
  return std::log(l[0]) + std::log(l[1]) + std::log(l[2]);
}

double det(const SymPD3& B) {
  const Vec3& l = B.values();
  return l[0] * l[1] * l[2];
}

Params merged(const std::string& name, Params defaults, const Params& overrides) {
  for (const auto& [k, v] : overrides) {
    auto it = defaults.find(k);
    if (it == defaults.end())
      throw std::invalid_argument("law '" + name + "': unknown parameter '" + k + "'");
    it->second = v;
  }
  return defaults;
}

ConstitutiveLaw linear_finger(const Params& p) {
  const double mu = p.at("mu");
  ConstitutiveLaw law;
  law.name = "linear-finger";
  law.description = "sigma = mu (B - 1)";
  law.params = p;
  law.sigma = [mu](const SymPD3& B) { return mu * (B.sym() - kId); };
  law.dsigma = [mu](const SymPD3&, const Sym3& H) { return mu * H; };
  return law;
}

ConstitutiveLaw mu_b_binv(const Params& p) {
  const double mu = p.at("mu");
  const double lam = p.at("lambda");
  ConstitutiveLaw law;
  law.name = "mu-b-binv";
  law.description = "sigma = mu/2 (B - B^-1) + lambda/2 log(det B) 1";
  law.params = p;
  law.sigma = [mu, lam](const SymPD3& B) {
    return 0.5 * mu * (B.sym() - inverse(B)) + (0.5 * lam * log_det(B)) * kId;
  };
  law.dsigma = [mu, lam](const SymPD3& B, const Sym3& H) {
    const Mat3 bi = inverse(B).matrix();
    const Sym3 bhb = Sym3::from_matrix(bi * H.matrix() * bi);
    return 0.5 * mu * (H + bhb) + (0.5 * lam * inner(inverse(B), H)) * kId;
  };
  return law;
}

ConstitutiveLaw hencky(const Params& p) {
  const double mu = p.at("mu");
  const double lam = p.at("lambda");
  ConstitutiveLaw law;
  law.name = "hencky";
  law.description = "sigma_hat(log V) = 2 mu log V + lambda tr(log V) 1";
  law.params = p;
  law.sigma = [mu, lam](const SymPD3& B) {
    const Sym3 logb = apply_primary(B, ScaleFunction::log());
    return mu * logb + (0.5 * lam * logb.trace()) * kId;
  };
  law.dsigma = [mu, lam](const SymPD3& B, const Sym3& H) {
    const Sym3 l = frechet_primary(B, ScaleFunction::log(), H);
    return mu * l + (0.5 * lam * l.trace()) * kId;
  };
  return law;
}

ConstitutiveLaw exp_hencky(const Params& p) {
  const double mu = p.at("mu");
  const double lam = p.at("lambda");
  const double k = p.at("k");
  const double kh = p.at("khat");
  ConstitutiveLaw law;
  law.name = "exp-hencky";
  law.description =
      "sigma_hat(X) = 2 mu e^{k|X|^2 - tr X} X + lambda e^{khat (tr X)^2 - tr X} tr X 1, X = log V";
  law.params = p;
  law.sigma = [=](const SymPD3& B) {
    const Sym3 x = 0.5 * apply_primary(B, ScaleFunction::log());
    const double t = x.trace();
    const double dev_w = std::exp(k * inner(x, x) - t);
    const double vol_w = std::exp(kh * t * t - t);
    return (2.0 * mu * dev_w) * x + (lam * vol_w * t) * kId;
  };
  law.dsigma = [=](const SymPD3& B, const Sym3& H) {
    const Sym3 x = 0.5 * apply_primary(B, ScaleFunction::log());
    const Sym3 dx = 0.5 * frechet_primary(B, ScaleFunction::log(), H);
    const double t = x.trace();
    const double dev_w = std::exp(k * inner(x, x) - t);
    const double vol_w = std::exp(kh * t * t - t);
    const Sym3 dev_part =
        (2.0 * mu * dev_w) * ((2.0 * k * inner(x, dx) - dx.trace()) * x + dx);
    const double vol_part = lam * vol_w * ((2.0 * kh * t - 1.0) * t + 1.0) * dx.trace();
    return dev_part + vol_part * kId;
  };
  return law;
}

double nh_g(double t) {
  const double l = std::log(t);
  return std::pow(t, -0.5) * l * std::exp(0.25 * l * l);
}

double nh_dg(double t) {
  const double l = std::log(t);
  return 0.5 * std::pow(t, -1.5) * std::exp(0.25 * l * l) * ((l - 0.5) * (l - 0.5) + 1.75);
}

ConstitutiveLaw neo_hooke(const Params& p) {
  const double mu = p.at("mu");
  const double kappa = p.at("kappa");
  ConstitutiveLaw law;
  law.name = "neo-hooke";
  law.description =
      "sigma = mu (det B)^{-5/6} dev B + kappa (det B)^{-1/2} log(det B) e^{(log det B)^2/4} 1";
  law.params = p;
  law.claims_invertible = true;
  law.sigma = [mu, kappa](const SymPD3& B) {
    const double j = det(B);
    return (mu * std::pow(j, -5.0 / 6.0)) * dev(B.sym()) + (kappa * nh_g(j)) * kId;
  };
  law.dsigma = [mu, kappa](const SymPD3& B, const Sym3& H) {
    const double j = det(B);
    const double tr_bih = inner(inverse(B), H);
    const Sym3 iso = (mu * std::pow(j, -5.0 / 6.0)) * ((-5.0 / 6.0 * tr_bih) * dev(B.sym()) + dev(H));
    return iso + (kappa * nh_dg(j) * j * tr_bih) * kId;
  };
  return law;
}

ConstitutiveLaw fluid(const Params& p) {
  const double a = p.at("a");
  const double b = p.at("b");
  ConstitutiveLaw law;
  law.name = "fluid";
  law.description = "sigma = h'(sqrt(det B)) 1 with h(x) = a x^2 + b x";
  law.params = p;
  law.sigma = [a, b](const SymPD3& B) { return (2.0 * a * std::sqrt(det(B)) + b) * kId; };
  law.dsigma = [a](const SymPD3& B, const Sym3& H) {
    // 1/2 h''(s) s <B^-1, H> with h'' = 2a
    return (a * std::sqrt(det(B)) * inner(inverse(B), H)) * kId;
  };
  return law;
}

ConstitutiveLaw richter(const Params& p) {
  const double mu = p.at("mu");
  ConstitutiveLaw law;
  law.name = "richter";
  law.description = "sigma(V) = 2 mu {(V - 1) + tr(V - 1) 1}";
  law.params = p;
  law.sigma = [mu](const SymPD3& B) {
    const Sym3 vm = apply_primary(B, ScaleFunction::sqrt()) - kId;
    return 2.0 * mu * (vm + vm.trace() * kId);
  };
  law.dsigma = [mu](const SymPD3& B, const Sym3& H) {
    const Sym3 dv = frechet_primary(B, ScaleFunction::sqrt(), H);
    return 2.0 * mu * (dv + dv.trace() * kId);
  };
  return law;
}

}  // namespace

Sym3 ConstitutiveLaw::dstress(const SymPD3& B, const Sym3& H) const {
  if (dsigma) return dsigma(B, H);
  const double h = 1e-6 * (1.0 + B.sym().norm()) / std::max(1.0, H.norm());
  return (1.0 / (2.0 * h)) * (sigma(SymPD3(B.sym() + h * H)) - sigma(SymPD3(B.sym() - h * H)));
}

Tensor4 ConstitutiveLaw::tangent(const SymPD3& B) const {
  if (!dsigma) return dsigma_fd(*this, B);
  return t4_assemble([&](const Sym3& H) { return dsigma(B, H); });
}

std::vector<std::string> law_names() {
  return {"linear-finger", "mu-b-binv", "hencky", "exp-hencky", "neo-hooke", "fluid", "richter"};
}

ConstitutiveLaw make_law(const std::string& name, const Params& overrides) {
  if (name == "linear-finger") return linear_finger(merged(name, {{"mu", 1.0}}, overrides));
  if (name == "mu-b-binv")
    return mu_b_binv(merged(name, {{"mu", 1.0}, {"lambda", 1.0}}, overrides));
  if (name == "hencky") return hencky(merged(name, {{"mu", 1.0}, {"lambda", 1.0}}, overrides));
  if (name == "exp-hencky")
    return exp_hencky(
        merged(name, {{"mu", 1.0}, {"lambda", 1.0}, {"k", 1.0}, {"khat", 1.0}}, overrides));
  if (name == "neo-hooke")
    return neo_hooke(merged(name, {{"mu", 1.0}, {"kappa", 1.0}}, overrides));
  if (name == "fluid") return fluid(merged(name, {{"a", 1.0}, {"b", -2.0}}, overrides));
  if (name == "richter") return richter(merged(name, {{"mu", 1.0}}, overrides));
  throw NotFoundError("unknown law '" + name + "'");
}

std::vector<ConstitutiveLaw> law_catalog() {
  std::vector<ConstitutiveLaw> out;
  for (const auto& n : law_names()) out.push_back(make_law(n));
  return out;
}

ConstitutiveLaw square_law() {
  ConstitutiveLaw law;
  law.name = "square";
  law.description = "sigma = B^2";
  law.sigma = [](const SymPD3& B) {
    const Mat3 b = B.matrix();
    return Sym3::from_matrix(b * b);
  };
  law.dsigma = [](const SymPD3& B, const Sym3& H) {
    const Mat3 b = B.matrix();
    const Mat3 h = H.matrix();
    return Sym3::from_matrix(b * h + h * b);
  };
  return law;
}

ConstitutiveLaw cubic_trace_law() {
  ConstitutiveLaw law;
  law.name = "cubic-trace";
  law.description = "sigma = (tr(B - 1))^3 1";
  law.sigma = [](const SymPD3& B) {
    const double s = B.sym().trace() - 3.0;
    return (s * s * s) * kId;
  };
  law.dsigma = [](const SymPD3& B, const Sym3& H) {
    const double s = B.sym().trace() - 3.0;
    return (3.0 * s * s * H.trace()) * kId;
  };
  return law;
}

Tensor4 dsigma_fd(const ConstitutiveLaw& law, const SymPD3& B) {
  const double h0 = 1e-6 * (1.0 + B.sym().norm());
  return t4_assemble(
      [&](const Sym3& e) {
        double h = h0;
        while (!(is_spd(B.sym() + h * e) && is_spd(B.sym() - h * e))) {
          h *= 0.5;
          if (h < 1e-12) throw DomainError("dsigma_fd: step leaves the SPD cone");
        }
        return (1.0 / (2.0 * h)) *
               (law.sigma(SymPD3(B.sym() + h * e)) - law.sigma(SymPD3(B.sym() - h * e)));
      },
      Source::FiniteDifference);
}

Tensor4 sigma_hat_jacobian(const ConstitutiveLaw& law, const SymPD3& B) {
  const auto lg = ScaleFunction::log();
  Tensor4 t = t4_assemble(
      [&](const Sym3& H) { return law.dstress(B, frechet_primary_inverse(B, lg, H)); });
  if (!law.analytic()) t.source = Source::FiniteDifference;
  return t;
}

Vec3 principal_stresses(const ConstitutiveLaw& law, double l1, double l2, double l3) {
  if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0))
    throw DomainError("principal_stresses: stretches must be positive");
  const Sym3 s = law.stress(SymPD3(Sym3::diag(l1 * l1, l2 * l2, l3 * l3)));
  return Vec3(s(0, 0), s(1, 1), s(2, 2));
}

Sym3 log_energy_gradient(const SymPD3& B, double mu) {
  const ScaleFunction log_over_x{"log/x", [](double x) { return std::log(x) / x; },
                                 [](double x) { return (1.0 - std::log(x)) / (x * x); }, true};
  return 2.0 * mu * apply_primary(B, log_over_x);
}

ScalarVolLaw ScalarVolLaw::quadratic(double a, double b) {
  return {"quadratic", [a, b](double x) { return a * x * x + b * x; },
          [a, b](double x) { return 2.0 * a * x + b; }, [a](double) { return 2.0 * a; }};
}

ScalarVolLaw ScalarVolLaw::log_squared() {
  return {"log-squared", [](double x) { return std::log(x) * std::log(x); },
          [](double x) { return 2.0 * std::log(x) / x; },
          [](double x) { return (2.0 - 2.0 * std::log(x)) / (x * x); }};
}

ScalarVolLaw ScalarVolLaw::exp_log_squared() {
  return {"exp-log-squared",
          [](double x) { return std::exp(std::log(x) * std::log(x)); },
          [](double x) {
            const double l = std::log(x);
            return 2.0 * l * std::exp(l * l) / x;
          },
          [](double x) {
            const double l = std::log(x);
            return std::exp(l * l) * (2.0 + 4.0 * l * l - 2.0 * l) / (x * x);
          }};
}

}  // namespace corostab
