#include "corostab/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <sstream>

namespace corostab {

using nlohmann::json;

json to_json(const Sym3& s) {
  const auto& v = s.voigt();
  return json::array({v[0], v[1], v[2], v[3], v[4], v[5]});
}

json to_json(const SampleRegion& r) {
  return {{"lo", r.lo}, {"hi", r.hi}, {"samples", r.n}, {"seed", r.seed}};
}

json to_json(const StabilityReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"B", to_json(s.B)},
                       {"csp_min_eig", s.csp},
                       {"tsts_min_eig", s.tsts},
                       {"det_h", s.det_h},
                       {"det_dsigma", s.det_dsigma},
                       {"det_shat", s.det_shat},
                       {"csp_sign", s.csp_sign},
                       {"tsts_sign", s.tsts_sign}});
  }
  json out = {{"law", r.law},
              {"rate", r.kind},
              {"region", to_json(r.region)},
              {"agree", r.agree},
              {"indeterminate", r.indeterminate},
              {"agreement", r.agreement()},
              {"disagreements", r.disagreements},
              {"csp_negative", r.csp_negative},
              {"tsts_negative", r.tsts_negative},
              {"csp_positive", r.csp_positive()},
              {"tsts_positive", r.tsts_positive()},
              {"samples", samples}};
  if (!r.samples.empty()) {
    out["worst_csp"] = {{"index", r.worst_csp},
                        {"B", to_json(r.samples[r.worst_csp].B)},
                        {"value", r.samples[r.worst_csp].csp}};
    out["worst_tsts"] = {{"index", r.worst_tsts},
                         {"B", to_json(r.samples[r.worst_tsts].B)},
                         {"value", r.samples[r.worst_tsts].tsts}};
  }
  return out;
}

json to_json(const InvertibilityReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"B", to_json(s.B)},
                       {"det_h", s.det_h},
                       {"det_dsigma", s.det_dsigma},
                       {"det_shat", s.det_shat},
                       {"consistent", s.consistent},
                       {"all_nonzero", s.all_nonzero}});
  }
  return {{"law", r.law},
          {"rates", r.kinds},
          {"region", to_json(r.region)},
          {"inconsistent", r.inconsistent},
          {"singular", r.singular},
          {"samples", samples}};
}

json to_json(const SearchResult& r) {
  json out = {{"probes", r.probes}, {"budget", r.budget}, {"best_value", r.best_value},
              {"best_B", to_json(r.best_B)}};
  if (r.witness) {
    out["status"] = "witness";
    out["witness"] = {{"B", to_json(r.witness->B)},
                      {"D", to_json(r.witness->D)},
                      {"value", r.witness->value},
                      {"probe", r.witness->probe}};
  } else {
    out["status"] = "none-found";
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string stability_csv(const StabilityReport& r) {
  std::ostringstream out;
  out << "# corostab stability csv schema " << kSchemaVersion << "\n";
  out << "index,B11,B22,B33,B12,B23,B31,csp_min_eig,tsts_min_eig,det_h,det_dsigma,det_shat,"
         "csp_sign,tsts_sign\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    out << i;
    for (double v : s.B.voigt()) out << ',' << format_double(v);
    for (double v : {s.csp, s.tsts, s.det_h, s.det_dsigma, s.det_shat})
      out << ',' << format_double(v);
    out << ',' << s.csp_sign << ',' << s.tsts_sign << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const Trajectory& tr, const json& meta,
                           const std::optional<Overlay>& overlay) {
  std::ostringstream out;
  out << "# " << meta.dump() << "\n";
  out << "t,s11,s22,s33,s12,s23,s31,B11,B22,B33,B12,B23,B31,tr_sigma,norm_sigma,det_sigma,"
         "asymmetry";
  if (overlay) out << ",s12_analytic";
  out << "\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    out << format_double(tr.t[i]);
    for (double v : tr.sigma[i].voigt()) out << ',' << format_double(v);
    for (double v : tr.B[i].voigt()) out << ',' << format_double(v);
    const auto& d = tr.diag[i];
    for (double v : {d.trace, d.norm, d.det, d.asymmetry}) out << ',' << format_double(v);
    if (overlay) out << ',' << format_double((*overlay)(tr.t[i]));
    out << '\n';
  }
  return out.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace corostab
