#include "fracsob/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace fracsob {

namespace {

nlohmann::json exponent_to_json(const Exponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

nlohmann::json reals_to_json(const std::vector<Real>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (Real x : xs) out.push_back(real_to_json(x));
  return out;
}

}  // namespace

std::string format_real(Real x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json real_to_json(Real x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

nlohmann::json to_json(const NormReport& rep) {
  nlohmann::json j;
  if (rep.verdict == Verdict::divergent) {
    j["value"] = "divergent";
  } else {
    j["value"] = real_to_json(rep.value);
  }
  j["verdict"] = std::string(to_string(rep.verdict));
  j["beta"] = rep.beta;
  j["p"] = exponent_to_json(rep.p);
  j["weight_mode"] = std::string(to_string(rep.weight));
  j["dimension"] = rep.dimension;
  j["h"] = rep.h;
  j["nodes"] = rep.nodes;
  j["puncture"] = rep.puncture;
  j["diagonal_correction"] = rep.diagonal_correction;
  j["error_estimate"] = real_to_json(rep.error_estimate);
  if (rep.witness) j["witness"] = {(*rep.witness)[0], (*rep.witness)[1]};
  if (rep.p_power_value) j["p_power_value"] = real_to_json(*rep.p_power_value);
  if (rep.p_power_error) j["p_power_error"] = real_to_json(*rep.p_power_error);
  if (rep.lp_part) j["lp_part"] = real_to_json(*rep.lp_part);
  if (rep.seminorm_part) j["seminorm_part"] = real_to_json(*rep.seminorm_part);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

nlohmann::json to_json(const EtaResult& eta) {
  nlohmann::json j{{"beta", eta.beta},
                   {"order", eta.order},
                   {"verdict", std::string(to_string(eta.verdict))},
                   {"value", eta.verdict == Verdict::divergent ? nlohmann::json("divergent") : real_to_json(eta.value)},
                   {"argmax", eta.argmax},
                   {"truncations", reals_to_json(eta.truncations)},
                   {"maxima", reals_to_json(eta.maxima)}};
  if (!eta.note.empty()) j["note"] = eta.note;
  return j;
}

nlohmann::json to_json(const SeminormLattice& lattice) {
  nlohmann::json entries = nlohmann::json::array();
  for (const EtaResult& e : lattice.table) entries.push_back(to_json(e));
  return {{"max_beta", lattice.max_beta}, {"max_order", lattice.max_order}, {"entries", entries}};
}

nlohmann::json to_json(const StripReport& strip) {
  nlohmann::json j{{"p", strip.p},
                   {"half_width", strip.half_width},
                   {"verdict", std::string(to_string(strip.verdict))},
                   {"value", strip.verdict == Verdict::divergent ? nlohmann::json("divergent") : real_to_json(strip.value)},
                   {"witness", complex_to_json(strip.witness)},
                   {"witness_on_outer_line", strip.witness_on_outer_line},
                   {"lines_sampled", strip.lines_sampled},
                   {"truncations", reals_to_json(strip.truncations)},
                   {"maxima", reals_to_json(strip.maxima)}};
  if (!strip.note.empty()) j["note"] = strip.note;
  return j;
}

nlohmann::json to_json(const MembershipReport& membership) {
  nlohmann::json strips = nlohmann::json::array();
  for (const StripReport& s : membership.strips) strips.push_back(to_json(s));
  nlohmann::json j{{"function", membership.function},
                   {"max_p", membership.max_p},
                   {"summary", membership.summary()},
                   {"excluded_at", membership.excluded_at},
                   {"strips", strips}};
  if (!membership.reason.empty()) j["reason"] = membership.reason;
  return j;
}

nlohmann::json to_json(const VanishingReport& vanishing) {
  return {{"y", reals_to_json(vanishing.y)}, {"jump", reals_to_json(vanishing.jump)}, {"vanishes", vanishing.vanishes}};
}

nlohmann::json to_json(const ExtensionReport& extension) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ExtensionRow& r : extension.rows) {
    nlohmann::json row{{"member", r.member}, {"excluded", r.excluded}};
    if (r.excluded) {
      row["reason"] = r.reason;
    } else {
      row["norm_before"] = real_to_json(r.norm_before);
      row["norm_after"] = real_to_json(r.norm_after);
      row["ratio"] = real_to_json(r.ratio);
    }
    rows.push_back(row);
  }
  return {{"rows", rows},
          {"forward_constant", real_to_json(extension.forward_constant)},
          {"inverse_constant", real_to_json(extension.inverse_constant)},
          {"support_ok", extension.support_ok}};
}

void write_extension_csv(std::ostream& out, const ExtensionReport& extension) {
  out << "member_id,norm_before,norm_after,ratio\n";
  for (const ExtensionRow& r : extension.rows) {
    if (r.excluded) continue;
    out << r.member << ',' << format_real(r.norm_before) << ',' << format_real(r.norm_after) << ','
        << format_real(r.ratio) << '\n';
  }
}

std::string render_lattice(const SeminormLattice& lattice) {
  std::ostringstream out;
  out << "beta\\i";
  for (int i = 0; i <= lattice.max_order; ++i) out << ' ' << i;
  out << '\n';
  for (int b = 0; b <= lattice.max_beta; ++b) {
    out << b << "     ";
    for (int i = 0; i <= lattice.max_order; ++i) out << ' ' << (lattice.entry(b, i).verdict == Verdict::finite ? 'F' : 'D');
    out << '\n';
  }
  return out.str();
}

}  // namespace fracsob
