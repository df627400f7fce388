#include "fracsob/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fracsob/reduce.hpp"
#include "fracsob/report.hpp"

namespace fracsob {

Exponent Exponent::finite(Real p) {
  if (!std::isfinite(p) || p < 1.0) throw ParameterError("p must be a finite number >= 1 or inf");
  Exponent e;
  e.infinite_ = false;
  e.p_ = p;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  Real p = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParameterError("cannot parse exponent '" + std::string(text) + "'");
  }
  return finite(p);
}

Real Exponent::value() const {
  if (infinite_) throw ParameterError("exponent is infinite");
  return p_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p_);
  return buf;
}

std::string_view to_string(WeightMode mode) { return mode == WeightMode::ultra ? "ultra" : "classical"; }

WeightMode parse_weight_mode(std::string_view text) {
  if (text == "classical") return WeightMode::classical;
  if (text == "ultra") return WeightMode::ultra;
  throw ParameterError("weight mode must be 'classical' or 'ultra', got '" + std::string(text) + "'");
}

void NormParams::require_gagliardo() const {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must be in (0,1) for Gagliardo seminorms");
  if (p.is_infinite()) throw ParameterError("Gagliardo seminorms need finite p");
  if (n != 1 && n != 2) throw ParameterError("dimension must be 1 or 2");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "finite";
    case Verdict::divergent: return "divergent";
    case Verdict::divergence_suspected: return "divergence_suspected";
  }
  return "finite";
}

unsigned default_workers() {
  if (const char* env = std::getenv("FRACSOB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  return 1;
}

}  // namespace fracsob
