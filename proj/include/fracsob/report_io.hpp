#ifndef FRACSOB_REPORT_IO_HPP
#define FRACSOB_REPORT_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fracsob/operators.hpp"
#include "fracsob/report.hpp"
#include "fracsob/schwartz.hpp"

namespace fracsob {

/// "%.17g"; "nan", "inf" and "-inf" for non-finite values.
std::string format_real(Real x);

/// Finite reals as numbers, NaN as null, infinities as the strings "inf" / "-inf".
nlohmann::json real_to_json(Real x);

/// {value | "divergent", verdict, beta, p, weight_mode, h, puncture, error_estimate, ...}.
nlohmann::json to_json(const NormReport& rep);
nlohmann::json to_json(const EtaResult& eta);
nlohmann::json to_json(const SeminormLattice& lattice);
nlohmann::json to_json(const StripReport& strip);
nlohmann::json to_json(const MembershipReport& membership);
nlohmann::json to_json(const VanishingReport& vanishing);
nlohmann::json to_json(const ExtensionReport& extension);

/// CSV with header member_id,norm_before,norm_after,ratio (excluded members omitted).
void write_extension_csv(std::ostream& out, const ExtensionReport& extension);

/// Text matrix of the eta lattice: rows beta, columns order, F (finite) or D (divergent).
std::string render_lattice(const SeminormLattice& lattice);

}  // namespace fracsob

#endif  // FRACSOB_REPORT_IO_HPP
