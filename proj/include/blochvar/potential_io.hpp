#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "blochvar/inverse.hpp"
#include "blochvar/potential.hpp"
#include "blochvar/spectrum.hpp"
#include "blochvar/variety.hpp"

namespace bloch {

/// Malformed potential file or JSON document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"periods": [q_1, ..., q_d], "values": [[re, im], ...]} in canonical W
/// order; bare numbers are accepted for real entries.
Potential potential_from_json(const nlohmann::json& doc);
nlohmann::json potential_to_json(const Potential& v);

Potential read_potential_file(const std::filesystem::path& path);
void write_potential_file(const std::filesystem::path& path, const Potential& v);

nlohmann::json complex_to_json(cplx c);

/// {holds, l, K: [re, im], residual}
nlohmann::json certificate_to_json(const EntireGraphCertificate& cert);

/// {q1, l1, solutions: [[[re, im], ...], ...], residuals}
nlohmann::json family_to_json(const ExoticFamily& family);

/// Header k_1..k_d,lambda_1..lambda_Q, then one row per grid point.
void write_band_csv(std::ostream& os, const BandStructure& bs);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace bloch
