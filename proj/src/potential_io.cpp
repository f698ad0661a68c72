#include "blochvar/potential_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bloch {

namespace {

cplx parse_entry(const nlohmann::json& e, std::size_t i) {
  cplx v;
  if (e.is_number()) {
    v = e.get<double>();
  } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    v = cplx(e[0].get<double>(), e[1].get<double>());
  } else {
    throw FormatError("value " + std::to_string(i) + " must be a number or an [re, im] pair");
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw FormatError("value " + std::to_string(i) + " is not finite");
  }
  return v;
}

}  // namespace

Potential potential_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("potential file must hold a JSON object");
  if (!doc.contains("periods") || !doc["periods"].is_array() || doc["periods"].empty()) {
    throw FormatError("\"periods\" must be a nonempty array of positive integers");
  }
  std::vector<int> periods;
  for (const auto& p : doc["periods"]) {
    if (!p.is_number_integer() || p.get<long long>() < 1 || p.get<long long>() > 1'000'000) {
      throw FormatError("\"periods\" must be a nonempty array of positive integers");
    }
    periods.push_back(p.get<int>());
  }
  const LatticeConfig cfg(periods);
  if (!doc.contains("values") || !doc["values"].is_array()) throw FormatError("\"values\" must be an array");
  const auto& vals = doc["values"];
  if (vals.size() != cfg.cell_size()) {
    throw FormatError("\"values\" has " + std::to_string(vals.size()) + " entries, periods " + to_string(cfg) +
                      " need " + std::to_string(cfg.cell_size()));
  }
  std::vector<cplx> values;
  values.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) values.push_back(parse_entry(vals[i], i));
  return Potential(cfg, std::move(values));
}

nlohmann::json complex_to_json(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json potential_to_json(const Potential& v) {
  nlohmann::json doc;
  doc["periods"] = v.config().periods();
  doc["values"] = nlohmann::json::array();
  for (cplx c : v.values()) doc["values"].push_back(complex_to_json(c));
  return doc;
}

Potential read_potential_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return potential_from_json(doc);
}

void write_potential_file(const std::filesystem::path& path, const Potential& v) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << potential_to_json(v).dump(2) << '\n';
}

nlohmann::json certificate_to_json(const EntireGraphCertificate& cert) {
  nlohmann::json j;
  j["holds"] = cert.holds;
  j["l"] = cert.l.coords;
  j["K"] = complex_to_json(cert.K);
  j["residual"] = cert.residual;
  return j;
}

nlohmann::json family_to_json(const ExoticFamily& family) {
  nlohmann::json j;
  j["q1"] = family.cfg.period(0);
  j["l1"] = family.l1;
  j["solutions"] = nlohmann::json::array();
  for (const auto& s : family.solutions) {
    auto row = nlohmann::json::array();
    for (cplx c : s.values()) row.push_back(complex_to_json(c));
    j["solutions"].push_back(row);
  }
  j["residuals"] = family.residuals;
  return j;
}

void write_band_csv(std::ostream& os, const BandStructure& bs) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t j = 0; j < bs.cfg.dim(); ++j) os << (j ? "," : "") << 'k' << (j + 1);
  for (std::size_t m = 0; m < bs.num_bands(); ++m) os << ",lambda" << (m + 1);
  os << '\n';
  for (std::size_t p = 0; p < bs.num_points(); ++p) {
    const auto k = bs.k_at(p);
    for (std::size_t j = 0; j < k.size(); ++j) os << (j ? "," : "") << k[j];
    for (std::size_t m = 0; m < bs.num_bands(); ++m) os << ',' << bs.band(p, m);
    os << '\n';
  }
  os.precision(old_precision);
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace bloch
