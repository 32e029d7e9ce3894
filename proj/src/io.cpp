#include "qstar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qstar::io {

using json = nlohmann::ordered_json;

namespace {

json complex_to_json(const complex_t& z) { return json::array({z.real(), z.imag()}); }

complex_t complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("expected a [re, im] pair");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite coefficient");
  return {re, im};
}

json complex_array(const Eigen::Matrix<complex_t, Eigen::Dynamic, 1>& c) {
  json out = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(complex_to_json(c(i)));
  return out;
}

TruncSeries<real_t> series_from(const json& lead, const json& coeffs) {
  if (!lead.is_number_integer() || lead.get<long long>() < 0)
    throw FormatError("\"lead\" must be a nonnegative integer");
  if (!coeffs.is_array() || coeffs.empty()) throw FormatError("\"coeffs\" must be a nonempty array");
  TruncSeries<real_t>::Coeffs c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c(static_cast<Eigen::Index>(i)) = complex_from_json(coeffs[i]);
  return TruncSeries<real_t>(lead.get<int>(), std::move(c));
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw FormatError(std::string("missing field \"") + name + "\"");
  return obj.at(name);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string series_to_json(const TruncSeries<real_t>& f) {
  return json{{"lead", f.lead()}, {"coeffs", complex_array(f.coeffs())}}.dump();
}

TruncSeries<real_t> series_from_json(std::string_view text) {
  const json j = parse(text);
  return series_from(field(j, "lead"), field(j, "coeffs"));
}

TruncSeries<real_t> load_series(const std::filesystem::path& path) { return series_from_json(read_file(path)); }

void save_series(const std::filesystem::path& path, const TruncSeries<real_t>& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << series_to_json(f) << '\n';
  if (!out) throw FormatError("write failed: " + path.string());
}

std::string verdict_to_json(const MembershipVerdict& v) {
  json j{{"kind", to_string(v.kind)}, {"margin", v.margin}};
  if (const auto* z = std::get_if<std::complex<double>>(&v.witness))
    j["witness"] = complex_to_json(*z);
  else if (const auto* n = std::get_if<int>(&v.witness))
    j["witness"] = *n;
  else
    j["witness"] = nullptr;
  if (v.theta) j["theta"] = *v.theta;
  return j.dump();
}

std::string corpus_line(const CorpusEntry<real_t>& entry) {
  return json{{"seed", entry.seed},
              {"w", complex_array(entry.w.coeffs())},
              {"coeffs", complex_array(entry.member.series().coeffs())}}
      .dump();
}

CorpusRecord corpus_record_from_json(std::string_view line) {
  const json j = parse(line);
  const json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw FormatError("\"seed\" must be a nonnegative integer");
  const json& w = field(j, "w");
  if (!w.is_array()) throw FormatError("\"w\" must be an array");
  CorpusRecord rec{seed.get<std::uint64_t>(), {}, series_from(json(0), field(j, "coeffs")).coeffs()};
  for (const auto& wj : w) rec.w.push_back(complex_from_json(wj));
  return rec;
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<CorpusRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(corpus_record_from_json(line));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace qstar::io
