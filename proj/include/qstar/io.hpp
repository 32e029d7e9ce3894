#ifndef QSTAR_IO_HPP
#define QSTAR_IO_HPP

/// \file io.hpp
/// Text formats used by the command line front end.
///
///   series   {"lead": int, "coeffs": [[re, im], ...]}
///   verdict  {"kind": str, "margin": real, "witness": [re, im] | int | null}
///   corpus   one JSON object per line: {"seed", "w", "coeffs"}
///
/// Doubles are written in shortest round-trip form, so load(save(x)) == x
/// bit for bit.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qstar/classify.hpp"
#include "qstar/config.hpp"
#include "qstar/oracle.hpp"
#include "qstar/series.hpp"

namespace qstar::io {

/// Malformed or unreadable input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string series_to_json(const TruncSeries<real_t>& f);
TruncSeries<real_t> series_from_json(std::string_view text);

TruncSeries<real_t> load_series(const std::filesystem::path& path);
void save_series(const std::filesystem::path& path, const TruncSeries<real_t>& f);

std::string verdict_to_json(const MembershipVerdict& v);

/// A corpus line read back. The line does not record p, so the member's
/// coefficients a_p, a_{p+1}, ... are kept as a bare vector.
struct CorpusRecord {
  std::uint64_t seed = 0;
  std::vector<complex_t> w;
  TruncSeries<real_t>::Coeffs coeffs;
};

std::string corpus_line(const CorpusEntry<real_t>& entry);
CorpusRecord corpus_record_from_json(std::string_view line);
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path);

/// %.15g, the fixed output precision of every table.
std::string format_number(double x);

}  // namespace qstar::io

#endif  // QSTAR_IO_HPP
