#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "treegraph/potential.hpp"

namespace treegraph {

using Json = nlohmann::ordered_json;

/// A potential plus an optional stability certificate, as read from disk.
/// Files use 1-indexed vertices:
///   {"n": 3, "entries": [[1, 2, -1.0], [1, 3, 0.5, 0.25], ...], "b": [...]}
/// An entry with four elements carries an imaginary part; any such entry makes
/// the potential complex.
struct Instance {
  Potential potential;
  std::optional<StabilityCertificate> b;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws InputError with a distinct code per failure.
Instance parse_instance_text(std::string_view text);
Instance parse_instance(const std::filesystem::path& path);

Json emit_instance(const Instance& instance);

/// Certificate file: a JSON array of n reals, or an object with field "b".
StabilityCertificate parse_certificate_text(std::string_view text, int n);
StabilityCertificate parse_certificate(const std::filesystem::path& path, int n);

/// JSON text with doubles written to 17 significant digits.
std::string dump_json(const Json& value, int indent = -1);

/// FNV-1a 64 of the compact canonical instance, as 16 hex digits.
std::string instance_digest(const Instance& instance);

struct Distribution {
  enum class Kind { uniform, gaussian, complex_uniform };
  Kind kind = Kind::uniform;
  double a = 0.0;  // lo | mu | re-lo
  double b = 1.0;  // hi | sigma | re-hi
  double c = 0.0;  // im-lo (complex only)
  double d = 0.0;  // im-hi (complex only)

  static Distribution uniform(double lo, double hi);
  static Distribution gaussian(double mu, double sigma);
  static Distribution complex_uniform(double re_lo, double re_hi, double im_lo, double im_hi);

  /// "uniform:LO,HI" | "gaussian:MU,SIGMA" | "complex-uniform:RLO,RHI,ILO,IHI"
  static Distribution parse(std::string_view text);
  std::string describe() const;
};

/// i.i.d. entries in increasing EdgeId order from SplitMix64(seed).
Potential generate_instance(int n, const Distribution& distribution, std::uint64_t seed);

}  // namespace treegraph
