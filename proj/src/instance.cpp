#include "treegraph/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "treegraph/errors.hpp"
#include "treegraph/rng.hpp"

namespace treegraph {

namespace {

std::string pair_label(long long i, long long j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::out_of_range& e) {
    throw InputError("non_finite", std::string("non-finite number: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("unreadable", "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double finite_number(const Json& v, const std::string& where) {
  if (!v.is_number()) {
    throw InputError("malformed", where + " must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw InputError("non_finite", "non-finite value in " + where);
  }
  return x;
}

StabilityCertificate certificate_from(const Json& array, int n) {
  if (!array.is_array()) {
    throw InputError("malformed", "\"b\" must be an array of " + std::to_string(n) + " numbers");
  }
  if (static_cast<int>(array.size()) != n) {
    throw InputError("b_length", "\"b\" has " + std::to_string(array.size()) + " entries, expected " +
                                     std::to_string(n));
  }
  std::vector<double> b;
  for (std::size_t k = 0; k < array.size(); ++k) {
    const std::string where = "b_" + std::to_string(k + 1);
    const double x = finite_number(array[k], where);
    if (x < 0.0) {
      throw InputError("negative_b", "negative " + where + " = " + std::to_string(x));
    }
    b.push_back(x);
  }
  return StabilityCertificate(std::move(b));
}

void write_json(std::string& out, const Json& v, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) {
          out += ',';
        }
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent >= 0 ? ": " : ":";
        write_json(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) {
          out += ',';
        }
        newline(depth + 1);
        write_json(out, v[k], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

Instance parse_instance_text(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) {
    throw InputError("malformed", "instance must be a JSON object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw InputError("malformed", "instance needs an integer field \"n\"");
  }
  const long long n_raw = doc["n"].get<long long>();
  if (n_raw < 2 || n_raw > kMaxVertices) {
    throw InputError("bad_n", "n = " + std::to_string(n_raw) + " outside [2, 16]");
  }
  const int n = static_cast<int>(n_raw);
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw InputError("malformed", "instance needs an array field \"entries\"");
  }

  struct Entry {
    double re = 0.0;
    double im = 0.0;
    bool seen = false;
  };
  std::vector<Entry> entries(static_cast<std::size_t>(edge_count(n)));
  bool complex = false;
  for (const Json& item : doc["entries"]) {
    if (!item.is_array() || (item.size() != 3 && item.size() != 4) ||
        !item[0].is_number_integer() || !item[1].is_number_integer()) {
      throw InputError("malformed", "entry " + item.dump() + " must be [i, j, re] or [i, j, re, im]");
    }
    const long long i = item[0].get<long long>();
    const long long j = item[1].get<long long>();
    if (i == j) {
      throw InputError("self_pair", "self-pair " + pair_label(i, j));
    }
    if (i < 1 || j < 1 || i > n || j > n) {
      throw InputError("vertex_out_of_range",
                       "vertex out of range in pair " + pair_label(i, j) + " for n=" + std::to_string(n));
    }
    Entry& slot = entries[static_cast<std::size_t>(
        edge_index(static_cast<int>(i) - 1, static_cast<int>(j) - 1, n).value)];
    if (slot.seen) {
      throw InputError("duplicate_pair",
                       "duplicate pair " + pair_label(std::min(i, j), std::max(i, j)));
    }
    slot.seen = true;
    slot.re = finite_number(item[2], "pair " + pair_label(i, j));
    if (item.size() == 4) {
      slot.im = finite_number(item[3], "pair " + pair_label(i, j));
      complex = true;
    }
  }
  Potential u(n, complex ? PotentialKind::complex : PotentialKind::real);
  for (int e = 0; e < edge_count(n); ++e) {
    const Entry& slot = entries[static_cast<std::size_t>(e)];
    if (!slot.seen) {
      const auto [i, j] = edge_endpoints(EdgeId{e}, n);
      throw InputError("missing_pair", "missing pair " + pair_label(i + 1, j + 1));
    }
    u.set(EdgeId{e}, {slot.re, slot.im});
  }

  std::optional<StabilityCertificate> b;
  if (doc.contains("b") && !doc["b"].is_null()) {
    b = certificate_from(doc["b"], n);
  }
  return Instance{std::move(u), std::move(b)};
}

Instance parse_instance(const std::filesystem::path& path) {
  return parse_instance_text(read_file(path));
}

Json emit_instance(const Instance& instance) {
  const Potential& u = instance.potential;
  const int n = u.vertex_count();
  Json doc;
  doc["n"] = n;
  Json entries = Json::array();
  for (int e = 0; e < edge_count(n); ++e) {
    const auto [i, j] = edge_endpoints(EdgeId{e}, n);
    const std::complex<double> value = u[EdgeId{e}];
    Json entry = Json::array({i + 1, j + 1, value.real()});
    if (u.is_complex()) {
      entry.push_back(value.imag());
    }
    entries.push_back(std::move(entry));
  }
  doc["entries"] = std::move(entries);
  if (instance.b) {
    doc["b"] = instance.b->values();
  }
  return doc;
}

StabilityCertificate parse_certificate_text(std::string_view text, int n) {
  const Json doc = parse_json(text);
  if (doc.is_object()) {
    if (!doc.contains("b")) {
      throw InputError("malformed", "certificate object needs a field \"b\"");
    }
    return certificate_from(doc["b"], n);
  }
  return certificate_from(doc, n);
}

StabilityCertificate parse_certificate(const std::filesystem::path& path, int n) {
  return parse_certificate_text(read_file(path), n);
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  write_json(out, value, indent, 0);
  return out;
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_json(emit_instance(instance))) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw DomainError("uniform range needs finite lo <= hi");
  }
  return {Kind::uniform, lo, hi, 0.0, 0.0};
}

Distribution Distribution::gaussian(double mu, double sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0) {
    throw DomainError("gaussian needs finite mu and sigma > 0");
  }
  return {Kind::gaussian, mu, sigma, 0.0, 0.0};
}

Distribution Distribution::complex_uniform(double re_lo, double re_hi, double im_lo, double im_hi) {
  if (!std::isfinite(re_lo) || !std::isfinite(re_hi) || !std::isfinite(im_lo) ||
      !std::isfinite(im_hi) || re_lo > re_hi || im_lo > im_hi) {
    throw DomainError("complex-uniform needs finite ranges with lo <= hi");
  }
  return {Kind::complex_uniform, re_lo, re_hi, im_lo, im_hi};
}

Distribution Distribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  std::vector<double> args;
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::istringstream in(rest);
    std::string field;
    while (std::getline(in, field, ',')) {
      try {
        std::size_t used = 0;
        args.push_back(std::stod(field, &used));
        if (used != field.size()) {
          throw std::invalid_argument(field);
        }
      } catch (const std::exception&) {
        throw DomainError("bad distribution parameter '" + field + "'");
      }
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw DomainError("distribution '" + name + "' takes " + std::to_string(k) + " parameters");
    }
  };
  if (name == "uniform") {
    need(2);
    return uniform(args[0], args[1]);
  }
  if (name == "gaussian") {
    need(2);
    return gaussian(args[0], args[1]);
  }
  if (name == "complex-uniform") {
    need(4);
    return complex_uniform(args[0], args[1], args[2], args[3]);
  }
  throw DomainError("unknown distribution '" + name + "'");
}

std::string Distribution::describe() const {
  char buf[160];
  switch (kind) {
    case Kind::uniform:
      std::snprintf(buf, sizeof buf, "uniform:%.17g,%.17g", a, b);
      break;
    case Kind::gaussian:
      std::snprintf(buf, sizeof buf, "gaussian:%.17g,%.17g", a, b);
      break;
    case Kind::complex_uniform:
      std::snprintf(buf, sizeof buf, "complex-uniform:%.17g,%.17g,%.17g,%.17g", a, b, c, d);
      break;
  }
  return buf;
}

Potential generate_instance(int n, const Distribution& distribution, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const bool complex = distribution.kind == Distribution::Kind::complex_uniform;
  Potential u(n, complex ? PotentialKind::complex : PotentialKind::real);
  for (int e = 0; e < edge_count(n); ++e) {
    switch (distribution.kind) {
      case Distribution::Kind::uniform:
        u.set(EdgeId{e}, rng.uniform(distribution.a, distribution.b));
        break;
      case Distribution::Kind::gaussian:
        u.set(EdgeId{e}, distribution.a + distribution.b * rng.gaussian());
        break;
      case Distribution::Kind::complex_uniform: {
        const double re = rng.uniform(distribution.a, distribution.b);
        u.set(EdgeId{e}, {re, rng.uniform(distribution.c, distribution.d)});
        break;
      }
    }
  }
  return u;
}

}  // namespace treegraph
