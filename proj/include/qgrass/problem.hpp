#pragma once

// Problem files: {"n": 3, "rho": ["2", "3"], "H": [[[re, im], ...], ...]}.
// Rationals are strings "p" or "p/q"; H is optional.

#include <gmpxx.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgrass/biortho.hpp"
#include "qgrass/errors.hpp"

namespace qgrass {

class ProblemError : public Error {
 public:
  using Error::Error;
};

struct Problem {
  int n = 0;
  std::vector<mpq_class> rho;  // rho_1 .. rho_{n-1}
  std::optional<CMatrix> H;
};

/// Parses "p" or "p/q" into a canonical rational.
inline mpq_class parse_rational(const std::string& text, const std::string& field) {
  mpq_class r;
  const bool ok = !text.empty() && text.find_first_not_of("+-0123456789/") == std::string::npos &&
                  r.set_str(text, 10) == 0 && r.get_den() != 0;
  if (!ok) throw ProblemError("field '" + field + "': not a rational number: \"" + text + "\"");
  r.canonicalize();
  return r;
}

/// Comma-separated rationals, e.g. "2,3/2".
inline std::vector<mpq_class> parse_rational_list(const std::string& text, const std::string& field) {
  std::vector<mpq_class> out;
  std::stringstream ss(text);
  std::string item;
  for (int k = 0; std::getline(ss, item, ','); ++k)
    out.push_back(parse_rational(item, field + "[" + std::to_string(k) + "]"));
  return out;
}

inline void check_rho(const std::vector<mpq_class>& rho, const std::string& field) {
  for (std::size_t k = 0; k < rho.size(); ++k)
    if (rho[k] <= 0) throw ProblemError("field '" + field + "[" + std::to_string(k) + "]': rho must be positive");
}

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline double number_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ProblemError("field '" + field + "': expected a number");
  return j.get<double>();
}

}  // namespace detail

inline Problem parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProblemError("syntax error at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!j.is_object()) throw ProblemError("top level: expected an object");
  for (const auto& [key, value] : j.items())
    if (key != "n" && key != "rho" && key != "H") throw ProblemError("field '" + key + "': unknown field");

  Problem p;
  if (!j.contains("n")) throw ProblemError("field 'n': missing");
  if (!j["n"].is_number_integer()) throw ProblemError("field 'n': expected an integer");
  p.n = j["n"].get<int>();
  if (p.n < 2) throw ProblemError("field 'n': n >= 2 required, got " + std::to_string(p.n));

  if (j.contains("rho")) {
    const auto& r = j["rho"];
    if (!r.is_array()) throw ProblemError("field 'rho': expected an array of strings");
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::string field = "rho[" + std::to_string(k) + "]";
      if (!r[k].is_string()) throw ProblemError("field '" + field + "': expected a string like \"3/2\"");
      p.rho.push_back(parse_rational(r[k].get<std::string>(), field));
    }
    check_rho(p.rho, "rho");
    if (static_cast<int>(p.rho.size()) != p.n - 1)
      throw ProblemError("field 'rho': expected " + std::to_string(p.n - 1) + " values for n = " +
                         std::to_string(p.n) + ", got " + std::to_string(p.rho.size()));
  }

  if (j.contains("H")) {
    const auto& h = j["H"];
    if (!h.is_array() || h.size() != static_cast<std::size_t>(p.n))
      throw ProblemError("field 'H': expected " + std::to_string(p.n) + " rows");
    CMatrix m(p.n, p.n);
    for (int r = 0; r < p.n; ++r) {
      const auto& row = h[static_cast<std::size_t>(r)];
      const std::string rf = "H[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != static_cast<std::size_t>(p.n))
        throw ProblemError("field '" + rf + "': expected " + std::to_string(p.n) + " entries");
      for (int c = 0; c < p.n; ++c) {
        const auto& z = row[static_cast<std::size_t>(c)];
        const std::string zf = rf + "[" + std::to_string(c) + "]";
        if (!z.is_array() || z.size() != 2) throw ProblemError("field '" + zf + "': expected [re, im]");
        m(r, c) = cdouble(detail::number_at(z[0], zf + "[0]"), detail::number_at(z[1], zf + "[1]"));
      }
    }
    p.H = std::move(m);
  }
  return p;
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const ProblemError& e) {
    throw ProblemError(path + ": " + e.what());
  }
}

}  // namespace qgrass
