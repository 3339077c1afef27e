#pragma once

// Bit-exact code files.  Matrix rows are packed little-endian into bytes
// (coordinate 0 is the least significant bit of the first byte) and written
// as lowercase hex; n and k are decimal strings so 64-bit JSON consumers
// never truncate them.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qrm/css.hpp"
#include "qrm/errors.hpp"

namespace qrm {

inline constexpr int kCodeFileSchemaVersion = 1;

/// Lowercase hex encoding of a row, little-endian bytes.
inline std::string to_hex(const BitVector& v) {
  static const char* digits = "0123456789abcdef";
  const std::size_t nbytes = (v.size() + 7) / 8;
  std::string out;
  out.reserve(2 * nbytes);
  for (std::size_t b = 0; b < nbytes; ++b) {
    const std::uint64_t word = v.words()[b / 8];
    const unsigned byte = (word >> (8 * (b % 8))) & 0xff;
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

/// Parses a hex row of exactly nbits significant bits; padding bits must be
/// zero.
inline BitVector bitvector_from_hex(std::string_view hex, std::size_t nbits) {
  const std::size_t nbytes = (nbits + 7) / 8;
  if (hex.size() != 2 * nbytes) {
    throw ParseError("row has " + std::to_string(hex.size()) + " hex digits, expected " +
                     std::to_string(2 * nbytes));
  }
  std::vector<std::uint64_t> words((nbits + 63) / 64, 0);
  for (std::size_t b = 0; b < nbytes; ++b) {
    unsigned byte = 0;
    for (int half = 0; half < 2; ++half) {
      const char c = hex[2 * b + half];
      unsigned nibble;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<unsigned>(c - 'a') + 10;
      } else {
        throw ParseError("invalid hex digit in row");
      }
      byte = (byte << 4) | nibble;
    }
    words[b / 8] |= static_cast<std::uint64_t>(byte) << (8 * (b % 8));
  }
  if (nbits % 8 != 0) {
    const unsigned last = (words[(nbytes - 1) / 8] >> (8 * ((nbytes - 1) % 8))) & 0xff;
    if (last >> (nbits % 8) != 0) throw ParseError("nonzero padding bits in row");
  }
  return BitVector::from_words(std::move(words), nbits);
}

namespace detail {

inline nlohmann::json matrix_to_json(const BitMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_hex(m.row(i)));
  return rows;
}

inline BitMatrix matrix_from_json(const nlohmann::json& rows, std::size_t nbits,
                                  const char* field) {
  if (!rows.is_array()) throw ParseError(std::string(field) + ": expected an array");
  std::vector<BitVector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_string()) throw ParseError(std::string(field) + ": expected hex strings");
    out.push_back(bitvector_from_hex(row.get_ref<const std::string&>(), nbits));
  }
  if (out.empty()) return BitMatrix(0, nbits);
  return BitMatrix(std::move(out));
}

inline int get_int(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw ParseError(std::string("missing or non-integer field: ") + field);
  }
  return j[field].get<int>();
}

inline WideInt get_wide(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw ParseError(std::string("missing or non-string field: ") + field);
  }
  const std::string& s = j[field].get_ref<const std::string&>();
  if (s.empty()) throw ParseError(std::string(field) + ": empty decimal string");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string(field) + ": not a decimal string");
    }
  }
  return WideInt(s);
}

}  // namespace detail

inline nlohmann::json code_to_json(const CssCode& code) {
  nlohmann::json j;
  j["schema_version"] = kCodeFileSchemaVersion;
  j["m"] = code.params.m;
  j["r"] = code.params.r;
  j["w"] = code.params.w;
  j["nu"] = code.params.nu;
  j["n"] = code.n.str();
  j["k"] = code.k.str();
  j["x_stabilizers"] = detail::matrix_to_json(code.x_stabilizers);
  j["z_stabilizers"] = detail::matrix_to_json(code.z_stabilizers);
  j["logical_x"] = detail::matrix_to_json(code.logical_x);
  j["logical_z"] = detail::matrix_to_json(code.logical_z);
  return j;
}

/// Reconstructs a code from JSON, validating structure and dimensions.
/// Matrix bit content is not re-verified here; run commutation_check (or
/// the verify command's oracles) on the result.
inline CssCode code_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("code file: expected a JSON object");
  if (detail::get_int(j, "schema_version") != kCodeFileSchemaVersion) {
    throw ParseError("unsupported schema_version");
  }
  const int m = detail::get_int(j, "m");
  const int r = detail::get_int(j, "r");
  const int w = detail::get_int(j, "w");

  CssCode code;
  try {
    code.params = CodeFamilyParams::validated(m, r, w);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid code parameters: ") + e.what());
  }
  if (detail::get_int(j, "nu") != code.params.nu) {
    throw ParseError("nu is inconsistent with (m, r)");
  }
  code.n = detail::get_wide(j, "n");
  code.k = detail::get_wide(j, "k");
  if (code.n != binom_sum_gt(m, w) || code.k != binom_sum_le(m, w)) {
    throw ParseError("n or k is inconsistent with (m, r, w)");
  }

  const std::size_t n = code.n.convert_to<std::size_t>();
  const std::size_t k = code.k.convert_to<std::size_t>();
  if (!j.contains("x_stabilizers") || !j.contains("z_stabilizers") ||
      !j.contains("logical_x") || !j.contains("logical_z")) {
    throw ParseError("missing matrix field");
  }
  code.x_stabilizers = detail::matrix_from_json(j["x_stabilizers"], n, "x_stabilizers");
  code.z_stabilizers = detail::matrix_from_json(j["z_stabilizers"], n, "z_stabilizers");
  code.logical_x = detail::matrix_from_json(j["logical_x"], n, "logical_x");
  code.logical_z = detail::matrix_from_json(j["logical_z"], n, "logical_z");

  if (code.logical_x.rows() != k || code.logical_z.rows() != k) {
    throw ParseError("logical row count is inconsistent with k");
  }
  const WideInt sx = binom_sum_le(m, r) - code.k;
  const WideInt sz = binom_sum_le(m, m - r - 1) - code.k;
  if (WideInt(code.x_stabilizers.rows()) != sx || WideInt(code.z_stabilizers.rows()) != sz) {
    throw ParseError("stabilizer row count is inconsistent with (m, r, w)");
  }
  return code;
}

inline void save_code(const CssCode& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << code_to_json(code).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

inline CssCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return code_from_json(j);
}

}  // namespace qrm
