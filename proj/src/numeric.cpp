#include "selfsim/numeric.hpp"

#include <cctype>

#include "selfsim/error.hpp"

namespace selfsim {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidTransversal: return "InvalidTransversal";
    case ErrorCode::InconsistentEndomorphism: return "InconsistentEndomorphism";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NoFixedElement: return "NoFixedElement";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!is_integer_literal(s)) {
    throw Error(ErrorCode::Parse, "not an integer: '" + std::string(text) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

std::string join_coords(const std::vector<Integer>& coords) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].get_str();
  }
  return out;
}

std::string join_coords(const std::vector<Rational>& coords) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].get_str();
  }
  return out;
}

std::vector<Integer> parse_coords(std::string_view text) {
  std::vector<Integer> out;
  auto s = trim(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty coordinate list");
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(parse_integer(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::size_t hash_integer(const Integer& value) noexcept {
  const auto* raw = value.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(raw->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const int limbs = raw->_mp_size < 0 ? -raw->_mp_size : raw->_mp_size;
  for (int i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(raw, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace selfsim
