#include "wlpa/degree.hpp"

#include <algorithm>
#include <charconv>

#include "wlpa/error.hpp"

namespace wlpa {

DegreeVector DegreeVector::unit(std::size_t dimension, std::size_t index, int sign) {
  if (index < 1 || index > dimension) {
    throw Error(Errc::invalid_argument, "unit vector index out of range");
  }
  DegreeVector d(dimension);
  d.c_[index - 1] = sign;
  return d;
}

DegreeVector DegreeVector::parse(std::string_view text) {
  DegreeVector d;
  if (text.empty()) return d;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    std::int32_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error(Errc::invalid_argument, "malformed degree vector '" + std::string(text) + "'");
    }
    d.c_.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return d;
}

bool DegreeVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int32_t x) { return x == 0; });
}

DegreeVector& DegreeVector::operator+=(const DegreeVector& other) {
  if (other.c_.size() != c_.size()) {
    throw Error(Errc::invalid_argument, "degree vectors of different dimension");
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

DegreeVector DegreeVector::operator-() const {
  DegreeVector d = *this;
  for (auto& x : d.c_) x = -x;
  return d;
}

std::strong_ordering operator<=>(const DegreeVector& a, const DegreeVector& b) {
  return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.end(), b.c_.begin(),
                                                b.c_.end());
}

std::string DegreeVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c_[i]);
  }
  return out;
}

std::size_t DegreeVector::hash() const noexcept {
  std::size_t h = c_.size();
  for (auto x : c_) h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(x));
  return h;
}

}  // namespace wlpa
