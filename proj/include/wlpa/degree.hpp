#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace wlpa {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Z^n, the grading group of the standard grading.
/// n = 0 is allowed (edgeless graphs) and gives the trivial group.
class DegreeVector {
 public:
  DegreeVector() = default;
  explicit DegreeVector(std::size_t dimension) : c_(dimension, 0) {}

  /// sign * epsilon_index, with index in 1..dimension.
  static DegreeVector unit(std::size_t dimension, std::size_t index, int sign);

  /// Parses "1,-1"; the empty string is the zero vector of dimension 0.
  static DegreeVector parse(std::string_view text);

  std::size_t size() const { return c_.size(); }
  std::int32_t operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const;

  DegreeVector& operator+=(const DegreeVector& other);
  friend DegreeVector operator+(DegreeVector a, const DegreeVector& b) { return a += b; }
  DegreeVector operator-() const;

  friend bool operator==(const DegreeVector& a, const DegreeVector& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const DegreeVector& a, const DegreeVector& b);

  /// Comma-joined components, e.g. "1,-1".
  std::string to_string() const;

  std::size_t hash() const noexcept;

 private:
  boost::container::small_vector<std::int32_t, 4> c_;
};

struct DegreeVectorHash {
  std::size_t operator()(const DegreeVector& d) const noexcept { return d.hash(); }
};

}  // namespace wlpa
