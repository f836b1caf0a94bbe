#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace digivol {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Point2<double>;
using PointSet = std::vector<Point>;

/// Six per-class weights, indexed 0..5 for classes 1..6.
using Weights6 = Eigen::Matrix<double, 6, 1>;

/// Precondition on an argument violated (bad spacing, radius, index, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Two independent computations that must agree did not. Always a bug.
class ConsistencyFault : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Malformed input bytes.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

}  // namespace digivol
