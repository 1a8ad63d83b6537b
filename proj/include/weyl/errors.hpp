#ifndef WEYL_ERRORS_HPP
#define WEYL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weyl
{

// Raised when a desk-scale guard (degree, edge count, vertex count, truncation order) is exceeded.
class capacity_error : public std::length_error
{
public:
    using std::length_error::length_error;
};

// Operands that live on different phase spaces or carry incompatible tensors.
class dimension_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxTruncationOrder = 8;
inline constexpr int kMaxTotalDegree = 64;

} // namespace weyl

#endif
