#include "weyl/tensor.hpp"

#include "weyl/errors.hpp"

namespace weyl
{

QuantizationTensor::QuantizationTensor(int dimension, std::vector<Rational> row_major)
    : n_(dimension), m_(std::move(row_major))
{
    if (dimension < 1)
        throw dimension_error("tensor dimension must be positive");
    if (m_.size() != static_cast<std::size_t>(4 * n_ * n_))
        throw dimension_error("tensor needs (2N)^2 entries");
    for (int r = 0; r < 2 * n_; ++r)
        for (int c = 0; c < 2 * n_; ++c)
            if (sgn((*this)(r, c)) != 0)
                nonzero_.push_back({r, c, (*this)(r, c)});
}

QuantizationTensor QuantizationTensor::moyal(int dimension)
{
    std::vector<Rational> m(static_cast<std::size_t>(4 * dimension * dimension), Rational(0));
    const int w = 2 * dimension;
    for (int j = 0; j < dimension; ++j) {
        m[static_cast<std::size_t>(j * w + dimension + j)] = 1;
        m[static_cast<std::size_t>((dimension + j) * w + j)] = -1;
    }
    return {dimension, std::move(m)};
}

QuantizationTensor QuantizationTensor::standard_order(int dimension)
{
    std::vector<Rational> m(static_cast<std::size_t>(4 * dimension * dimension), Rational(0));
    const int w = 2 * dimension;
    for (int j = 0; j < dimension; ++j)
        m[static_cast<std::size_t>((dimension + j) * w + j)] = 1;
    return {dimension, std::move(m)};
}

bool QuantizationTensor::is_antisymmetric() const
{
    for (int r = 0; r < 2 * n_; ++r)
        for (int c = 0; c < 2 * n_; ++c)
            if ((*this)(r, c) != -(*this)(c, r))
                return false;
    return true;
}

std::string QuantizationTensor::name() const
{
    if (*this == moyal(n_))
        return "moyal";
    if (*this == standard_order(n_))
        return "standard";
    return "custom";
}

QuantizationTensor tensor_from_name(const std::string &name, int dimension)
{
    if (name == "moyal")
        return QuantizationTensor::moyal(dimension);
    if (name == "standard")
        return QuantizationTensor::standard_order(dimension);
    throw std::invalid_argument("unknown tensor '" + name + "' (expected moyal|standard)");
}

} // namespace weyl
