#ifndef WEYL_TENSOR_HPP
#define WEYL_TENSOR_HPP

#include <span>
#include <string>
#include <vector>

#include "weyl/scalar.hpp"

namespace weyl
{

// Constant bivector J^{mu nu} on the 2N phase coordinates (x1..xN, p1..pN).
class QuantizationTensor
{
public:
    struct Entry {
        int row;
        int col;
        Rational value;
    };

    QuantizationTensor(int dimension, std::vector<Rational> row_major);

    // [[0, I], [-I, 0]]: Weyl quantization and the Moyal product.
    static QuantizationTensor moyal(int dimension);
    // [[0, 0], [I, 0]]: standard-order quantization, {C,D}_k = d_p^k C d_x^k D.
    static QuantizationTensor standard_order(int dimension);

    int dimension() const { return n_; }
    int coordinates() const { return 2 * n_; }
    const Rational &operator()(int row, int col) const { return m_[static_cast<std::size_t>(row * 2 * n_ + col)]; }
    std::span<const Entry> nonzero() const { return nonzero_; }

    bool is_antisymmetric() const;
    std::string name() const;

    friend bool operator==(const QuantizationTensor &a, const QuantizationTensor &b)
    {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }

private:
    int n_;
    std::vector<Rational> m_;
    std::vector<Entry> nonzero_;
};

QuantizationTensor tensor_from_name(const std::string &name, int dimension);

} // namespace weyl

#endif
