#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace zs {

// Neumaier variant of Kahan summation: stays accurate when a summand is
// larger in magnitude than the running sum.
class CompensatedSum
{
  public:
    void add(double x) noexcept
    {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum
{
  public:
    void add(std::complex<double> z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }

    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept
    {
        add(z);
        return *this;
    }

    [[nodiscard]] std::complex<double> value() const noexcept
    {
        return {re_.value(), im_.value()};
    }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
};

// Fixed-shape pairwise reduction. The tree depends only on the length, so the
// result is identical no matter how the inputs were produced.
template <class T>
T pairwise_sum(std::span<const T> xs)
{
    constexpr std::size_t leaf = 32;
    if (xs.empty())
        return T{};
    if (xs.size() <= leaf) {
        T acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i)
            acc += xs[i];
        return acc;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

} // namespace zs
