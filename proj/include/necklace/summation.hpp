#pragma once
#include <cmath>

namespace necklace {

// Neumaier variant of Kahan summation; robust when addends exceed the running sum.
struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    KahanAccumulator& operator+=(double v) { add(v); return *this; }
    double result() const { return sum + comp; }
};

} // namespace necklace
