#include "oracles.hpp"

#include <cmath>

namespace testoracle {

double si(double x) {
    if (x == 0.0) return 0.0;
    const int panels = 1 << 16;
    const long double h = static_cast<long double>(x) / panels;
    auto f = [](long double t) -> long double {
        return t == 0.0L ? 1.0L : std::sin(t) / t;
    };
    long double sum = f(0.0L) + f(static_cast<long double>(x));
    for (int i = 1; i < panels; ++i) sum += f(h * i) * (i % 2 ? 4.0L : 2.0L);
    return static_cast<double>(sum * h / 3.0L);
}

double mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            std::uint64_t m = n;
            while (m % p == 0) m /= p;
            return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));
}

}  // namespace testoracle
