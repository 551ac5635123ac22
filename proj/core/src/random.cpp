#include "ccn/random.hpp"

#include <cmath>

namespace ccn {

std::uint64_t stream_key(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t key = mix64(root);
    for (std::uint64_t step : path) key = mix64(key ^ mix64(step));
    return key;
}

// Marsaglia polar method.
double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

}  // namespace ccn
