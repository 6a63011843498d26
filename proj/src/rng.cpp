#include "randpick/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace randpick::rng {

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      SplitMix64& gen) {
    if (k > n) throw std::invalid_argument("cannot sample more values than the range holds");
    // Floyd's algorithm: k draws regardless of n.
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint32_t j = n - k; j < n; ++j) {
        std::uint32_t t = gen.below(j + 1);
        if (std::find(out.begin(), out.end(), t) != out.end()) t = j;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace randpick::rng
