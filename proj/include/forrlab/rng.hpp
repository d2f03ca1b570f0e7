#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace forrlab {

// splitmix64 step; also the documented hash used to derive per-trial seeds,
// so parallel and serial experiment runs agree.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Seedable stream with platform-independent bounded sampling (rejection on
// top of mt19937_64, which is fully specified by the standard).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform over [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound) - 1;
        std::uint64_t v = eng_();
        while (v > limit) v = eng_();
        return v % bound;
    }

    bool coin() { return (eng_() >> 63) != 0; }

    double unit_real() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // distinct k-subset of [0, n), sorted
    std::vector<std::size_t> subset(std::size_t n, std::size_t k);

  private:
    std::mt19937_64 eng_;
};

inline std::vector<std::size_t> Rng::subset(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace forrlab
