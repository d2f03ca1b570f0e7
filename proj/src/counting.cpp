#include "forrlab/counting.hpp"

#include <cmath>
#include <stdexcept>

namespace forrlab::counting {

namespace {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

BigCount gaussian_binomial(unsigned n, unsigned k, unsigned p) {
    if (k > n) throw std::invalid_argument("gaussian_binomial: k > n");
    if (!is_prime(p)) throw std::invalid_argument("gaussian_binomial: p is not prime");
    BigCount num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= big_pow(p, n - i) - 1;
        den *= big_pow(p, k - i) - 1;
    }
    BigCount q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("gaussian_binomial: non-exact division");
    return q;
}

BigCount count_subspaces_brute(unsigned n, unsigned k, unsigned p) {
    if (k > n) throw std::invalid_argument("count_subspaces_brute: k > n");
    if (!is_prime(p)) throw std::invalid_argument("count_subspaces_brute: p is not prime");
    double size = std::pow(double(p), double(n));
    if (size > 65536.0) throw std::invalid_argument("count_subspaces_brute: p^n above the 2^16 guard");
    if (k == 0) return 1;

    // Enumerate k x n matrices in reduced row echelon form: choose pivot
    // columns, then fill every free entry (right of the pivot, outside pivot
    // columns) with all p values. Each RREF matrix is one subspace.
    std::vector<unsigned> pivots(k);
    BigCount total = 0;

    // iterate over k-subsets of columns
    std::vector<unsigned> c(k);
    for (unsigned i = 0; i < k; ++i) c[i] = i;
    while (true) {
        // count free entries for this pivot pattern
        unsigned free_entries = 0;
        for (unsigned r = 0; r < k; ++r) {
            for (unsigned col = c[r] + 1; col < n; ++col) {
                bool is_pivot_col = false;
                for (unsigned r2 = 0; r2 < k; ++r2)
                    if (c[r2] == col) is_pivot_col = true;
                if (!is_pivot_col) ++free_entries;
            }
        }
        // enumerate the fillings explicitly (they are all distinct RREFs)
        BigCount fillings = 1;
        for (unsigned i = 0; i < free_entries; ++i) fillings *= p;
        total += fillings;

        // next k-subset
        int idx = static_cast<int>(k) - 1;
        while (idx >= 0 && c[idx] == n - k + idx) --idx;
        if (idx < 0) break;
        ++c[idx];
        for (unsigned j = idx + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return total;
}

CompletionCounts2Col completion_counts_2col(unsigned m, unsigned t) {
    if (m < 2) throw std::invalid_argument("completion_counts_2col: m must be >= 2");
    if (t < 1 || t > m - 1) throw std::invalid_argument("completion_counts_2col: t must be in [1, m-1]");
    CompletionCounts2Col out;
    out.with_point = gaussian_binomial(2 * m - 1, m - 1, 2);
    out.with_point_ortho = gaussian_binomial(2 * m - 2, m - 1, 2);

    BigCount num = 1, den = 1;
    for (unsigned i = 0; i < m; ++i) {
        num *= pow2(2 * m) - pow2(m + i);
        den *= pow2(m) - pow2(i);
    }
    out.complement = num / den;

    num = 1;
    for (unsigned i = 0; i < m; ++i) num *= pow2(2 * m - 1) - pow2(t + i);
    BigCount q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("completion_counts_2col: non-exact division");
    out.avoiding_t = q;
    return out;
}

ExactRational ratio_R_2col(unsigned m, unsigned t) {
    const CompletionCounts2Col c = completion_counts_2col(m, t);
    return ExactRational(c.with_point * c.avoiding_t, c.with_point_ortho * c.complement);
}

ExactRational ratio_R_kcol(unsigned m, unsigned k, unsigned t) {
    if (k < 2) throw std::invalid_argument("ratio_R_kcol: k must be >= 2");
    if (m <= 2 * k * k - 4 * k) throw std::invalid_argument("ratio_R_kcol: requires m > 2k^2 - 4k");
    if (t < 1 || t + k + 1 > m)
        throw std::invalid_argument("ratio_R_kcol: t must be in [1, m-k-1]");

    const BigCount with_point = gaussian_binomial(2 * m - 1, m - 1, 2);
    const BigCount with_point_ortho_k = gaussian_binomial(2 * m - k, m - 1, 2);

    BigCount den = 1;
    for (unsigned i = 0; i < m; ++i) den *= pow2(m) - pow2(i);

    BigCount complement_num = 1;
    for (unsigned i = 0; i < m; ++i) complement_num *= pow2(2 * m) - pow2(m + i);
    const BigCount complement = complement_num / den;

    BigCount avoid_num = 1;
    for (unsigned i = 0; i < m; ++i) avoid_num *= pow2(2 * m - k + 1) - pow2(t + i);
    BigCount q, r;
    boost::multiprecision::divide_qr(avoid_num, den, q, r);
    if (r != 0) throw std::logic_error("ratio_R_kcol: non-exact division");

    return ExactRational(with_point * q, with_point_ortho_k * complement);
}

ExactRational telescoping_product(unsigned m) {
    ExactRational prod = 1;
    for (unsigned r = 1; r <= m; ++r) {
        prod *= ExactRational(pow2(r + 2) - 1, pow2(r + 2));
        prod /= ExactRational(pow2(r) - 1, pow2(r));
    }
    return prod;
}

ExactRational telescoping_product_closed(unsigned m) {
    const ExactRational a(pow2(m + 1) - 1, pow2(m + 1));
    const ExactRational b(pow2(m + 2) - 1, pow2(m + 2));
    return a * b / (ExactRational(1, 2) * ExactRational(3, 4));
}

ExactRational norm_P(unsigned m, std::uint64_t l, std::uint64_t z0, std::uint64_t z1, unsigned k) {
    if (z0 + z1 > l) throw std::invalid_argument("norm_P: requires z0 + z1 <= l");
    const BigCount buckets = pow2(m) + 1;
    if (4 * BigCount(l) >= buckets) throw std::invalid_argument("norm_P: requires l < (2^m + 1)/4");
    const BigCount a = buckets - l - z0 + (pow2(k - 1) - 1) * z1; // 1/p_e
    const BigCount num = buckets - l - z0 + (big_pow(2, k * (k - 1)) - 1) * z1;
    return ExactRational(num, big_pow(a, k));
}

BinDistribution BinDistribution::uniform(std::size_t n) {
    BinDistribution d;
    d.probs.assign(n, ExactRational(1, n));
    return d;
}

BinDistribution BinDistribution::three_valued(unsigned m, std::uint64_t l, std::uint64_t z0,
                                              std::uint64_t z1, unsigned k) {
    if (z0 + z1 > l) throw std::invalid_argument("three_valued: requires z0 + z1 <= l");
    const BigCount buckets = pow2(m) + 1;
    if (4 * BigCount(l) >= buckets) throw std::invalid_argument("three_valued: requires l < (2^m + 1)/4");
    const BigCount support = buckets - l;
    if (BigCount(z0) + z1 > support) throw std::invalid_argument("three_valued: support too small");
    const ExactRational pe(1, buckets - l - z0 + (pow2(k - 1) - 1) * z1);
    BinDistribution d;
    for (std::uint64_t i = 0; i < z0; ++i) d.probs.push_back(0);
    for (std::uint64_t i = 0; i < z1; ++i) d.probs.push_back(ExactRational(pow2(k - 1)) * pe);
    const BigCount rest = support - z0 - z1;
    for (BigCount i = 0; i < rest; ++i) d.probs.push_back(pe);
    return d;
}

ExactRational BinDistribution::norm_pow(unsigned k) const {
    ExactRational s = 0;
    for (const ExactRational& p : probs) {
        ExactRational t = 1;
        for (unsigned i = 0; i < k; ++i) t *= p;
        s += t;
    }
    return s;
}

ExactRational max_load_bound(std::uint64_t l, unsigned k, const BinDistribution& d) {
    return ExactRational(binomial(static_cast<unsigned>(l), k)) * d.norm_pow(k);
}

ExactRational collision_count_bound(std::uint64_t l, unsigned k, const BinDistribution& d) {
    if (k == 0) throw std::invalid_argument("collision_count_bound: k must be >= 1");
    return ExactRational(binomial(static_cast<unsigned>(l), 2)) * d.norm_pow(2) / k;
}

double BinsStats::p_maxload_ge(unsigned k) const {
    if (k >= maxload_at_least.size()) return 0.0;
    return double(maxload_at_least[k]) / double(trials);
}

double BinsStats::p_maxload_ge_stderr(unsigned k) const {
    const double p = p_maxload_ge(k);
    return std::sqrt(p * (1 - p) / double(trials));
}

BinsStats mc_bins(std::uint64_t l, const BinDistribution& d, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("mc_bins: trials must be >= 1");
    // cumulative double weights for sampling; bound checks stay exact
    std::vector<double> cdf(d.bins());
    double acc = 0;
    for (std::size_t i = 0; i < d.bins(); ++i) {
        acc += d.probs[i].convert_to<double>();
        cdf[i] = acc;
    }
    if (!cdf.empty()) cdf.back() = 1.0;

    std::vector<std::uint64_t> maxloads(trials);
    std::vector<std::uint64_t> collisions(trials);
#pragma omp parallel for schedule(static)
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, trial));
        std::vector<std::uint32_t> load(d.bins(), 0);
        std::uint64_t maxload = 0;
        std::uint64_t cols = 0;
        for (std::uint64_t b = 0; b < l; ++b) {
            const double u = rng.unit_real();
            const std::size_t bin =
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
            cols += load[bin]; // new pairwise collisions with earlier balls here
            ++load[bin];
            if (load[bin] > maxload) maxload = load[bin];
        }
        maxloads[trial] = maxload;
        collisions[trial] = cols;
    }

    BinsStats st;
    st.trials = trials;
    st.maxload_at_least.assign(l + 2, 0);
    double mean = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (std::uint64_t k = 0; k <= maxloads[t] && k < st.maxload_at_least.size(); ++k)
            ++st.maxload_at_least[k];
        mean += double(collisions[t]);
    }
    mean /= double(trials);
    double var = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double dlt = double(collisions[t]) - mean;
        var += dlt * dlt;
    }
    var /= trials > 1 ? double(trials - 1) : 1.0;
    st.collisions_mean = mean;
    st.collisions_stderr = std::sqrt(var / double(trials));
    return st;
}

CompletionCountG4 eligible_completion_count_g4(unsigned m, unsigned k, std::uint64_t l) {
    if (k < 2) throw std::invalid_argument("eligible_completion_count_g4: k must be >= 2");
    if (l < k) throw std::invalid_argument("eligible_completion_count_g4: requires l >= k");
    const unsigned n = 2 * m;
    CompletionCountG4 out;
    // ceil((l - k + 1) / (k - 1)) fully loaded subspaces; rounding up is the
    // worst case for the count
    const BigCount loaded = (BigCount(l) - k + 1 + (k - 2)) / (k - 1);
    const BigCount forbidden = pow2(2 * k - 2) * loaded;
    out.forbidden = forbidden;

    // complete the loaded subspace from dim k-1 to dim m inside the
    // (n-k+1)-dim space orthogonal to the dual side's k-1 vectors
    const unsigned picks = m - k + 1;
    BigCount num = 1;
    out.positive = true;
    for (unsigned i = 0; i < picks; ++i) {
        const BigCount factor = pow2(n - k + 1) - (forbidden << i);
        if (i + 1 == picks) out.smallest_factor = factor;
        if (factor <= 0) out.positive = false;
        num *= factor;
    }
    if (!out.positive) {
        out.count = 0;
        return out;
    }
    BigCount den = 1;
    for (unsigned i = 0; i < picks; ++i) den *= pow2(m - k + 1) - pow2(i);
    out.count = num / den; // lower bound; integer division only truncates it
    return out;
}

} // namespace forrlab::counting
