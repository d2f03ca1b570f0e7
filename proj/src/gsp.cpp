#include "forrlab/gsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace forrlab::gsp {

namespace {

unsigned inv_mod(unsigned a, unsigned p) {
    // p is a small prime
    unsigned r = 1;
    for (unsigned e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

void check_same_space(const FpVector& a, const FpVector& b) {
    if (a.p != b.p || a.n != b.n)
        throw std::invalid_argument("FpVector: mismatched p or n");
}

} // namespace

FpVector fp_zero(unsigned p, unsigned n) { return {p, n, std::vector<std::uint8_t>(n, 0)}; }

FpVector fp_add(const FpVector& a, const FpVector& b) {
    check_same_space(a, b);
    FpVector r = a;
    for (unsigned i = 0; i < a.n; ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % a.p;
    return r;
}

FpVector fp_sub(const FpVector& a, const FpVector& b) {
    check_same_space(a, b);
    FpVector r = a;
    for (unsigned i = 0; i < a.n; ++i)
        r.coords[i] = (a.coords[i] + a.p - b.coords[i]) % a.p;
    return r;
}

FpVector fp_scale(const FpVector& a, unsigned c) {
    FpVector r = a;
    for (unsigned i = 0; i < a.n; ++i) r.coords[i] = (a.coords[i] * c) % a.p;
    return r;
}

FpBasis fp_rref(unsigned p, unsigned n, const std::vector<FpVector>& vectors) {
    FpBasis b;
    b.p = p;
    b.n = n;
    for (const FpVector& vin : vectors) {
        if (vin.p != p || vin.n != n) throw std::invalid_argument("fp_rref: mismatched p or n");
        FpVector v = fp_reduce(b, vin);
        unsigned lead = n;
        for (unsigned i = 0; i < n; ++i)
            if (v.coords[i]) {
                lead = i;
                break;
            }
        if (lead == n) continue;
        v = fp_scale(v, inv_mod(v.coords[lead], p));
        for (FpVector& row : b.rows) {
            if (row.coords[lead])
                row = fp_sub(row, fp_scale(v, row.coords[lead]));
        }
        b.rows.push_back(std::move(v));
    }
    std::sort(b.rows.begin(), b.rows.end(), [n](const FpVector& x, const FpVector& y) {
        auto lead = [n](const FpVector& v) {
            for (unsigned i = 0; i < n; ++i)
                if (v.coords[i]) return i;
            return n;
        };
        return lead(x) < lead(y);
    });
    return b;
}

FpVector fp_reduce(const FpBasis& basis, FpVector x) {
    for (const FpVector& row : basis.rows) {
        unsigned lead = basis.n;
        for (unsigned i = 0; i < basis.n; ++i)
            if (row.coords[i]) {
                lead = i;
                break;
            }
        if (lead < basis.n && x.coords[lead])
            x = fp_sub(x, fp_scale(row, x.coords[lead])); // leading entries are 1
    }
    return x;
}

GSPInstance::GSPInstance(unsigned p, unsigned n, unsigned k, FpBasis subgroup,
                         std::vector<std::uint64_t> labels)
    : p_(p), n_(n), k_(k), subgroup_(std::move(subgroup)), labels_(std::move(labels)) {
    if (subgroup_.rank() != k) throw std::invalid_argument("GSPInstance: basis rank != k");
    std::vector<bool> pivot(n, false);
    for (const FpVector& row : subgroup_.rows) {
        for (unsigned i = 0; i < n; ++i)
            if (row.coords[i]) {
                pivot[i] = true;
                break;
            }
    }
    for (unsigned i = 0; i < n; ++i)
        if (!pivot[i]) free_coords_.push_back(i);
    std::uint64_t expect = 1;
    for (unsigned i = 0; i + k < n; ++i) expect *= p;
    if (labels_.size() != expect) throw std::invalid_argument("GSPInstance: wrong label count");
}

std::uint64_t GSPInstance::coset_index(const FpVector& x) const {
    const FpVector r = fp_reduce(subgroup_, x);
    // the reduced vector is supported on the free coordinates; pack them
    // in mixed radix
    std::uint64_t idx = 0;
    for (unsigned i : free_coords_) idx = idx * p_ + r.coords[i];
    return idx;
}

GSPInstance sample_gsp_instance(unsigned p, unsigned n, unsigned k, Rng& rng) {
    if (k == 0 || k >= n) throw std::invalid_argument("sample_gsp_instance: requires 0 < k < n");
    const double logsize = double(n) * std::log2(double(p));
    if (logsize > 32.0) throw std::invalid_argument("sample_gsp_instance: p^n above the 2^32 guard");
    if ((double(n) - k) * std::log2(double(p)) > 26.0)
        throw std::invalid_argument("sample_gsp_instance: coset table above the 2^26 guard");

    // uniform independent tuples -> uniform subgroup (every dim-k subgroup
    // has the same number of ordered bases)
    FpBasis basis;
    while (true) {
        std::vector<FpVector> rows;
        for (unsigned i = 0; i < k; ++i) {
            FpVector v = fp_zero(p, n);
            for (unsigned j = 0; j < n; ++j) v.coords[j] = static_cast<std::uint8_t>(rng.below(p));
            rows.push_back(std::move(v));
        }
        basis = fp_rref(p, n, rows);
        if (basis.rank() == k) break;
    }

    std::uint64_t cosets = 1;
    for (unsigned i = 0; i + k < n; ++i) cosets *= p;
    std::vector<std::uint64_t> labels(cosets);
    std::unordered_set<std::uint64_t> used;
    used.reserve(cosets * 2);
    for (std::uint64_t i = 0; i < cosets; ++i) {
        std::uint64_t l;
        do {
            l = rng.next_u64();
        } while (!used.insert(l).second);
        labels[i] = l;
    }
    return GSPInstance(p, n, k, std::move(basis), std::move(labels));
}

RecoveryResult adaptive_recover(const GspOracle& oracle, unsigned p, unsigned n, unsigned k,
                                Rng& rng) {
    FpBasis discovered;
    discovered.p = p;
    discovered.n = n;

    std::uint64_t queries = 0;
    std::unordered_map<std::uint64_t, FpVector> seen; // label -> representative point
    // canonical representatives already queried, keyed by their packed form
    std::unordered_set<std::string> queried;

    auto canonical_key = [n](const FpVector& v) {
        std::string s(n, '\0');
        for (unsigned i = 0; i < n; ++i) s[i] = static_cast<char>(v.coords[i]);
        return s;
    };

    while (discovered.rank() < k) {
        // uniform unqueried canonical representative of the discovered
        // subgroup's cosets
        FpVector x = fp_zero(p, n);
        do {
            for (unsigned j = 0; j < n; ++j)
                x.coords[j] = static_cast<std::uint8_t>(rng.below(p));
            x = fp_reduce(discovered, x);
        } while (queried.count(canonical_key(x)));
        queried.insert(canonical_key(x));

        const std::uint64_t label = oracle(x);
        ++queries;

        auto it = seen.find(label);
        if (it == seen.end()) {
            seen.emplace(label, x);
            continue;
        }
        // collision: x - y generates a new subgroup element, independent of
        // the discovered ones by the representative discipline
        const FpVector gen = fp_sub(x, it->second);
        std::vector<FpVector> rows = discovered.rows;
        rows.push_back(gen);
        FpBasis next = fp_rref(p, n, rows);
        if (next.rank() <= discovered.rank())
            throw std::logic_error("adaptive_recover: collision yielded a dependent vector");
        discovered = std::move(next);

        // re-canonicalize the bookkeeping against the enlarged subgroup
        std::unordered_map<std::uint64_t, FpVector> reseen;
        std::unordered_set<std::string> requeried;
        for (auto& [lbl, pt] : seen) {
            FpVector r = fp_reduce(discovered, pt);
            requeried.insert(canonical_key(r));
            reseen.emplace(lbl, std::move(r));
        }
        seen = std::move(reseen);
        queried = std::move(requeried);
    }
    return {std::move(discovered), queries};
}

GspStats gsp_experiment(unsigned p, unsigned n, unsigned k, std::uint64_t trials,
                        std::uint64_t seed) {
    std::vector<std::uint64_t> counts(trials);
    std::vector<std::uint8_t> success(trials, 0);

#pragma omp parallel for schedule(dynamic, 4)
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        GSPInstance inst = sample_gsp_instance(p, n, k, rng);
        RecoveryResult rec =
            adaptive_recover([&inst](const FpVector& x) { return inst.query(x); }, p, n, k, rng);
        counts[i] = rec.queries;
        success[i] = rec.subgroup.rows == inst.subgroup().rows ? 1 : 0;
    }

    GspStats st;
    st.trials = trials;
    st.per_trial = counts;
    double sum = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        st.successes += success[i];
        sum += double(counts[i]);
    }
    st.mean_queries = trials ? sum / double(trials) : 0;
    std::vector<std::uint64_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    if (trials) {
        st.median_queries = sorted[trials / 2];
        st.q25 = sorted[trials / 4];
        st.q75 = sorted[(3 * trials) / 4];
    }
    return st;
}

} // namespace forrlab::gsp
