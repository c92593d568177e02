#include <array>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "rotorwalk/direction.hpp"
#include "rotorwalk/green.hpp"
#include "rotorwalk/random.hpp"

namespace rotorwalk {
namespace {

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kPairLow = 0x5555555555555555ULL;

// Binomial(m, 1/2) as the popcount of m fair bits.
std::uint64_t binomial_half(Xoshiro256& rng, std::uint64_t m) {
    std::uint64_t ones = 0;
    for (; m >= 64; m -= 64) {
        ones += static_cast<std::uint64_t>(std::popcount(rng()));
    }
    if (m > 0) {
        ones += static_cast<std::uint64_t>(std::popcount(rng() & ((std::uint64_t{1} << m) - 1)));
    }
    return ones;
}

// Multinomial(k; 1/3, 1/3, 1/3) from 2-bit symbols, rejecting the fourth.
void multinomial_thirds(Xoshiro256& rng, std::uint64_t k, std::uint64_t* counts) {
    counts[0] = counts[1] = counts[2] = 0;
    while (k > 0) {
        const std::uint64_t w = rng();
        const std::uint64_t lo = w & kPairLow;
        const std::uint64_t hi = (w >> 1) & kPairLow;
        const auto c0 = static_cast<std::uint64_t>(std::popcount(~lo & ~hi & kPairLow));
        const auto c1 = static_cast<std::uint64_t>(std::popcount(lo & ~hi));
        const auto c2 = static_cast<std::uint64_t>(std::popcount(~lo & hi));
        if (c0 + c1 + c2 <= k) {
            counts[0] += c0;
            counts[1] += c1;
            counts[2] += c2;
            k -= c0 + c1 + c2;
            continue;
        }
        // Last word: take accepted symbols in order until k are used.
        for (int i = 0; i < 32 && k > 0; ++i) {
            const unsigned sym = static_cast<unsigned>((w >> (2 * i)) & 3U);
            if (sym < 3) {
                ++counts[sym];
                --k;
            }
        }
    }
}

void axis_counts(Xoshiro256& rng, int dim, std::uint64_t k, std::uint64_t* counts) {
    if (dim == 2) {
        counts[0] = binomial_half(rng, k);
        counts[1] = k - counts[0];
    } else if (dim == 3) {
        multinomial_thirds(rng, k, counts);
    } else {
        std::uint64_t rest = k;
        for (int a = 0; a < dim - 1; ++a) {
            std::binomial_distribution<std::uint64_t> bin(rest, 1.0 / (dim - a));
            counts[a] = bin(rng);
            rest -= counts[a];
        }
        counts[dim - 1] = rest;
    }
}

// First return time to o of SRW from o, or kNever if none within horizon.
// Far from o the walk advances k = L1 - 1 steps at once by sampling the
// exact k-step displacement, since no return is possible in fewer than L1
// steps.
std::uint64_t first_return(Xoshiro256& rng, int dim, std::uint64_t horizon) {
    std::array<std::int64_t, kMaxDim> x{};
    std::uint64_t counts[kMaxDim];
    std::uint64_t t = 0;
    std::int64_t l1 = 0;
    const auto dirs = static_cast<std::uint64_t>(2 * dim);
    while (t < horizon) {
        const std::uint64_t room = horizon - t;
        const std::uint64_t k = std::min(static_cast<std::uint64_t>(std::max<std::int64_t>(l1 - 1, 0)), room);
        if (k <= 1) {
            const std::uint64_t dir = rng.below(dirs);
            std::int64_t& c = x[dir >> 1];
            const std::int64_t before = c < 0 ? -c : c;
            c += (dir & 1) != 0 ? -1 : 1;
            l1 += (c < 0 ? -c : c) - before;
            ++t;
            if (l1 == 0) {
                return t;
            }
            continue;
        }
        axis_counts(rng, dim, k, counts);
        l1 = 0;
        for (int a = 0; a < dim; ++a) {
            const std::uint64_t m = counts[a];
            const auto up = static_cast<std::int64_t>(binomial_half(rng, m));
            x[static_cast<std::size_t>(a)] += 2 * up - static_cast<std::int64_t>(m);
            l1 += std::abs(x[static_cast<std::size_t>(a)]);
        }
        t += k;
    }
    return kNever;
}

AlphaEstimate make_estimate(int dim, std::uint64_t samples, std::uint64_t horizon, std::uint64_t survivors) {
    AlphaEstimate e;
    e.dim = dim;
    e.samples = samples;
    e.horizon = horizon;
    const double n = static_cast<double>(samples);
    e.estimate = static_cast<double>(survivors) / n;
    e.stderr_ = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
    return e;
}

std::vector<std::uint64_t> count_survivors(int dim, std::uint64_t samples, const std::vector<std::uint64_t>& horizons,
                                           std::uint64_t seed, unsigned threads) {
    validate_dimension(dim);
    if (samples == 0 || horizons.empty()) {
        throw std::invalid_argument("alpha_mc needs samples and at least one horizon");
    }
    if (!std::is_sorted(horizons.begin(), horizons.end()) || horizons.front() == 0) {
        throw std::invalid_argument("horizons must be positive and ascending");
    }
    const std::uint64_t top = horizons.back();
    threads = std::max(1U, threads);
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(horizons.size(), 0));
    auto work = [&](unsigned t) {
        const std::uint64_t lo = samples * t / threads;
        const std::uint64_t hi = samples * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i) {
            Xoshiro256 rng(derive_seed(seed, i));
            const std::uint64_t ret = first_return(rng, dim, top);
            for (std::size_t h = 0; h < horizons.size(); ++h) {
                partial[t][h] += ret > horizons[h] ? 1 : 0;
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }
    std::vector<std::uint64_t> total(horizons.size(), 0);
    for (const auto& p : partial) {
        for (std::size_t h = 0; h < p.size(); ++h) {
            total[h] += p[h];
        }
    }
    return total;
}

}  // namespace

std::vector<AlphaEstimate> alpha_mc_nested(int dim, std::uint64_t samples, const std::vector<std::uint64_t>& horizons,
                                           std::uint64_t seed, unsigned threads) {
    const auto survivors = count_survivors(dim, samples, horizons, seed, threads);
    std::vector<AlphaEstimate> out;
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        out.push_back(make_estimate(dim, samples, horizons[h], survivors[h]));
    }
    return out;
}

AlphaEstimate alpha_mc(int dim, std::uint64_t samples, std::uint64_t horizon, std::uint64_t seed, unsigned threads) {
    return alpha_mc_nested(dim, samples, {horizon}, seed, threads).front();
}

AlphaEstimate alpha_cached(int dim, std::uint64_t samples, std::uint64_t horizon, std::uint64_t seed, unsigned threads,
                           std::optional<std::filesystem::path> dir) {
    const auto root = cache_directory(std::move(dir));
    if (!root) {
        return alpha_mc(dim, samples, horizon, seed, threads);
    }
    char name[128];
    std::snprintf(name, sizeof name, "alpha_d%d_s%llu_h%llu_seed%llu.txt", dim,
                  static_cast<unsigned long long>(samples), static_cast<unsigned long long>(horizon),
                  static_cast<unsigned long long>(seed));
    const std::filesystem::path file = *root / name;
    if (std::ifstream in(file); in) {
        int d = 0;
        std::uint64_t s = 0;
        std::uint64_t h = 0;
        std::uint64_t sd = 0;
        std::uint64_t survivors = 0;
        if (in >> d >> s >> h >> sd >> survivors && d == dim && s == samples && h == horizon && sd == seed &&
            survivors <= samples) {
            return make_estimate(dim, samples, horizon, survivors);
        }
    }
    const std::uint64_t survivors = count_survivors(dim, samples, {horizon}, seed, threads).front();
    std::filesystem::create_directories(*root);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << dim << ' ' << samples << ' ' << horizon << ' ' << seed << ' ' << survivors << '\n';
        if (!out) {
            throw std::runtime_error("cannot write alpha cache " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, file);
    return make_estimate(dim, samples, horizon, survivors);
}

}  // namespace rotorwalk
