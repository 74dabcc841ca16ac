#pragma once

#include <cstdint>
#include <string>

namespace tsvs {

enum class FactorAlgorithm {
    Auto,        // exhaustive for degree <= 4, Zassenhaus above
    Zassenhaus,  // production path
    Exhaustive,  // integer-factor search, degree <= 4 only (cross-check oracle)
};

enum class OutputFormat { Text, Json };

struct Config {
    int max_defining_degree = 8;   // cap on deg f for number fields
    int max_norm_degree = 64;      // cap on Trager norm degree
    int max_matrix_dim = 64;
    std::uint64_t seed = 0x5eed'c0de'5eed'c0deULL;
    int similarity_budget = 64;    // random combinations tried after the basis vectors
    std::string cache_dir;         // empty = no on-disk factorization cache
    FactorAlgorithm factor_algorithm = FactorAlgorithm::Zassenhaus;
    OutputFormat format = OutputFormat::Text;
};

// Process-wide configuration. The CLI sets it once before doing any work;
// tests adjust individual fields. Treated as read-only while computations
// run, so concurrent readers are safe.
Config& global_config();

// Deterministic generator. Deliberately avoids std::uniform_int_distribution
// (its output is implementation-defined) so that fixed seeds give identical
// streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish integer in [lo, hi]; the modulo bias is irrelevant here.
    long long uniform(long long lo, long long hi) {
        return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Per-instance seed derived from a master seed, for parallel suites.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        Rng r(master ^ (0xa076'1d64'78bd'642fULL * (index + 1)));
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace tsvs
