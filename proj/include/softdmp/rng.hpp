#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <random>

namespace softdmp {

/// Single deterministic random stream for a run.
///
/// Every stochastic choice in a run (action sampling, buffer sampling,
/// experience routing, initial-state draws) consumes draws from one Rng
/// in a fixed order, so a (config, seed) pair replays exactly.
/// Draw accounting:
///   next_double / bernoulli / sample -> one engine draw
///   next_index                       -> one engine draw
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1). One engine draw.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). One engine draw. n must be > 0.
    std::size_t next_index(std::size_t n);

    /// Bernoulli(p). One engine draw.
    bool bernoulli(double p) { return next_double() < p; }

    /// Sample an index from a probability vector by inverse CDF.
    /// One engine draw.
    std::size_t sample(std::span<const double> probs);

    /// Engine state as text, for checkpoints.
    std::string save_state() const;
    void load_state(const std::string& text);

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace softdmp
