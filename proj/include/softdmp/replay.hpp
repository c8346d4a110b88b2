#pragma once

#include <cstddef>
#include <deque>
#include <limits>

#include "softdmp/rng.hpp"

namespace softdmp {

/// One transition observed in the environment. terminal marks a true
/// episode end (absorbing state), not a step-cap truncation.
struct Experience {
    int s = 0;
    int a = 0;
    double r = 0.0;
    int s_next = 0;
    bool terminal = false;

    bool operator==(const Experience&) const = default;
};

/// Bounded FIFO replay store; eviction is strictly oldest-first.
class ReplayBuffer {
public:
    static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

    explicit ReplayBuffer(std::size_t capacity = kUnbounded) : capacity_(capacity) {}

    void push(const Experience& e) {
        if (entries_.size() == capacity_) entries_.pop_front();
        entries_.push_back(e);
    }

    /// Uniform sample with replacement. One rng draw.
    const Experience& sample(Rng& rng) const { return entries_[rng.next_index(entries_.size())]; }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t capacity() const { return capacity_; }

    const std::deque<Experience>& entries() const { return entries_; }
    std::deque<Experience>& entries() { return entries_; }

private:
    std::size_t capacity_;
    std::deque<Experience> entries_;
};

/// Paired buffers for the reward and punishment modules. Each ingested
/// experience lands in exactly one of them.
struct DualBuffers {
    ReplayBuffer d_plus;
    ReplayBuffer d_minus;

    explicit DualBuffers(std::size_t capacity = ReplayBuffer::kUnbounded)
        : d_plus(capacity), d_minus(capacity) {}
};

enum class BufferId { Plus, Minus };

}  // namespace softdmp
