#pragma once

#include <span>
#include <vector>

namespace softdmp {

/// Dense |S| x |A| action-value table.
class QTable {
public:
    QTable() = default;
    QTable(int n_states, int n_actions)
        : n_states_(n_states),
          n_actions_(n_actions),
          values_(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_actions), 0.0) {}

    int n_states() const { return n_states_; }
    int n_actions() const { return n_actions_; }

    double& at(int s, int a) { return values_[index(s, a)]; }
    double at(int s, int a) const { return values_[index(s, a)]; }

    std::span<const double> row(int s) const {
        return {values_.data() + index(s, 0), static_cast<std::size_t>(n_actions_)};
    }
    std::span<double> row(int s) {
        return {values_.data() + index(s, 0), static_cast<std::size_t>(n_actions_)};
    }

    const std::vector<double>& data() const { return values_; }
    std::vector<double>& data() { return values_; }

    bool operator==(const QTable& other) const = default;

private:
    std::size_t index(int s, int a) const {
        return static_cast<std::size_t>(s) * static_cast<std::size_t>(n_actions_) +
               static_cast<std::size_t>(a);
    }

    int n_states_ = 0;
    int n_actions_ = 0;
    std::vector<double> values_;
};

}  // namespace softdmp
