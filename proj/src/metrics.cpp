#include "softdmp/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace softdmp {

void EpisodeRecord::validate() const {
    if (steps < 1) throw std::invalid_argument("EpisodeRecord: steps must be >= 1");
    if (collisions < 0 || collisions > steps)
        throw std::invalid_argument("EpisodeRecord: collisions must lie in [0, steps]");
}

std::vector<double> smooth(const std::vector<double>& series, int window) {
    if (window < 1) throw std::invalid_argument("smooth: window must be >= 1");
    const int n = static_cast<int>(series.size());
    std::vector<double> out(series.size());
    const int left = (window - 1) / 2;
    const int right = window / 2;
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - left);
        const int hi = std::min(n - 1, i + right);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += series[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

RunSummary RunSummary::from_records(std::vector<EpisodeRecord> records, int smoothing_window) {
    for (const auto& r : records) r.validate();
    RunSummary s;
    s.records = std::move(records);
    std::vector<double> steps;
    std::vector<double> reward;
    steps.reserve(s.records.size());
    reward.reserve(s.records.size());
    long long total_steps = 0;
    long long total_collisions = 0;
    for (const auto& r : s.records) {
        steps.push_back(static_cast<double>(r.steps));
        reward.push_back(r.total_reward);
        total_steps += r.steps;
        total_collisions += r.collisions;
    }
    s.smoothed_steps = smooth(steps, smoothing_window);
    s.smoothed_reward = smooth(reward, smoothing_window);
    if (!s.records.empty()) {
        s.avg_step_length = static_cast<double>(total_steps) / static_cast<double>(s.records.size());
        s.collision_rate =
            total_steps > 0 ? static_cast<double>(total_collisions) / static_cast<double>(total_steps)
                            : 0.0;
        s.collisions_per_episode =
            static_cast<double>(total_collisions) / static_cast<double>(s.records.size());
    }
    return s;
}

namespace {

struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

Moments column_moments(const std::vector<double>& xs) {
    Moments m;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) m.mean += x;
    m.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return m;
}

}  // namespace

AggregateCurves aggregate_trials(const std::vector<RunSummary>& summaries) {
    if (summaries.empty()) throw std::invalid_argument("aggregate_trials: no summaries");
    const std::size_t episodes = summaries[0].records.size();
    for (const auto& s : summaries)
        if (s.records.size() != episodes)
            throw std::invalid_argument("aggregate_trials: mismatched episode counts");

    AggregateCurves agg;
    agg.mean_steps.resize(episodes);
    agg.se_steps.resize(episodes);
    agg.mean_collisions.resize(episodes);
    agg.se_collisions.resize(episodes);
    agg.mean_reward.resize(episodes);
    agg.se_reward.resize(episodes);

    std::vector<double> col(summaries.size());
    for (std::size_t e = 0; e < episodes; ++e) {
        for (std::size_t t = 0; t < summaries.size(); ++t)
            col[t] = static_cast<double>(summaries[t].records[e].steps);
        Moments m = column_moments(col);
        agg.mean_steps[e] = m.mean;
        agg.se_steps[e] = m.se;

        for (std::size_t t = 0; t < summaries.size(); ++t)
            col[t] = static_cast<double>(summaries[t].records[e].collisions);
        m = column_moments(col);
        agg.mean_collisions[e] = m.mean;
        agg.se_collisions[e] = m.se;

        for (std::size_t t = 0; t < summaries.size(); ++t)
            col[t] = summaries[t].records[e].total_reward;
        m = column_moments(col);
        agg.mean_reward[e] = m.mean;
        agg.se_reward[e] = m.se;
    }
    return agg;
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string run_csv(const RunSummary& summary) {
    std::string out = "episode,steps,reward,collisions,goal\n";
    for (const auto& r : summary.records) {
        out += std::to_string(r.episode);
        out += ',';
        out += std::to_string(r.steps);
        out += ',';
        out += format_float(r.total_reward);
        out += ',';
        out += std::to_string(r.collisions);
        out += ',';
        out += r.reached_goal ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string aggregate_csv(const AggregateCurves& agg) {
    std::string out = "episode,mean_steps,se_steps,mean_collisions,se_collisions\n";
    for (std::size_t e = 0; e < agg.mean_steps.size(); ++e) {
        out += std::to_string(e);
        out += ',';
        out += format_float(agg.mean_steps[e]);
        out += ',';
        out += format_float(agg.se_steps[e]);
        out += ',';
        out += format_float(agg.mean_collisions[e]);
        out += ',';
        out += format_float(agg.se_collisions[e]);
        out += '\n';
    }
    return out;
}

namespace {

std::string values_header(const std::vector<std::string>& action_names) {
    std::string header = "state,v";
    for (const auto& name : action_names) header += ",q_" + name;
    header += '\n';
    return header;
}

}  // namespace

std::string values_csv(const PlanResult& result, const std::vector<std::string>& action_names) {
    std::string out = values_header(action_names);
    for (int s = 0; s < result.q.n_states(); ++s) {
        out += std::to_string(s);
        out += ',';
        out += format_float(result.v[static_cast<std::size_t>(s)]);
        for (int a = 0; a < result.q.n_actions(); ++a) {
            out += ',';
            out += format_float(result.q.at(s, a));
        }
        out += '\n';
    }
    return out;
}

std::string qtable_values_csv(const QTable& q, EntropyParam eta,
                              const std::vector<std::string>& action_names) {
    std::string out = values_header(action_names);
    for (int s = 0; s < q.n_states(); ++s) {
        out += std::to_string(s);
        out += ',';
        out += format_float(mellow_max(q.row(s), eta));
        for (int a = 0; a < q.n_actions(); ++a) {
            out += ',';
            out += format_float(q.at(s, a));
        }
        out += '\n';
    }
    return out;
}

std::string policies_csv(const PolicySets& sets, const std::vector<std::string>& action_names) {
    auto join = [&](const std::vector<int>& actions) {
        std::string joined;
        for (std::size_t i = 0; i < actions.size(); ++i) {
            if (i > 0) joined += '|';
            joined += action_names[static_cast<std::size_t>(actions[i])];
        }
        return joined;
    };
    std::string out = "state,optimal,flipped\n";
    for (std::size_t s = 0; s < sets.optimal.size(); ++s) {
        out += std::to_string(s);
        out += ',';
        out += join(sets.optimal[s]);
        out += ',';
        out += join(sets.flipped[s]);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace softdmp
