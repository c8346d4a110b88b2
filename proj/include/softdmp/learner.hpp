#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softdmp/entropy.hpp"
#include "softdmp/mdp.hpp"
#include "softdmp/operators.hpp"
#include "softdmp/qtable.hpp"
#include "softdmp/replay.hpp"
#include "softdmp/rng.hpp"

namespace softdmp {

/// Tabular soft Q-learning update:
///   q(s, a) <- (1 - alpha) q(s, a) + alpha (r + gamma * MM_eta(q(s', .)))
/// Terminal transitions bootstrap nothing: the target is r alone.
void sql_update(QTable& q, const Experience& exp, double alpha, double gamma, EntropyParam eta);

/// Behavior distribution of a single-module soft Q-learner. Negative-eta
/// learners act with the flipped (pain-avoiding) policy while their update
/// targets keep the mellow-min operator.
ActionDistribution sql_behavior(const QTable& q, int s, EntropyParam eta);

/// Convex mixture w * pi_plus + (1 - w) * neg_pi_minus.
ActionDistribution fuse_policies(const ActionDistribution& pi_plus,
                                 const ActionDistribution& neg_pi_minus, double w);

/// State-dependent hard weighting: 1 when v_plus >= |v_minus| (ties favor
/// the reward module), else 0.
double hardmax_weight(double v_plus, double v_minus);

/// Closed-form routing probability pi_minus(a|s) / (pi_minus + pi_plus),
/// the minimizer of the discriminator's negative log-likelihood. Returns
/// 0.5 when both probabilities vanish.
double discriminator(const ActionDistribution& pi_plus, const ActionDistribution& pi_minus,
                     int a);

/// Bernoulli(d) routing into the dual buffers; consumes exactly one rng
/// draw. Returns the buffer that received the experience.
BufferId route_experience(const Experience& exp, double d, DualBuffers& buffers, Rng& rng);

/// How the fusion weight w is chosen each step.
struct Weighting {
    enum class Mode { FixedW, HardMax };
    Mode mode = Mode::HardMax;
    double w = 0.5;  // used by FixedW

    static Weighting fixed(double w) { return {Mode::FixedW, w}; }
    static Weighting hardmax() { return {Mode::HardMax, 0.0}; }
};

/// Dual-module learner state: reward module (q_plus, eta_plus >= 0) and
/// punishment module (q_minus, eta_minus <= 0), each with its own learning
/// rate and discount. Sign conventions are enforced at construction.
struct SoftDmpState {
    QTable q_plus;
    QTable q_minus;
    EntropyParam eta_plus = EntropyParam::pos_inf();
    EntropyParam eta_minus = EntropyParam::neg_inf();
    double alpha_plus = 0.025;
    double alpha_minus = 0.001;
    double gamma_plus = 0.99;
    double gamma_minus = 0.9;
    Weighting weighting = Weighting::hardmax();

    SoftDmpState() = default;
    SoftDmpState(int n_states, int n_actions, EntropyParam eta_plus, EntropyParam eta_minus);
};

/// One replay pass: a batch from d_plus updates q_plus on r+ = max(r, 0),
/// then a batch from d_minus updates q_minus on r- = min(r, 0). A module
/// with an empty buffer skips its update. Draw order: all plus-module
/// samples first, then all minus-module samples.
void softdmp_step(SoftDmpState& state, const ReplayBuffer& plus_source,
                  const ReplayBuffer& minus_source, int batch, Rng& rng);

// ---------------------------------------------------------------------------
// Agents
// ---------------------------------------------------------------------------

/// Single-table soft Q-learning agent with online updates.
/// Rng use per step: one draw to sample the action.
class SqlAgent {
public:
    SqlAgent(int n_states, int n_actions, EntropyParam eta, double alpha, double gamma);

    int act(int s, Rng& rng) const;
    void observe(const Experience& exp);

    const QTable& q() const { return q_; }
    QTable& q() { return q_; }
    EntropyParam eta() const { return eta_; }
    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }

private:
    QTable q_;
    EntropyParam eta_;
    double alpha_;
    double gamma_;
};

struct SoftDmpOptions {
    EntropyParam eta_plus = EntropyParam::pos_inf();
    EntropyParam eta_minus = EntropyParam::neg_inf();
    double alpha_plus = 0.025;
    double alpha_minus = 0.001;
    double gamma_plus = 0.99;
    double gamma_minus = 0.9;
    Weighting weighting = Weighting::hardmax();
    std::size_t buffer_capacity = 10000;
    int batch = 32;
    bool separate_buffers = true;
    /// When set, the discriminator consumes the flipped pain-avoiding policy
    /// instead of the pain-seeking one.
    bool discriminator_flipped = false;
};

/// Dual-module agent with behavior-policy fusion and replay. In separate-
/// buffer mode each experience is routed by the discriminator; in one-buffer
/// mode everything lands in a single shared buffer that feeds both modules.
///
/// Rng use per environment step, in order: one action draw; one routing draw
/// (separate-buffer mode only); batch draws for the reward module (if its
/// source buffer is non-empty); batch draws for the punishment module.
class SoftDmpAgent {
public:
    SoftDmpAgent(int n_states, int n_actions, const SoftDmpOptions& opts);

    int act(int s, Rng& rng) const;

    /// Ingests one experience (routing it to a buffer) and runs one replay
    /// pass over both modules.
    void observe(const Experience& exp, Rng& rng);

    /// Behavior distribution at s (the fused policy).
    ActionDistribution behavior(int s) const;

    /// Fusion weight at s under the configured weighting scheme.
    double mix_weight(int s) const;

    const SoftDmpState& state() const { return state_; }
    SoftDmpState& state() { return state_; }
    const SoftDmpOptions& options() const { return opts_; }
    const DualBuffers& buffers() const { return buffers_; }

    std::size_t routed_minus_count() const { return routed_minus_; }
    std::size_t ingested_count() const { return ingested_; }

    /// Replaces buffer contents and routing counters; used by checkpoint
    /// restore.
    void restore_buffers(ReplayBuffer d_plus, ReplayBuffer d_minus, std::size_t routed_minus,
                         std::size_t ingested) {
        buffers_.d_plus = std::move(d_plus);
        buffers_.d_minus = std::move(d_minus);
        routed_minus_ = routed_minus;
        ingested_ = ingested;
    }

private:
    const ReplayBuffer& plus_source() const;
    const ReplayBuffer& minus_source() const;

    SoftDmpOptions opts_;
    SoftDmpState state_;
    DualBuffers buffers_;
    std::size_t routed_minus_ = 0;
    std::size_t ingested_ = 0;
};

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

/// Serializes agent state (q tables, buffer contents, rng state, step
/// counter) as JSON text sufficient to resume a run bit-exactly.
std::string checkpoint_sql(const SqlAgent& agent, const Rng& rng, std::uint64_t step);
std::string checkpoint_softdmp(const SoftDmpAgent& agent, const Rng& rng, std::uint64_t step);

struct SqlResume {
    SqlAgent agent;
    Rng rng;
    std::uint64_t step = 0;
};
struct SoftDmpResume {
    SoftDmpAgent agent;
    Rng rng;
    std::uint64_t step = 0;
};

SqlResume restore_sql(const std::string& text);
SoftDmpResume restore_softdmp(const std::string& text);

}  // namespace softdmp
