#include "softdmp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace softdmp {

using nlohmann::json;

void sql_update(QTable& q, const Experience& exp, double alpha, double gamma, EntropyParam eta) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("sql_update: alpha must lie in (0, 1]");
    const double target =
        exp.terminal ? exp.r : exp.r + gamma * mellow_max(q.row(exp.s_next), eta);
    double& cell = q.at(exp.s, exp.a);
    cell = (1.0 - alpha) * cell + alpha * target;
}

ActionDistribution sql_behavior(const QTable& q, int s, EntropyParam eta) {
    return boltzmann_policy(q.row(s), eta, /*flipped=*/eta.is_negative());
}

ActionDistribution fuse_policies(const ActionDistribution& pi_plus,
                                 const ActionDistribution& neg_pi_minus, double w) {
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("fuse_policies: w must lie in [0, 1]");
    if (pi_plus.size() != neg_pi_minus.size())
        throw std::invalid_argument("fuse_policies: mismatched action counts");
    ActionDistribution mixed(pi_plus.size());
    for (std::size_t i = 0; i < mixed.size(); ++i)
        mixed[i] = w * pi_plus[i] + (1.0 - w) * neg_pi_minus[i];
    return mixed;
}

double hardmax_weight(double v_plus, double v_minus) {
    return v_plus >= std::abs(v_minus) ? 1.0 : 0.0;
}

double discriminator(const ActionDistribution& pi_plus, const ActionDistribution& pi_minus,
                     int a) {
    const double p_minus = pi_minus[static_cast<std::size_t>(a)];
    const double p_plus = pi_plus[static_cast<std::size_t>(a)];
    const double denom = p_minus + p_plus;
    if (denom == 0.0) return 0.5;
    return p_minus / denom;
}

BufferId route_experience(const Experience& exp, double d, DualBuffers& buffers, Rng& rng) {
    if (d < 0.0 || d > 1.0) throw std::invalid_argument("route_experience: d must lie in [0, 1]");
    if (rng.bernoulli(d)) {
        buffers.d_minus.push(exp);
        return BufferId::Minus;
    }
    buffers.d_plus.push(exp);
    return BufferId::Plus;
}

SoftDmpState::SoftDmpState(int n_states, int n_actions, EntropyParam ep, EntropyParam em)
    : q_plus(n_states, n_actions), q_minus(n_states, n_actions), eta_plus(ep), eta_minus(em) {
    if (eta_plus.is_negative())
        throw std::invalid_argument("SoftDmpState: eta_plus must be >= 0");
    if (eta_minus.is_positive())
        throw std::invalid_argument("SoftDmpState: eta_minus must be <= 0");
}

void softdmp_step(SoftDmpState& state, const ReplayBuffer& plus_source,
                  const ReplayBuffer& minus_source, int batch, Rng& rng) {
    if (!plus_source.empty()) {
        for (int i = 0; i < batch; ++i) {
            Experience e = plus_source.sample(rng);
            e.r = std::max(e.r, 0.0);
            sql_update(state.q_plus, e, state.alpha_plus, state.gamma_plus, state.eta_plus);
        }
    }
    if (!minus_source.empty()) {
        for (int i = 0; i < batch; ++i) {
            Experience e = minus_source.sample(rng);
            e.r = std::min(e.r, 0.0);
            sql_update(state.q_minus, e, state.alpha_minus, state.gamma_minus, state.eta_minus);
        }
    }
}

// ---------------------------------------------------------------------------
// Agents
// ---------------------------------------------------------------------------

SqlAgent::SqlAgent(int n_states, int n_actions, EntropyParam eta, double alpha, double gamma)
    : q_(n_states, n_actions), eta_(eta), alpha_(alpha), gamma_(gamma) {
    if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("SqlAgent: alpha in (0, 1]");
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("SqlAgent: gamma in [0, 1)");
}

int SqlAgent::act(int s, Rng& rng) const {
    return static_cast<int>(rng.sample(sql_behavior(q_, s, eta_)));
}

void SqlAgent::observe(const Experience& exp) { sql_update(q_, exp, alpha_, gamma_, eta_); }

SoftDmpAgent::SoftDmpAgent(int n_states, int n_actions, const SoftDmpOptions& opts)
    : opts_(opts),
      state_(n_states, n_actions, opts.eta_plus, opts.eta_minus),
      buffers_(opts.buffer_capacity) {
    state_.alpha_plus = opts.alpha_plus;
    state_.alpha_minus = opts.alpha_minus;
    state_.gamma_plus = opts.gamma_plus;
    state_.gamma_minus = opts.gamma_minus;
    state_.weighting = opts.weighting;
}

const ReplayBuffer& SoftDmpAgent::plus_source() const { return buffers_.d_plus; }

const ReplayBuffer& SoftDmpAgent::minus_source() const {
    // One-buffer mode feeds both modules from the shared (plus) buffer.
    return opts_.separate_buffers ? buffers_.d_minus : buffers_.d_plus;
}

double SoftDmpAgent::mix_weight(int s) const {
    if (state_.weighting.mode == Weighting::Mode::FixedW) return state_.weighting.w;
    const double v_plus = mellow_max(state_.q_plus.row(s), state_.eta_plus);
    const double v_minus = mellow_max(state_.q_minus.row(s), state_.eta_minus);
    return hardmax_weight(v_plus, v_minus);
}

ActionDistribution SoftDmpAgent::behavior(int s) const {
    const ActionDistribution pi_plus =
        boltzmann_policy(state_.q_plus.row(s), state_.eta_plus, /*flipped=*/false);
    const ActionDistribution neg_pi_minus =
        boltzmann_policy(state_.q_minus.row(s), state_.eta_minus, /*flipped=*/true);
    return fuse_policies(pi_plus, neg_pi_minus, mix_weight(s));
}

int SoftDmpAgent::act(int s, Rng& rng) const {
    return static_cast<int>(rng.sample(behavior(s)));
}

void SoftDmpAgent::observe(const Experience& exp, Rng& rng) {
    ++ingested_;
    if (opts_.separate_buffers) {
        const ActionDistribution pi_plus =
            boltzmann_policy(state_.q_plus.row(exp.s), state_.eta_plus, /*flipped=*/false);
        const ActionDistribution pi_minus = boltzmann_policy(
            state_.q_minus.row(exp.s), state_.eta_minus, opts_.discriminator_flipped);
        const double d = discriminator(pi_plus, pi_minus, exp.a);
        if (route_experience(exp, d, buffers_, rng) == BufferId::Minus) ++routed_minus_;
    } else {
        buffers_.d_plus.push(exp);
    }
    softdmp_step(state_, plus_source(), minus_source(), opts_.batch, rng);
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

json qtable_to_json(const QTable& q) {
    return json{{"n_states", q.n_states()}, {"n_actions", q.n_actions()}, {"values", q.data()}};
}

QTable qtable_from_json(const json& j) {
    QTable q(j.at("n_states").get<int>(), j.at("n_actions").get<int>());
    q.data() = j.at("values").get<std::vector<double>>();
    if (q.data().size() != static_cast<std::size_t>(q.n_states()) *
                               static_cast<std::size_t>(q.n_actions()))
        throw std::runtime_error("checkpoint: q table size mismatch");
    return q;
}

json buffer_to_json(const ReplayBuffer& b) {
    json entries = json::array();
    for (const auto& e : b.entries())
        entries.push_back({e.s, e.a, e.r, e.s_next, e.terminal});
    json j{{"entries", std::move(entries)}};
    if (b.capacity() != ReplayBuffer::kUnbounded) j["capacity"] = b.capacity();
    return j;
}

ReplayBuffer buffer_from_json(const json& j) {
    ReplayBuffer b(j.contains("capacity") ? j.at("capacity").get<std::size_t>()
                                          : ReplayBuffer::kUnbounded);
    for (const auto& e : j.at("entries")) {
        b.push(Experience{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>(),
                          e.at(3).get<int>(), e.at(4).get<bool>()});
    }
    return b;
}

}  // namespace

std::string checkpoint_sql(const SqlAgent& agent, const Rng& rng, std::uint64_t step) {
    json j{{"kind", "sql"},
           {"eta", agent.eta().str()},
           {"alpha", agent.alpha()},
           {"gamma", agent.gamma()},
           {"q", qtable_to_json(agent.q())},
           {"rng", rng.save_state()},
           {"step", step}};
    return j.dump();
}

SqlResume restore_sql(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("kind").get<std::string>() != "sql")
        throw std::runtime_error("checkpoint: not a sql checkpoint");
    QTable q = qtable_from_json(j.at("q"));
    SqlAgent agent(q.n_states(), q.n_actions(), EntropyParam::parse(j.at("eta").get<std::string>()),
                   j.at("alpha").get<double>(), j.at("gamma").get<double>());
    agent.q() = std::move(q);
    Rng rng(0);
    rng.load_state(j.at("rng").get<std::string>());
    return SqlResume{std::move(agent), std::move(rng), j.at("step").get<std::uint64_t>()};
}

std::string checkpoint_softdmp(const SoftDmpAgent& agent, const Rng& rng, std::uint64_t step) {
    const SoftDmpOptions& o = agent.options();
    json weighting = o.weighting.mode == Weighting::Mode::FixedW
                         ? json{{"mode", "fixed_w"}, {"w", o.weighting.w}}
                         : json{{"mode", "hardmax"}};
    json j{{"kind", "softdmp"},
           {"eta_plus", o.eta_plus.str()},
           {"eta_minus", o.eta_minus.str()},
           {"alpha_plus", o.alpha_plus},
           {"alpha_minus", o.alpha_minus},
           {"gamma_plus", o.gamma_plus},
           {"gamma_minus", o.gamma_minus},
           {"weighting", std::move(weighting)},
           {"batch", o.batch},
           {"separate_buffers", o.separate_buffers},
           {"discriminator_flipped", o.discriminator_flipped},
           {"buffer_capacity", o.buffer_capacity},
           {"q_plus", qtable_to_json(agent.state().q_plus)},
           {"q_minus", qtable_to_json(agent.state().q_minus)},
           {"d_plus", buffer_to_json(agent.buffers().d_plus)},
           {"d_minus", buffer_to_json(agent.buffers().d_minus)},
           {"routed_minus", agent.routed_minus_count()},
           {"ingested", agent.ingested_count()},
           {"rng", rng.save_state()},
           {"step", step}};
    return j.dump();
}

SoftDmpResume restore_softdmp(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("kind").get<std::string>() != "softdmp")
        throw std::runtime_error("checkpoint: not a softdmp checkpoint");
    SoftDmpOptions o;
    o.eta_plus = EntropyParam::parse(j.at("eta_plus").get<std::string>());
    o.eta_minus = EntropyParam::parse(j.at("eta_minus").get<std::string>());
    o.alpha_plus = j.at("alpha_plus").get<double>();
    o.alpha_minus = j.at("alpha_minus").get<double>();
    o.gamma_plus = j.at("gamma_plus").get<double>();
    o.gamma_minus = j.at("gamma_minus").get<double>();
    const json& w = j.at("weighting");
    o.weighting = w.at("mode").get<std::string>() == "fixed_w"
                      ? Weighting::fixed(w.at("w").get<double>())
                      : Weighting::hardmax();
    o.batch = j.at("batch").get<int>();
    o.separate_buffers = j.at("separate_buffers").get<bool>();
    o.discriminator_flipped = j.at("discriminator_flipped").get<bool>();
    o.buffer_capacity = j.at("buffer_capacity").get<std::size_t>();

    QTable q_plus = qtable_from_json(j.at("q_plus"));
    SoftDmpAgent agent(q_plus.n_states(), q_plus.n_actions(), o);
    agent.state().q_plus = std::move(q_plus);
    agent.state().q_minus = qtable_from_json(j.at("q_minus"));
    agent.restore_buffers(buffer_from_json(j.at("d_plus")), buffer_from_json(j.at("d_minus")),
                          j.at("routed_minus").get<std::size_t>(),
                          j.at("ingested").get<std::size_t>());
    Rng rng(0);
    rng.load_state(j.at("rng").get<std::string>());
    return SoftDmpResume{std::move(agent), std::move(rng), j.at("step").get<std::uint64_t>()};
}

}  // namespace softdmp
