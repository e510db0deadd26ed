#include "qardns/trainer.hpp"

#include <algorithm>
#include <chrono>

#include "qardns/stats.hpp"

namespace qardns::trainer {

namespace {

memory::Vec3 to_vec(grid::Cell c) {
  return memory::Vec3(static_cast<double>(c.x), static_cast<double>(c.y),
                      static_cast<double>(c.z));
}

double squared_displacement(grid::Cell from, grid::Cell to) {
  const double dx = static_cast<double>(to.x - from.x);
  const double dy = static_cast<double>(to.y - from.y);
  const double dz = static_cast<double>(to.z - from.z);
  return dx * dx + dy * dy + dz * dz;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

QardnsTrainer::QardnsTrainer(const config::RunConfig& config,
                             const TrainerOptions& options)
    : config_(config),
      options_(options),
      schedule_(config.schedule()),
      obstacle_rng_(0) {
  config_.validate();

  Rng master(config_.seed);
  obstacle_rng_ = master.substream(stream::kObstacles);
  env_ = grid::make_initial_state(config_.grid, obstacle_rng_);

  // One weight stream, consumed in a fixed order: agent block 0 (W_s,
  // W_l, W_a, W_att_s, W_att_l, meta W1, meta W2), agent block 1, then
  // the shared-memory projection. Swapping identities reassigns the
  // blocks, never the draw order.
  Rng weight_rng = master.substream(stream::kWeightInit);
  struct Block {
    agent::AgentWeights weights;
    meta::MetaWeights meta_weights;
  };
  std::vector<Block> blocks(2);
  for (Block& block : blocks) {
    block.weights = agent::init_weights(config_.n_qubits, weight_rng);
    block.meta_weights = meta::init_meta_weights(weight_rng);
  }
  for (Eigen::Index r = 0; r < W_shared_.rows(); ++r) {
    for (Eigen::Index c = 0; c < W_shared_.cols(); ++c) {
      W_shared_(r, c) = weight_rng.uniform_real(-0.1, 0.1);
    }
  }

  agents_.resize(2);
  success_rates_.assign(2, 0.0);
  for (std::size_t slot = 0; slot < 2; ++slot) {
    const std::size_t block = options_.swap_agents ? 1 - slot : slot;
    AgentState& a = agents_[slot];
    a.weights = std::move(blocks[block].weights);
    a.meta_weights = blocks[block].meta_weights;
    a.bank.owner = static_cast<int>(slot);
    a.params.n_qubits = config_.n_qubits;
    a.policy_rng = master.substream(stream::kPolicyBase + block);
    a.shot_rng = master.substream(stream::kShotsBase + block);
  }
}

void QardnsTrainer::apply_stage(long episode) {
  const std::size_t index = schedule_.index_for(episode);
  if (index == stage_index_) return;
  stage_index_ = index;
  const config::StageRow& row = schedule_.rows()[index];
  for (AgentState& a : agents_) {
    a.params.eta = row.eta;
    a.params.curiosity_factor = row.curiosity;
    a.params.curiosity_ceiling = std::max(1.5, row.curiosity);
    a.params.epsilon_min = row.epsilon_min;
    a.params.beta = row.beta;
    a.params.gamma_penalty = row.gamma;
    a.params.shots = row.shots;
  }
}

void QardnsTrainer::begin_episode(long episode) {
  apply_stage(episode);
  env_.episode_index = static_cast<int>(episode);
  env_.step_count = 0;
  std::fill(env_.positions.begin(), env_.positions.end(), grid::kStart);
  grid::maybe_refresh_obstacles(env_, config_.grid, obstacle_rng_);
  for (AgentState& a : agents_) {
    a.params.epsilon = epsilon_;
    a.adjusted_this_episode = false;
  }
}

EpisodeRecord QardnsTrainer::run_episode() {
  const auto start = std::chrono::steady_clock::now();
  const long e = episode_cursor_;
  begin_episode(e);
  const config::StageRow& row = schedule_.rows()[stage_index_];
  const grid::GridConfig& grid_cfg = config_.grid;

  // Block order fixes the shared-memory concatenation and stepping order
  // under identity swaps.
  const std::size_t order[2] = {options_.swap_agents ? 1u : 0u,
                                options_.swap_agents ? 0u : 1u};

  std::vector<AgentEpisode> tallies(2);
  bool done[2] = {false, false};

  for (int t = 0; t < grid_cfg.max_steps; ++t) {
    if (done[0] && done[1]) break;

    // Shared memory: once per time step, from both pre-step states.
    shared_ = memory::update_shared(shared_, to_vec(env_.positions[order[0]]),
                                    to_vec(env_.positions[order[1]]),
                                    W_shared_, row.alpha_shared);

    for (const std::size_t slot : order) {
      if (done[slot]) continue;
      AgentState& a = agents_[slot];
      const grid::Cell pos = env_.positions[slot];
      const memory::Vec3 s = to_vec(pos);

      a.bank.short_term =
          memory::update_short(a.bank.short_term, s, a.weights.W_s, row.alpha_s);
      a.bank.long_term =
          memory::update_long(a.bank.long_term, s, a.weights.W_l, row.alpha_l);
      const memory::AttentionGates gates = memory::attention_gates(
          a.bank.short_term, a.bank.long_term, a.weights.W_att_s,
          a.weights.W_att_l);
      const memory::CombinedMemory combined =
          memory::combine(a.bank.short_term, a.bank.long_term, shared_, gates);

      a.last_adjust = meta::adjust(a.window.mean(), a.window.stddev(),
                                   a.meta_weights, a.params);
      a.adjusted_this_episode = true;

      const grid::Action action = agent::select_action(
          a.weights, combined, a.params, a.policy_rng, a.shot_rng);

      const int own_prev_d = grid::manhattan_distance(pos, grid_cfg.goal);
      const int partner_d = grid::manhattan_distance(
          env_.positions[1 - slot], grid_cfg.goal);
      const grid::StepOutcome out =
          grid::step(env_, grid_cfg, static_cast<int>(slot), action);
      const int own_next_d =
          grid::manhattan_distance(out.next_position, grid_cfg.goal);

      const double intrinsic = agent::intrinsic_reward(
          out.next_position, grid_cfg.goal, success_rates_[0],
          success_rates_[1], a.params);
      // The partner did not move during this agent's action, so its
      // distance delta is zero by construction.
      const double coop = agent::cooperative_bonus(own_prev_d, partner_d,
                                                   own_next_d, partner_d);
      const double total = out.extrinsic_reward + intrinsic + coop;

      a.window.push(total);
      const double delta_state = squared_displacement(pos, out.next_position);
      agent::plasticity_update(a.weights, total, a.window.variance(),
                               delta_state, combined, a.params);

      tallies[slot].total_reward += total;
      tallies[slot].steps += 1;
      if (out.collided) tallies[slot].collisions += 1;
      if (out.reached_goal) {
        done[slot] = true;
        tallies[slot].success = true;
      }
    }
    env_.step_count += 1;
  }

  // Episode bookkeeping: success-rate statistics, the meta gradient step
  // on the windowed-mean trend, then the per-episode ε decay.
  ++episodes_elapsed_;
  for (std::size_t slot = 0; slot < 2; ++slot) {
    AgentState& a = agents_[slot];
    if (tallies[slot].success) ++a.successes;
    success_rates_[slot] = static_cast<double>(a.successes) /
                           static_cast<double>(episodes_elapsed_);
    const double mean_now = a.window.mean();
    if (a.adjusted_this_episode) {
      meta::meta_update(a.meta_weights, mean_now - a.prev_window_mean,
                        a.last_adjust);
    }
    a.prev_window_mean = mean_now;
  }
  epsilon_ = agent::decay_epsilon(epsilon_, row.epsilon_min);

  EpisodeRecord record;
  record.episode = static_cast<int>(e);
  record.agents = std::move(tallies);
  for (std::size_t slot = 0; slot < 2; ++slot) {
    record.agents[slot].epsilon = epsilon_;
    record.agents[slot].eta = agents_[slot].params.eta;
    record.agents[slot].curiosity = agents_[slot].params.curiosity_factor;
  }
  record.wall_seconds = seconds_since(start);
  ++episode_cursor_;
  return record;
}

RunResult QardnsTrainer::run() {
  RunResult result;
  result.records.reserve(static_cast<std::size_t>(
      std::max(0L, config_.episodes - episode_cursor_)));
  while (episode_cursor_ < config_.episodes) {
    result.records.push_back(run_episode());
  }
  result.summary = stats::summarize(result.records);
  return result;
}

BaselineTrainer::BaselineTrainer(const config::RunConfig& config,
                                 const TrainerOptions& options)
    : config_(config),
      options_(options),
      schedule_(config.schedule()),
      obstacle_rng_(0) {
  config_.validate();
  Rng master(config_.seed);
  obstacle_rng_ = master.substream(stream::kObstacles);
  env_ = grid::make_initial_state(config_.grid, obstacle_rng_);

  agents_.reserve(2);
  for (std::size_t slot = 0; slot < 2; ++slot) {
    const std::size_t block = options_.swap_agents ? 1 - slot : slot;
    agents_.push_back(BaselineAgentState{
        baseline::QTable(config_.grid.num_cells(), grid::kNumActions),
        master.substream(stream::kPolicyBase + block), 0});
  }
}

EpisodeRecord BaselineTrainer::run_episode() {
  const auto start = std::chrono::steady_clock::now();
  const long e = episode_cursor_;
  const config::StageRow& row = schedule_.row_for(e);
  const grid::GridConfig& grid_cfg = config_.grid;

  env_.episode_index = static_cast<int>(e);
  env_.step_count = 0;
  std::fill(env_.positions.begin(), env_.positions.end(), grid::kStart);
  grid::maybe_refresh_obstacles(env_, grid_cfg, obstacle_rng_);

  const std::size_t order[2] = {options_.swap_agents ? 1u : 0u,
                                options_.swap_agents ? 0u : 1u};
  std::vector<AgentEpisode> tallies(2);
  bool done[2] = {false, false};

  for (int t = 0; t < grid_cfg.max_steps; ++t) {
    if (done[0] && done[1]) break;
    for (const std::size_t slot : order) {
      if (done[slot]) continue;
      BaselineAgentState& a = agents_[slot];
      const std::uint32_t cell = grid_cfg.cell_index(env_.positions[slot]);
      const grid::Action action =
          baseline::select_action(a.table, cell, epsilon_, a.policy_rng);
      const grid::StepOutcome out =
          grid::step(env_, grid_cfg, static_cast<int>(slot), action);
      const std::uint32_t next_cell = grid_cfg.cell_index(out.next_position);
      a.table.update(cell, static_cast<int>(action), out.extrinsic_reward,
                     next_cell);

      tallies[slot].total_reward += out.extrinsic_reward;
      tallies[slot].steps += 1;
      if (out.collided) tallies[slot].collisions += 1;
      if (out.reached_goal) {
        done[slot] = true;
        tallies[slot].success = true;
      }
    }
    env_.step_count += 1;
  }

  for (std::size_t slot = 0; slot < 2; ++slot) {
    if (tallies[slot].success) ++agents_[slot].successes;
  }
  epsilon_ = agent::decay_epsilon(epsilon_, row.epsilon_min);

  EpisodeRecord record;
  record.episode = static_cast<int>(e);
  record.agents = std::move(tallies);
  for (AgentEpisode& ep : record.agents) {
    ep.epsilon = epsilon_;
    ep.eta = baseline::kAlpha;
    ep.curiosity = 0.0;
  }
  record.wall_seconds = seconds_since(start);
  ++episode_cursor_;
  return record;
}

RunResult BaselineTrainer::run() {
  RunResult result;
  result.records.reserve(static_cast<std::size_t>(
      std::max(0L, config_.episodes - episode_cursor_)));
  while (episode_cursor_ < config_.episodes) {
    result.records.push_back(run_episode());
  }
  result.summary = stats::summarize(result.records);
  return result;
}

RunResult run_experiment(const config::RunConfig& config,
                         const TrainerOptions& options) {
  config.validate();
  if (config.learner == "baseline") {
    BaselineTrainer trainer(config, options);
    return trainer.run();
  }
  QardnsTrainer trainer(config, options);
  return trainer.run();
}

}  // namespace qardns::trainer
