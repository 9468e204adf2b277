#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <exception>
#include <memory>
#include <string>
#include <thread>

#include "cuttana/channel.hpp"
#include "cuttana/partitioner.hpp"

namespace cuttana {

void PartitionerConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (k < 1) fail("k must be at least 1");
  if (subparts_per_partition < 1) fail("subparts_per_partition must be at least 1");
  if (static_cast<std::uint64_t>(k) * subparts_per_partition > std::numeric_limits<SubpartId>::max() / 2) {
    fail("k * subparts_per_partition is too large");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be a finite value >= 0");
  if (d_max < 1) fail("d_max must be at least 1");
  if (!(theta >= 0.0) || !std::isfinite(theta)) fail("theta must be a finite value >= 0");
  if (refine_threshold < 1) fail("refine_threshold must be at least 1");
}

PartitionState::PartitionState(std::uint64_t vertex_count, std::uint32_t k_, std::uint32_t subparts,
                               BalanceMode mode)
    : k(k_),
      subparts_per_partition(subparts),
      balance(mode),
      part_of(vertex_count, kUnassigned),
      subpart_of(vertex_count, kUnassigned),
      vcount(k_, 0),
      degsum(k_, 0),
      sub_vcount(static_cast<std::size_t>(k_) * subparts, 0),
      sub_degsum(static_cast<std::size_t>(k_) * subparts, 0) {}

void PartitionState::assign(VertexId v, PartId p, std::uint32_t degree) {
  if (part_of[v] != kUnassigned) throw InvariantError("vertex " + std::to_string(v + 1) + " assigned twice");
  part_of[v] = p;
  ++vcount[p];
  degsum[p] += degree;
  ++assigned;
}

void PartitionState::assign_subpart(VertexId v, SubpartId s, std::uint32_t degree) {
  subpart_of[v] = s;
  ++sub_vcount[s];
  sub_degsum[s] += degree;
}

ScoringContext::ScoringContext(const PartitionerConfig& cfg, const GraphHeader& header)
    : algorithm(cfg.algorithm),
      balance(cfg.balance),
      k(cfg.k),
      subparts_per_partition(cfg.subparts_per_partition),
      seed(cfg.seed) {
  const auto n = static_cast<double>(header.vertex_count);
  const auto m = static_cast<double>(header.edge_count);
  mu = header.edge_count == 0 ? 1.0 : n / m;
  penalty = FennelPenalty::for_instance(k, n, m);
  // Same delta as the partition level; the hard sub-partition cap does the balancing.
  sub_penalty = penalty;
  const std::uint64_t total = balance == BalanceMode::vertex ? header.vertex_count : 2 * header.edge_count;
  part_capacity = capacity(total, k, cfg.epsilon);
  sub_capacity = capacity(total, k * subparts_per_partition, cfg.epsilon);
}

// ---------------------------------------------------------------------------
// Partition selection

PartitionSelector::PartitionSelector(const ScoringContext& ctx) : ctx_(&ctx), counts_(ctx.k, 0) {}

double PartitionSelector::score(PartId p, std::uint32_t neighbors_in_p, const PartitionState& state) const {
  const double nbrs = neighbors_in_p;
  switch (ctx_->algorithm) {
    case Algorithm::ldg: {
      const double fill = static_cast<double>(state.load(p)) / ctx_->part_capacity;
      return nbrs * (1.0 - fill);
    }
    case Algorithm::fennel:
    case Algorithm::cuttana:
      if (ctx_->balance == BalanceMode::vertex) {
        return nbrs - ctx_->penalty(static_cast<double>(state.vcount[p]));
      }
      return nbrs - ctx_->penalty(static_cast<double>(state.vcount[p]) +
                                  ctx_->mu * static_cast<double>(state.degsum[p]));
  }
  return 0.0;
}

PartId PartitionSelector::least_loaded(const PartitionState& state) const {
  PartId best = 0;
  for (PartId p = 1; p < ctx_->k; ++p) {
    if (std::make_tuple(state.load(p), state.vcount[p]) < std::make_tuple(state.load(best), state.vcount[best])) best = p;
  }
  return best;
}

PartitionChoice PartitionSelector::select(std::span<const VertexId> neighbors, const PartitionState& state,
                                          Rng& rng) {
  const double w = static_cast<double>(state.weight_of(neighbors.size()));
  if (neighbors.empty()) {
    // Degree-0: fewest vertices, then lowest degree sum.
    PartId best = 0;
    for (PartId p = 1; p < ctx_->k; ++p) {
      if (std::make_tuple(state.vcount[p], state.degsum[p]) < std::make_tuple(state.vcount[best], state.degsum[best])) {
        best = p;
      }
    }
    if (fits(static_cast<double>(state.load(best)) + w, ctx_->part_capacity)) return {best, false};
    return {least_loaded(state), true};
  }
  std::fill(counts_.begin(), counts_.end(), 0);
  for (VertexId u : neighbors) {
    if (state.is_assigned(u)) ++counts_[state.part_of[u]];
  }
  argmax_.reset();
  for (PartId p = 0; p < ctx_->k; ++p) {
    if (!fits(static_cast<double>(state.load(p)) + w, ctx_->part_capacity)) continue;
    argmax_.offer(p, score(p, counts_[p], state));
  }
  if (argmax_.empty()) return {least_loaded(state), true};
  return {argmax_.pick(rng), false};
}

// ---------------------------------------------------------------------------
// Sub-partition selection

SubpartitionSelector::SubpartitionSelector(const ScoringContext& ctx, PartitionState& state,
                                           std::uint32_t shard, std::uint32_t shard_count)
    : ctx_(&ctx),
      state_(&state),
      by_load_(ctx.k),
      counts_(static_cast<std::size_t>(ctx.k) * ctx.subparts_per_partition, 0) {
  rngs_.reserve(ctx.k);
  for (PartId p = 0; p < ctx.k; ++p) {
    rngs_.emplace_back(mix64(ctx.seed ^ mix64(0x5eedULL + p)));
    if (p % shard_count != shard || ctx.subparts_per_partition == 1) continue;
    for (std::uint32_t j = 0; j < ctx.subparts_per_partition; ++j) {
      by_load_[p].insert(key_of(p * ctx.subparts_per_partition + j));
    }
  }
}

double SubpartitionSelector::combined_load(SubpartId s) const {
  if (ctx_->balance == BalanceMode::vertex) return static_cast<double>(state_->sub_vcount[s]);
  return static_cast<double>(state_->sub_vcount[s]) + ctx_->mu * static_cast<double>(state_->sub_degsum[s]);
}

SubpartitionSelector::LoadKey SubpartitionSelector::key_of(SubpartId s) const {
  return {combined_load(s), mix64(ctx_->seed ^ mix64(s)), s};
}

double SubpartitionSelector::score(SubpartId s, std::uint32_t neighbors_in_s) const {
  return static_cast<double>(neighbors_in_s) - ctx_->sub_penalty(combined_load(s));
}

SubpartChoice SubpartitionSelector::select_and_assign(VertexId v, std::uint32_t degree, PartId part,
                                                      std::span<const VertexId> same_part_neighbors) {
  const std::uint32_t per = ctx_->subparts_per_partition;
  if (per == 1) {
    state_->assign_subpart(v, part, degree);
    return {part, false};
  }
  const double w = static_cast<double>(state_->weight_of(degree));
  auto room = [&](SubpartId s) { return fits(static_cast<double>(state_->sub_load(s)) + w, ctx_->sub_capacity); };

  touched_.clear();
  for (VertexId u : same_part_neighbors) {
    const SubpartId s = state_->subpart_of[u];
    if (counts_[s]++ == 0) touched_.push_back(s);
  }
  argmax_.reset();
  for (SubpartId s : touched_) {
    if (room(s)) argmax_.offer(s, score(s, counts_[s]));
  }
  for (const auto& key : by_load_[part]) {
    const SubpartId s = std::get<2>(key);
    if (counts_[s] > 0 || !room(s)) continue;
    argmax_.offer(s, score(s, 0));
    break;
  }
  for (SubpartId s : touched_) counts_[s] = 0;

  SubpartChoice choice;
  if (argmax_.empty()) {
    // Every sub-partition is full: least-loaded one keeps v inside `part`.
    SubpartId best = part * per;
    for (SubpartId s = part * per + 1; s < (part + 1) * per; ++s) {
      if (std::make_tuple(state_->sub_load(s), state_->sub_vcount[s]) <
          std::make_tuple(state_->sub_load(best), state_->sub_vcount[best])) {
        best = s;
      }
    }
    choice = {best, true};
    ++fallbacks_;
  } else {
    choice = {argmax_.pick(rngs_[part]), false};
  }
  by_load_[part].erase(key_of(choice.subpart));
  state_->assign_subpart(v, choice.subpart, degree);
  by_load_[part].insert(key_of(choice.subpart));
  return choice;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Downstream of partition selection: sub-partition choice and W accumulation.
class SubpartStage {
 public:
  virtual ~SubpartStage() = default;
  virtual void on_assigned(VertexId v, PartId p, std::uint32_t degree, std::span<const VertexId> same_part,
                           std::span<const VertexId> neighbors) = 0;
  /// Flushes and joins; returns the accumulated weights.
  virtual SubpartEdgeWeights finish() = 0;
  virtual std::uint64_t fallbacks() const = 0;
};

class InlineSubpartStage final : public SubpartStage {
 public:
  InlineSubpartStage(const ScoringContext& ctx, PartitionState& state)
      : selector_(ctx, state), accumulator_(state.vertex_count()) {}

  void on_assigned(VertexId v, PartId p, std::uint32_t degree, std::span<const VertexId> same_part,
                   std::span<const VertexId> neighbors) override {
    const SubpartChoice choice = selector_.select_and_assign(v, degree, p, same_part);
    accumulator_.on_assigned(v, choice.subpart, neighbors);
  }
  SubpartEdgeWeights finish() override { return accumulator_.take(); }
  std::uint64_t fallbacks() const override { return selector_.fallbacks(); }

 private:
  SubpartitionSelector selector_;
  WeightAccumulator accumulator_;
};

/**
 * Pipelined variant: the caller's thread keeps partition selection; one or more
 * shard threads (partition p -> shard p % shards) pick sub-partitions in
 * decision order; one accumulator thread builds W. Every mutable structure is
 * written by exactly one stage.
 */
class PipelinedSubpartStage final : public SubpartStage {
 public:
  PipelinedSubpartStage(const ScoringContext& ctx, PartitionState& state, std::uint32_t shards)
      : accumulator_(state.vertex_count()), weights_channel_(kChannelBatches) {
    for (std::uint32_t i = 0; i < shards; ++i) {
      shards_.push_back(std::make_unique<Shard>(ctx, state, i, shards));
    }
    pending_.resize(shards);
    for (auto& shard : shards_) {
      shard->thread = std::thread([this, s = shard.get()] { run_shard(*s); });
    }
    accumulator_thread_ = std::thread([this] { run_accumulator(); });
  }

  ~PipelinedSubpartStage() override {
    if (!finished_) shutdown();
  }

  void on_assigned(VertexId v, PartId p, std::uint32_t degree, std::span<const VertexId> same_part,
                   std::span<const VertexId> neighbors) override {
    const std::size_t shard = p % shards_.size();
    auto& batch = pending_[shard];
    Event e{v, p, degree, static_cast<std::uint32_t>(same_part.size()), {}};
    e.neighbors.reserve(same_part.size() + neighbors.size());
    e.neighbors.assign(same_part.begin(), same_part.end());
    e.neighbors.insert(e.neighbors.end(), neighbors.begin(), neighbors.end());
    batch.push_back(std::move(e));
    if (batch.size() >= kBatchSize) flush(shard);
  }

  SubpartEdgeWeights finish() override {
    for (std::size_t i = 0; i < shards_.size(); ++i) flush(i);
    shutdown();
    for (auto& shard : shards_) {
      if (shard->error) std::rethrow_exception(shard->error);
    }
    if (accumulator_error_) std::rethrow_exception(accumulator_error_);
    return accumulator_.take();
  }

  std::uint64_t fallbacks() const override {
    std::uint64_t total = 0;
    for (const auto& shard : shards_) total += shard->selector.fallbacks();
    return total;
  }

 private:
  static constexpr std::size_t kBatchSize = 512;
  static constexpr std::size_t kChannelBatches = 64;

  // neighbors = [same-partition placed neighbors..., all neighbors...]
  struct Event {
    VertexId v;
    PartId part;
    std::uint32_t degree;
    std::uint32_t same_count;
    std::vector<VertexId> neighbors;
  };
  struct Placed {
    VertexId v;
    SubpartId subpart;
    std::vector<VertexId> neighbors;
  };

  struct Shard {
    Shard(const ScoringContext& ctx, PartitionState& state, std::uint32_t index, std::uint32_t count)
        : selector(ctx, state, index, count), inbox(kChannelBatches) {}
    SubpartitionSelector selector;
    BoundedChannel<std::vector<Event>> inbox;
    std::thread thread;
    std::exception_ptr error;
  };

  void flush(std::size_t shard) {
    auto& batch = pending_[shard];
    if (batch.empty()) return;
    shards_[shard]->inbox.push(std::move(batch));
    batch = {};
  }

  void run_shard(Shard& shard) {
    std::vector<Placed> out;
    while (auto batch = shard.inbox.pop()) {
      if (shard.error) continue;  // keep draining so the producer never blocks
      try {
        for (Event& e : *batch) {
          std::span<const VertexId> all(e.neighbors);
          const SubpartChoice choice =
              shard.selector.select_and_assign(e.v, e.degree, e.part, all.first(e.same_count));
          e.neighbors.erase(e.neighbors.begin(), e.neighbors.begin() + e.same_count);
          out.push_back({e.v, choice.subpart, std::move(e.neighbors)});
        }
        weights_channel_.push(std::move(out));
        out = {};
      } catch (...) {
        shard.error = std::current_exception();
      }
    }
  }

  void run_accumulator() {
    while (auto batch = weights_channel_.pop()) {
      if (accumulator_error_) continue;
      try {
        for (const Placed& p : *batch) accumulator_.on_assigned(p.v, p.subpart, p.neighbors);
      } catch (...) {
        accumulator_error_ = std::current_exception();
      }
    }
  }

  void shutdown() {
    finished_ = true;
    for (auto& shard : shards_) shard->inbox.close();
    for (auto& shard : shards_) {
      if (shard->thread.joinable()) shard->thread.join();
    }
    weights_channel_.close();
    if (accumulator_thread_.joinable()) accumulator_thread_.join();
  }

  std::vector<std::unique_ptr<Shard>> shards_;
  std::vector<std::vector<Event>> pending_;
  WeightAccumulator accumulator_;
  BoundedChannel<std::vector<Placed>> weights_channel_;
  std::thread accumulator_thread_;
  std::exception_ptr accumulator_error_;
  bool finished_ = false;
};

class StreamingPhase {
 public:
  StreamingPhase(const PartitionerConfig& cfg, const GraphHeader& header, StreamingHooks hooks)
      : cfg_(cfg),
        ctx_(cfg, header),
        state_(header.vertex_count, cfg.k, cfg.subparts_per_partition, cfg.balance),
        buffer_(header.vertex_count, cfg.max_qsize, cfg.d_max, cfg.theta),
        selector_(ctx_),
        rng_(mix64(cfg.seed)),
        hooks_(std::move(hooks)) {
    if (cfg.pipeline) {
      std::uint32_t shards = cfg.pipeline_shards;
      if (shards == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        shards = hw > 2 ? hw - 2 : 1;
      }
      shards = std::clamp<std::uint32_t>(shards, 1, cfg.k);
      stage_ = std::make_unique<PipelinedSubpartStage>(ctx_, state_, shards);
    } else {
      stage_ = std::make_unique<InlineSubpartStage>(ctx_, state_);
    }
  }

  StreamingResult run(GraphStream& stream) {
    auto start = Clock::now();
    VertexRecord record;
    while (stream.next(record)) {
      ++stats_.vertices;
      entries_ += record.degree();
      const auto degree = static_cast<std::uint32_t>(record.degree());
      if (degree >= cfg_.d_max) {
        ++stats_.immediate_high_degree;
        place(record.id, record.neighbors);
        continue;
      }
      std::uint32_t assigned = 0;
      for (VertexId u : record.neighbors) assigned += state_.is_assigned(u) ? 1 : 0;
      if (assigned == degree || cfg_.max_qsize == 0) {
        if (assigned == degree) ++stats_.immediate_informed;
        place(record.id, record.neighbors);
        continue;
      }
      buffer_.push(record.id, record.neighbors, assigned);
      ++stats_.buffered;
      observe();
      if (buffer_.size() == cfg_.max_qsize) {
        VertexBuffer::Entry e = buffer_.pop_max();
        ++stats_.evicted_capacity;
        observe();
        place(e.vertex, e.neighbors);
      }
    }
    stats_.stream_ms = ms_since(start);

    start = Clock::now();
    while (!buffer_.empty()) {
      VertexBuffer::Entry e = buffer_.pop_max();
      ++stats_.drained;
      observe();
      place(e.vertex, e.neighbors);
    }
    StreamingResult result;
    result.weights = stage_->finish();
    stats_.drain_ms = ms_since(start);

    if (state_.assigned != state_.vertex_count()) {
      throw InvariantError("streaming finished with " + std::to_string(state_.assigned) + " of " +
                           std::to_string(state_.vertex_count()) + " vertices assigned");
    }
    stats_.edges = entries_ / 2;
    stats_.peak_buffer = buffer_.peak_size();
    stats_.peak_buffer_slots = buffer_.peak_slots();
    stats_.max_buffered_degree = buffer_.max_admitted_degree();
    stats_.sub_fallback_assignments = stage_->fallbacks();
    for (PartId p = 0; p < state_.k; ++p) {
      if (!fits(static_cast<double>(state_.load(p)), ctx_.part_capacity)) stats_.balance_violation = true;
    }
    result.state = std::move(state_);
    result.stats = stats_;
    return result;
  }

 private:
  // partitionVertex plus the full-knowledge eviction cascade.
  void place(VertexId v, std::span<const VertexId> neighbors) {
    assign_one(v, neighbors);
    while (!ready_.empty()) {
      VertexBuffer::Entry e = std::move(ready_.front());
      ready_.pop_front();
      assign_one(e.vertex, e.neighbors);
    }
  }

  void assign_one(VertexId v, std::span<const VertexId> neighbors) {
    const PartitionChoice choice = selector_.select(neighbors, state_, rng_);
    if (choice.fallback) ++stats_.fallback_assignments;
    const PartId p = choice.part;
    same_part_.clear();
    for (VertexId u : neighbors) {
      if (!state_.is_assigned(u)) continue;
      if (state_.part_of[u] == p) {
        same_part_.push_back(u);
      } else {
        ++stats_.cut_edges;
      }
    }
    const auto degree = static_cast<std::uint32_t>(neighbors.size());
    state_.assign(v, p, degree);
    stage_->on_assigned(v, p, degree, same_part_, neighbors);

    for (VertexId u : neighbors) {
      if (!buffer_.contains(u)) continue;
      const bool informed = buffer_.note_assigned_neighbor(u);
      if (informed) {
        ready_.push_back(buffer_.remove(u));
        ++stats_.evicted_full;
      }
    }
    observe();
  }

  void observe() {
    if (hooks_.on_buffer_change) hooks_.on_buffer_change(buffer_, state_);
  }

  PartitionerConfig cfg_;
  ScoringContext ctx_;
  PartitionState state_;
  VertexBuffer buffer_;
  PartitionSelector selector_;
  Rng rng_;
  StreamingHooks hooks_;
  std::unique_ptr<SubpartStage> stage_;
  std::deque<VertexBuffer::Entry> ready_;
  std::vector<VertexId> same_part_;
  StreamingStats stats_;
  std::uint64_t entries_ = 0;
};

}  // namespace

StreamingResult run_streaming_phase(GraphStream& stream, const PartitionerConfig& cfg, StreamingHooks hooks) {
  cfg.validate();
  StreamingPhase phase(cfg, stream.header(), std::move(hooks));
  return phase.run(stream);
}

StreamingResult run_baseline(GraphStream& stream, const PartitionerConfig& cfg) {
  if (cfg.algorithm == Algorithm::cuttana) {
    throw std::invalid_argument("run_baseline expects algorithm fennel or ldg");
  }
  PartitionerConfig pure = cfg;
  pure.max_qsize = 0;
  pure.subparts_per_partition = 1;
  pure.refine = false;
  return run_streaming_phase(stream, pure);
}

}  // namespace cuttana
