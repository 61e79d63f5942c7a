#pragma once

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppr/graph.hpp"
#include "ppr/indexed_heap.hpp"

namespace ppr {

enum class PushVariant { priority_queue, work_set };

std::string_view variant_name(PushVariant variant) noexcept;
/// Accepts "pq", "priority_queue", "set" and "work_set".
std::optional<PushVariant> parse_variant(std::string_view name) noexcept;

struct ScoreEntry {
    NodeId node;
    double score;
};

/// Sparse estimates s(u) of pi(u, target). Absent nodes have s(u) = 0.
class ScoreVector {
public:
    ScoreVector() = default;
    ScoreVector(NodeId target, double alpha, std::vector<ScoreEntry> entries);

    NodeId target() const noexcept { return target_; }
    double alpha() const noexcept { return alpha_; }
    double operator[](NodeId u) const noexcept;
    std::size_t size() const noexcept { return entries_.size(); }
    /// Entries ordered by node id.
    std::span<const ScoreEntry> entries() const noexcept { return entries_; }

private:
    NodeId target_ = 0;
    double alpha_ = 0.0;
    std::vector<ScoreEntry> entries_;
};

struct PushStats {
    std::uint64_t pops = 0;
    /// Priority updates in the inner loop: |in(w)| per propagated node w.
    std::uint64_t steps = 0;
    std::uint64_t distinct_touched = 0;
    double wall_seconds = 0.0;
};

/// Invariant checks collected when PushOptions::audit is set. Quadratic in
/// the explored region per step; meant for small graphs only.
struct PushAudit {
    std::uint64_t checks = 0;
    double max_conservation_residual = 0.0;
    std::uint64_t discipline_violations = 0;
    std::uint64_t priority_exceeds_score = 0;
    std::uint64_t membership_violations = 0;
    std::uint64_t score_decreases = 0;

    bool clean(double conservation_tolerance = 1e-9) const noexcept {
        return max_conservation_residual <= conservation_tolerance && discipline_violations == 0 &&
               priority_exceeds_score == 0 && membership_violations == 0 && score_decreases == 0;
    }
};

struct PushOptions {
    PushVariant variant = PushVariant::priority_queue;
    bool audit = false;
    /// Overrides the alpha * epsilon stop threshold. Test hook only.
    std::optional<double> stop_threshold;
};

struct PushResult {
    ScoreVector scores;
    PushStats stats;
    std::optional<PushAudit> audit;
};

/**
 * Working state of one reverse-push run: scores s, unpropagated mass p, and
 * the pending set (an indexed max-heap for the priority-queue variant, a FIFO
 * of nodes with p above threshold for the work-set variant).
 *
 * Each reached node gets a dense local slot through one hash lookup; s, p and
 * heap positions live in vectors over slots, so storage only grows with the
 * nodes actually reached.
 */
class PushState {
public:
    PushState(const DirectedGraph& graph, NodeId target, double alpha, double threshold,
              PushVariant variant);

    double score(NodeId u) const noexcept;
    double priority(NodeId u) const noexcept;
    double threshold() const noexcept { return threshold_; }
    bool queued(NodeId u) const;
    std::size_t touched() const noexcept { return entries_.size(); }
    const PushStats& stats() const noexcept { return stats_; }

    /// Next node to propagate, or nullopt when nothing pending exceeds the threshold.
    std::optional<NodeId> next() const;

    /// Moves p(w) to the in-neighbours of w: each u in in(w) gains
    /// (1 - alpha) * p(w) * weight(u, w) / weighted_out_degree(u) in both s and p.
    /// p(w) is cleared before distribution, so a self-loop re-credits w.
    void propagate(NodeId w);

    /// Pops the next node and propagates it. Returns false once done.
    bool step();

    /// Runs to completion; records wall time and, when `audit` is non-null,
    /// checks every invariant after each propagation.
    void run(PushAudit* audit = nullptr);

    ScoreVector scores() const;

    /// Largest |s(u) - (alpha [u = target] + (1 - alpha) sum_w P(u, w) (s(w) - p(w)))|
    /// over reached nodes.
    double conservation_residual() const;

private:
    using Slot = std::uint32_t;

    struct Entry {
        NodeId node;
        double score = 0.0;
        double priority = 0.0;
        bool in_work_set = false;
    };

    Slot touch(NodeId u);
    const Entry* find(NodeId u) const;
    void propagate_slot(Slot w);
    void audit_step(PushAudit& audit, std::vector<double>& previous) const;

    const DirectedGraph* graph_;
    NodeId target_;
    double alpha_;
    double threshold_;
    PushVariant variant_;
    absl::flat_hash_map<NodeId, Slot> slots_;
    std::vector<Entry> entries_;
    IndexedMaxHeap<NodeId> heap_;
    std::deque<Slot> work_set_;
    PushStats stats_;
};

/// Personalized PageRank from every node to `target` with additive error
/// below epsilon (at most (1 - alpha) * epsilon). Stops once no pending
/// priority exceeds alpha * epsilon.
PushResult ppr_to_target(const DirectedGraph& graph, NodeId target, double alpha, double epsilon,
                         const PushOptions& options = {});

/// Range checks shared by push and the oracles. Throws std::invalid_argument.
void check_alpha(double alpha);
void check_epsilon(double epsilon);
void check_target(const DirectedGraph& graph, NodeId target);

}  // namespace ppr
