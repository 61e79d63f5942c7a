#include "ppr/reverse_push.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ppr {

std::string_view variant_name(PushVariant variant) noexcept {
    return variant == PushVariant::priority_queue ? "priority_queue" : "work_set";
}

std::optional<PushVariant> parse_variant(std::string_view name) noexcept {
    if (name == "pq" || name == "priority_queue") {
        return PushVariant::priority_queue;
    }
    if (name == "set" || name == "work_set") {
        return PushVariant::work_set;
    }
    return std::nullopt;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
}

void check_target(const DirectedGraph& graph, NodeId target) {
    if (target == graph.sink()) {
        throw std::invalid_argument("target " + std::to_string(target) +
                                    " is the synthetic sink, not a real node");
    }
    if (!graph.is_real(target)) {
        throw std::invalid_argument("target " + std::to_string(target) + " is out of range [0, " +
                                    std::to_string(graph.num_nodes()) + ")");
    }
}

ScoreVector::ScoreVector(NodeId target, double alpha, std::vector<ScoreEntry> entries)
    : target_(target), alpha_(alpha), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.node < b.node; });
}

double ScoreVector::operator[](NodeId u) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), u,
                               [](const ScoreEntry& e, NodeId key) { return e.node < key; });
    return it != entries_.end() && it->node == u ? it->score : 0.0;
}

PushState::PushState(const DirectedGraph& graph, NodeId target, double alpha, double threshold,
                     PushVariant variant)
    : graph_(&graph), target_(target), alpha_(alpha), threshold_(threshold), variant_(variant) {
    const Slot t = touch(target);
    entries_[t].score = alpha;
    entries_[t].priority = alpha;
    if (variant_ == PushVariant::priority_queue) {
        heap_.push_or_increase(t, alpha, target);
    } else if (alpha > threshold_) {
        entries_[t].in_work_set = true;
        work_set_.push_back(t);
    }
}

PushState::Slot PushState::touch(NodeId u) {
    auto [it, inserted] = slots_.try_emplace(u, static_cast<Slot>(entries_.size()));
    if (inserted) {
        entries_.push_back({u});
        stats_.distinct_touched = entries_.size();
    }
    return it->second;
}

const PushState::Entry* PushState::find(NodeId u) const {
    auto it = slots_.find(u);
    return it == slots_.end() ? nullptr : &entries_[it->second];
}

double PushState::score(NodeId u) const noexcept {
    const Entry* e = find(u);
    return e == nullptr ? 0.0 : e->score;
}

double PushState::priority(NodeId u) const noexcept {
    const Entry* e = find(u);
    return e == nullptr ? 0.0 : e->priority;
}

bool PushState::queued(NodeId u) const {
    auto it = slots_.find(u);
    if (it == slots_.end()) {
        return false;
    }
    if (variant_ == PushVariant::priority_queue) {
        return heap_.contains(it->second);
    }
    return entries_[it->second].in_work_set;
}

std::optional<NodeId> PushState::next() const {
    if (variant_ == PushVariant::priority_queue) {
        if (heap_.empty() || !(heap_.max_priority() > threshold_)) {
            return std::nullopt;
        }
        return heap_.top().tie;
    }
    if (work_set_.empty()) {
        return std::nullopt;
    }
    return entries_[work_set_.front()].node;
}

void PushState::propagate(NodeId w) { propagate_slot(slots_.at(w)); }

void PushState::propagate_slot(Slot w) {
    const double mass = entries_[w].priority;
    const NodeId node = entries_[w].node;
    entries_[w].priority = 0.0;
    if (variant_ == PushVariant::priority_queue) {
        heap_.erase(w);
    }
    const double scale = (1.0 - alpha_) * mass;
    const auto in = graph_->in(node);
    stats_.steps += in.size();
    for (const Arc& arc : in) {
        const NodeId u = arc.node;
        const double delta = scale * arc.weight / graph_->weighted_out_degree(u);
        const Slot slot = touch(u);
        Entry& e = entries_[slot];
        e.score += delta;
        e.priority += delta;
        if (!(e.priority > 0.0)) {
            continue;
        }
        if (variant_ == PushVariant::priority_queue) {
            heap_.push_or_increase(slot, e.priority, u);
        } else if (!e.in_work_set && e.priority > threshold_) {
            e.in_work_set = true;
            work_set_.push_back(slot);
        }
    }
}

bool PushState::step() {
    if (variant_ == PushVariant::priority_queue) {
        if (heap_.empty() || !(heap_.max_priority() > threshold_)) {
            return false;
        }
        const Slot w = heap_.pop().slot;
        ++stats_.pops;
        propagate_slot(w);
        return true;
    }
    while (!work_set_.empty()) {
        const Slot w = work_set_.front();
        work_set_.pop_front();
        entries_[w].in_work_set = false;
        if (entries_[w].priority > threshold_) {
            ++stats_.pops;
            propagate_slot(w);
            return true;
        }
    }
    return false;
}

double PushState::conservation_residual() const {
    double worst = 0.0;
    for (const Entry& entry : entries_) {
        const NodeId u = entry.node;
        double sum = 0.0;
        const double degree = graph_->weighted_out_degree(u);
        for (const Arc& arc : graph_->out(u)) {
            sum += arc.weight / degree * (score(arc.node) - priority(arc.node));
        }
        const double expected = (u == target_ ? alpha_ : 0.0) + (1.0 - alpha_) * sum;
        worst = std::max(worst, std::abs(entry.score - expected));
    }
    return worst;
}

void PushState::audit_step(PushAudit& audit, std::vector<double>& previous) const {
    ++audit.checks;
    audit.max_conservation_residual =
        std::max(audit.max_conservation_residual, conservation_residual());
    std::size_t positive = 0;
    previous.resize(entries_.size(), 0.0);
    for (Slot slot = 0; slot < entries_.size(); ++slot) {
        const Entry& entry = entries_[slot];
        if (entry.priority > entry.score) {
            ++audit.priority_exceeds_score;
        }
        if (entry.priority > 0.0) {
            ++positive;
            if (variant_ == PushVariant::priority_queue && !heap_.contains(slot)) {
                ++audit.membership_violations;
            }
        }
        if (entry.score < previous[slot]) {
            ++audit.score_decreases;
        }
        previous[slot] = entry.score;
    }
    if (variant_ == PushVariant::priority_queue && (positive != heap_.size() || !heap_.valid())) {
        ++audit.membership_violations;
    }
}

void PushState::run(PushAudit* audit) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> previous;
    for (;;) {
        if (audit != nullptr && variant_ == PushVariant::priority_queue) {
            if (auto w = next()) {
                // The popped node must hold the largest p, lowest id among ties.
                const double chosen = priority(*w);
                for (const Entry& entry : entries_) {
                    if (entry.priority > chosen || (entry.priority == chosen && entry.node < *w)) {
                        ++audit->discipline_violations;
                        break;
                    }
                }
            }
        }
        if (!step()) {
            break;
        }
        if (audit != nullptr) {
            audit_step(*audit, previous);
        }
    }
    stats_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ScoreVector PushState::scores() const {
    std::vector<ScoreEntry> entries;
    entries.reserve(entries_.size());
    for (const Entry& entry : entries_) {
        if (entry.score > 0.0) {
            entries.push_back({entry.node, entry.score});
        }
    }
    return ScoreVector(target_, alpha_, std::move(entries));
}

PushResult ppr_to_target(const DirectedGraph& graph, NodeId target, double alpha, double epsilon,
                         const PushOptions& options) {
    check_alpha(alpha);
    check_epsilon(epsilon);
    check_target(graph, target);
    const double threshold = options.stop_threshold.value_or(alpha * epsilon);
    PushState state(graph, target, alpha, threshold, options.variant);
    PushResult result;
    if (options.audit) {
        result.audit.emplace();
        state.run(&*result.audit);
    } else {
        state.run();
    }
    result.scores = state.scores();
    result.stats = state.stats();
    return result;
}

}  // namespace ppr
