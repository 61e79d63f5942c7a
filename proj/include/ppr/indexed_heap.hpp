#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace ppr {

/**
 * Array-backed binary max-heap with a position index, so a slot's priority
 * can be raised in O(log n). Slots are small dense integers handed out by the
 * caller (the position index is a vector over them). Each item also carries a
 * tie value: equal priorities pop the lowest tie first. By default the tie is
 * the slot itself.
 */
template <typename Tie = std::uint32_t>
class IndexedMaxHeap {
public:
    using Slot = std::uint32_t;

    struct Item {
        double priority;
        Tie tie;
        Slot slot;
    };

    bool empty() const noexcept { return items_.empty(); }
    std::size_t size() const noexcept { return items_.size(); }
    bool contains(Slot slot) const noexcept {
        return slot < position_.size() && position_[slot] != kAbsent;
    }

    const Item& top() const { return items_.front(); }
    double max_priority() const { return items_.empty() ? 0.0 : items_.front().priority; }

    std::optional<double> priority_of(Slot slot) const {
        if (!contains(slot)) {
            return std::nullopt;
        }
        return items_[position_[slot]].priority;
    }

    /// Inserts `slot` or raises its priority. Lowering is a no-op.
    void push_or_increase(Slot slot, double priority, Tie tie) {
        if (slot >= position_.size()) {
            position_.resize(static_cast<std::size_t>(slot) + 1, kAbsent);
        }
        if (position_[slot] == kAbsent) {
            items_.push_back({priority, tie, slot});
            position_[slot] = items_.size() - 1;
            sift_up(items_.size() - 1);
            return;
        }
        Item& item = items_[position_[slot]];
        if (priority > item.priority) {
            item.priority = priority;
            sift_up(position_[slot]);
        }
    }

    void push_or_increase(Slot slot, double priority) { push_or_increase(slot, priority, Tie(slot)); }

    Item pop() {
        Item top = items_.front();
        position_[top.slot] = kAbsent;
        Item last = items_.back();
        items_.pop_back();
        if (!items_.empty()) {
            place(0, last);
            sift_down(0);
        }
        return top;
    }

    /// Removes `slot` if present.
    void erase(Slot slot) {
        if (!contains(slot)) {
            return;
        }
        const std::size_t i = position_[slot];
        position_[slot] = kAbsent;
        Item last = items_.back();
        items_.pop_back();
        if (i == items_.size()) {
            return;
        }
        place(i, last);
        if (i > 0 && before(last, items_[(i - 1) / 2])) {
            sift_up(i);
        } else {
            sift_down(i);
        }
    }

    /// Heap-order and position-index consistency; used by audits.
    bool valid() const {
        std::size_t present = 0;
        for (std::size_t p : position_) {
            present += p != kAbsent ? 1 : 0;
        }
        if (present != items_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (!contains(items_[i].slot) || position_[items_[i].slot] != i) {
                return false;
            }
            if (i > 0 && before(items_[i], items_[(i - 1) / 2])) {
                return false;
            }
        }
        return true;
    }

    const std::vector<Item>& items() const noexcept { return items_; }

private:
    static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

    static bool before(const Item& a, const Item& b) noexcept {
        return a.priority > b.priority || (a.priority == b.priority && a.tie < b.tie);
    }

    void place(std::size_t i, const Item& item) {
        items_[i] = item;
        position_[item.slot] = i;
    }

    void sift_up(std::size_t i) {
        const Item item = items_[i];
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!before(item, items_[parent])) {
                break;
            }
            place(i, items_[parent]);
            i = parent;
        }
        place(i, item);
    }

    void sift_down(std::size_t i) {
        const Item item = items_[i];
        const std::size_t n = items_.size();
        for (;;) {
            std::size_t child = 2 * i + 1;
            if (child >= n) {
                break;
            }
            if (child + 1 < n && before(items_[child + 1], items_[child])) {
                ++child;
            }
            if (!before(items_[child], item)) {
                break;
            }
            place(i, items_[child]);
            i = child;
        }
        place(i, item);
    }

    std::vector<Item> items_;
    std::vector<std::size_t> position_;
};

}  // namespace ppr
