#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace potts {

// Sorted doubly linked histogram of (value -> total weight) nodes with a
// second, temporary link layer, an index table from sample positions to
// nodes, and a median cursor with running weighted absolute deviation.
//
// Permanent layer: mutated by insert_element only (O(node count) per insert).
// Temporary layer: a scratch copy of the permanent layer created by
// reset_temporary; remove_element_temp shrinks it in O(1) amortized while
// keeping median and deviation exact, which is what makes the partition
// search quadratic overall.
//
// Protocol: after one or more insert_element calls, call reset_temporary
// before the next remove_element_temp. Single writer; distinct instances may
// be used concurrently.
class IndexedLinkedHistogram {
public:
    explicit IndexedLinkedHistogram(std::size_t capacity_hint = 0) {
        nodes_.reserve(capacity_hint);
        index_.reserve(capacity_hint);
        sample_weight_.reserve(capacity_hint);
    }

    // Adds value with the given weight to the permanent layer and recomputes
    // the permanent median, deviation and flanking weights. Linear time.
    void insert_element(double value, double weight) {
        if (!(weight > 0.0))
            throw std::invalid_argument("insert_element: weight must be positive");

        int prev = -1;
        int cur = head_;
        while (cur != -1 && nodes_[cur].value < value) {
            prev = cur;
            cur = nodes_[cur].next;
        }
        int node;
        if (cur != -1 && nodes_[cur].value == value) {
            node = cur;
            nodes_[node].weight += weight;
            nodes_[node].count += 1;
        } else {
            node = static_cast<int>(nodes_.size());
            nodes_.push_back(Node{value, weight, 0.0, 1, 0, prev, cur, -1, -1});
            if (prev != -1) nodes_[prev].next = node; else head_ = node;
            if (cur != -1) nodes_[cur].prev = node;
        }
        index_.push_back(node);
        sample_weight_.push_back(weight);
        total_weight_ += weight;

        recompute_permanent_state();
        // expose the permanent state through the live cursors; the node-level
        // temporary fields stay stale until reset_temporary
        median_ = perm_median_;
        dev_ = perm_dev_;
        wa_ = perm_wa_;
        wb_ = perm_wb_;
        temp_count_ = index_.size();
    }

    // Copies the permanent layer over the temporary one. Linear time.
    void reset_temporary() {
        for (Node& n : nodes_) {
            n.weight_temp = n.weight;
            n.count_temp = n.count;
            n.prev_temp = n.prev;
            n.next_temp = n.next;
        }
        median_ = perm_median_;
        dev_ = perm_dev_;
        wa_ = perm_wa_;
        wb_ = perm_wb_;
        temp_count_ = index_.size();
        last_shifts_ = 0;
    }

    // Temporarily removes the sample inserted at position `sample`
    // (0-based insertion order). Constant time up to the shift bound.
    void remove_element_temp(std::size_t sample, double weight) {
        if (sample >= index_.size())
            throw std::out_of_range("remove_element_temp: no such sample");
        const double expected = sample_weight_[sample];
        if (std::abs(weight - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
            throw std::invalid_argument("remove_element_temp: weight mismatch");
        Node& node = nodes_[index_[sample]];
        if (node.count_temp <= 0)
            throw std::invalid_argument("remove_element_temp: sample already removed");

        node.count_temp -= 1;
        node.weight_temp -= weight;
        const double mval = nodes_[median_].value;
        if (node.value > mval) wa_ -= weight;
        else if (node.value < mval) wb_ -= weight;
        dev_ -= weight * std::abs(mval - node.value);

        --temp_count_;
        if (temp_count_ == 0) {
            unlink_temp(index_[sample]);
            median_ = -1;
            dev_ = 0.0;
            wa_ = wb_ = 0.0;
            last_shifts_ = 0;
            return;
        }
        update_median_deviation_temp();
        if (node.count_temp == 0) unlink_temp(index_[sample]);
    }

    // Rebalances the median cursor along the temporary links and keeps the
    // running deviation exact. Shift counts are bounded by
    // ceil(max weight / min weight); boundary checks stop the cursor at the
    // list ends so that extreme weight ratios cannot run it off.
    void update_median_deviation_temp() {
        const double wtot = wa_ + wb_ + nodes_[median_].weight_temp;
        std::uint64_t up = 0;
        std::uint64_t down = 0;
        while (wa_ >= 0.5 * wtot && nodes_[median_].next_temp != -1) {
            const double mu = nodes_[median_].value;
            wb_ += nodes_[median_].weight_temp;
            median_ = nodes_[median_].next_temp;
            dev_ -= std::abs(mu - nodes_[median_].value) * std::abs(wa_ - wb_);
            wa_ -= nodes_[median_].weight_temp;
            ++up;
        }
        while (wb_ >= 0.5 * wtot && nodes_[median_].prev_temp != -1) {
            const double mu = nodes_[median_].value;
            wa_ += nodes_[median_].weight_temp;
            median_ = nodes_[median_].prev_temp;
            dev_ -= std::abs(mu - nodes_[median_].value) * std::abs(wb_ - wa_);
            wb_ -= nodes_[median_].weight_temp;
            ++down;
        }
        // Net cursor displacement; an up/down bounce at an exact tie is not a
        // move of the median.
        last_shifts_ = up > down ? up - down : down - up;
        if (last_shifts_ > max_shifts_) max_shifts_ = last_shifts_;
    }

    bool temp_empty() const { return temp_count_ == 0; }
    std::size_t temp_size() const { return temp_count_; }
    std::size_t sample_count() const { return index_.size(); }
    std::size_t node_count() const { return nodes_.size(); }

    double current_median() const {
        if (median_ == -1)
            throw std::logic_error("current_median: histogram is empty");
        return nodes_[median_].value;
    }
    double current_deviation() const { return dev_; }
    double weight_above() const { return wa_; }
    double weight_below() const { return wb_; }

    // instrumentation for the complexity witnesses
    std::uint64_t last_shift_count() const { return last_shifts_; }
    std::uint64_t max_shift_count() const { return max_shifts_; }

    // inspection hooks for tests
    std::vector<std::pair<double, double>> permanent_table() const {
        std::vector<std::pair<double, double>> t;
        for (int i = head_; i != -1; i = nodes_[i].next)
            t.emplace_back(nodes_[i].value, nodes_[i].weight);
        return t;
    }
    std::vector<std::pair<double, double>> temporary_table() const {
        std::vector<std::pair<double, double>> t;
        if (median_ == -1) return t;
        int i = median_;
        while (nodes_[i].prev_temp != -1) i = nodes_[i].prev_temp;
        for (; i != -1; i = nodes_[i].next_temp)
            t.emplace_back(nodes_[i].value, nodes_[i].weight_temp);
        return t;
    }

private:
    struct Node {
        double value;
        double weight, weight_temp;
        int count, count_temp;
        int prev, next;           // permanent sorted order
        int prev_temp, next_temp; // temporary sorted order
    };

    void unlink_temp(int i) {
        const Node& n = nodes_[i];
        if (n.prev_temp != -1) nodes_[n.prev_temp].next_temp = n.next_temp;
        if (n.next_temp != -1) nodes_[n.next_temp].prev_temp = n.prev_temp;
    }

    void recompute_permanent_state() {
        const double half = 0.5 * total_weight_;
        double cum = 0.0;
        int med = head_;
        for (int i = head_; i != -1; i = nodes_[i].next) {
            cum += nodes_[i].weight;
            if (cum >= half) {
                med = i;
                break;
            }
        }
        const double mval = nodes_[med].value;
        double dev = 0.0;
        double below = 0.0;
        double above = 0.0;
        for (int i = head_; i != -1; i = nodes_[i].next) {
            const Node& n = nodes_[i];
            dev += n.weight * std::abs(n.value - mval);
            if (n.value < mval) below += n.weight;
            else if (n.value > mval) above += n.weight;
        }
        perm_median_ = med;
        perm_dev_ = dev;
        perm_wa_ = above;
        perm_wb_ = below;
    }

    std::vector<Node> nodes_; // arena; nodes are never deallocated
    int head_ = -1;
    int median_ = -1;
    std::vector<int> index_;           // sample position -> node
    std::vector<double> sample_weight_; // weight as inserted, for validation
    double total_weight_ = 0.0;
    double dev_ = 0.0;
    double wa_ = 0.0, wb_ = 0.0;

    int perm_median_ = -1;
    double perm_dev_ = 0.0, perm_wa_ = 0.0, perm_wb_ = 0.0;
    std::size_t temp_count_ = 0;

    std::uint64_t last_shifts_ = 0;
    std::uint64_t max_shifts_ = 0;
};

} // namespace potts
