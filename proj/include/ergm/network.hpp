#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ergm/errors.hpp"

namespace ergm {

enum class ToggleDir { add, remove };

// One dyad flip; endpoints are stored in canonical i<j order.
struct DyadToggle {
    int i;
    int j;
    ToggleDir direction;

    DyadToggle(int a, int b, ToggleDir d)
        : i(a < b ? a : b), j(a < b ? b : a), direction(d) {
        if (a == b) throw SelfLoop("dyad endpoints must differ");
    }
};

// Per-node attribute column. Numeric columns hold doubles; categorical
// columns hold interned level codes plus the level names.
struct AttributeColumn {
    bool numeric = true;
    std::vector<double> values;        // numeric value or level code per node
    std::vector<std::string> levels;   // categorical level names, by code
};

using AttributeTable = std::map<std::string, AttributeColumn>;

// Undirected simple graph on nodes 0..N-1 with incrementally maintained
// degrees. Adjacency is a row-major bitset so common-neighbour counts are
// word-parallel. Value semantics: copies are independent snapshots.
class Network {
public:
    explicit Network(int node_count);

    static Network from_edge_list(int node_count,
                                  const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    int degree(int v) const { return degrees_[v]; }
    const std::vector<int>& degrees() const { return degrees_; }

    bool has_edge(int i, int j) const {
        check_dyad(i, j);
        return test(i, j);
    }

    // Mutating flip of one dyad; throws ToggleConflict when the direction
    // disagrees with the current state.
    void apply_toggle(const DyadToggle& t);

    // |N(i) ∩ N(j)|; i and j themselves never count (no self-loops).
    int common_neighbors(int i, int j) const;

    std::vector<int> neighbors(int v) const;

    // (edge count, non-edge count); the parts always sum to C(N,2).
    std::pair<long long, long long> dyad_census() const;

    long long dyad_count() const {
        return static_cast<long long>(n_) * (n_ - 1) / 2;
    }

    // Optional node labels (from file ingestion); node v <-> labels()[v].
    void set_labels(std::vector<std::string> labels);
    const std::vector<std::string>* labels() const { return labels_.get(); }

    void set_attributes(AttributeTable attrs);
    const AttributeColumn* attribute(const std::string& name) const;
    const AttributeTable* attributes() const { return attrs_.get(); }

    bool operator==(const Network& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    void check_dyad(int i, int j) const;
    bool test(int i, int j) const {
        return (adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set_bit(int i, int j) {
        adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    }
    void clear_bit(int i, int j) {
        adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] &= ~(std::uint64_t{1} << (j & 63));
    }

    int n_;
    int words_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> degrees_;
    int edge_count_;
    std::shared_ptr<const std::vector<std::string>> labels_;
    std::shared_ptr<const AttributeTable> attrs_;
};

// Value-semantic toggle: returns a copy differing from `net` in exactly one
// dyad.
Network toggle(const Network& net, const DyadToggle& t);

} // namespace ergm
