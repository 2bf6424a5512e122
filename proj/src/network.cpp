#include "ergm/network.hpp"

#include <bit>

namespace ergm {

Network::Network(int node_count)
    : n_(node_count),
      words_((node_count + 63) / 64),
      adj_(static_cast<std::size_t>(node_count) * ((node_count + 63) / 64), 0),
      degrees_(node_count, 0),
      edge_count_(0) {
    if (node_count <= 0) throw IndexOutOfRange("node count must be positive");
}

Network Network::from_edge_list(int node_count,
                                const std::vector<std::pair<int, int>>& edges) {
    Network net(node_count);
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= node_count || b >= node_count)
            throw IndexOutOfRange("edge endpoint " + std::to_string(a < 0 || a >= node_count ? a : b) +
                                  " outside 0.." + std::to_string(node_count - 1));
        if (a == b) throw SelfLoop("self-loop at node " + std::to_string(a));
        if (net.test(a, b)) throw DuplicateEdge("duplicate edge {" + std::to_string(a) +
                                                "," + std::to_string(b) + "}");
        net.set_bit(a, b);
        net.set_bit(b, a);
        ++net.degrees_[a];
        ++net.degrees_[b];
        ++net.edge_count_;
    }
    return net;
}

void Network::check_dyad(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw IndexOutOfRange("node index outside 0.." + std::to_string(n_ - 1));
    if (i == j) throw SelfLoop("self-loop at node " + std::to_string(i));
}

void Network::apply_toggle(const DyadToggle& t) {
    check_dyad(t.i, t.j);
    const bool present = test(t.i, t.j);
    if (t.direction == ToggleDir::add) {
        if (present) throw ToggleConflict("add on present dyad");
        set_bit(t.i, t.j);
        set_bit(t.j, t.i);
        ++degrees_[t.i];
        ++degrees_[t.j];
        ++edge_count_;
    } else {
        if (!present) throw ToggleConflict("remove on absent dyad");
        clear_bit(t.i, t.j);
        clear_bit(t.j, t.i);
        --degrees_[t.i];
        --degrees_[t.j];
        --edge_count_;
    }
}

int Network::common_neighbors(int i, int j) const {
    const std::uint64_t* ri = adj_.data() + static_cast<std::size_t>(i) * words_;
    const std::uint64_t* rj = adj_.data() + static_cast<std::size_t>(j) * words_;
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount(ri[w] & rj[w]);
    // i,j bits can never intersect the other row (no self-loops), so no mask
    // correction is needed.
    return c;
}

std::vector<int> Network::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(degrees_[v]);
    const std::uint64_t* row = adj_.data() + static_cast<std::size_t>(v) * words_;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
            int b = std::countr_zero(bits);
            out.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return out;
}

std::pair<long long, long long> Network::dyad_census() const {
    const long long total = dyad_count();
    return {edge_count_, total - edge_count_};
}

void Network::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_)
        throw IndexOutOfRange("label count must equal node count");
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

void Network::set_attributes(AttributeTable attrs) {
    for (const auto& [name, col] : attrs)
        if (static_cast<int>(col.values.size()) != n_)
            throw IndexOutOfRange("attribute '" + name + "' length must equal node count");
    attrs_ = std::make_shared<const AttributeTable>(std::move(attrs));
}

const AttributeColumn* Network::attribute(const std::string& name) const {
    if (!attrs_) return nullptr;
    auto it = attrs_->find(name);
    return it == attrs_->end() ? nullptr : &it->second;
}

Network toggle(const Network& net, const DyadToggle& t) {
    Network out = net;
    out.apply_toggle(t);
    return out;
}

} // namespace ergm
