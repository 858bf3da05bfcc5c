#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ccs/instance.hpp"

namespace ccs {

// A connected threshold-graph instance at a guessed radius r. Edges join a
// facility and a client exactly when d(u,v) <= r; distances inside are
// unweighted shortest-path hop counts. In center instances an id carries
// both roles, every distinct pair within r is an edge, and a facility's
// client neighborhood contains the facility itself.
class InducedInstance {
public:
    // Build from an edge rule evaluated against a parent instance.
    // `fac_ids` / `cli_ids` are the component members.
    static InducedInstance from_parent(const Instance& parent, const Rational& radius,
                                       std::vector<Id> fac_ids, std::vector<Id> cli_ids);

    // Explicit construction for synthetic graphs in tests and tools.
    // `edges` are (facility, client) pairs; an id may appear on both sides.
    static InducedInstance from_edges(std::vector<Id> fac_ids, std::vector<Id> cli_ids,
                                      const std::vector<std::pair<Id, Id>>& edges);

    const std::vector<Id>& clients() const { return clients_; }
    const std::vector<Id>& facilities() const { return facilities_; }
    bool has_facility(Id u) const;
    bool has_client(Id v) const;

    // N[u]: clients adjacent to facility u (u itself included when u is
    // also a client).
    const std::vector<Id>& clients_of(Id u) const;
    const std::vector<Id>& facilities_of(Id v) const;

    // Hop distance in the induced graph; -1 if (unexpectedly) unreachable.
    int hops(Id a, Id b) const;

    bool connected() const;

    // Drops the facility role of every id not in `keep` (they stay around
    // as clients where applicable), drops clients left with no adjacent
    // facility, and splits what remains into connected pieces.
    // Returns (sub-instances, dropped client ids).
    std::pair<std::vector<InducedInstance>, std::vector<Id>> restrict_facilities(
        const std::vector<Id>& keep) const;

    const Instance* parent = nullptr;
    std::optional<Rational> guessed_radius;

private:
    void finalize();  // sorts, builds node index and hop matrix

    std::vector<Id> clients_, facilities_;
    std::vector<Id> nodes_;  // sorted union
    std::map<Id, std::vector<Id>> fac_adj_;  // facility -> N[u]
    std::map<Id, std::vector<Id>> cli_adj_;  // client -> adjacent facilities
    std::vector<std::vector<int>> hop_;      // node-index x node-index
    int node_index(Id a) const;
};

}  // namespace ccs
