#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace encap {

using Count = std::int64_t;
using Real = double;

class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

class cap_error : public std::runtime_error {
public:
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// One encapsulated region, stored as counts. A node is either hidden inside
// the region or violating (visible from outside).
struct RegionCounts {
    Count hidden = 0;
    Count violating = 0;

    Count size() const { return hidden + violating; }

    friend bool operator==(const RegionCounts&, const RegionCounts&) = default;
};

// A non-hierarchical encapsulated system: an ordered list of regions.
// Region order is preserved for reporting but never affects any metric.
struct FlatSystem {
    std::vector<RegionCounts> regions;

    Count n() const {
        Count total = 0;
        for (const auto& reg : regions) total += reg.size();
        return total;
    }

    Count h() const {
        Count total = 0;
        for (const auto& reg : regions) total += reg.violating;
        return total;
    }

    // Empty regions contribute nothing and are not counted here.
    Count r() const {
        Count total = 0;
        for (const auto& reg : regions) {
            if (reg.size() > 0) ++total;
        }
        return total;
    }

    friend bool operator==(const FlatSystem&, const FlatSystem&) = default;
};

inline FlatSystem flat_from_counts(const std::vector<std::pair<Count, Count>>& pairs) {
    FlatSystem sys;
    sys.regions.reserve(pairs.size());
    for (const auto& [hidden, violating] : pairs) {
        if (hidden < 0 || violating < 0) {
            throw validation_error("region counts must be non-negative");
        }
        sys.regions.push_back({hidden, violating});
    }
    return sys;
}

// Parameters of a uniformly distributed system. r and p are real-valued so
// the laws can report non-integer optima and averaged violation rates.
struct UniformSpec {
    Count n = 0;
    Real r = 0;
    Real p = 0;
};

inline FlatSystem uniform_system(Count n, Count r, Count p) {
    if (n < 0 || r < 1) throw validation_error("uniform system needs n >= 0 and r >= 1");
    if (n % r != 0) {
        throw validation_error("region count " + std::to_string(r) + " does not divide " +
                               std::to_string(n) + " nodes");
    }
    const Count size = n / r;
    if (p < 0 || p > size) {
        throw validation_error("violations per region must lie in [0, n/r]");
    }
    FlatSystem sys;
    sys.regions.assign(static_cast<std::size_t>(r), RegionCounts{size - p, p});
    return sys;
}

// A layered system: layers[0] is the bottom layer. Penetration is the number
// of layers below its own that a unit may reach; unset means all of them.
struct LayeredSystem {
    std::vector<std::vector<RegionCounts>> layers;
    std::optional<Count> penetration;

    Count layer_count() const { return static_cast<Count>(layers.size()); }

    Count effective_penetration() const {
        const Count max_d = layer_count() > 0 ? layer_count() - 1 : 0;
        if (!penetration) return max_d;
        return *penetration < max_d ? *penetration : max_d;
    }

    Count n() const {
        Count total = 0;
        for (const auto& layer : layers)
            for (const auto& reg : layer) total += reg.size();
        return total;
    }

    Count h() const {
        Count total = 0;
        for (const auto& layer : layers)
            for (const auto& reg : layer) total += reg.violating;
        return total;
    }

    Count r() const {
        Count total = 0;
        for (const auto& layer : layers)
            for (const auto& reg : layer) {
                if (reg.size() > 0) ++total;
            }
        return total;
    }
};

// A two-dimensional hierarchy of subsystems. Subsystem 0 is the root; every
// other subsystem names an earlier-or-later subsystem as its parent.
struct HierTree {
    struct Subsystem {
        std::string name;
        int parent = -1;  // -1 marks the root
        RegionCounts counts;
    };

    std::vector<Subsystem> nodes;

    Count n() const {
        Count total = 0;
        for (const auto& node : nodes) total += node.counts.size();
        return total;
    }

    Count h() const {
        Count total = 0;
        for (const auto& node : nodes) total += node.counts.violating;
        return total;
    }

    Count subsystem_count() const { return static_cast<Count>(nodes.size()); }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> kids(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const int parent = nodes[i].parent;
            if (parent >= 0) kids[static_cast<std::size_t>(parent)].push_back(static_cast<int>(i));
        }
        return kids;
    }

    // Validates single-root, in-range parents, acyclicity.
    void validate() const {
        int roots = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const int parent = nodes[i].parent;
            if (parent == -1) {
                ++roots;
            } else if (parent < 0 || parent >= static_cast<int>(nodes.size())) {
                throw validation_error("subsystem '" + nodes[i].name + "' has an out-of-range parent");
            }
        }
        if (!nodes.empty() && roots != 1) {
            throw validation_error("hierarchy must have exactly one root, found " +
                                   std::to_string(roots));
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            int hops = 0;
            int at = static_cast<int>(i);
            while (at != -1) {
                at = nodes[static_cast<std::size_t>(at)].parent;
                if (++hops > static_cast<int>(nodes.size())) {
                    throw validation_error("subsystem '" + nodes[i].name +
                                           "' is part of a parent cycle");
                }
            }
        }
    }
};

// Named nodes grouped by region, for ingest reporting. Collapses to counts.
struct LabeledCodebase {
    struct Entry {
        std::string name;
        bool is_public = false;
    };

    std::map<std::string, std::vector<Entry>> regions;

    FlatSystem collapse() const {
        FlatSystem sys;
        sys.regions.reserve(regions.size());
        for (const auto& [region_name, entries] : regions) {
            RegionCounts counts;
            for (const auto& entry : entries) {
                if (entry.is_public) {
                    ++counts.violating;
                } else {
                    ++counts.hidden;
                }
            }
            sys.regions.push_back(counts);
        }
        return sys;
    }
};

}  // namespace encap
