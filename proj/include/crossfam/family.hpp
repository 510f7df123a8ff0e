#pragma once

// A family = subset of one uniform layer, stored as a bitset over global ranks.
// Families are only materializable on enumerable layers (budget-checked).

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "crossfam/ground.hpp"
#include "crossfam/vertex.hpp"

namespace crossfam {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

class Family {
public:
    explicit Family(std::shared_ptr<const GroundSpec> spec);
    Family(std::shared_ptr<const GroundSpec> spec, Bitset bits);

    static Family full(std::shared_ptr<const GroundSpec> spec);

    const GroundSpec& spec() const { return *spec_; }
    const std::shared_ptr<const GroundSpec>& spec_ptr() const { return spec_; }
    const Bitset& bits() const { return bits_; }

    std::uint64_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    bool is_full() const { return bits_.all(); }

    bool contains_rank(std::uint64_t r) const { return bits_.test(r); }
    bool contains(const Vertex& v) const { return bits_.test(v.rank); }
    void add_rank(std::uint64_t r) { bits_.set(r); }
    void add(const Vertex& v) { bits_.set(v.rank); }
    void remove_rank(std::uint64_t r) { bits_.reset(r); }

    void for_each_rank(const std::function<void(std::uint64_t)>& fn) const;
    std::vector<std::uint64_t> ranks() const;

    Family operator&(const Family& o) const;
    Family operator|(const Family& o) const;
    Family operator-(const Family& o) const; // set difference
    Family complement() const;               // within the layer
    bool operator==(const Family& o) const;

private:
    void check_same_spec(const Family& o) const;

    std::shared_ptr<const GroundSpec> spec_;
    Bitset bits_;
};

} // namespace crossfam
