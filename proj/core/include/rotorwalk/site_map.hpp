#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "rotorwalk/point.hpp"

namespace rotorwalk {

/// Sparse per-site storage over Z^d, organised as a hash map of dense
/// power-of-two blocks with a one-entry lookup cache on the mutable path.
///
/// Every site carries `lanes` values of type T; sites never written read
/// back as the fill value. Const accessors do not touch the cache, so a
/// const SiteMap may be read from several threads.
template <class T>
class SiteMap {
public:
    SiteMap(int dim, T fill, int lanes = 1)
        : dim_(dim), lanes_(lanes), shift_(block_shift(dim)), fill_(fill) {
        validate_dimension(dim);
        mask_ = (Point::Coord{1} << shift_) - 1;
        block_sites_ = std::size_t{1} << (shift_ * dim_);
    }

    SiteMap(const SiteMap& other)
        : dim_(other.dim_), lanes_(other.lanes_), shift_(other.shift_), mask_(other.mask_),
          block_sites_(other.block_sites_), fill_(other.fill_) {
        blocks_.reserve(other.blocks_.size());
        for (const auto& [key, block] : other.blocks_) {
            blocks_.emplace(key, std::make_unique<Block>(*block));
        }
    }
    SiteMap& operator=(const SiteMap& other) {
        if (this != &other) {
            SiteMap copy(other);
            *this = std::move(copy);
        }
        return *this;
    }
    SiteMap(SiteMap&& other) noexcept
        : dim_(other.dim_), lanes_(other.lanes_), shift_(other.shift_), mask_(other.mask_),
          block_sites_(other.block_sites_), fill_(std::move(other.fill_)), blocks_(std::move(other.blocks_)) {
        other.cached_ = nullptr;
    }
    SiteMap& operator=(SiteMap&& other) noexcept {
        dim_ = other.dim_;
        lanes_ = other.lanes_;
        shift_ = other.shift_;
        mask_ = other.mask_;
        block_sites_ = other.block_sites_;
        fill_ = std::move(other.fill_);
        blocks_ = std::move(other.blocks_);
        cached_ = nullptr;
        other.cached_ = nullptr;
        return *this;
    }
    ~SiteMap() = default;

    int dim() const { return dim_; }
    int lanes() const { return lanes_; }
    const T& fill_value() const { return fill_; }
    std::size_t block_count() const { return blocks_.size(); }

    T get(const Point& p, int lane = 0) const {
        const T* site = find(p);
        return site == nullptr ? fill_ : site[lane];
    }

    /// Pointer to the site's lanes, or nullptr when its block was never allocated.
    const T* find(const Point& p) const {
        const auto it = blocks_.find(block_key(p));
        if (it == blocks_.end()) {
            return nullptr;
        }
        return it->second->data.data() + local_index(p) * static_cast<std::size_t>(lanes_);
    }

    /// Pointer to the site's lanes, allocating its block on first use.
    T* slot(const Point& p) {
        Point key = block_key(p);
        if (cached_ == nullptr || key != cached_key_) {
            auto& block = blocks_[key];
            if (!block) {
                block = std::make_unique<Block>();
                block->data.assign(block_sites_ * static_cast<std::size_t>(lanes_), fill_);
            }
            cached_ = block.get();
            cached_key_ = key;
        }
        return cached_->data.data() + local_index(p) * static_cast<std::size_t>(lanes_);
    }

    T& ref(const Point& p, int lane = 0) { return slot(p)[lane]; }

    /// Calls f(point, lanes) for every site with some lane different from the
    /// fill value. Blocks are visited in sorted key order, so the traversal
    /// is deterministic.
    template <class F>
    void for_each(F&& f) const {
        std::vector<const Point*> keys;
        keys.reserve(blocks_.size());
        for (const auto& entry : blocks_) {
            keys.push_back(&entry.first);
        }
        std::sort(keys.begin(), keys.end(), [](const Point* a, const Point* b) { return *a < *b; });
        for (const Point* key : keys) {
            const Block& block = *blocks_.at(*key);
            for (std::size_t i = 0; i < block_sites_; ++i) {
                std::span<const T> lanes(block.data.data() + i * static_cast<std::size_t>(lanes_),
                                         static_cast<std::size_t>(lanes_));
                if (std::all_of(lanes.begin(), lanes.end(), [&](const T& v) { return v == fill_; })) {
                    continue;
                }
                f(site_of(*key, i), lanes);
            }
        }
    }

    void clear() {
        blocks_.clear();
        cached_ = nullptr;
    }

private:
    struct Block {
        std::vector<T> data;
    };

    static int block_shift(int dim) {
        switch (dim) {
            case 2: return 6;
            case 3: return 4;
            case 4: return 3;
            case 5:
            case 6: return 2;
            default: return 1;
        }
    }

    Point block_key(const Point& p) const {
        Point key(dim_);
        for (int i = 0; i < dim_; ++i) {
            key[i] = p[i] >> shift_;
        }
        return key;
    }

    std::size_t local_index(const Point& p) const {
        std::size_t idx = 0;
        for (int i = 0; i < dim_; ++i) {
            idx |= static_cast<std::size_t>(p[i] & mask_) << (shift_ * i);
        }
        return idx;
    }

    Point site_of(const Point& key, std::size_t idx) const {
        Point p(dim_);
        for (int i = 0; i < dim_; ++i) {
            p[i] = (key[i] << shift_) + static_cast<Point::Coord>((idx >> (shift_ * i)) & static_cast<std::size_t>(mask_));
        }
        return p;
    }

    int dim_;
    int lanes_;
    int shift_;
    Point::Coord mask_ = 0;
    std::size_t block_sites_ = 0;
    T fill_;
    std::unordered_map<Point, std::unique_ptr<Block>, PointHash> blocks_;
    Point cached_key_;
    Block* cached_ = nullptr;
};

}  // namespace rotorwalk
