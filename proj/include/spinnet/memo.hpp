// Copyright 2026 The spinnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINNET_MEMO_HPP
#define SPINNET_MEMO_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

namespace spinnet::detail {

/// Hash for fixed-size integer tuples used as memo keys.
struct ArrayHash {
    template <typename T, std::size_t N>
    std::size_t operator()(const std::array<T, N>& a) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& v : a) {
            h ^= std::hash<T>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

///
/// Read-mostly cache. Lookups take a shared lock; a miss computes the value
/// outside any lock and inserts under an exclusive lock. When two threads race
/// on the same key the first insertion wins and both see the same value.
///
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class ConcurrentMemo {
  public:
    template <typename Compute>
    Value get_or_compute(const Key& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = map_.find(key); it != map_.end())
                return it->second;
        }
        Value value = std::forward<Compute>(compute)();
        std::unique_lock lock(mutex_);
        auto [it, inserted] = map_.try_emplace(key, std::move(value));
        return it->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

    void clear() {
        std::unique_lock lock(mutex_);
        map_.clear();
    }

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Value, Hash> map_;
};

} // namespace spinnet::detail

#endif // SPINNET_MEMO_HPP
