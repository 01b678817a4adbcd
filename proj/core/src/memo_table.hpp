#pragma once

// Append-only concurrent memo map. Lookups take a shared lock; a racing
// duplicate computation is allowed and the first inserted value wins.
// Node-based storage keeps returned references stable across later inserts.

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace qcong::detail {

template <class Key, class Value>
class MemoTable {
 public:
  template <class Fn>
  const Value& get_or_compute(const Key& key, Fn&& compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    Value fresh = compute();  // no lock held: compute may recurse into us
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(fresh));
    return it->second;
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value> map_;
};

}  // namespace qcong::detail
