#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "submeta/core/realization.hpp"

namespace submeta {

/// One task: a utility oracle f(Y, phi) over real-item sets and
/// realizations, with declared structural flags. Oracle calls are counted
/// so harnesses can enforce train/test separation. Immutable apart from
/// the counter; safe to share across workers.
class Task {
  public:
    Task(int id, bool adaptive_monotone, bool adaptive_submodular)
        : id_(id), adaptive_monotone_(adaptive_monotone), adaptive_submodular_(adaptive_submodular) {}
    virtual ~Task() = default;

    /// f(Y, phi). Y must contain real items only; callers strip dummies.
    double utility(const ItemSet& items, const Realization& phi) const {
        oracle_calls_.fetch_add(1, std::memory_order_relaxed);
        return do_utility(items, phi);
    }

    int id() const { return id_; }
    bool is_adaptive_monotone() const { return adaptive_monotone_; }
    bool is_adaptive_submodular() const { return adaptive_submodular_; }

    std::uint64_t oracle_calls() const { return oracle_calls_.load(std::memory_order_relaxed); }
    void reset_oracle_calls() const { oracle_calls_.store(0, std::memory_order_relaxed); }

  protected:
    virtual double do_utility(const ItemSet& items, const Realization& phi) const = 0;

  private:
    int id_;
    bool adaptive_monotone_;
    bool adaptive_submodular_;
    mutable std::atomic<std::uint64_t> oracle_calls_{0};
};

using TaskPtr = std::shared_ptr<const Task>;

/// Utility defined by an arbitrary callable.
class CallbackTask final : public Task {
  public:
    using Fn = std::function<double(const ItemSet&, const Realization&)>;

    CallbackTask(int id, bool monotone, bool submodular, Fn fn)
        : Task(id, monotone, submodular), fn_(std::move(fn)) {}

  private:
    double do_utility(const ItemSet& items, const Realization& phi) const override {
        return fn_(items, phi);
    }

    Fn fn_;
};

/// Utility stored as a lookup table keyed by (item set, realization index),
/// the representation used by the JSON instance format. Missing entries
/// default to 0.
class TableTask final : public Task {
  public:
    TableTask(int id, bool monotone, bool submodular,
              std::vector<std::vector<StateValue>> support_states,
              std::map<std::pair<ItemSet, int>, double> table)
        : Task(id, monotone, submodular),
          support_states_(std::move(support_states)),
          table_(std::move(table)) {}

  private:
    double do_utility(const ItemSet& items, const Realization& phi) const override;

    int resolve_index(const Realization& phi) const;

    std::vector<std::vector<StateValue>> support_states_;
    std::map<std::pair<ItemSet, int>, double> table_;
};

}  // namespace submeta
