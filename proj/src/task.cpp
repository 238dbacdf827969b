#include "submeta/core/task.hpp"

#include "submeta/errors.hpp"

namespace submeta {

int TableTask::resolve_index(const Realization& phi) const {
    if (phi.index >= 0 && static_cast<std::size_t>(phi.index) < support_states_.size() &&
        support_states_[static_cast<std::size_t>(phi.index)] == phi.states)
        return phi.index;
    for (std::size_t i = 0; i < support_states_.size(); ++i)
        if (support_states_[i] == phi.states) return static_cast<int>(i);
    throw Error("realization not found in table task support");
}

double TableTask::do_utility(const ItemSet& items, const Realization& phi) const {
    auto it = table_.find({items, resolve_index(phi)});
    return it == table_.end() ? 0.0 : it->second;
}

}  // namespace submeta
