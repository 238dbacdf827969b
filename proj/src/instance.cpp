#include "submeta/core/instance.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "submeta/errors.hpp"

namespace submeta {

namespace {

ItemSet parse_set_key(const std::string& key, int n) {
    ItemSet out;
    if (key.empty()) return out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            int id = std::stoi(part);
            if (id < 0 || id >= n) throw ParseError("item id out of range in set key: " + part);
            out.push_back(id);
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed set key component: " + part);
        }
    }
    ItemSet sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != out || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("set key must list distinct ids in ascending order: " + key);
    return out;
}

}  // namespace

Instance load_instance_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid instance JSON: ") + e.what());
    }

    Instance inst;
    try {
        inst.n = doc.at("n").get<int>();
        inst.n_states = doc.at("states").get<int>();
        if (inst.n <= 0 || inst.n_states <= 0) throw ParseError("n and states must be positive");

        std::vector<WeightedRealization> support;
        std::vector<std::vector<StateValue>> support_states;
        for (const auto& entry : doc.at("realizations")) {
            Realization phi;
            for (const auto& s : entry.at("states")) {
                StateValue v = s.get<StateValue>();
                if (v < 0 || v >= inst.n_states) throw ParseError("state value out of range");
                phi.states.push_back(v);
            }
            if (static_cast<int>(phi.states.size()) != inst.n)
                throw ParseError("realization must assign a state to every item");
            support_states.push_back(phi.states);
            support.push_back({std::move(phi), entry.at("prob").get<double>()});
        }
        inst.prior = Prior::explicit_prior(std::move(support));

        int task_id = 0;
        for (const auto& task_doc : doc.at("tasks")) {
            std::map<std::pair<ItemSet, int>, double> table;
            for (const auto& [key, value] : task_doc.at("utilities").items()) {
                auto bar = key.rfind('|');
                if (bar == std::string::npos) throw ParseError("utility key missing '|': " + key);
                ItemSet items = parse_set_key(key.substr(0, bar), inst.n);
                int index = std::stoi(key.substr(bar + 1));
                if (index < 0 || index >= static_cast<int>(support_states.size()))
                    throw ParseError("realization index out of range in key: " + key);
                table[{std::move(items), index}] = value.get<double>();
            }
            bool monotone = task_doc.value("is_adaptive_monotone", false);
            bool submodular = task_doc.value("is_adaptive_submodular", false);
            inst.tasks.push_back(std::make_shared<TableTask>(task_id++, monotone, submodular,
                                                             support_states, std::move(table)));
        }
        if (inst.tasks.empty()) throw ParseError("instance declares no tasks");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid instance document: ") + e.what());
    }
    return inst;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_instance_json(buffer.str());
}

}  // namespace submeta
