#include "spmkit/attack_registry.hpp"

#include "spmkit/errors.hpp"

namespace spmkit {

const std::map<std::string, SiidrParams>& attack_registry() {
    static const std::map<std::string, SiidrParams> registry = {
        {"wc_1_500ms", {0.10, 0.06, 0.76, 0.04, 0.09}},
        {"wc_1_1s", {0.11, 0.07, 0.71, 0.07, 0.06}},
        {"wc_1_5s", {0.37, 0.52, 0.27, 0.44, 0.16}},
        {"wc_1_10s", {0.12, 0.06, 0.75, 0.05, 0.09}},
        {"wc_4_1s", {0.14, 0.07, 0.75, 0.08, 0.05}},
        {"wc_4_5s", {0.12, 0.07, 0.76, 0.07, 0.07}},
        {"wc_8_20s", {0.13, 0.09, 0.74, 0.08, 0.07}},
    };
    return registry;
}

SiidrParams attack_params(const std::string& name) {
    const auto& reg = attack_registry();
    auto it = reg.find(name);
    if (it == reg.end()) {
        std::string known;
        for (const auto& [k, v] : reg) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw ConfigError("unknown attack variant '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

}  // namespace spmkit
