#pragma once

#include <map>
#include <string>

#include "spmkit/epidemic.hpp"

namespace spmkit {

/// Built-in attack presets: posterior-mean SIIDR rates of the named WannaCry
/// variants (wc_<threads>_<scan interval>), so configs can say `wc_1_1s`
/// instead of spelling out rates.
const std::map<std::string, SiidrParams>& attack_registry();

/// Looks up a preset by name; throws ConfigError with the known names listed.
SiidrParams attack_params(const std::string& name);

}  // namespace spmkit
