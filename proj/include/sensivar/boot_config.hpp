#ifndef SENSIVAR_BOOT_CONFIG_HPP
#define SENSIVAR_BOOT_CONFIG_HPP

#include <cstdint>
#include <string>

namespace sensivar {

struct BootConfig {
    enum class CiType { normal, percentile };

    std::int64_t replicates = 1000;
    CiType ci_type = CiType::normal;
    double conf = 0.95;
    std::uint64_t seed = 0;
};

BootConfig::CiType parse_ci_type(const std::string& name);
std::string to_string(BootConfig::CiType type);

} // namespace sensivar

#endif
