#include "limsup/caps.hpp"

#include <cstdlib>

namespace limsup {

namespace {

template <class T>
void override_from(const char* var, T& field)
{
    const char* raw = std::getenv(var);
    if (!raw || !*raw) return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0) throw std::invalid_argument(std::string(var) + " must be a positive integer");
    field = static_cast<T>(v);
}

} // namespace

ResourceCaps ResourceCaps::from_environment()
{
    ResourceCaps caps;
    override_from("LIMSUP_MAX_INTERVALS", caps.max_intervals);
    override_from("LIMSUP_MAX_DYADIC_LEVEL", caps.max_dyadic_level);
    override_from("LIMSUP_MAX_SETS", caps.max_sets);
    override_from("LIMSUP_MAX_IE_RANGE", caps.max_ie_range);
    return caps;
}

} // namespace limsup
