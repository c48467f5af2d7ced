#include "onering/backend.hpp"

namespace onering {

unsigned Backend::workers() const noexcept
{
    if (kind == BackendKind::Serial)
        return 1;
    if (worker_count != 0)
        return worker_count;
    const unsigned detected = std::thread::hardware_concurrency();
    return detected == 0 ? 1 : detected;
}

} // namespace onering
