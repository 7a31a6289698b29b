#include "snum/parallel.hpp"

#include <cstdlib>
#include <string>

namespace snum {

std::size_t thread_budget()
{
    if (const char* env = std::getenv("SNUM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace snum
