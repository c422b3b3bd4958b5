#include "vc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace vc {

int default_threads() {
    const char* env = std::getenv("VC_THREADS");
    if (!env) return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace vc
