#pragma once

#define BOHRLAB_VERSION_MAJOR 0
#define BOHRLAB_VERSION_MINOR 1
#define BOHRLAB_VERSION_PATCH 0
#define BOHRLAB_VERSION "0.1.0"

namespace bohrlab {
inline const char* version() { return BOHRLAB_VERSION; }
}  // namespace bohrlab
